#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hd {

using Vertex = std::uint32_t;

/// A sorted, duplicate-free list of vertices. Edges and cliques are both
/// represented this way.
using VertexSet = std::vector<Vertex>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range vertex, wrong edge size, violated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An exhaustive routine hit its configured size cap before starting.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A search ran out of its node/attempt budget without an answer.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// The input is not K_q^r-divisible where divisibility is required.
class NotDivisible : public Error {
public:
    using Error::Error;
};

std::string to_string(const VertexSet& s);

}  // namespace hd
