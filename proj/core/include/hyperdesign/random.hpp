#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace hd {

/// Seeded generator with platform-independent derived draws. Distribution
/// objects from <random> are avoided so results match across standard
/// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();
    /// Exact Bernoulli(p) for rational p: succeeds iff u < p * 2^64.
    bool bernoulli(const mpq_class& p);
    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    /// splitmix64 mix of (seed, stream) for independent sub-seeds.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

private:
    std::mt19937_64 engine_;
};

}  // namespace hd
