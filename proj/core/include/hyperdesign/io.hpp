#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperdesign/hypergraph.hpp"

namespace hd {

/// Text format: a header line `r n m`, then m lines of space-separated
/// vertices, edges in lexicographic order.
void write_hypergraph(std::ostream& out, const Hypergraph& g);
Hypergraph read_hypergraph(std::istream& in);

std::string hypergraph_to_string(const Hypergraph& g);
Hypergraph hypergraph_from_string(const std::string& text);

Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const std::string& path, const Hypergraph& g);

/// One vertex set per line.
void write_sets(std::ostream& out, const std::vector<VertexSet>& sets);
std::vector<VertexSet> read_sets(std::istream& in);

}  // namespace hd
