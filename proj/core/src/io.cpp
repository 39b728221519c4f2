#include "hyperdesign/io.hpp"

#include <fstream>
#include <sstream>

#include "hyperdesign/combinatorics.hpp"

namespace hd {

void write_hypergraph(std::ostream& out, const Hypergraph& g)
{
    out << g.rank() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
    write_sets(out, std::vector<VertexSet>(g.edges().begin(), g.edges().end()));
}

Hypergraph read_hypergraph(std::istream& in)
{
    long long r = 0, n = 0, m = 0;
    if (!(in >> r >> n >> m) || r < 1 || n < 0 || m < 0) {
        throw InvalidArgument("malformed hypergraph header (expected `r n m`)");
    }
    Hypergraph g(static_cast<std::size_t>(n), static_cast<int>(r));
    std::string line;
    std::getline(in, line);  // rest of header line
    long long read = 0;
    while (read < m && std::getline(in, line)) {
        std::istringstream fields(line);
        VertexSet e;
        long long v = 0;
        while (fields >> v) {
            if (v < 0 || v >= n) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
            e.push_back(static_cast<Vertex>(v));
        }
        if (e.empty()) continue;
        if (!g.add_edge(std::move(e))) throw InvalidArgument("duplicate edge on line " + std::to_string(read + 2));
        ++read;
    }
    if (read != m) throw InvalidArgument("expected " + std::to_string(m) + " edges, read " + std::to_string(read));
    return g;
}

std::string hypergraph_to_string(const Hypergraph& g)
{
    std::ostringstream out;
    write_hypergraph(out, g);
    return out.str();
}

Hypergraph hypergraph_from_string(const std::string& text)
{
    std::istringstream in(text);
    return read_hypergraph(in);
}

Hypergraph load_hypergraph(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return read_hypergraph(in);
}

void save_hypergraph(const std::string& path, const Hypergraph& g)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_hypergraph(out, g);
}

void write_sets(std::ostream& out, const std::vector<VertexSet>& sets)
{
    for (const auto& s : sets) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out << ' ';
            out << s[i];
        }
        out << '\n';
    }
}

std::vector<VertexSet> read_sets(std::istream& in)
{
    std::vector<VertexSet> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        VertexSet s;
        long long v = 0;
        while (fields >> v) {
            if (v < 0) throw InvalidArgument("negative vertex in set list");
            s.push_back(static_cast<Vertex>(v));
        }
        if (!s.empty()) out.push_back(normalized(std::move(s)));
    }
    return out;
}

}  // namespace hd
