#include "trig/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace trig {

Graph Graph::from_edges(std::int64_t node_count, std::vector<Edge> edges,
                        EdgeListStats* stats) {
    if (node_count < 0) throw std::invalid_argument("node count must be nonnegative");

    EdgeListStats local;
    std::size_t kept = 0;
    for (auto& [a, b] : edges) {
        if (a == b) {
            ++local.self_loops;
            continue;
        }
        if (a > b) std::swap(a, b);
        if (static_cast<std::int64_t>(b) >= node_count) {
            throw std::invalid_argument("edge endpoint exceeds node count");
        }
        edges[kept++] = {a, b};
    }
    edges.resize(kept);
    std::sort(edges.begin(), edges.end());
    const auto unique_end = std::unique(edges.begin(), edges.end());
    local.duplicates = static_cast<std::int64_t>(edges.end() - unique_end);
    edges.erase(unique_end, edges.end());
    if (stats) *stats = local;

    Graph g;
    g.node_count_ = node_count;
    g.edges_ = std::move(edges);

    g.offsets_.assign(node_count + 1, 0);
    for (const auto& [a, b] : g.edges_) {
        ++g.offsets_[a + 1];
        ++g.offsets_[b + 1];
    }
    for (std::int64_t v = 0; v < node_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.adjacency_.resize(g.edges_.size() * 2);
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : g.edges_) {
        g.adjacency_[cursor[a]++] = b;
        g.adjacency_[cursor[b]++] = a;
    }
    // One pass over lex-sorted edges leaves every neighbor list ascending:
    // smaller neighbors arrive first (their edges sort earlier), then the
    // larger ones in order.
    return g;
}

Graph load_edge_list(const std::string& path, EdgeListStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::vector<Graph::Edge> edges;
    std::int64_t declared_nodes = -1;
    std::int64_t max_id = -1;
    std::string line;
    std::int64_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        const auto first = view.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        if (view[first] == '#' || view[first] == '%') {
            // SNAP-style "# Nodes: 62 Edges: 159" headers pin the node count
            // so trailing isolated nodes survive a save/load round trip.
            const auto pos = line.find("Nodes:");
            if (pos != std::string::npos) {
                std::istringstream header(line.substr(pos + 6));
                std::int64_t n = 0;
                if (header >> n && n >= 0) declared_nodes = n;
            }
            continue;
        }
        std::istringstream fields(line);
        std::int64_t a = 0;
        std::int64_t b = 0;
        if (!(fields >> a >> b)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected `i j` node pair");
        }
        if (a < 0 || b < 0) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": node ids must be nonnegative");
        }
        if (a > std::numeric_limits<std::uint32_t>::max() ||
            b > std::numeric_limits<std::uint32_t>::max()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": node id out of supported range");
        }
        max_id = std::max({max_id, a, b});
        edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    }

    const std::int64_t node_count = std::max(declared_nodes, max_id + 1);
    return Graph::from_edges(node_count, std::move(edges), stats);
}

void write_edge_list(const Graph& graph, std::ostream& out) {
    out << "# Nodes: " << graph.node_count() << " Edges: " << graph.edge_count() << "\n";
    for (const auto& [a, b] : graph.edges()) {
        out << a << " " << b << "\n";
    }
}

void save_edge_list(const Graph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_edge_list(graph, out);
    if (!out) throw std::runtime_error("failed writing edge list: " + path);
}

} // namespace trig
