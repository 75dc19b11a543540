#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trig {

struct EdgeListStats {
    std::int64_t self_loops = 0;
    std::int64_t duplicates = 0;
};

// Immutable undirected simple graph: canonical edge list (i < j,
// lexicographically sorted, deduplicated) plus a CSR adjacency view with
// ascending neighbor lists. Safe to share across threads once built.
class Graph {
public:
    using Edge = std::pair<std::uint32_t, std::uint32_t>;

    Graph() = default;

    /// Builds from an arbitrary edge list: orients each pair low-high,
    /// drops self-loops, deduplicates. Dropped-item counters are reported
    /// through `stats` when given.
    static Graph from_edges(std::int64_t node_count, std::vector<Edge> edges,
                            EdgeListStats* stats = nullptr);

    std::int64_t node_count() const { return node_count_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    std::span<const Edge> edges() const { return edges_; }

    std::int64_t degree(std::int64_t node) const {
        return offsets_[node + 1] - offsets_[node];
    }
    std::span<const std::uint32_t> neighbors(std::int64_t node) const {
        return {adjacency_.data() + offsets_[node],
                static_cast<std::size_t>(offsets_[node + 1] - offsets_[node])};
    }

private:
    std::int64_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::int64_t> offsets_{0};
    std::vector<std::uint32_t> adjacency_;
};

// Whitespace-separated `i j` pairs, 0-based ids, '#' (and '%') comment
// lines. Duplicate edges, reversed pairs and self-loops are tolerated and
// dropped, counted in `stats`. A `# Nodes: <n> ...` header pins the node
// count; otherwise it is max id + 1.
Graph load_edge_list(const std::string& path, EdgeListStats* stats = nullptr);

void write_edge_list(const Graph& graph, std::ostream& out);
void save_edge_list(const Graph& graph, const std::string& path);

} // namespace trig
