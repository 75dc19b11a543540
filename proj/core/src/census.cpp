#include "trig/census.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <numeric>
#include <stdexcept>

#include "trig/generator.hpp"
#include "trig/rng.hpp"

#include "json.hpp"

namespace trig {

namespace {

constexpr std::int64_t kOracleNodeLimit = 200;
constexpr int kSmallGraphNodeLimit = 8;
constexpr int kKappaEdgeLimit = 8;

std::int64_t choose2(std::int64_t d) {
    return static_cast<std::int64_t>((static_cast<__int128>(d) * (d - 1)) / 2);
}

} // namespace

std::string to_json(const CensusCounts& counts) {
    nlohmann::json j;
    j["n0"] = counts.n0;
    j["links"] = counts.links;
    j["two_stars"] = counts.two_stars;
    j["triangles"] = counts.triangles;
    return j.dump();
}

CensusCounts census_counts_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CensusCounts counts;
    counts.n0 = j.at("n0").get<std::int64_t>();
    counts.links = j.at("links").get<std::int64_t>();
    counts.two_stars = j.at("two_stars").get<std::int64_t>();
    counts.triangles = j.at("triangles").get<std::int64_t>();
    return counts;
}

Graph induce_subset(const Graph& g, std::span<const std::uint32_t> nodes) {
    std::vector<std::int64_t> relabel(g.node_count(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= g.node_count()) throw std::invalid_argument("subset node out of range");
        if (i > 0 && nodes[i] <= nodes[i - 1]) {
            throw std::invalid_argument("subset nodes must be strictly increasing");
        }
        relabel[nodes[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Graph::Edge> edges;
    for (const auto& [a, b] : g.edges()) {
        const std::int64_t ra = relabel[a];
        const std::int64_t rb = relabel[b];
        if (ra >= 0 && rb >= 0) {
            edges.emplace_back(static_cast<std::uint32_t>(ra), static_cast<std::uint32_t>(rb));
        }
    }
    return Graph::from_edges(static_cast<std::int64_t>(nodes.size()), std::move(edges));
}

Graph induce(const Graph& g, std::int64_t n0, InduceMode mode, std::uint64_t seed) {
    if (n0 < 1 || n0 > g.node_count()) {
        throw std::invalid_argument("induced node count must be in [1, n]");
    }
    if (mode == InduceMode::first) {
        std::vector<Graph::Edge> edges;
        for (const auto& [a, b] : g.edges()) {
            if (b < n0) edges.emplace_back(a, b);
        }
        return Graph::from_edges(n0, std::move(edges));
    }
    Rng rng(seed);
    UniformSubsetSampler sampler(g.node_count());
    std::vector<std::uint32_t> nodes;
    sampler.sample(n0, rng, nodes);
    std::sort(nodes.begin(), nodes.end());
    return induce_subset(g, nodes);
}

CensusCounts count_motifs(const Graph& g) {
    const std::int64_t n = g.node_count();
    CensusCounts counts;
    counts.n0 = n;
    counts.links = g.edge_count();
    for (std::int64_t v = 0; v < n; ++v) counts.two_stars += choose2(g.degree(v));

    // Rank nodes by (degree, id) and orient every edge toward the higher
    // rank; triangles are then intersections of forward lists, which keeps
    // the scan near-linear on bounded-degree graphs.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&g](std::uint32_t a, std::uint32_t b) {
        const auto da = g.degree(a);
        const auto db = g.degree(b);
        return da != db ? da < db : a < b;
    });
    std::vector<std::uint32_t> rank(n);
    for (std::int64_t r = 0; r < n; ++r) rank[order[r]] = static_cast<std::uint32_t>(r);

    std::vector<std::int64_t> offsets(n + 1, 0);
    for (const auto& [a, b] : g.edges()) {
        ++offsets[std::min(rank[a], rank[b]) + 1];
    }
    for (std::int64_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    std::vector<std::uint32_t> forward(g.edge_count());
    std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [a, b] : g.edges()) {
        const std::uint32_t lo = std::min(rank[a], rank[b]);
        const std::uint32_t hi = std::max(rank[a], rank[b]);
        forward[cursor[lo]++] = hi;
    }
    for (std::int64_t v = 0; v < n; ++v) {
        std::sort(forward.begin() + offsets[v], forward.begin() + offsets[v + 1]);
    }

    std::int64_t triangles = 0;
    for (std::int64_t v = 0; v < n; ++v) {
        for (std::int64_t e = offsets[v]; e < offsets[v + 1]; ++e) {
            const std::uint32_t w = forward[e];
            auto it_v = forward.begin() + offsets[v];
            const auto end_v = forward.begin() + offsets[v + 1];
            auto it_w = forward.begin() + offsets[w];
            const auto end_w = forward.begin() + offsets[w + 1];
            while (it_v != end_v && it_w != end_w) {
                if (*it_v < *it_w) {
                    ++it_v;
                } else if (*it_w < *it_v) {
                    ++it_w;
                } else {
                    ++triangles;
                    ++it_v;
                    ++it_w;
                }
            }
        }
    }
    counts.triangles = triangles;
    return counts;
}

CensusCounts count_motifs_oracle(const Graph& g) {
    const std::int64_t n = g.node_count();
    if (n > kOracleNodeLimit) {
        throw std::invalid_argument("oracle census limited to 200 nodes");
    }
    std::vector<char> adj(static_cast<std::size_t>(n * n), 0);
    for (const auto& [a, b] : g.edges()) {
        adj[static_cast<std::size_t>(a) * n + b] = 1;
        adj[static_cast<std::size_t>(b) * n + a] = 1;
    }

    CensusCounts counts;
    counts.n0 = n;
    counts.links = g.edge_count();
    // a triple with 2 edges holds one 2-star, with 3 edges three 2-stars
    // and a triangle
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i + 1; j < n; ++j) {
            for (std::int64_t k = j + 1; k < n; ++k) {
                const int edges_in_triple = adj[static_cast<std::size_t>(i) * n + j] +
                                            adj[static_cast<std::size_t>(i) * n + k] +
                                            adj[static_cast<std::size_t>(j) * n + k];
                if (edges_in_triple == 2) {
                    ++counts.two_stars;
                } else if (edges_in_triple == 3) {
                    counts.two_stars += 3;
                    ++counts.triangles;
                }
            }
        }
    }
    return counts;
}

SmallGraph::SmallGraph(int node_count, std::vector<std::pair<int, int>> edges)
    : node_count_(node_count) {
    if (node_count_ < 1 || node_count_ > kSmallGraphNodeLimit) {
        throw std::invalid_argument("small graph must have 1..8 nodes");
    }
    for (auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("small graph edges must not be loops");
        if (a < 0 || b < 0 || a >= node_count_ || b >= node_count_) {
            throw std::invalid_argument("small graph edge endpoint out of range");
        }
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
}

SmallGraph SmallGraph::parse(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string token = text.substr(pos, comma - pos);
        const auto dash = token.find('-');
        if (dash == std::string::npos) {
            throw std::invalid_argument("expected `a-b` edge token: " + token);
        }
        try {
            const int a = std::stoi(token.substr(0, dash));
            const int b = std::stoi(token.substr(dash + 1));
            edges.emplace_back(a, b);
            max_id = std::max({max_id, a, b});
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed edge token: " + token);
        }
        pos = comma + 1;
    }
    if (edges.empty()) throw std::invalid_argument("empty edge list");
    return SmallGraph(max_id + 1, std::move(edges));
}

int kappa(const SmallGraph& r) {
    const auto& edges = r.edges();
    const int edge_count = static_cast<int>(edges.size());
    if (edge_count < 1) throw std::invalid_argument("kappa requires at least one edge");
    if (edge_count > kKappaEdgeLimit) {
        throw std::invalid_argument("kappa supports at most 8 edges");
    }

    std::array<std::uint16_t, kKappaEdgeLimit> edge_mask{};
    for (int e = 0; e < edge_count; ++e) {
        edge_mask[e] = static_cast<std::uint16_t>((1u << edges[e].first) |
                                                  (1u << edges[e].second));
    }

    // Restricted growth strings enumerate each set partition of the edge
    // set exactly once: edge e may join parts 0..max_used or open a new one.
    std::array<int, kKappaEdgeLimit> part_of{};
    int best = INT_MAX;
    const auto recurse = [&](auto&& self, int edge, int parts_used) -> void {
        if (edge == edge_count) {
            std::array<std::uint16_t, kKappaEdgeLimit> covered{};
            for (int e = 0; e < edge_count; ++e) covered[part_of[e]] |= edge_mask[e];
            int cost = -parts_used;
            for (int p = 0; p < parts_used; ++p) cost += std::popcount(covered[p]);
            best = std::min(best, cost);
            return;
        }
        for (int p = 0; p <= parts_used; ++p) {
            part_of[edge] = p;
            self(self, edge + 1, std::max(parts_used, p + 1));
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

} // namespace trig
