#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trig/graph.hpp"

namespace trig {

// Observed subgraph counts on an n0-node graph: links, 2-stars (paths on
// three nodes, induced or not), triangles.
struct CensusCounts {
    std::int64_t n0 = 0;
    std::int64_t links = 0;
    std::int64_t two_stars = 0;
    std::int64_t triangles = 0;
};

std::string to_json(const CensusCounts& counts);
CensusCounts census_counts_from_json(const std::string& text);

enum class InduceMode { first, random };

/// Induced subgraph on n0 nodes, relabeled 0..n0-1 preserving id order.
/// Mode `first` takes nodes 0..n0-1 (deterministic; exchangeable models
/// make any fixed subset equivalent); `random` draws the subset uniformly
/// from `seed`.
Graph induce(const Graph& g, std::int64_t n0, InduceMode mode = InduceMode::first,
             std::uint64_t seed = 0);

/// Induced subgraph on an explicit node set (strictly increasing ids).
Graph induce_subset(const Graph& g, std::span<const std::uint32_t> nodes);

/// links = |E|; two_stars = sum_i C(deg(i),2); triangles counted exactly by
/// ordered-neighbor intersection (nodes ranked by degree, forward lists
/// intersected per edge).
CensusCounts count_motifs(const Graph& g);

/// Same contract via exhaustive triple enumeration; refuses graphs with
/// more than 200 nodes.
CensusCounts count_motifs_oracle(const Graph& g);

// Tiny graph (<= 8 nodes) used as input to the edge-partition statistic.
class SmallGraph {
public:
    SmallGraph(int node_count, std::vector<std::pair<int, int>> edges);
    /// Inline edge-list syntax: "0-1,0-2".
    static SmallGraph parse(const std::string& text);

    int node_count() const { return node_count_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    int node_count_;
    std::vector<std::pair<int, int>> edges_;
};

/// min over all set partitions P of the edge set of
/// sum_{part in P} |nodes covered by part|  -  |P|.
/// Exhaustive enumeration via restricted growth strings; requires
/// 1 <= |E| <= 8 (Bell(8) = 4140 partitions).
int kappa(const SmallGraph& r);

} // namespace trig
