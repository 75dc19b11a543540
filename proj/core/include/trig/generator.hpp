#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trig/graph.hpp"
#include "trig/model.hpp"
#include "trig/rng.hpp"

namespace trig {

// One community draw: the member node set V_k.
struct CommunitySample {
    std::vector<std::uint32_t> members;
};

// Uniform k-subsets of {0,...,n-1} via partial Fisher-Yates over a scratch
// index array. The scratch is restored after every draw, so each sample
// depends only on the rng stream handed in, never on sampler history.
class UniformSubsetSampler {
public:
    explicit UniformSubsetSampler(std::int64_t node_count);

    void sample(std::int64_t size, Rng& rng, std::vector<std::uint32_t>& out);

private:
    std::vector<std::uint32_t> pool_;
    std::vector<std::pair<std::int64_t, std::int64_t>> swaps_;
};

/// Draws a community: size from the distribution, members uniform among
/// subsets of that size. Binomial sizes are realized by independent
/// per-node inclusion (equivalent, and skips the subset shuffle).
CommunitySample sample_community(const CommunityDist& dist, std::int64_t node_count, Rng& rng);

/// Scratch-reusing variant for tight generation loops.
void sample_community(const CommunityDist& dist, std::int64_t node_count, Rng& rng,
                      UniformSubsetSampler& scratch, std::vector<std::uint32_t>& out);

/// Emits each of the C(|members|,2) member pairs independently with
/// probability q, in canonical low-high orientation.
///
/// Two regimes: for q >= 0.25 (or tiny pair counts) one coin is spent per
/// pair in a fixed order, so runs that share a seed are coupled across q
/// and the emitted set is monotone in q. For small q a geometric skip over
/// the pair index space jumps between successes, which is what keeps the
/// sparse regime fast when communities are large.
std::vector<Graph::Edge> thin_pairs(std::span<const std::uint32_t> members, double q, Rng& rng);

/// Appending variant for tight loops.
void thin_pairs(std::span<const std::uint32_t> members, double q, Rng& rng,
                std::vector<Graph::Edge>& out);

/// Samples one graph: m communities, each thinned independently; a node
/// pair is linked iff some community emitted it. Identical (params, seed)
/// give an identical edge set regardless of thread count, because
/// community k always consumes substream (seed, k).
Graph generate(const ModelParams& params, std::uint64_t seed);

/// Worker count from the TRIG_THREADS environment variable (default 1).
int thread_count_from_env();

namespace detail {
/// Lexicographic unranking of pair index t within C(size,2): returns
/// (a, b) with 0 <= a < b < size.
std::pair<std::int64_t, std::int64_t> unrank_pair(std::int64_t t, std::int64_t size);
} // namespace detail

} // namespace trig
