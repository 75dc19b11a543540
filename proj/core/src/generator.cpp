#include "trig/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace trig {

namespace {

constexpr double kCoinRegimeMinQ = 0.25;
constexpr std::int64_t kCoinRegimeMaxPairs = 64;

std::uint64_t pack_edge(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

Graph::Edge unpack_edge(std::uint64_t key) {
    return {static_cast<std::uint32_t>(key >> 32),
            static_cast<std::uint32_t>(key & 0xffffffffULL)};
}

Graph::Edge canonical(std::uint32_t a, std::uint32_t b) {
    return a < b ? Graph::Edge{a, b} : Graph::Edge{b, a};
}

// Sample x ~ pi, members uniform among size-x subsets, or (binomial with
// trials == n) independent per-node inclusion, which is the same law.
void sample_members(const CommunityDist& dist, std::int64_t node_count, Rng& rng,
                    UniformSubsetSampler& scratch, std::vector<std::uint32_t>& out) {
    out.clear();
    switch (dist.kind()) {
    case CommunityDist::Kind::dirac:
        scratch.sample(dist.dirac_size(), rng, out);
        return;
    case CommunityDist::Kind::binomial: {
        const double p = dist.binomial_prob();
        if (dist.binomial_trials() == node_count) {
            // geometric skips over node indices = iid inclusion coins
            std::int64_t pos = -1;
            while (true) {
                const std::int64_t gap = rng.geometric_skip(p);
                if (gap >= node_count - 1 - pos) break;
                pos += 1 + gap;
                out.push_back(static_cast<std::uint32_t>(pos));
            }
            return;
        }
        std::int64_t size = 0;
        std::int64_t trial = -1;
        while (true) {
            const std::int64_t gap = rng.geometric_skip(p);
            if (gap >= dist.binomial_trials() - 1 - trial) break;
            trial += 1 + gap;
            ++size;
        }
        scratch.sample(size, rng, out);
        return;
    }
    case CommunityDist::Kind::explicit_pmf: {
        const auto& cumulative = dist.cumulative();
        const double u = rng.next_unit() * cumulative.back();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto idx = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
        scratch.sample(dist.pmf()[idx].first, rng, out);
        return;
    }
    }
}

} // namespace

namespace detail {

std::pair<std::int64_t, std::int64_t> unrank_pair(std::int64_t t, std::int64_t size) {
    // pairs before row a: base(a) = a*size - a*(a+1)/2
    const auto base = [size](std::int64_t a) {
        return static_cast<std::int64_t>(static_cast<__int128>(a) * (2 * size - a - 1) / 2);
    };
    const double s = static_cast<double>(size);
    double guess = std::floor(s - 0.5 - std::sqrt((s - 0.5) * (s - 0.5) - 2.0 * static_cast<double>(t)));
    if (!(guess >= 0.0)) guess = 0.0;
    std::int64_t a = std::min<std::int64_t>(static_cast<std::int64_t>(guess), size - 2);
    while (a + 1 <= size - 2 && base(a + 1) <= t) ++a;
    while (a > 0 && base(a) > t) --a;
    const std::int64_t b = t - base(a) + a + 1;
    return {a, b};
}

} // namespace detail

UniformSubsetSampler::UniformSubsetSampler(std::int64_t node_count)
    : pool_(static_cast<std::size_t>(node_count)) {
    std::iota(pool_.begin(), pool_.end(), 0u);
}

void UniformSubsetSampler::sample(std::int64_t size, Rng& rng,
                                  std::vector<std::uint32_t>& out) {
    const auto n = static_cast<std::int64_t>(pool_.size());
    if (size < 0 || size > n) throw std::invalid_argument("subset size out of range");
    out.clear();
    swaps_.clear();
    for (std::int64_t i = 0; i < size; ++i) {
        const std::int64_t j = i + static_cast<std::int64_t>(rng.below(n - i));
        swaps_.emplace_back(i, j);
        std::swap(pool_[i], pool_[j]);
        out.push_back(pool_[i]);
    }
    // undo so the pool is identity again; draws depend only on the rng
    for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) {
        std::swap(pool_[it->first], pool_[it->second]);
    }
}

CommunitySample sample_community(const CommunityDist& dist, std::int64_t node_count, Rng& rng) {
    if (dist.max_size() > node_count) {
        throw std::invalid_argument("community size distribution exceeds node count");
    }
    UniformSubsetSampler scratch(node_count);
    CommunitySample sample;
    sample_members(dist, node_count, rng, scratch, sample.members);
    return sample;
}

void sample_community(const CommunityDist& dist, std::int64_t node_count, Rng& rng,
                      UniformSubsetSampler& scratch, std::vector<std::uint32_t>& out) {
    sample_members(dist, node_count, rng, scratch, out);
}

void thin_pairs(std::span<const std::uint32_t> members, double q, Rng& rng,
                std::vector<Graph::Edge>& out) {
    const auto x = static_cast<std::int64_t>(members.size());
    if (x < 2 || q <= 0.0) return;
    const std::int64_t total = x * (x - 1) / 2;

    if (q >= 1.0) {
        for (std::int64_t a = 0; a < x; ++a) {
            for (std::int64_t b = a + 1; b < x; ++b) {
                out.push_back(canonical(members[a], members[b]));
            }
        }
        return;
    }

    if (q >= kCoinRegimeMinQ || total < kCoinRegimeMaxPairs) {
        // one coin per pair in fixed lexicographic order: runs sharing a
        // seed stay coupled across q, so the emitted set grows with q
        for (std::int64_t a = 0; a < x; ++a) {
            for (std::int64_t b = a + 1; b < x; ++b) {
                if (rng.bernoulli(q)) out.push_back(canonical(members[a], members[b]));
            }
        }
        return;
    }

    std::int64_t idx = -1;
    while (true) {
        const std::int64_t gap = rng.geometric_skip(q);
        if (gap >= total - 1 - idx) break;
        idx += 1 + gap;
        const auto [a, b] = detail::unrank_pair(idx, x);
        out.push_back(canonical(members[a], members[b]));
    }
}

std::vector<Graph::Edge> thin_pairs(std::span<const std::uint32_t> members, double q, Rng& rng) {
    std::vector<Graph::Edge> out;
    thin_pairs(members, q, rng, out);
    return out;
}

int thread_count_from_env() {
    const char* raw = std::getenv("TRIG_THREADS");
    if (!raw) return 1;
    const long value = std::strtol(raw, nullptr, 10);
    if (value < 1) return 1;
    return static_cast<int>(std::min<long>(value, 64));
}

Graph generate(const ModelParams& params, std::uint64_t seed) {
    const std::int64_t n = params.node_count();
    const std::int64_t m = params.community_count();
    const double q = params.link_prob();
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("node count exceeds generator id range");
    }

    const auto run_range = [&](std::int64_t begin, std::int64_t end,
                               std::unordered_set<std::uint64_t>& keys) {
        UniformSubsetSampler scratch(n);
        std::vector<std::uint32_t> members;
        std::vector<Graph::Edge> pairs;
        for (std::int64_t k = begin; k < end; ++k) {
            Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(k));
            sample_members(params.size_dist(), n, rng, scratch, members);
            if (members.size() < 2) continue;
            pairs.clear();
            thin_pairs(members, q, rng, pairs);
            for (const auto& [a, b] : pairs) keys.insert(pack_edge(a, b));
        }
    };

    int threads = thread_count_from_env();
    if (m < 4 * threads) threads = 1;

    std::unordered_set<std::uint64_t> keys;
    if (threads == 1) {
        run_range(0, m, keys);
    } else {
        std::vector<std::unordered_set<std::uint64_t>> partial(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::int64_t chunk = (m + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::int64_t begin = t * chunk;
            const std::int64_t end = std::min<std::int64_t>(begin + chunk, m);
            pool.emplace_back([&, begin, end, t] { run_range(begin, end, partial[t]); });
        }
        for (auto& worker : pool) worker.join();
        // set union is merge-order independent, so the edge set does not
        // depend on the thread count
        for (auto& part : partial) keys.merge(part);
    }

    std::vector<Graph::Edge> edges;
    edges.reserve(keys.size());
    for (const std::uint64_t key : keys) edges.push_back(unpack_edge(key));
    return Graph::from_edges(n, std::move(edges));
}

} // namespace trig
