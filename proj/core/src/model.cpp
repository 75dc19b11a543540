#include "trig/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trig {

namespace {

constexpr double kPmfTolerance = 1e-12;

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

} // namespace

double falling_factorial(double x, int r) {
    if (r < 0) throw std::invalid_argument("falling_factorial: negative order");
    double result = 1.0;
    for (int i = 0; i < r; ++i) result *= (x - i);
    return result;
}

CommunityDist CommunityDist::dirac(std::int64_t size) {
    if (size < 0) throw std::invalid_argument("dirac community size must be nonnegative");
    CommunityDist d;
    d.kind_ = Kind::dirac;
    d.dirac_size_ = size;
    return d;
}

CommunityDist CommunityDist::binomial(std::int64_t trials, double prob) {
    if (trials < 0) throw std::invalid_argument("binomial trials must be nonnegative");
    if (!is_prob(prob)) throw std::invalid_argument("binomial probability must be in [0,1]");
    CommunityDist d;
    d.kind_ = Kind::binomial;
    d.trials_ = trials;
    d.prob_ = prob;
    return d;
}

CommunityDist CommunityDist::explicit_pmf(std::vector<std::pair<std::int64_t, double>> entries) {
    double total = 0.0;
    for (const auto& [size, prob] : entries) {
        if (size < 0) throw std::invalid_argument("pmf support must be nonnegative");
        if (!is_prob(prob)) throw std::invalid_argument("pmf probabilities must be in [0,1]");
        total += prob;
    }
    if (std::abs(total - 1.0) > kPmfTolerance) {
        throw std::invalid_argument("pmf probabilities must sum to 1");
    }

    std::sort(entries.begin(), entries.end());
    CommunityDist d;
    d.kind_ = Kind::explicit_pmf;
    for (const auto& [size, prob] : entries) {
        if (prob == 0.0) continue;
        if (!d.pmf_.empty() && d.pmf_.back().first == size) {
            d.pmf_.back().second += prob; // duplicate sizes accumulate
        } else {
            d.pmf_.emplace_back(size, prob);
        }
    }
    if (d.pmf_.empty()) throw std::invalid_argument("pmf has no positive-probability entry");

    double running = 0.0;
    d.cumulative_.reserve(d.pmf_.size());
    for (const auto& [size, prob] : d.pmf_) {
        running += prob;
        d.cumulative_.push_back(running);
    }
    return d;
}

CommunityDist CommunityDist::from_pmf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pmf file: " + path);

    std::vector<std::pair<std::int64_t, double>> entries;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::int64_t size = 0;
        double prob = 0.0;
        if (!(fields >> size)) continue; // blank or comment-only line
        if (!(fields >> prob)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected `size probability`");
        }
        entries.emplace_back(size, prob);
    }
    try {
        return explicit_pmf(std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

double CommunityDist::factorial_moment(int r) const {
    if (r < 1) throw std::invalid_argument("factorial moment order must be >= 1");
    switch (kind_) {
    case Kind::dirac:
        return falling_factorial(static_cast<double>(dirac_size_), r);
    case Kind::binomial:
        return falling_factorial(static_cast<double>(trials_), r) * std::pow(prob_, r);
    case Kind::explicit_pmf: {
        double sum = 0.0;
        for (const auto& [size, prob] : pmf_) {
            sum += falling_factorial(static_cast<double>(size), r) * prob;
        }
        return sum;
    }
    }
    return 0.0;
}

std::int64_t CommunityDist::max_size() const {
    switch (kind_) {
    case Kind::dirac:
        return dirac_size_;
    case Kind::binomial:
        return trials_;
    case Kind::explicit_pmf:
        return pmf_.back().first;
    }
    return 0;
}

ModelParams::ModelParams(std::int64_t node_count, std::int64_t community_count,
                         CommunityDist size_dist, double link_prob)
    : node_count_(node_count),
      community_count_(community_count),
      size_dist_(std::move(size_dist)),
      link_prob_(link_prob) {
    if (node_count_ < 1) throw std::invalid_argument("node count must be >= 1");
    if (community_count_ < 0) throw std::invalid_argument("community count must be >= 0");
    if (!is_prob(link_prob_)) throw std::invalid_argument("link probability q must be in [0,1]");
    if (size_dist_.max_size() > node_count_) {
        throw std::invalid_argument("community size distribution exceeds node count");
    }
}

BernoulliParams::BernoulliParams(double mean_degree, double mean_memberships,
                                 double link_prob, std::int64_t node_count)
    : mean_degree_(mean_degree),
      mean_memberships_(mean_memberships),
      link_prob_(link_prob),
      node_count_(node_count) {
    if (!(mean_degree_ > 0.0) || !std::isfinite(mean_degree_)) {
        throw std::invalid_argument("lambda (mean degree) must be positive");
    }
    if (!(mean_memberships_ > 0.0) || !std::isfinite(mean_memberships_)) {
        throw std::invalid_argument("mu (mean memberships) must be positive");
    }
    if (!(link_prob_ > 0.0) || link_prob_ > 1.0) {
        throw std::invalid_argument("q must be in (0,1]");
    }
    if (node_count_ < 1) throw std::invalid_argument("node count must be >= 1");

    const double n = static_cast<double>(node_count_);
    const double m_value =
        std::floor(mean_memberships_ * mean_memberships_ * link_prob_ / mean_degree_ * n);
    if (m_value >= 9.0e18) {
        throw std::invalid_argument("derived community count m overflows");
    }
    community_count_ = static_cast<std::int64_t>(m_value);
    inclusion_prob_ = mean_degree_ / (mean_memberships_ * link_prob_ * n);
    if (!(inclusion_prob_ > 0.0) || inclusion_prob_ >= 1.0) {
        throw std::invalid_argument(
            "derived inclusion probability p out of range: n too small for this (lambda,mu,q)");
    }
    if (community_count_ < 1) {
        throw std::invalid_argument(
            "derived community count m is zero: n too small for this (lambda,mu,q)");
    }
}

ModelParams BernoulliParams::to_model() const {
    return ModelParams(node_count_, community_count_,
                       CommunityDist::binomial(node_count_, inclusion_prob_), link_prob_);
}

double cover_prob(const ModelParams& params, int r) {
    if (r < 1 || r > params.node_count()) {
        throw std::invalid_argument("cover_prob order must be in [1, n]");
    }
    return params.size_dist().factorial_moment(r) /
           falling_factorial(static_cast<double>(params.node_count()), r);
}

} // namespace trig
