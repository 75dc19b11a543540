#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace trig {

/// (x)_r = x (x-1) ... (x-r+1); r >= 0, with (x)_0 = 1.
double falling_factorial(double x, int r);

// Community size distribution on {0,...,n}: a point mass, a binomial, or an
// explicit finite pmf. Immutable after construction.
class CommunityDist {
public:
    enum class Kind { dirac, binomial, explicit_pmf };

    static CommunityDist dirac(std::int64_t size);
    static CommunityDist binomial(std::int64_t trials, double prob);
    /// Entries with the same size are accumulated; zero-probability entries
    /// are dropped. Probabilities must be in [0,1] and sum to 1 within 1e-12.
    static CommunityDist explicit_pmf(std::vector<std::pair<std::int64_t, double>> entries);
    /// Two-column text file `size probability`, '#' comments allowed.
    static CommunityDist from_pmf_file(const std::string& path);

    Kind kind() const { return kind_; }

    /// Factorial moment: sum_x (x)_r pmf(x), exact. Closed form for the
    /// dirac and binomial families, direct summation otherwise. Returns 0
    /// when r exceeds the maximum support point.
    double factorial_moment(int r) const;
    double mean() const { return factorial_moment(1); }
    std::int64_t max_size() const;

    std::int64_t dirac_size() const { return dirac_size_; }
    std::int64_t binomial_trials() const { return trials_; }
    double binomial_prob() const { return prob_; }
    const std::vector<std::pair<std::int64_t, double>>& pmf() const { return pmf_; }
    /// Cumulative probabilities aligned with pmf(), for inverse-cdf sampling.
    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    CommunityDist() = default;

    Kind kind_ = Kind::dirac;
    std::int64_t dirac_size_ = 0;
    std::int64_t trials_ = 0;
    double prob_ = 0.0;
    std::vector<std::pair<std::int64_t, double>> pmf_;
    std::vector<double> cumulative_;
};

// Full model quadruple: node count, community count, community size
// distribution, per-community link probability.
class ModelParams {
public:
    ModelParams(std::int64_t node_count, std::int64_t community_count,
                CommunityDist size_dist, double link_prob);

    std::int64_t node_count() const { return node_count_; }
    std::int64_t community_count() const { return community_count_; }
    const CommunityDist& size_dist() const { return size_dist_; }
    double link_prob() const { return link_prob_; }

private:
    std::int64_t node_count_;
    std::int64_t community_count_;
    CommunityDist size_dist_;
    double link_prob_;
};

// (lambda, mu, q) parameterization with binomial community sizes:
// lambda is the target mean degree, mu the mean number of community
// memberships per node. Derives m = floor(mu^2 q n / lambda) and
// p = lambda / (mu q n); rejects combinations where p leaves (0,1) or
// m would be zero (the node count is too small for the triple).
class BernoulliParams {
public:
    BernoulliParams(double mean_degree, double mean_memberships, double link_prob,
                    std::int64_t node_count);

    double mean_degree() const { return mean_degree_; }
    double mean_memberships() const { return mean_memberships_; }
    double link_prob() const { return link_prob_; }
    std::int64_t node_count() const { return node_count_; }
    std::int64_t community_count() const { return community_count_; }
    double inclusion_prob() const { return inclusion_prob_; }

    ModelParams to_model() const;

private:
    double mean_degree_;
    double mean_memberships_;
    double link_prob_;
    std::int64_t node_count_;
    std::int64_t community_count_;
    double inclusion_prob_;
};

/// Probability that one community covers r given nodes. Requires 1 <= r <= n.
double cover_prob(const ModelParams& params, int r);

} // namespace trig
