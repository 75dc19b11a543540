#include "trig/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace trig {

namespace {

constexpr double kSparseGuardLimit = 0.1;

// p2 and p3 with the degenerate node counts mapped to zero (a model with
// fewer than r nodes cannot cover r of them).
double p2_or_zero(const ModelParams& params) {
    return params.node_count() >= 2 ? cover_prob(params, 2) : 0.0;
}

double p3_or_zero(const ModelParams& params) {
    return params.node_count() >= 3 ? cover_prob(params, 3) : 0.0;
}

} // namespace

double link_prob_exact(const ModelParams& params) {
    const std::int64_t m = params.community_count();
    if (m == 0) return 0.0;
    const double x = params.link_prob() * p2_or_zero(params);
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(m) * std::log1p(-x));
}

double link_prob_asymp(const ModelParams& params) {
    return static_cast<double>(params.community_count()) * p2_or_zero(params) *
           params.link_prob();
}

double two_star_density_asymp(const ModelParams& params) {
    const auto m = static_cast<double>(params.community_count());
    const double q = params.link_prob();
    const double p2 = p2_or_zero(params);
    const double p3 = p3_or_zero(params);
    return q * q * (m * p3 + falling_factorial(m, 2) * p2 * p2);
}

double triangle_density_asymp(const ModelParams& params) {
    const auto m = static_cast<double>(params.community_count());
    const double q = params.link_prob();
    const double p2 = p2_or_zero(params);
    const double p3 = p3_or_zero(params);
    return q * q * q *
           (m * p3 + 3.0 * falling_factorial(m, 2) * p2 * p3 +
            falling_factorial(m, 3) * p2 * p2 * p2);
}

double transitivity_asymp(const ModelParams& params) {
    const std::int64_t m = params.community_count();
    if (m == 0) return 0.0;
    const double p2 = p2_or_zero(params);
    const double p3 = p3_or_zero(params);
    const double denom = p3 + static_cast<double>(m - 1) * p2 * p2;
    if (denom <= 0.0) return 0.0;
    return params.link_prob() * p3 / denom;
}

std::pair<double, double> degree_moments_asymp(const ModelParams& params) {
    const auto m = static_cast<double>(params.community_count());
    const auto n = static_cast<double>(params.node_count());
    const double q = params.link_prob();
    const double p2 = p2_or_zero(params);
    if (p2 <= 0.0 || m == 0.0) return {0.0, 0.0};
    const double p3 = p3_or_zero(params);
    const double mean = m * n * p2 * q;
    const double variance = mean * (1.0 + n * q * (p3 / p2 - p2));
    return {mean, variance};
}

double sparse_guard(const ModelParams& params) {
    return static_cast<double>(params.community_count()) * p2_or_zero(params) *
           params.link_prob();
}

ModelCharacteristics characteristics(const ModelParams& params) {
    ModelCharacteristics c;
    c.link_prob_exact = link_prob_exact(params);
    c.link_prob_asymp = link_prob_asymp(params);
    c.two_star_density = two_star_density_asymp(params);
    c.triangle_density = triangle_density_asymp(params);
    c.transitivity = transitivity_asymp(params);
    const auto [mean, variance] = degree_moments_asymp(params);
    c.degree_mean = mean;
    c.degree_variance = variance;
    c.sparse_guard = sparse_guard(params);
    c.sparse_regime = c.sparse_guard < kSparseGuardLimit;
    return c;
}

double attainable_transitivity_bound(double mean_degree, double degree_variance) {
    if (!(mean_degree > 0.0)) {
        throw std::invalid_argument("mean degree must be positive");
    }
    if (!(degree_variance > mean_degree)) {
        throw std::invalid_argument("variance below mean degree is unattainable");
    }
    return 1.0 / (1.0 + mean_degree * mean_degree / (degree_variance - mean_degree));
}

} // namespace trig
