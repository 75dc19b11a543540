#pragma once

#include <utility>

#include "trig/model.hpp"

namespace trig {

// Closed-form and asymptotic local characteristics of a model. The
// asymptotic quantities are accurate up to relative O(m p2 q) corrections;
// sparse_regime flags whether that guard is comfortably small.
struct ModelCharacteristics {
    double link_prob_exact = 0.0;
    double link_prob_asymp = 0.0;
    double two_star_density = 0.0;
    double triangle_density = 0.0;
    double transitivity = 0.0;
    double degree_mean = 0.0;
    double degree_variance = 0.0;
    double sparse_guard = 0.0; // m * p2 * q
    bool sparse_regime = false;
};

/// Exactly 1 - (1 - q p2)^m, evaluated as -expm1(m log1p(-q p2)) so tiny
/// q p2 with huge m does not underflow.
double link_prob_exact(const ModelParams& params);

/// Leading-order link probability m p2 q.
double link_prob_asymp(const ModelParams& params);

/// q^2 ( m p3 + (m)_2 p2^2 ).
double two_star_density_asymp(const ModelParams& params);

/// q^3 ( m p3 + 3 (m)_2 p2 p3 + (m)_3 p2^3 ).
double triangle_density_asymp(const ModelParams& params);

/// q p3 / ( p3 + (m-1) p2^2 ); always in [0, q].
double transitivity_asymp(const ModelParams& params);

/// (mean, variance): m n p2 q and m n p2 q (1 + n q (p3/p2 - p2)).
std::pair<double, double> degree_moments_asymp(const ModelParams& params);

/// m p2 q; values below 0.1 mark the sparse regime where the asymptotic
/// formulas above hold to ~10%.
double sparse_guard(const ModelParams& params);

ModelCharacteristics characteristics(const ModelParams& params);

/// Upper bound (1 + lambda^2/(sigma2 - lambda))^{-1} on the transitivity
/// attainable at mean degree lambda and degree variance sigma2. Rejects
/// sigma2 <= lambda (a variance below the mean is unattainable).
double attainable_transitivity_bound(double mean_degree, double degree_variance);

} // namespace trig
