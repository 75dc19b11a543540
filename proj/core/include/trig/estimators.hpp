#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trig/census.hpp"
#include "trig/graph.hpp"

namespace trig {

// Fitted (lambda, mu, q) with the derived quantities and validity flags.
// When the shared denominator n0*N_S2 - 2*N_K2^2 is nonpositive, mu/q/sigma
// are NaN and denominator_positive is false; the remaining fields are still
// populated. q is never clamped: out-of-range values are reported raw with
// q_in_range = false.
struct Estimates {
    double lambda = 0.0;
    double tau = 0.0;
    double q = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    std::int64_t m = 0;
    bool q_in_range = false;
    bool denominator_positive = false;
    bool tau_defined = false;
};

/// Moment estimators from observed counts on n0 of n nodes:
///   lambda = (n-1) N_K2 / C(n0,2)
///   mu     = 2 N_K2^2 / (n0 N_S2 - 2 N_K2^2)
///   q      = 3 n0 N_K3 / (n0 N_S2 - 2 N_K2^2)
///   tau    = 3 N_K3 / N_S2
/// plus m = floor(mu^2 q n / lambda) and sigma = sqrt(lambda (1 + lambda/mu)).
/// Count products are accumulated in 128-bit integers before any float
/// conversion. Requires 3 <= n0 <= n.
Estimates estimate(const CensusCounts& counts, std::int64_t node_count);

// estimate() plus the raw counts and the fitted sparse-regime guard
// m p2 q (NaN when the fit is undefined).
struct FitReport {
    Estimates estimates;
    CensusCounts counts;
    std::int64_t node_count = 0;
    double guard = 0.0;
};

/// End-to-end fit: induce n0 nodes (all of them when n0 is empty), count
/// motifs, estimate. Graphs too small for the estimators (n0 < 3) yield a
/// degenerate all-flags-false report instead of an error, so empty or tiny
/// inputs still produce diagnosable output.
FitReport fit_report(const Graph& g, std::optional<std::int64_t> n0 = std::nullopt,
                     InduceMode mode = InduceMode::first, std::uint64_t seed = 0);

/// JSON object {lambda, tau, q, mu, m, sigma, q_in_range,
/// denominator_positive, counts:{n0, links, two_stars, triangles}, guard};
/// undefined values serialize as null.
std::string to_json(const FitReport& report);
Estimates estimates_from_json(const std::string& text);

/// Table-style one-liner; out-of-range q prints as "- (value)".
std::string format_summary(const FitReport& report);

} // namespace trig
