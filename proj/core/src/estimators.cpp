#include "trig/estimators.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace trig {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double to_double(__int128 v) {
    return static_cast<double>(v);
}

nlohmann::json number_or_null(double v) {
    if (std::isnan(v) || std::isinf(v)) return nullptr;
    return v;
}

double number_from(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? kNaN : v.get<double>();
}

} // namespace

Estimates estimate(const CensusCounts& counts, std::int64_t node_count) {
    if (counts.n0 < 3) throw std::invalid_argument("estimators need n0 >= 3");
    if (node_count < counts.n0) throw std::invalid_argument("n0 cannot exceed n");
    if (counts.links < 0 || counts.two_stars < 0 || counts.triangles < 0) {
        throw std::invalid_argument("counts must be nonnegative");
    }

    Estimates est;
    const double pairs_observed = to_double(static_cast<__int128>(counts.n0) * (counts.n0 - 1) / 2);
    est.lambda = static_cast<double>(node_count - 1) *
                 static_cast<double>(counts.links) / pairs_observed;

    // shared denominator n0 N_S2 - 2 N_K2^2, kept in 128-bit integers
    const __int128 denominator = static_cast<__int128>(counts.n0) * counts.two_stars -
                                 2 * static_cast<__int128>(counts.links) * counts.links;
    est.denominator_positive = denominator > 0;

    if (counts.two_stars > 0) {
        est.tau = 3.0 * static_cast<double>(counts.triangles) /
                  static_cast<double>(counts.two_stars);
        est.tau_defined = true;
    } else {
        est.tau = kNaN;
    }

    if (est.denominator_positive) {
        const double denom = to_double(denominator);
        est.mu = to_double(2 * static_cast<__int128>(counts.links) * counts.links) / denom;
        est.q = to_double(3 * static_cast<__int128>(counts.n0) * counts.triangles) / denom;
        est.q_in_range = est.q > 0.0 && est.q <= 1.0;
        est.sigma = est.mu > 0.0 ? std::sqrt(est.lambda * (1.0 + est.lambda / est.mu)) : kNaN;
        if (est.lambda > 0.0) {
            const double m_value = std::floor(est.mu * est.mu * est.q *
                                              static_cast<double>(node_count) / est.lambda);
            est.m = m_value < 9.0e18 ? static_cast<std::int64_t>(m_value)
                                     : std::numeric_limits<std::int64_t>::max();
        } else {
            est.m = 0;
        }
    } else {
        est.mu = kNaN;
        est.q = kNaN;
        est.sigma = kNaN;
        est.m = 0;
        est.q_in_range = false;
    }
    return est;
}

FitReport fit_report(const Graph& g, std::optional<std::int64_t> n0, InduceMode mode,
                     std::uint64_t seed) {
    FitReport report;
    report.node_count = g.node_count();

    const std::int64_t observed = n0.value_or(g.node_count());
    if (observed < 0 || observed > g.node_count()) {
        throw std::invalid_argument("n0 must be in [0, n]");
    }

    if (observed < 3) {
        // too small for any triple-based statistic: degenerate report
        report.counts.n0 = observed;
        if (observed >= 1) {
            const Graph sub = observed == g.node_count() ? g : induce(g, observed, mode, seed);
            report.counts = count_motifs(sub);
        }
        report.estimates = Estimates{};
        if (observed == 2) {
            report.estimates.lambda = static_cast<double>(g.node_count() - 1) *
                                      static_cast<double>(report.counts.links);
        }
        report.estimates.tau = kNaN;
        report.estimates.mu = kNaN;
        report.estimates.q = kNaN;
        report.estimates.sigma = kNaN;
        report.guard = kNaN;
        return report;
    }

    if (observed == g.node_count()) {
        report.counts = count_motifs(g);
    } else {
        report.counts = count_motifs(induce(g, observed, mode, seed));
    }
    report.estimates = estimate(report.counts, g.node_count());

    // sparse-regime guard of the fitted model: m p2 q with p = lambda/(mu q n)
    const Estimates& est = report.estimates;
    if (est.denominator_positive && est.lambda > 0.0 && est.mu > 0.0 && est.q > 0.0) {
        const double p = est.lambda / (est.mu * est.q * static_cast<double>(g.node_count()));
        report.guard = static_cast<double>(est.m) * p * p * est.q;
    } else {
        report.guard = kNaN;
    }
    return report;
}

std::string to_json(const FitReport& report) {
    const Estimates& est = report.estimates;
    nlohmann::json j;
    j["lambda"] = number_or_null(est.lambda);
    j["tau"] = number_or_null(est.tau);
    j["q"] = number_or_null(est.q);
    j["mu"] = number_or_null(est.mu);
    j["m"] = est.m;
    j["sigma"] = number_or_null(est.sigma);
    j["q_in_range"] = est.q_in_range;
    j["denominator_positive"] = est.denominator_positive;
    j["counts"] = {{"n0", report.counts.n0},
                   {"links", report.counts.links},
                   {"two_stars", report.counts.two_stars},
                   {"triangles", report.counts.triangles}};
    j["guard"] = number_or_null(report.guard);
    return j.dump(2);
}

Estimates estimates_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Estimates est;
    est.lambda = number_from(j, "lambda");
    est.tau = number_from(j, "tau");
    est.q = number_from(j, "q");
    est.mu = number_from(j, "mu");
    est.sigma = number_from(j, "sigma");
    est.m = j.at("m").get<std::int64_t>();
    est.q_in_range = j.at("q_in_range").get<bool>();
    est.denominator_positive = j.at("denominator_positive").get<bool>();
    est.tau_defined = !std::isnan(est.tau);
    return est;
}

std::string format_summary(const FitReport& report) {
    const Estimates& est = report.estimates;
    char q_text[64];
    if (!est.denominator_positive) {
        std::snprintf(q_text, sizeof(q_text), "undefined");
    } else if (est.q_in_range) {
        std::snprintf(q_text, sizeof(q_text), "%.3g", est.q);
    } else {
        std::snprintf(q_text, sizeof(q_text), "- (%.3g)", est.q);
    }
    char line[256];
    std::snprintf(line, sizeof(line),
                  "n=%lld n0=%lld lambda=%.3g tau=%.3g q=%s mu=%.3g m=%lld sigma=%.3g",
                  static_cast<long long>(report.node_count),
                  static_cast<long long>(report.counts.n0), est.lambda, est.tau, q_text,
                  est.mu, static_cast<long long>(est.m), est.sigma);
    return line;
}

} // namespace trig
