#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "trig/census.hpp"
#include "trig/estimators.hpp"
#include "trig/generator.hpp"
#include "trig/model.hpp"
#include "trig/rng.hpp"

#include "support.hpp"

using trig::CensusCounts;
using trig::Estimates;
using trig::Graph;

namespace {

Graph disjoint_double(const Graph& g) {
    const auto n = static_cast<std::uint32_t>(g.node_count());
    std::vector<Graph::Edge> edges(g.edges().begin(), g.edges().end());
    for (const auto& [a, b] : g.edges()) edges.emplace_back(a + n, b + n);
    return Graph::from_edges(2 * g.node_count(), std::move(edges));
}

} // namespace

TEST_CASE("estimator formulas on frozen counts (dolphin-sized)") {
    // n = n0 = 62 with 159 links, 939 two-stars, 97 triangles
    const CensusCounts counts{62, 159, 939, 97};
    const Estimates est = trig::estimate(counts, 62);

    CHECK(est.lambda == doctest::Approx(61.0 * 159.0 / 1891.0));
    CHECK(std::round(est.lambda * 10.0) / 10.0 == doctest::Approx(5.1));

    CHECK(est.tau == doctest::Approx(3.0 * 97.0 / 939.0));
    CHECK(std::round(est.tau * 100.0) / 100.0 == doctest::Approx(0.31));

    // denominator 62*939 - 2*159^2 = 7656
    CHECK(est.denominator_positive);
    CHECK(est.mu == doctest::Approx(2.0 * 159.0 * 159.0 / 7656.0));
    CHECK(est.q == doctest::Approx(3.0 * 62.0 * 97.0 / 7656.0));
    CHECK(est.q == doctest::Approx(2.36).epsilon(0.005));
    CHECK_FALSE(est.q_in_range); // reported raw, flagged out of (0,1]

    // derived outputs invert the parameterization exactly
    CHECK(est.sigma * est.sigma == doctest::Approx(est.lambda * (1.0 + est.lambda / est.mu)));
    CHECK(est.m == static_cast<std::int64_t>(
                       std::floor(est.mu * est.mu * est.q * 62.0 / est.lambda)));
}

TEST_CASE("triangle-free counts give q = 0, flagged out of range") {
    const CensusCounts counts{10, 9, 20, 0};
    const Estimates est = trig::estimate(counts, 10);
    CHECK(est.denominator_positive); // 200 - 162 = 38
    CHECK(est.q == 0.0);
    CHECK_FALSE(est.q_in_range);
    CHECK(est.tau == 0.0);
    CHECK(est.tau_defined);
}

TEST_CASE("nonpositive denominator reports undefined mu and q") {
    // K4: 4*12 - 2*36 = -24
    const CensusCounts counts{4, 6, 12, 4};
    const Estimates est = trig::estimate(counts, 4);
    CHECK_FALSE(est.denominator_positive);
    CHECK(std::isnan(est.mu));
    CHECK(std::isnan(est.q));
    CHECK(std::isnan(est.sigma));
    CHECK(est.lambda == doctest::Approx(3.0)); // still populated
    CHECK(est.tau == doctest::Approx(1.0));
}

TEST_CASE("estimate input validation") {
    CHECK_THROWS_AS(trig::estimate(CensusCounts{2, 1, 0, 0}, 10), std::invalid_argument);
    CHECK_THROWS_AS(trig::estimate(CensusCounts{5, 1, 0, 0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(trig::estimate(CensusCounts{5, -1, 0, 0}, 5), std::invalid_argument);
}

TEST_CASE("zero two-stars leaves tau undefined") {
    const CensusCounts counts{5, 2, 0, 0};
    const Estimates est = trig::estimate(counts, 5);
    CHECK_FALSE(est.tau_defined);
    CHECK(std::isnan(est.tau));
}

TEST_CASE("fit report on a triangle") {
    std::vector<Graph::Edge> edges{{0, 1}, {0, 2}, {1, 2}};
    const Graph k3 = Graph::from_edges(3, std::move(edges));
    const auto report = trig::fit_report(k3);
    CHECK(report.estimates.tau == doctest::Approx(1.0));
    CHECK(report.estimates.lambda == doctest::Approx(2.0)); // (n-1) * density 1
}

TEST_CASE("fit report on empty and tiny graphs degrades gracefully") {
    const auto empty = trig::fit_report(Graph::from_edges(0, {}));
    CHECK(empty.estimates.lambda == 0.0);
    CHECK_FALSE(empty.estimates.denominator_positive);
    CHECK(std::isnan(empty.estimates.mu));
    CHECK(std::isnan(empty.estimates.q));

    std::vector<Graph::Edge> one{{0, 1}};
    const auto pair_graph = trig::fit_report(Graph::from_edges(2, std::move(one)));
    CHECK(pair_graph.estimates.lambda == doctest::Approx(1.0));
    CHECK_FALSE(pair_graph.estimates.denominator_positive);
}

TEST_CASE("fit report rejects oversized n0") {
    const Graph g = testkit::random_graph(10, 0.3, 3);
    CHECK_THROWS_AS(trig::fit_report(g, 11), std::invalid_argument);
}

TEST_CASE("tau is invariant under disjoint self-union") {
    const Graph g = testkit::random_graph(40, 0.15, 11);
    const auto single = trig::fit_report(g);
    const auto doubled = trig::fit_report(disjoint_double(g));
    REQUIRE(single.estimates.tau_defined);
    CHECK(doubled.counts.links == 2 * single.counts.links);
    CHECK(doubled.counts.two_stars == 2 * single.counts.two_stars);
    CHECK(doubled.counts.triangles == 2 * single.counts.triangles);
    CHECK(doubled.estimates.tau == doctest::Approx(single.estimates.tau));
}

TEST_CASE("lambda scales exactly with n0 when counts are held fixed") {
    const CensusCounts counts{30, 60, 150, 20};
    const Estimates base = trig::estimate(counts, 100);
    CensusCounts wider = counts;
    wider.n0 = 60;
    const Estimates scaled = trig::estimate(wider, 100);
    const double ratio = (30.0 * 29.0 / 2.0) / (60.0 * 59.0 / 2.0);
    CHECK(scaled.lambda == doctest::Approx(base.lambda * ratio));
}

TEST_CASE("parameters recovered from one large generated graph") {
    const std::int64_t n = 50000;
    const trig::BernoulliParams bp(5.0, 2.0, 0.5, n);
    const Graph g = trig::generate(bp.to_model(), 4242);
    const auto report = trig::fit_report(g);
    REQUIRE(report.estimates.denominator_positive);
    CHECK(std::abs(report.estimates.lambda - 5.0) / 5.0 < 0.05);
    CHECK(std::abs(report.estimates.mu - 2.0) / 2.0 < 0.15);
    CHECK(std::abs(report.estimates.q - 0.5) / 0.5 < 0.15);
    CHECK(report.estimates.q_in_range);
    CHECK(report.guard < 0.1); // fitted model sits in the sparse regime
}

TEST_CASE("q=1 recovers the clique-community special case") {
    const std::int64_t n = 20000;
    const trig::BernoulliParams bp(5.0, 2.0, 1.0, n);
    const Graph g = trig::generate(bp.to_model(), 1717);
    const auto est = trig::fit_report(g).estimates;
    REQUIRE(est.denominator_positive);
    CHECK(std::abs(est.q - 1.0) < 0.15);
    CHECK(std::abs(est.lambda - 5.0) / 5.0 < 0.05);
    CHECK(std::abs(est.mu - 2.0) / 2.0 < 0.15);
}

TEST_CASE("small consistency sweep trends the right way") {
    const double truth_lambda = 5.0;
    const double truth_mu = 2.0;
    const double truth_q = 0.5;
    const int reps = 7;
    std::vector<double> medians_q;
    for (const std::int64_t n : {2000, 8000}) {
        std::vector<double> errs;
        for (int rep = 0; rep < reps; ++rep) {
            const trig::BernoulliParams bp(truth_lambda, truth_mu, truth_q, n);
            const Graph g = trig::generate(bp.to_model(), trig::mix_seed(808, n + rep));
            const auto est = trig::fit_report(g).estimates;
            REQUIRE(est.denominator_positive);
            errs.push_back(std::abs(est.q - truth_q) / truth_q);
        }
        std::sort(errs.begin(), errs.end());
        medians_q.push_back(errs[reps / 2]);
    }
    CHECK(medians_q[0] < 0.30);
    CHECK(medians_q[1] < 0.15);
}

TEST_CASE("fit report json round trip") {
    SUBCASE("well-defined fit") {
        const Graph g = testkit::random_graph(50, 0.1, 21);
        const auto report = trig::fit_report(g);
        const Estimates back = trig::estimates_from_json(trig::to_json(report));
        CHECK(back.lambda == doctest::Approx(report.estimates.lambda));
        CHECK(back.tau == doctest::Approx(report.estimates.tau));
        CHECK(back.q == doctest::Approx(report.estimates.q));
        CHECK(back.mu == doctest::Approx(report.estimates.mu));
        CHECK(back.sigma == doctest::Approx(report.estimates.sigma));
        CHECK(back.m == report.estimates.m);
        CHECK(back.q_in_range == report.estimates.q_in_range);
        CHECK(back.denominator_positive == report.estimates.denominator_positive);
    }
    SUBCASE("undefined values travel as null") {
        const auto report = trig::fit_report(Graph::from_edges(0, {}));
        const Estimates back = trig::estimates_from_json(trig::to_json(report));
        CHECK(std::isnan(back.mu));
        CHECK(std::isnan(back.q));
        CHECK_FALSE(back.denominator_positive);
    }
}

TEST_CASE("summary formatting mirrors the out-of-range convention") {
    const CensusCounts counts{62, 159, 939, 97};
    trig::FitReport report;
    report.estimates = trig::estimate(counts, 62);
    report.counts = counts;
    report.node_count = 62;
    const auto line = trig::format_summary(report);
    CHECK(line.find("- (2.36)") != std::string::npos);
}
