// trig: generate, measure and fit random intersection graphs with thinned
// overlapping communities.
//
// Exit codes: 0 success, 2 argument/parameter error, 3 data/IO error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trig/census.hpp"
#include "trig/estimators.hpp"
#include "trig/generator.hpp"
#include "trig/graph.hpp"
#include "trig/model.hpp"
#include "trig/rng.hpp"
#include "trig/theory.hpp"

namespace {

using trig::CommunityDist;
using trig::Graph;
using trig::InduceMode;
using trig::ModelParams;

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream items(text);
    std::string token;
    while (std::getline(items, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("malformed ") + what + " list: " + text);
        }
    }
    if (values.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
    std::vector<std::int64_t> values;
    for (const double v : parse_double_list(text, what)) {
        values.push_back(static_cast<std::int64_t>(v));
    }
    return values;
}

CommunityDist parse_dist(const std::string& dist_text, std::int64_t node_count) {
    const auto colon = dist_text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("--dist expects dirac:<d>, binomial:<p> or pmf:<path>");
    }
    const std::string family = dist_text.substr(0, colon);
    const std::string arg = dist_text.substr(colon + 1);
    try {
        if (family == "dirac") return CommunityDist::dirac(std::stoll(arg));
        if (family == "binomial") return CommunityDist::binomial(node_count, std::stod(arg));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed --dist argument: " + dist_text);
    }
    if (family == "pmf") return CommunityDist::from_pmf_file(arg);
    throw std::invalid_argument("unknown --dist family: " + family);
}

struct ModelFlags {
    std::int64_t node_count = 0;
    std::int64_t community_count = -1;
    std::string dist_text;
    double q = -1.0;
    std::string bernoulli_text;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--n", node_count, "node count")->required();
        cmd.add_option("--m", community_count, "community count");
        cmd.add_option("--dist", dist_text, "community size distribution: dirac:<d>, binomial:<p>, pmf:<path>");
        cmd.add_option("--q", q, "per-community link probability");
        cmd.add_option("--bernoulli", bernoulli_text,
                       "lambda,mu,q triple; implies binomial sizes with m and p derived");
    }

    ModelParams build() const {
        if (!bernoulli_text.empty()) {
            const auto v = parse_double_list(bernoulli_text, "--bernoulli");
            if (v.size() != 3) {
                throw std::invalid_argument("--bernoulli expects lambda,mu,q");
            }
            return trig::BernoulliParams(v[0], v[1], v[2], node_count).to_model();
        }
        if (community_count < 0 || dist_text.empty() || q < 0.0) {
            throw std::invalid_argument("need either --bernoulli or all of --m, --dist, --q");
        }
        return ModelParams(node_count, community_count, parse_dist(dist_text, node_count), q);
    }
};

Graph load_input(const std::string& path) {
    trig::EdgeListStats stats;
    Graph g = trig::load_edge_list(path, &stats);
    if (stats.self_loops > 0 || stats.duplicates > 0) {
        std::cerr << "note: dropped " << stats.self_loops << " self-loops and "
                  << stats.duplicates << " duplicate edges\n";
    }
    return g;
}

InduceMode parse_mode(const std::string& text) {
    if (text == "first") return InduceMode::first;
    if (text == "random") return InduceMode::random;
    throw std::invalid_argument("--sample-mode must be first or random");
}

// All file output funnels through here so stdout and file paths behave
// identically.
template <typename WriteFn>
void with_output(const std::string& path, WriteFn&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write(out);
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

// --- generate ---------------------------------------------------------

struct GenerateConfig {
    ModelFlags model;
    std::uint64_t seed = 0;
    std::string output;
};

int run_generate(const GenerateConfig& cfg) {
    const ModelParams params = cfg.model.build();
    const Graph g = trig::generate(params, cfg.seed);
    with_output(cfg.output, [&](std::ostream& out) { trig::write_edge_list(g, out); });
    const double mean_degree =
        params.node_count() > 0
            ? 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(params.node_count())
            : 0.0;
    std::cerr << "n=" << params.node_count() << " m=" << params.community_count()
              << " edges=" << g.edge_count() << " mean_degree=" << mean_degree << "\n";
    return 0;
}

// --- census -----------------------------------------------------------

struct CensusConfig {
    std::string input;
    std::int64_t n0 = -1;
    std::string mode = "first";
    std::uint64_t seed = 0;
    bool oracle = false;
    std::string output;
};

int run_census(const CensusConfig& cfg) {
    Graph g = load_input(cfg.input);
    if (cfg.n0 >= 0) {
        if (cfg.n0 > g.node_count()) {
            throw std::invalid_argument("--n0 exceeds the graph's node count");
        }
        g = trig::induce(g, cfg.n0, parse_mode(cfg.mode), cfg.seed);
    }
    const trig::CensusCounts counts = trig::count_motifs(g);
    std::string payload;
    if (cfg.oracle) {
        const trig::CensusCounts check = trig::count_motifs_oracle(g);
        nlohmann::json j;
        j["counts"] = nlohmann::json::parse(trig::to_json(counts));
        j["oracle"] = nlohmann::json::parse(trig::to_json(check));
        payload = j.dump(2);
    } else {
        payload = nlohmann::json::parse(trig::to_json(counts)).dump(2);
    }
    with_output(cfg.output, [&](std::ostream& out) { out << payload << "\n"; });
    return 0;
}

// --- fit --------------------------------------------------------------

struct FitConfig {
    std::string input;
    std::string n0 = "all";
    std::string mode = "first";
    std::uint64_t seed = 0;
    std::string output;
};

int run_fit(const FitConfig& cfg) {
    const Graph g = load_input(cfg.input);
    std::optional<std::int64_t> n0;
    if (cfg.n0 != "all") {
        try {
            n0 = std::stoll(cfg.n0);
        } catch (const std::exception&) {
            throw std::invalid_argument("--n0 must be an integer or `all`");
        }
        if (*n0 < 1 || *n0 > g.node_count()) {
            throw std::invalid_argument("--n0 must be in [1, n]");
        }
    }
    const trig::FitReport report = trig::fit_report(g, n0, parse_mode(cfg.mode), cfg.seed);
    with_output(cfg.output, [&](std::ostream& out) { out << trig::to_json(report) << "\n"; });
    std::cerr << trig::format_summary(report) << "\n";
    return 0;
}

// --- simulate ---------------------------------------------------------

struct SimulateConfig {
    std::string bernoulli_text;
    std::string n_text;
    std::int64_t node_count_unused = 0;
    int reps = 20;
    std::uint64_t seed = 0;
    double subsample_exponent = 1.0;
    bool timing = false;
    std::string output;
};

struct SimRow {
    std::int64_t n = 0;
    int rep = 0;
    trig::Estimates est;
    double runtime_ms = 0.0;
};

int run_simulate(const SimulateConfig& cfg) {
    const auto triple = parse_double_list(cfg.bernoulli_text, "--bernoulli");
    if (triple.size() != 3) throw std::invalid_argument("--bernoulli expects lambda,mu,q");
    const auto sizes = parse_int_list(cfg.n_text, "--n");
    if (cfg.reps < 0) throw std::invalid_argument("--reps must be nonnegative");
    if (!(cfg.subsample_exponent > 0.0) || cfg.subsample_exponent > 1.0) {
        throw std::invalid_argument("--subsample-exponent must be in (0,1]");
    }

    // validate every size up front so a bad grid fails before any work
    for (const std::int64_t n : sizes) {
        (void)trig::BernoulliParams(triple[0], triple[1], triple[2], n);
    }

    const int jobs_total = static_cast<int>(sizes.size()) * cfg.reps;
    std::vector<SimRow> rows(jobs_total);

    std::atomic<int> next_job{0};
    const auto worker = [&] {
        while (true) {
            const int job = next_job.fetch_add(1);
            if (job >= jobs_total) break;
            const int size_idx = job / cfg.reps;
            const int rep = job % cfg.reps;
            const std::int64_t n = sizes[size_idx];

            const auto started = std::chrono::steady_clock::now();
            const trig::BernoulliParams bp(triple[0], triple[1], triple[2], n);
            const Graph g = trig::generate(bp.to_model(), trig::mix_seed(cfg.seed, job));
            std::int64_t n0 = n;
            if (cfg.subsample_exponent < 1.0) {
                n0 = std::min<std::int64_t>(
                    n, static_cast<std::int64_t>(
                           std::ceil(std::pow(static_cast<double>(n), cfg.subsample_exponent))));
            }
            const trig::FitReport report = trig::fit_report(g, n0);
            const auto finished = std::chrono::steady_clock::now();

            SimRow& row = rows[job];
            row.n = n;
            row.rep = rep;
            row.est = report.estimates;
            row.runtime_ms =
                std::chrono::duration<double, std::milli>(finished - started).count();
        }
    };

    const int threads = std::min(trig::thread_count_from_env(), std::max(jobs_total, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& w : pool) w.join();
    }

    const auto median_of = [](std::vector<double> values) {
        std::sort(values.begin(), values.end());
        const std::size_t k = values.size();
        if (k == 0) return std::numeric_limits<double>::quiet_NaN();
        return k % 2 == 1 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
    };
    const auto rel_err = [](double hat, double truth) {
        if (std::isnan(hat)) return std::numeric_limits<double>::infinity();
        return std::abs(hat - truth) / truth;
    };

    with_output(cfg.output, [&](std::ostream& out) {
        out << "n,rep,lambda_hat,mu_hat,q_hat,runtime_ms\n";
        for (const SimRow& row : rows) {
            out << row.n << "," << row.rep << "," << format_double(row.est.lambda) << ","
                << format_double(row.est.mu) << "," << format_double(row.est.q) << ",";
            if (cfg.timing) {
                out << static_cast<std::int64_t>(std::lround(row.runtime_ms));
            }
            out << "\n";
        }
        if (cfg.reps > 0) {
            for (std::size_t s = 0; s < sizes.size(); ++s) {
                std::vector<double> err_lambda;
                std::vector<double> err_mu;
                std::vector<double> err_q;
                for (int rep = 0; rep < cfg.reps; ++rep) {
                    const SimRow& row = rows[s * cfg.reps + rep];
                    err_lambda.push_back(rel_err(row.est.lambda, triple[0]));
                    err_mu.push_back(rel_err(row.est.mu, triple[1]));
                    err_q.push_back(rel_err(row.est.q, triple[2]));
                }
                out << sizes[s] << ",median_rel_err," << format_double(median_of(err_lambda))
                    << "," << format_double(median_of(err_mu)) << ","
                    << format_double(median_of(err_q)) << ",\n";
            }
        }
    });
    return 0;
}

// --- region -----------------------------------------------------------

struct RegionConfig {
    std::string lambda_text = "1,2,4,7,11,16";
    std::string sigma_text;
    double sigma_min = 0.5;
    double sigma_max = 40.0;
    int sigma_count = 80;
    std::string output;
};

int run_region(const RegionConfig& cfg) {
    const auto lambdas = parse_double_list(cfg.lambda_text, "--lambda");
    std::vector<double> sigmas;
    if (!cfg.sigma_text.empty()) {
        sigmas = parse_double_list(cfg.sigma_text, "--sigma");
    } else {
        if (cfg.sigma_count < 2 || !(cfg.sigma_max > cfg.sigma_min)) {
            throw std::invalid_argument("bad sigma grid");
        }
        for (int i = 0; i < cfg.sigma_count; ++i) {
            sigmas.push_back(cfg.sigma_min + (cfg.sigma_max - cfg.sigma_min) * i /
                                                 (cfg.sigma_count - 1));
        }
    }

    with_output(cfg.output, [&](std::ostream& out) {
        out << "lambda,sigma,tau_max,attainable\n";
        for (const double lambda : lambdas) {
            if (!(lambda > 0.0)) throw std::invalid_argument("lambda values must be positive");
            for (const double sigma : sigmas) {
                const double sigma2 = sigma * sigma;
                out << format_double(lambda) << "," << format_double(sigma) << ",";
                if (sigma > 0.0 && sigma2 > lambda) {
                    out << format_double(trig::attainable_transitivity_bound(lambda, sigma2))
                        << ",1\n";
                } else {
                    out << ",0\n"; // sigma^2 <= lambda: unattainable, flagged
                }
            }
        }
    });
    return 0;
}

// --- describe ---------------------------------------------------------

struct DescribeConfig {
    ModelFlags model;
    std::string output;
};

int run_describe(const DescribeConfig& cfg) {
    const ModelParams params = cfg.model.build();
    const trig::ModelCharacteristics c = trig::characteristics(params);

    nlohmann::json dist;
    switch (params.size_dist().kind()) {
    case CommunityDist::Kind::dirac:
        dist = {{"kind", "dirac"}, {"size", params.size_dist().dirac_size()}};
        break;
    case CommunityDist::Kind::binomial:
        dist = {{"kind", "binomial"},
                {"trials", params.size_dist().binomial_trials()},
                {"prob", params.size_dist().binomial_prob()}};
        break;
    case CommunityDist::Kind::explicit_pmf: {
        dist = {{"kind", "explicit"}};
        auto& entries = dist["pmf"];
        for (const auto& [size, prob] : params.size_dist().pmf()) {
            entries.push_back({size, prob});
        }
        break;
    }
    }

    nlohmann::json j;
    j["model"] = {{"n", params.node_count()},
                  {"m", params.community_count()},
                  {"q", params.link_prob()},
                  {"dist", dist}};
    j["pair_cover_prob"] = params.node_count() >= 2 ? trig::cover_prob(params, 2) : 0.0;
    j["triple_cover_prob"] = params.node_count() >= 3 ? trig::cover_prob(params, 3) : 0.0;
    j["link_prob_exact"] = c.link_prob_exact;
    j["link_prob_asymp"] = c.link_prob_asymp;
    j["two_star_density_asymp"] = c.two_star_density;
    j["triangle_density_asymp"] = c.triangle_density;
    j["transitivity_asymp"] = c.transitivity;
    j["degree_mean_asymp"] = c.degree_mean;
    j["degree_variance_asymp"] = c.degree_variance;
    j["sparse_guard"] = c.sparse_guard;
    j["sparse_regime"] = c.sparse_regime;

    with_output(cfg.output, [&](std::ostream& out) { out << j.dump(2) << "\n"; });
    return 0;
}

// --- kappa ------------------------------------------------------------

struct KappaConfig {
    std::string edges_text;
};

int run_kappa(const KappaConfig& cfg) {
    const trig::SmallGraph r = trig::SmallGraph::parse(cfg.edges_text);
    std::cout << trig::kappa(r) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thinned random intersection graphs: generation, census, fitting"};
    app.require_subcommand(1);

    GenerateConfig generate_cfg;
    auto* generate_cmd =
        app.add_subcommand("generate", "sample a graph and write its edge list");
    generate_cfg.model.add_to(*generate_cmd);
    generate_cmd->add_option("--seed", generate_cfg.seed, "rng seed");
    generate_cmd->add_option("-o,--output", generate_cfg.output, "edge list path (default stdout)");

    CensusConfig census_cfg;
    auto* census_cmd = app.add_subcommand("census", "count links, 2-stars and triangles");
    census_cmd->add_option("input", census_cfg.input, "edge list file")->required();
    census_cmd->add_option("--n0", census_cfg.n0, "observe an induced n0-node subgraph")
        ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
    census_cmd->add_option("--sample-mode", census_cfg.mode, "first|random node selection");
    census_cmd->add_option("--seed", census_cfg.seed, "seed for --sample-mode random");
    census_cmd->add_flag("--oracle", census_cfg.oracle,
                         "also run the exhaustive checker (n <= 200)");
    census_cmd->add_option("-o,--output", census_cfg.output, "output path (default stdout)");

    FitConfig fit_cfg;
    auto* fit_cmd = app.add_subcommand("fit", "fit (lambda, mu, q) to an observed graph");
    fit_cmd->add_option("input", fit_cfg.input, "edge list file")->required();
    fit_cmd->add_option("--n0", fit_cfg.n0, "induced subgraph size or `all`");
    fit_cmd->add_option("--sample-mode", fit_cfg.mode, "first|random node selection");
    fit_cmd->add_option("--seed", fit_cfg.seed, "seed for --sample-mode random");
    fit_cmd->add_option("-o,--output", fit_cfg.output, "output path (default stdout)");

    SimulateConfig simulate_cfg;
    auto* simulate_cmd =
        app.add_subcommand("simulate", "parameter-recovery sweep over replications");
    simulate_cmd->add_option("--bernoulli", simulate_cfg.bernoulli_text, "lambda,mu,q triple")
        ->required();
    simulate_cmd->add_option("--n", simulate_cfg.n_text, "comma-separated node counts")
        ->required();
    simulate_cmd->add_option("--reps", simulate_cfg.reps, "replications per node count");
    simulate_cmd->add_option("--seed", simulate_cfg.seed, "base seed");
    simulate_cmd->add_option("--subsample-exponent", simulate_cfg.subsample_exponent,
                             "observe n0 = ceil(n^e) nodes (default 1: all)");
    simulate_cmd->add_flag("--timing", simulate_cfg.timing,
                           "fill the runtime_ms column (not byte-reproducible)");
    simulate_cmd->add_option("-o,--output", simulate_cfg.output, "CSV path (default stdout)");

    RegionConfig region_cfg;
    auto* region_cmd =
        app.add_subcommand("region", "attainable transitivity bound over a (lambda, sigma) grid");
    region_cmd->add_option("--lambda", region_cfg.lambda_text, "comma-separated mean degrees");
    region_cmd->add_option("--sigma", region_cfg.sigma_text,
                           "explicit comma-separated sigma values");
    region_cmd->add_option("--sigma-min", region_cfg.sigma_min, "grid start");
    region_cmd->add_option("--sigma-max", region_cfg.sigma_max, "grid end");
    region_cmd->add_option("--sigma-count", region_cfg.sigma_count, "grid points");
    region_cmd->add_option("-o,--output", region_cfg.output, "CSV path (default stdout)");

    DescribeConfig describe_cfg;
    auto* describe_cmd =
        app.add_subcommand("describe", "closed-form and asymptotic model characteristics");
    describe_cfg.model.add_to(*describe_cmd);
    describe_cmd->add_option("-o,--output", describe_cfg.output, "output path (default stdout)");

    KappaConfig kappa_cfg;
    auto* kappa_cmd =
        app.add_subcommand("kappa", "edge-partition statistic of a small graph");
    kappa_cmd->add_option("edges", kappa_cfg.edges_text, "inline edge list, e.g. \"0-1,0-2\"")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate_cmd->parsed()) return run_generate(generate_cfg);
        if (census_cmd->parsed()) return run_census(census_cfg);
        if (fit_cmd->parsed()) return run_fit(fit_cfg);
        if (simulate_cmd->parsed()) return run_simulate(simulate_cfg);
        if (region_cmd->parsed()) return run_region(region_cfg);
        if (describe_cmd->parsed()) return run_describe(describe_cfg);
        if (kappa_cmd->parsed()) return run_kappa(kappa_cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
