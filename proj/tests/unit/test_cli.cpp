#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "trig/estimators.hpp"

#include "support.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_path() {
    const char* path = std::getenv("TRIG_CLI");
    REQUIRE_MESSAGE(path != nullptr, "TRIG_CLI must point at the trig binary");
    return path;
}

RunResult run(const std::string& args) {
    const std::string command = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace

TEST_CASE("generate writes a complete graph and is byte-reproducible") {
    testkit::TempDir dir;
    const auto path = dir.file("k5.txt");
    const auto first = run("generate --n 5 --m 1 --dist dirac:5 --q 1 -o " + path);
    CHECK(first.exit_code == 0);
    const auto bytes = testkit::read_file(path);
    CHECK(bytes.find("# Nodes: 5 Edges: 10") == 0);

    const auto again = run("generate --n 5 --m 1 --dist dirac:5 --q 1 -o " + path);
    CHECK(again.exit_code == 0);
    CHECK(testkit::read_file(path) == bytes);
}

TEST_CASE("generate with a bernoulli triple is deterministic across runs") {
    testkit::TempDir dir;
    const auto a = dir.file("a.txt");
    const auto b = dir.file("b.txt");
    CHECK(run("generate --bernoulli 5,2,0.5 --n 10000 --seed 7 -o " + a).exit_code == 0);
    CHECK(run("generate --bernoulli 5,2,0.5 --n 10000 --seed 7 -o " + b).exit_code == 0);
    CHECK(testkit::read_file(a) == testkit::read_file(b));
    CHECK(run("generate --bernoulli 5,2,0.5 --n 10000 --seed 8 -o " + b).exit_code == 0);
    CHECK(testkit::read_file(a) != testkit::read_file(b));
}

TEST_CASE("generate rejects out-of-range bernoulli parameters") {
    CHECK(run("generate --bernoulli 10,1,0.1 --n 50").exit_code == 2);
    CHECK(run("generate --n 10 --m 2 --dist dirac:11 --q 0.5").exit_code == 2);
    CHECK(run("generate --n 10").exit_code == 2); // incomplete model flags
}

TEST_CASE("census reports the expected counts and oracle agreement") {
    testkit::TempDir dir;
    const auto path = dir.file("k4.txt");
    testkit::write_file(path, "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");

    const auto plain = run("census " + path);
    REQUIRE(plain.exit_code == 0);
    const auto counts = nlohmann::json::parse(plain.output);
    CHECK(counts["n0"] == 4);
    CHECK(counts["links"] == 6);
    CHECK(counts["two_stars"] == 12);
    CHECK(counts["triangles"] == 4);

    const auto checked = run("census --oracle " + path);
    REQUIRE(checked.exit_code == 0);
    const auto both = nlohmann::json::parse(checked.output);
    CHECK(both["counts"] == both["oracle"]);

    CHECK(run("census --n0 10 " + path).exit_code == 2);
    CHECK(run("census " + dir.file("missing.txt")).exit_code == 3);

    // the exhaustive checker refuses large graphs
    const auto big = dir.file("big.txt");
    REQUIRE(run("generate --n 300 --m 50 --dist dirac:3 --q 0.5 -o " + big).exit_code == 0);
    CHECK(run("census --oracle " + big).exit_code == 2);
}

TEST_CASE("fit emits the documented json schema") {
    testkit::TempDir dir;
    const auto path = dir.file("bern.txt");
    REQUIRE(run("generate --bernoulli 5,2,0.5 --n 20000 --seed 11 -o " + path).exit_code == 0);

    const auto fit = run("fit " + path);
    REQUIRE(fit.exit_code == 0);
    const auto j = nlohmann::json::parse(fit.output);
    for (const char* key : {"lambda", "tau", "q", "mu", "m", "sigma", "q_in_range",
                            "denominator_positive", "counts", "guard"}) {
        CAPTURE(key);
        CHECK(j.contains(key));
    }
    CHECK(j["q_in_range"] == true);
    CHECK(j["counts"]["n0"] == 20000);
    const double q_hat = j["q"].get<double>();
    CHECK(q_hat > 0.3);
    CHECK(q_hat < 0.7);

    // the emitted document round-trips into the library type
    const trig::Estimates back = trig::estimates_from_json(fit.output);
    CHECK(back.q == doctest::Approx(q_hat));
    CHECK(back.lambda == doctest::Approx(j["lambda"].get<double>()));
    CHECK(back.q_in_range);
}

TEST_CASE("fit handles an empty file with undefined flags") {
    testkit::TempDir dir;
    const auto path = dir.file("empty.txt");
    testkit::write_file(path, "");
    const auto fit = run("fit " + path);
    REQUIRE(fit.exit_code == 0);
    const auto j = nlohmann::json::parse(fit.output);
    CHECK(j["lambda"] == 0.0);
    CHECK(j["mu"].is_null());
    CHECK(j["q"].is_null());
    CHECK(j["denominator_positive"] == false);
}

TEST_CASE("fit subsampling options") {
    testkit::TempDir dir;
    const auto path = dir.file("g.txt");
    REQUIRE(run("generate --bernoulli 4,2,0.5 --n 5000 --seed 3 -o " + path).exit_code == 0);
    const auto sub = run("fit --n0 2500 --sample-mode random --seed 5 " + path);
    REQUIRE(sub.exit_code == 0);
    CHECK(nlohmann::json::parse(sub.output)["counts"]["n0"] == 2500);
    CHECK(run("fit --n0 9999 " + path).exit_code == 2);
    CHECK(run("fit --n0 nonsense " + path).exit_code == 2);
}

TEST_CASE("simulate: header-only csv at reps=0, reproducible bytes") {
    const auto empty = run("simulate --bernoulli 5,2,0.5 --n 1000 --reps 0");
    REQUIRE(empty.exit_code == 0);
    CHECK(empty.output == "n,rep,lambda_hat,mu_hat,q_hat,runtime_ms\n");

    const auto a = run("simulate --bernoulli 5,2,0.5 --n 1000,2000 --reps 3 --seed 5");
    const auto b = run("simulate --bernoulli 5,2,0.5 --n 1000,2000 --reps 3 --seed 5");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("median_rel_err") != std::string::npos);

    // worker count must not change the bytes
    setenv("TRIG_THREADS", "2", 1);
    const auto threaded = run("simulate --bernoulli 5,2,0.5 --n 1000,2000 --reps 3 --seed 5");
    unsetenv("TRIG_THREADS");
    CHECK(threaded.output == a.output);

    CHECK(run("simulate --bernoulli 10,1,0.1 --n 50 --reps 1").exit_code == 2);
}

TEST_CASE("region csv matches the closed form") {
    const auto result = run("region --lambda 1 --sigma 1.4142135623730951,0.9");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("lambda,sigma,tau_max,attainable") == 0);
    // first data row: sigma^2 = 2 -> bound 1/2 up to the sigma^2 rounding
    const auto line_start = result.output.find('\n') + 1;
    const auto line = result.output.substr(line_start, result.output.find('\n', line_start) - line_start);
    double lambda = 0.0;
    double sigma = 0.0;
    double tau = 0.0;
    int attainable = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &lambda, &sigma, &tau, &attainable) == 4);
    CHECK(attainable == 1);
    CHECK(tau == doctest::Approx(1.0 / (1.0 + lambda * lambda / (sigma * sigma - lambda))));
    // sigma^2 = 0.81 < lambda: unattainable, tau left empty
    CHECK(result.output.find(",,0\n") != std::string::npos);
}

TEST_CASE("describe exposes the closed-form characteristics") {
    const auto result = run("describe --n 3 --m 1 --dist dirac:2 --q 1");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.output);
    CHECK(j["link_prob_exact"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(j["model"]["m"] == 1);
}

TEST_CASE("kappa subcommand") {
    const auto ok = run("kappa 0-1,0-2");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.output == "2\n");
    CHECK(run("kappa 0-1,nope").exit_code == 2);
}

TEST_CASE("pmf files reach the generator through --dist") {
    testkit::TempDir dir;
    const auto pmf = dir.file("sizes.pmf");
    testkit::write_file(pmf, "# sizes\n3 1.0\n");
    const auto out = dir.file("g.txt");
    const auto result =
        run("generate --n 30 --m 10 --dist pmf:" + pmf + " --q 1 --seed 2 -o " + out);
    CHECK(result.exit_code == 0);

    const auto bad = dir.file("bad.pmf");
    testkit::write_file(bad, "3 0.4\n");
    CHECK(run("generate --n 30 --m 10 --dist pmf:" + bad + " --q 1").exit_code == 3);
}
