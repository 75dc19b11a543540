#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "trig/graph.hpp"
#include "trig/rng.hpp"

namespace testkit {

// Erdos-Renyi style graph, independent of the library's generator path;
// used as a neutral input source for census/estimator checks.
inline trig::Graph random_graph(std::int64_t n, double edge_prob, std::uint64_t seed) {
    trig::Rng rng(seed);
    std::vector<trig::Graph::Edge> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (rng.bernoulli(edge_prob)) edges.emplace_back(i, j);
        }
    }
    return trig::Graph::from_edges(n, std::move(edges));
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0; attempt < 100; ++attempt) {
            auto candidate = base / ("trig-test-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(counter_++));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        path_ = base;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace testkit
