#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "v2v/experiment.hpp"
#include "v2v/scenario.hpp"

using namespace v2v;

namespace {
const std::filesystem::path kScenarioDir = V2V_SCENARIO_DIR;
}

TEST_CASE("toy scenario validates cleanly") {
    CHECK(validate_scenario(toy_scenario()).empty());
}

TEST_CASE("K bound violation is reported") {
    Scenario s = toy_scenario();
    s.channelization.K = 8;
    const auto v = validate_scenario(s);
    REQUIRE(!v.empty());
    bool found = false;
    for (const auto& msg : v) {
        if (msg.find("K <= 7") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("orphan vehicle is reported") {
    Scenario s = toy_scenario();
    s.vehicles.push_back({5, 2.0});
    const auto v = validate_scenario(s);
    bool found = false;
    for (const auto& msg : v) {
        if (msg.find("orphan") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("intra-cluster pairs of the toy scenario") {
    const auto pairs = intra_cluster_pairs(toy_scenario());
    const std::vector<std::pair<int, int>> expected = {
        {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
    CHECK(pairs == expected);
}

TEST_CASE("intra-cluster pairs degenerate cases") {
    Scenario s;
    s.vehicles = {{1, 1.0}};
    s.clusters = {{1, {1}}};
    CHECK(intra_cluster_pairs(s).empty());

    Scenario s3;
    s3.vehicles = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
    s3.clusters = {{1, {1, 2, 3}}};
    CHECK(intra_cluster_pairs(s3).size() == 3);
}

TEST_CASE("one-hop pairs of the toy scenario") {
    const auto pairs = one_hop_pairs(toy_scenario());
    CHECK(pairs == std::vector<std::pair<int, int>>{{3, 4}});
}

TEST_CASE("disjoint undeclared clusters yield no one-hop pairs") {
    Scenario s;
    s.vehicles = {{1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}};
    s.clusters = {{1, {1, 2}}, {2, {3, 4}}};
    CHECK(one_hop_pairs(s).empty());
}

TEST_CASE("chained overlapping clusters expose the outer pair") {
    Scenario s;
    s.vehicles = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
    s.clusters = {{1, {1, 2}}, {2, {2, 3}}};
    CHECK(one_hop_pairs(s) == std::vector<std::pair<int, int>>{{1, 3}});
}

TEST_CASE("select_L picks the largest cluster") {
    const Scenario s1 = load_scenario(kScenarioDir / "scenario1.json");
    CHECK(select_L(s1) == 16);

    Scenario small;
    small.vehicles = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
    small.clusters = {{1, {1, 2, 3}}};
    CHECK(select_L(small) == 3);
}

TEST_CASE("select_L rejects clusters larger than L_max") {
    Scenario s;
    for (int i = 1; i <= 101; ++i) {
        s.vehicles.push_back({i, 1.0});
    }
    Cluster c{1, {}};
    for (int i = 1; i <= 101; ++i) {
        c.members.push_back(i);
    }
    s.clusters = {c};
    s.channelization.L_max = 100;
    CHECK_THROWS_WITH_AS(select_L(s),
                         doctest::Contains("insufficient subframes"),
                         std::runtime_error);
}

TEST_CASE("capacity closed form at fixed SINR") {
    Scenario s = toy_scenario();
    s.channelization.B = 2.5;

    // Degenerate model pinning SINR at 15 dB.
    const CapacityMap hi = generate_capacity(s, {15.0, 15.0}, 1);
    CHECK(hi.at(0, 0) ==
          doctest::Approx(2.5 * std::log2(1.0 + std::pow(10.0, 1.5))).epsilon(1e-9));
    CHECK(hi.at(0, 0) == doctest::Approx(12.566).epsilon(1e-3));

    // SINR = 1 (0 dB) gives exactly B.
    const CapacityMap unit = generate_capacity(s, {0.0, 0.0}, 1);
    CHECK(unit.at(2, 5) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("capacity generation determinism and bounds") {
    const Scenario s = toy_scenario();
    const ChannelModelParams model;
    const CapacityMap a = generate_capacity(s, model, 42);
    const CapacityMap b = generate_capacity(s, model, 42);
    const CapacityMap c = generate_capacity(s, model, 43);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);

    const double cap =
        s.channelization.B * std::log2(1.0 + std::pow(10.0, model.sinr_hi_db / 10.0));
    for (double v : a.values) {
        CHECK(v >= 0.0);
        CHECK(v <= cap);
    }
}

TEST_CASE("invalid channel model bounds") {
    CHECK_THROWS_AS(generate_capacity(toy_scenario(), {5.0, 1.0}, 0),
                    std::invalid_argument);
}

TEST_CASE("scenario save/load round-trip") {
    const Scenario s = toy_scenario();
    const auto tmp = std::filesystem::temp_directory_path() / "v2v_roundtrip.json";
    save_scenario(s, tmp);
    const Scenario r = load_scenario(tmp);
    CHECK(r.vehicles.size() == s.vehicles.size());
    CHECK(r.clusters.size() == s.clusters.size());
    CHECK(r.channelization.K == s.channelization.K);
    CHECK(r.channelization.L == s.channelization.L);
    CHECK(r.channelization.B == s.channelization.B);
    CHECK(r.epsilon == s.epsilon);
    CHECK(dump_scenario(r) == dump_scenario(s));
    std::filesystem::remove(tmp);
}

TEST_CASE("empty input is a parse error") {
    CHECK_THROWS_WITH_AS(parse_scenario(""), doctest::Contains("parse error"),
                         std::runtime_error);
}

TEST_CASE("shipped toy file matches the reference dimensions") {
    const Scenario s = load_scenario(kScenarioDir / "toy.json");
    CHECK(s.num_vehicles() == 4);
    CHECK(s.clusters.size() == 2);
    CHECK(s.channelization.K == 3);
    CHECK(s.channelization.L == 3);
}

TEST_CASE("shipped scenario-1 file matches the protocol parameters") {
    const Scenario s = load_scenario(kScenarioDir / "scenario1.json");
    CHECK(s.num_vehicles() == 40);
    CHECK(s.clusters.size() == 4);
    CHECK(s.channelization.K == 4);
    CHECK(s.channelization.L == 16);
    CHECK(s.epsilon == 0.8);
    CHECK(validate_scenario(s).empty());
    // Triple intersection of the first three clusters has 8 vehicles,
    // cluster 4 is isolated.
    int triple = 0;
    for (int v = 1; v <= 40; ++v) {
        int count = 0;
        for (int c = 0; c < 3; ++c) {
            for (int m : s.clusters[c].members) {
                if (m == v) {
                    ++count;
                }
            }
        }
        if (count == 3) {
            ++triple;
        }
    }
    CHECK(triple == 8);
}

TEST_CASE("pair enumeration is stable across calls") {
    const Scenario s = load_scenario(kScenarioDir / "scenario1.json");
    CHECK(intra_cluster_pairs(s) == intra_cluster_pairs(s));
    CHECK(one_hop_pairs(s) == one_hop_pairs(s));
    // Scenario-1 counts: pairs within four clusters, minus the triple
    // intersection duplicates; one-hop pairs between exclusive members.
    CHECK(intra_cluster_pairs(s).size() == 332);
    CHECK(one_hop_pairs(s).size() == 192);
}
