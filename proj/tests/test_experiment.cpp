#include <doctest.h>

#include <filesystem>

#include "v2v/experiment.hpp"

using namespace v2v;

namespace {
const std::filesystem::path kScenarioDir = V2V_SCENARIO_DIR;

Scenario small_scenario() {
    Scenario s;
    s.name = "small";
    s.vehicles = {{1, 3.0}, {2, 2.0}};
    s.clusters = {{1, {1, 2}}};
    s.channelization = {.K = 2, .L = 2, .B = 2.5, .L_max = 100};
    s.epsilon = 3.0;
    return s;
}

}  // namespace

TEST_CASE("group statistics arithmetic") {
    Scenario s;
    s.vehicles = {{1, 12.0}, {2, 12.0}};
    s.clusters = {{1, {1, 2}}};
    const auto groups = group_stats({12.0, 12.4}, s);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].average == doctest::Approx(12.2));
    CHECK(groups[0].maximum == doctest::Approx(12.4));
    CHECK(groups[0].minimum == doctest::Approx(12.0));
    CHECK(groups[0].std_dev == doctest::Approx(0.2));
    CHECK(groups[0].n_vehicles == 2);
}

TEST_CASE("group statistics degenerate groups") {
    Scenario one;
    one.vehicles = {{1, 5.0}};
    one.clusters = {{1, {1}}};
    const auto single = group_stats({4.8}, one);
    REQUIRE(single.size() == 1);
    CHECK(single[0].std_dev == 0.0);

    Scenario ten;
    std::vector<double> rates;
    for (int i = 1; i <= 10; ++i) {
        ten.vehicles.push_back({i, 5.0});
        rates.push_back(7.5);
    }
    ten.clusters = {{1, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}};
    const auto equal = group_stats(rates, ten);
    REQUIRE(equal.size() == 1);
    CHECK(equal[0].average == 7.5);
    CHECK(equal[0].maximum == 7.5);
    CHECK(equal[0].minimum == 7.5);
    CHECK(equal[0].std_dev == 0.0);
}

TEST_CASE("group ordering follows descending QoS class") {
    const Scenario s = load_scenario(kScenarioDir / "scenario1.json");
    const auto groups = group_stats(std::vector<double>(40, 1.0), s);
    REQUIRE(groups.size() == 4);
    CHECK(groups[0].qos_class == 12.0);
    CHECK(groups[1].qos_class == 10.0);
    CHECK(groups[2].qos_class == 5.0);
    CHECK(groups[3].qos_class == 3.0);
    for (const auto& g : groups) {
        CHECK(g.n_vehicles == 10);
    }
}

TEST_CASE("verify_toy passes on the default build") {
    const auto check = verify_toy();
    CHECK(check.pass);
    CHECK(check.matrices.size() == 9);
}

TEST_CASE("matrix checker locates a flipped bit") {
    Matrix golden = {{0, 1}, {1, 0}};
    Matrix flipped = {{0, 1}, {0, 0}};
    const auto check = compare_matrices("self-test", golden, flipped);
    CHECK(!check.pass);
    CHECK(check.diff.find("(2,1)") != std::string::npos);
}

TEST_CASE("run on a single-vehicle scenario") {
    Scenario s;
    s.name = "solo";
    s.vehicles = {{1, 2.0}};
    s.clusters = {{1, {1}}};
    s.channelization = {.K = 2, .L = 4, .B = 2.5, .L_max = 100};
    s.epsilon = 2.0;
    const auto report = run(s, Method::EF, 5);
    CHECK(report.chosen_L == 1);  // select_L overrides the configured L
    REQUIRE(report.result.allocation.has_value());
    REQUIRE(report.groups.size() == 1);
    CHECK(report.groups[0].average == doctest::Approx(report.rates[0]));
    CHECK(report.violations.empty());
}

TEST_CASE("ef and rf runs agree on the objective") {
    const Scenario s = small_scenario();
    const auto ef = run(s, Method::EF, 11);
    const auto rf = run(s, Method::RF, 11);
    CHECK(ef.result.objective == rf.result.objective);
}

TEST_CASE("huge epsilon always succeeds; shrinking epsilon never helps") {
    const Scenario s = small_scenario();
    const auto sweep = sweep_epsilon(s, {50.0, 2.0, 0.05}, 10, 3);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[0].success_rate == 1.0);
    CHECK(sweep[0].successes >= sweep[1].successes);
    CHECK(sweep[1].successes >= sweep[2].successes);
}

TEST_CASE("reports are byte-reproducible") {
    const Scenario s = small_scenario();
    const auto a = run(s, Method::EF, 21);
    const auto b = run(s, Method::EF, 21);
    CHECK(rates_csv_rows(a) == rates_csv_rows(b));

    const auto sweep_a = sweep_epsilon(s, {1.0, 2.0}, 5, 9);
    const auto sweep_b = sweep_epsilon(s, {1.0, 2.0}, 5, 9);
    CHECK(sweep_csv_rows(s.name, sweep_a) == sweep_csv_rows(s.name, sweep_b));
}

TEST_CASE("csv schemas") {
    CHECK(rates_csv_header() ==
          "scenario,formulation,seed,vehicle_id,qos_class,attained_rate_mbps,"
          "in_window\n");
    CHECK(sweep_csv_header() == "scenario,epsilon,trials,successes,success_rate\n");
    const auto report = run(small_scenario(), Method::EF, 1);
    const auto rows = rates_csv_rows(report);
    CHECK(rows.find("small,ef,1,1,") != std::string::npos);
    const auto json = summary_json(report);
    CHECK(json.find("\"status\"") != std::string::npos);
    CHECK(json.find("\"groups\"") != std::string::npos);
}

TEST_CASE("ra runs report rates without window guarantees") {
    const Scenario s = load_scenario(kScenarioDir / "toy.json");
    const auto report = run(s, Method::RA, 2);
    REQUIRE(report.result.allocation.has_value());
    CHECK(report.violations.type2.empty());
    CHECK(report.violations.type3.empty());
    CHECK(report.violations.type4.empty());
}
