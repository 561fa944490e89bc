#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "v2v/problem.hpp"
#include "v2v/solver.hpp"

namespace v2v {

enum class Method { EF, RF, RA };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct GroupStats {
    double qos_class = 0.0;
    double average = 0.0;
    double maximum = 0.0;
    double minimum = 0.0;
    double std_dev = 0.0;  // population (denominator n)
    int n_vehicles = 0;
};

struct SweepResult {
    double epsilon = 0.0;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
};

struct RunReport {
    std::string scenario_name;
    Method method = Method::EF;
    std::uint64_t seed = 0;
    int chosen_L = 0;
    SolveResult result;
    ViolationReport violations;
    std::vector<double> rates;  // attained Mbps per vehicle (index = id-1)
    std::vector<GroupStats> groups;
    Scenario scenario;  // with the recorded L applied
};

/// Loads the capacity map for `seed`, solves under the requested method and
/// reports rates, violations and per-QoS-class statistics. The subframe
/// count is taken from select_L and recorded.
RunReport run(const Scenario& s, Method method, std::uint64_t seed,
              const SolveLimits& limits = {});

/// Population statistics per distinct QoS class, classes in descending order.
std::vector<GroupStats> group_stats(const std::vector<double>& rates,
                                    const Scenario& s);

/// For each epsilon, runs `trials` capacity draws (trial t uses seed
/// split_seed(base_seed + t), identical across epsilons) and counts the
/// trials whose solve yields a feasible allocation.
std::vector<SweepResult> sweep_epsilon(const Scenario& s,
                                       const std::vector<double>& epsilons,
                                       int trials, std::uint64_t base_seed,
                                       Method method = Method::EF,
                                       const SolveLimits& limits = {});

struct MatrixCheck {
    std::string name;
    bool pass = false;
    std::string diff;  // entrywise diff locations when failed
};

struct ToyCheck {
    bool pass = false;
    std::vector<MatrixCheck> matrices;

    std::string to_text() const;
};

/// Rebuilds the four-vehicle / two-cluster reference instance and compares
/// all nine conflict matrices against embedded golden copies. The golden
/// Q⁻ is stored as printed (transposed relative to the pair-row build) and
/// H̃ is compared as an unordered-pair encoding.
ToyCheck verify_toy();

/// The embedded reference instance: N=4, clusters {1,2,3} and {1,2,4},
/// K=3, L=3.
Scenario toy_scenario();

/// Entrywise comparison helper (exposed for the checker's self-test).
MatrixCheck compare_matrices(const std::string& name, const Matrix& golden,
                             const Matrix& actual);

// CSV emission. Fixed number formatting keeps output byte-reproducible.
std::string rates_csv_header();
std::string rates_csv_rows(const RunReport& r);
std::string sweep_csv_header();
std::string sweep_csv_rows(const std::string& scenario_name,
                           const std::vector<SweepResult>& sweep);
std::string summary_json(const RunReport& r);

}  // namespace v2v
