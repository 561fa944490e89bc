// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria cover the golden conflict-matrix construction, the
// EF/RF equivalence, linearization soundness, the two algebraic identities,
// and the three experiment protocols with their reproducibility guarantee.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "v2v/experiment.hpp"
#include "v2v/solver.hpp"
#include "test_support.hpp"

using namespace v2v;
using Clock = std::chrono::steady_clock;

namespace {

const std::filesystem::path kScenarioDir = V2V_SCENARIO_DIR;
constexpr std::uint64_t kBaseSeed = 12345;
constexpr int kTrials = 50;

// Proving optimality on the 40-vehicle scenarios exhausts any budget, so the
// protocol runs use a node cap that reliably yields feasible incumbents while
// keeping every trial far under the 60 s target.
SolveLimits protocol_limits() {
    SolveLimits limits;
    limits.time_limit_s = 60.0;
    limits.node_limit = 5'000'000;
    return limits;
}

// Sweeps tolerate unsolved trials (they only count successes), so they run
// under a tighter node budget than an exhaustive solve would want.
SolveLimits sweep_limits() {
    SolveLimits limits;
    limits.time_limit_s = 60.0;
    limits.node_limit = 10'000'000;
    return limits;
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) {
        ++g_failures;
    }
}

double elapsed_s(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: golden toy matrices ------------------------------------

void criterion_1() {
    const auto start = Clock::now();
    const auto check = verify_toy();
    const double dt = elapsed_s(start);
    report(1, check.pass && dt < 1.0,
           "toy golden matrices, " + std::to_string(dt) + " s");
    if (!check.pass) {
        std::fputs(check.to_text().c_str(), stdout);
    }
}

// --- criterion 2: EF/RF equivalence --------------------------------------

void criterion_2() {
    const auto start = Clock::now();
    std::mt19937_64 gen(2024);
    int instances = 0;
    bool ok = true;
    std::string detail;
    while (instances < 200 && ok) {
        const auto inst = testing::random_instance(gen, 16);
        const Problem pe = assemble(inst.scenario, inst.capacity, Formulation::EF);
        const Problem pr = assemble(inst.scenario, inst.capacity, Formulation::RF);
        const int nvars = pe.num_vars();
        Bits x(nvars, 0);
        for (std::uint32_t m = 0; m < (1u << nvars); ++m) {
            for (int b = 0; b < nvars; ++b) {
                x[b] = (m >> b) & 1u;
            }
            if (pe.feasible(x) != pr.feasible(x)) {
                ok = false;
                detail = "feasible-set mismatch at instance " +
                         std::to_string(instances);
                break;
            }
        }
        const SolveResult bf = brute_force(pe);
        const SolveResult ef = solve_exact(pe);
        const SolveResult rf = solve_exact(pr);
        if (ef.status != bf.status || rf.status != bf.status) {
            ok = false;
            detail = "status mismatch at instance " + std::to_string(instances);
        } else if (bf.status == SolveStatus::Optimal &&
                   (ef.objective != bf.objective || rf.objective != bf.objective)) {
            ok = false;
            detail = "objective mismatch at instance " + std::to_string(instances);
        }
        ++instances;
    }
    const double dt = elapsed_s(start);
    if (ok && dt >= 120.0) {
        ok = false;
        detail = "runtime budget exceeded";
    }
    if (ok) {
        detail = std::to_string(instances) + " instances, " +
                 std::to_string(dt) + " s";
    }
    report(2, ok, detail);
}

// --- criterion 3: linearization soundness --------------------------------

void criterion_3() {
    std::mt19937_64 gen(3030);
    long counterexamples = 0;
    long checked = 0;
    for (int t = 0; t < 80; ++t) {
        const auto inst = testing::random_instance(gen, 12);
        const Problem p = assemble(inst.scenario, inst.capacity, Formulation::EF);
        const auto pairs = p.linearized_pairs();
        const int nvars = p.num_vars();
        Bits x(nvars, 0);
        for (std::uint32_t m = 0; m < (1u << nvars); ++m) {
            for (int b = 0; b < nvars; ++b) {
                x[b] = (m >> b) & 1u;
            }
            bool pairwise_ok = true;
            for (const auto& [a, b] : pairs) {
                if (x[a] + x[b] > 1) {
                    pairwise_ok = false;
                    break;
                }
            }
            bool quadratic_zero = true;
            for (double v : p.ef_products(x)) {
                if (v != 0.0) {
                    quadratic_zero = false;
                    break;
                }
            }
            if (pairwise_ok != quadratic_zero) {
                ++counterexamples;
            }
            ++checked;
        }
    }
    report(3, counterexamples == 0,
           std::to_string(checked) + " assignments exhausted, " +
               std::to_string(counterexamples) + " counterexamples");
}

// --- criterion 4: the two algebraic identities ---------------------------

void criterion_4() {
    std::mt19937_64 gen(4040);
    auto rand_mat = [&gen](std::size_t r, std::size_t c, bool integer) {
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                m.at(i, j) = integer
                                 ? static_cast<double>(gen() % 9) - 4.0
                                 : testing::uniform(gen, -2.0, 2.0);
            }
        }
        return m;
    };
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = 1 + gen() % 6;
        const std::size_t n = 1 + gen() % 6;
        const Matrix a = rand_mat(m, n, false);
        const Matrix b = rand_mat(m, n, false);
        Vector x(m), y(n);
        for (auto& e : x) {
            e = testing::uniform(gen, -2.0, 2.0);
        }
        for (auto& e : y) {
            e = testing::uniform(gen, -2.0, 2.0);
        }
        double direct = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                direct += x[i] * a.at(i, j) * b.at(i, j) * y[j];
            }
        }
        const double via_trace = quad_form_trace(x, a, b, y);
        const double scale = std::max(1.0, std::abs(direct));
        if (std::abs(via_trace - direct) > 1e-9 * scale) {
            ++failures;
        }
    }
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = 1 + gen() % 4, n = 1 + gen() % 4,
                          p = 1 + gen() % 4, r = 1 + gen() % 4,
                          s = 1 + gen() % 4, q = 1 + gen() % 4;
        const Matrix x = rand_mat(m, n, true);
        const Matrix y = rand_mat(n, p, true);
        const Matrix w = rand_mat(r, s, true);
        const Matrix z = rand_mat(s, q, true);
        if (!(kron_compose(x, y, w, z) == kronecker(x, w) * kronecker(y, z))) {
            ++failures;
        }
    }
    report(4, failures == 0,
           "2000 randomized identity checks, " + std::to_string(failures) +
               " failures");
}

// --- criteria 5, 8, 9: scenario-1 protocol --------------------------------

struct Scenario1Runs {
    bool all_feasible = true;
    bool all_in_window = true;
    bool reports_empty = true;
    double max_trial_s = 0.0;
    int ra_wider = 0;
    int ra_ran = 0;
    std::string ef_csv;
};

Scenario1Runs run_scenario1_protocol(const Scenario& s1) {
    Scenario1Runs out;
    const SolveLimits limits = protocol_limits();
    for (int t = 0; t < kTrials; ++t) {
        const std::uint64_t seed = split_seed(kBaseSeed + t);
        const auto start = Clock::now();
        const auto ef = run(s1, Method::EF, seed, limits);
        const auto rf = run(s1, Method::RF, seed, limits);
        out.max_trial_s = std::max(out.max_trial_s, elapsed_s(start) / 2.0);
        out.ef_csv += rates_csv_rows(ef);
        for (const auto* rep : {&ef, &rf}) {
            if (!rep->result.allocation) {
                out.all_feasible = false;
                continue;
            }
            if (!rep->violations.empty()) {
                out.reports_empty = false;
            }
            for (const auto& v : rep->scenario.vehicles) {
                const double rate = rep->rates[v.id - 1];
                if (rate < v.qos - s1.epsilon - kWindowTol ||
                    rate > v.qos + s1.epsilon + kWindowTol) {
                    out.all_in_window = false;
                }
            }
        }
        // RA contrast on the same capacity draw.
        const auto ra = run(s1, Method::RA, seed, limits);
        if (ra.result.allocation && rf.result.allocation) {
            ++out.ra_ran;
            bool wider_everywhere = true;
            for (std::size_t g = 0; g < ra.groups.size(); ++g) {
                if (!(ra.groups[g].std_dev > rf.groups[g].std_dev)) {
                    wider_everywhere = false;
                }
            }
            if (wider_everywhere) {
                ++out.ra_wider;
            }
        }
    }
    return out;
}

void criteria_5_8_9(const Scenario& s1) {
    const auto runs = run_scenario1_protocol(s1);
    report(5,
           runs.all_feasible && runs.all_in_window && runs.reports_empty &&
               runs.max_trial_s <= 60.0,
           "50 trials, success rate " +
               std::string(runs.all_feasible ? "1.0" : "< 1.0") +
               ", max trial " + std::to_string(runs.max_trial_s) + " s");

    report(8, runs.ra_ran == kTrials && runs.ra_wider >= 45,
           "RA std dev wider in " + std::to_string(runs.ra_wider) + "/" +
               std::to_string(runs.ra_ran) + " trials");

    // Criterion 9: repeat the EF runs and the epsilon sweep; byte-identical.
    const SolveLimits limits = protocol_limits();
    std::string ef_csv_again;
    for (int t = 0; t < kTrials; ++t) {
        const std::uint64_t seed = split_seed(kBaseSeed + t);
        ef_csv_again += rates_csv_rows(run(s1, Method::EF, seed, limits));
    }
    const auto sweep_a =
        sweep_epsilon(s1, {0.8, 0.4}, 10, kBaseSeed, Method::EF, sweep_limits());
    const auto sweep_b =
        sweep_epsilon(s1, {0.8, 0.4}, 10, kBaseSeed, Method::EF, sweep_limits());
    const bool csv_ok = ef_csv_again == runs.ef_csv;
    const bool sweep_ok =
        sweep_csv_rows(s1.name, sweep_a) == sweep_csv_rows(s1.name, sweep_b);
    report(9, csv_ok && sweep_ok, "repeated runs byte-identical");
}

// --- criterion 6: epsilon degradation ------------------------------------

void criterion_6(const Scenario& s1) {
    const auto sweep =
        sweep_epsilon(s1, {0.8, 0.4}, kTrials, kBaseSeed, Method::EF, sweep_limits());
    const bool ok = sweep[1].successes < sweep[0].successes;
    report(6, ok,
           "success " + std::to_string(sweep[0].successes) + "/50 at eps 0.8 vs " +
               std::to_string(sweep[1].successes) + "/50 at eps 0.4");
}

// --- criterion 7: scenario-2 tightness -----------------------------------

void criterion_7() {
    const Scenario s2a = load_scenario(kScenarioDir / "scenario2a.json");
    const Scenario s2b = load_scenario(kScenarioDir / "scenario2b.json");
    const bool windows_narrower = s2b.epsilon < s2a.epsilon;
    // Containment is asserted for every attained rate; per-draw feasibility
    // is not (the success rate is channel-dependent), but the check must not
    // pass vacuously, so each scenario needs a meaningful solved sample.
    bool all_in_window = true;
    int solved[2] = {0, 0};
    int idx = 0;
    for (const Scenario* s : {&s2a, &s2b}) {
        for (int t = 0; t < kTrials; ++t) {
            const std::uint64_t seed = split_seed(kBaseSeed + t);
            for (Method method : {Method::EF, Method::RF}) {
                const auto rep = run(*s, method, seed, sweep_limits());
                if (!rep.result.allocation) {
                    continue;
                }
                ++solved[idx];
                for (const auto& v : rep.scenario.vehicles) {
                    const double rate = rep.rates[v.id - 1];
                    if (rate < v.qos - s->epsilon - kWindowTol ||
                        rate > v.qos + s->epsilon + kWindowTol) {
                        all_in_window = false;
                    }
                }
            }
        }
        ++idx;
    }
    report(7,
           windows_narrower && all_in_window && solved[0] >= 10 &&
               solved[1] >= 10,
           "eps 0.6 < 1.0 windows, containment in " + std::to_string(solved[0]) +
               "+" + std::to_string(solved[1]) + " solved runs of 100+100");
}

}  // namespace

int main() {
    const Scenario s1 = load_scenario(kScenarioDir / "scenario1.json");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criteria_5_8_9(s1);
    criterion_6(s1);
    criterion_7();
    std::printf("%s\n", g_failures == 0 ? "acceptance: ALL PASS"
                                        : "acceptance: FAILURES");
    return g_failures == 0 ? 0 : 1;
}
