#include "v2v/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace v2v {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::EF: return "ef";
        case Method::RF: return "rf";
        case Method::RA: return "ra";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "ef") return Method::EF;
    if (s == "rf") return Method::RF;
    if (s == "ra") return Method::RA;
    throw std::invalid_argument("unknown formulation: " + s);
}

RunReport run(const Scenario& scenario, Method method, std::uint64_t seed,
              const SolveLimits& limits) {
    Scenario s = scenario;
    if (auto violations = validate_scenario(s); !violations.empty()) {
        std::string msg = "run: invalid scenario:";
        for (const auto& v : violations) {
            msg += "\n  " + v;
        }
        throw std::invalid_argument(msg);
    }

    RunReport report;
    report.scenario_name = s.name.empty() ? "scenario" : s.name;
    report.method = method;
    report.seed = seed;
    report.chosen_L = select_L(s);
    s.channelization.L = report.chosen_L;

    const CapacityMap cm = generate_capacity(s, s.channel_model, seed);
    const Formulation kind =
        method == Method::RF ? Formulation::RF : Formulation::EF;
    const Problem problem = assemble(s, cm, kind);

    if (method == Method::RA) {
        // RA draws are decoupled from the capacity stream.
        report.result = random_allocation(s, cm, split_seed(seed ^ 0x52414c4cULL));
    } else {
        report.result = solve_exact(problem, limits);
    }

    report.rates.assign(s.num_vehicles(), 0.0);
    if (report.result.allocation) {
        const Bits& x = report.result.allocation->x;
        const int kl = s.channelization.num_subchannels();
        for (int i = 0; i < s.num_vehicles(); ++i) {
            double sum = 0.0;
            for (int k = 0; k < kl; ++k) {
                if (x[static_cast<std::size_t>(i) * kl + k]) {
                    sum += cm.at(i, k);
                }
            }
            report.rates[i] = sum;
        }
        report.violations = check_feasible(x, problem);
    }
    report.groups = group_stats(report.rates, s);
    report.scenario = std::move(s);
    return report;
}

std::vector<GroupStats> group_stats(const std::vector<double>& rates,
                                    const Scenario& s) {
    if (rates.size() != s.vehicles.size()) {
        throw std::invalid_argument("group_stats: one rate per vehicle required");
    }
    std::map<double, std::vector<double>, std::greater<>> by_class;
    for (const auto& v : s.vehicles) {
        by_class[v.qos].push_back(rates[v.id - 1]);
    }
    std::vector<GroupStats> out;
    for (const auto& [qos, values] : by_class) {
        GroupStats g;
        g.qos_class = qos;
        g.n_vehicles = static_cast<int>(values.size());
        g.minimum = *std::min_element(values.begin(), values.end());
        g.maximum = *std::max_element(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        g.average = sum / values.size();
        double var = 0.0;
        for (double v : values) {
            var += (v - g.average) * (v - g.average);
        }
        g.std_dev = std::sqrt(var / values.size());
        out.push_back(g);
    }
    return out;
}

std::vector<SweepResult> sweep_epsilon(const Scenario& scenario,
                                       const std::vector<double>& epsilons,
                                       int trials, std::uint64_t base_seed,
                                       Method method, const SolveLimits& limits) {
    if (trials < 1) {
        throw std::invalid_argument("sweep_epsilon: trials must be >= 1");
    }
    if (method == Method::RA) {
        throw std::invalid_argument("sweep_epsilon: RA has no feasibility notion");
    }
    Scenario s = scenario;
    s.channelization.L = select_L(s);
    std::vector<SweepResult> out;
    for (double eps : epsilons) {
        Scenario se = s;
        se.epsilon = eps;
        SweepResult row;
        row.epsilon = eps;
        row.trials = trials;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t seed = split_seed(base_seed + t);
            const CapacityMap cm = generate_capacity(se, se.channel_model, seed);
            const Formulation kind =
                method == Method::RF ? Formulation::RF : Formulation::EF;
            const SolveResult r = solve_exact(assemble(se, cm, kind), limits);
            if (r.allocation.has_value()) {
                ++row.successes;
            }
        }
        row.success_rate = static_cast<double>(row.successes) / trials;
        out.push_back(row);
    }
    return out;
}

Scenario toy_scenario() {
    Scenario s;
    s.name = "toy";
    s.vehicles = {{1, 6.0}, {2, 5.0}, {3, 4.0}, {4, 3.0}};
    s.clusters = {{1, {1, 2, 3}}, {2, {1, 2, 4}}};
    s.channelization = {.K = 3, .L = 3, .B = 3.0, .L_max = 100};
    s.epsilon = 1.0;
    return s;
}

MatrixCheck compare_matrices(const std::string& name, const Matrix& golden,
                             const Matrix& actual) {
    MatrixCheck check;
    check.name = name;
    if (golden.rows() != actual.rows() || golden.cols() != actual.cols()) {
        check.diff = "shape mismatch";
        return check;
    }
    std::ostringstream diff;
    for (std::size_t r = 0; r < golden.rows(); ++r) {
        for (std::size_t c = 0; c < golden.cols(); ++c) {
            if (golden.at(r, c) != actual.at(r, c)) {
                diff << "(" << r + 1 << "," << c + 1 << ") expected "
                     << golden.at(r, c) << " got " << actual.at(r, c) << "; ";
            }
        }
    }
    check.diff = diff.str();
    check.pass = check.diff.empty();
    return check;
}

ToyCheck verify_toy() {
    const Scenario s = toy_scenario();
    const CapacityMap cm =
        generate_capacity(s, s.channel_model, 0);  // matrices ignore capacities
    const Problem p = assemble(s, cm, Formulation::EF);

    // Golden copies of the reference matrices.
    const Matrix gm = {{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0},
                       {0, 1, 0, 0}, {0, 1, 0, 0}};
    const Matrix gp = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                       {0, 0, 1, 0}, {0, 0, 0, 1}};
    const Matrix gt = {{0, 1, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    const Matrix qm_printed = {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}};
    const Matrix qp = {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    const Matrix qt = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
    const Matrix hm = {{0}, {0}, {1}, {0}};
    const Matrix hp = {{0}, {0}, {0}, {1}};
    const Matrix ht_printed = {{0, 0, 0, 0}, {0, 0, 0, 0},
                               {0, 0, 0, 0}, {0, 0, 1, 0}};

    ToyCheck check;
    check.matrices.push_back(compare_matrices("G-", gm, p.conflict.Gm.dense()));
    check.matrices.push_back(compare_matrices("G+", gp, p.conflict.Gp.dense()));
    check.matrices.push_back(compare_matrices("Gt", gt, p.conflict.Gt.dense()));
    // The reference Q- is the transpose of the pair-row build.
    check.matrices.push_back(compare_matrices(
        "Q- (transposed convention)", qm_printed, p.conflict.Qm.dense().transpose()));
    check.matrices.push_back(compare_matrices("Q+", qp, p.conflict.Qp.dense()));
    check.matrices.push_back(compare_matrices("Qt", qt, p.conflict.Qt.dense()));
    // Like Q-, the reference H± are printed transposed to the pair-row build.
    check.matrices.push_back(compare_matrices(
        "H- (transposed convention)", hm, p.conflict.Hm.dense().transpose()));
    check.matrices.push_back(compare_matrices(
        "H+ (transposed convention)", hp, p.conflict.Hp.dense().transpose()));
    // H̃ encodes unordered pairs: compare the symmetrized forms, under which
    // xᵀH̃x agrees for every binary x.
    const Matrix ht_actual = p.conflict.Ht.dense();
    check.matrices.push_back(
        compare_matrices("Ht (unordered-pair equivalence)",
                         ht_printed + ht_printed.transpose(),
                         ht_actual + ht_actual.transpose()));

    check.pass = std::all_of(check.matrices.begin(), check.matrices.end(),
                             [](const MatrixCheck& m) { return m.pass; });
    return check;
}

std::string ToyCheck::to_text() const {
    std::ostringstream out;
    for (const auto& m : matrices) {
        out << (m.pass ? "PASS " : "FAIL ") << m.name;
        if (!m.pass) {
            out << ": " << m.diff;
        }
        out << "\n";
    }
    out << (pass ? "verify-toy: PASS" : "verify-toy: FAIL") << "\n";
    return out.str();
}

std::string rates_csv_header() {
    return "scenario,formulation,seed,vehicle_id,qos_class,attained_rate_mbps,"
           "in_window\n";
}

std::string rates_csv_rows(const RunReport& r) {
    std::ostringstream out;
    for (const auto& v : r.scenario.vehicles) {
        const double rate = r.rates[v.id - 1];
        const bool in_window = rate >= v.qos - r.scenario.epsilon - kWindowTol &&
                               rate <= v.qos + r.scenario.epsilon + kWindowTol;
        out << r.scenario_name << "," << to_string(r.method) << "," << r.seed
            << "," << v.id << "," << fmt("%.4f", v.qos) << ","
            << fmt("%.6f", rate) << "," << (in_window ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string sweep_csv_header() {
    return "scenario,epsilon,trials,successes,success_rate\n";
}

std::string sweep_csv_rows(const std::string& scenario_name,
                           const std::vector<SweepResult>& sweep) {
    std::ostringstream out;
    for (const auto& row : sweep) {
        out << scenario_name << "," << fmt("%.4f", row.epsilon) << ","
            << row.trials << "," << row.successes << ","
            << fmt("%.6f", row.success_rate) << "\n";
    }
    return out.str();
}

std::string summary_json(const RunReport& r) {
    nlohmann::json j;
    j["scenario"] = r.scenario_name;
    j["formulation"] = to_string(r.method);
    j["seed"] = r.seed;
    j["L"] = r.chosen_L;
    j["status"] = to_string(r.result.status);
    j["objective"] = r.result.objective;
    j["diagnostics"] = {{"nodes", r.result.nodes},
                        {"wall_time_s", r.result.wall_time_s},
                        {"tries", r.result.tries}};
    j["violations"] = {{"type1", r.violations.type1.size()},
                       {"type2", r.violations.type2.size()},
                       {"type3", r.violations.type3.size()},
                       {"type4", r.violations.type4.size()}};
    j["groups"] = nlohmann::json::array();
    for (const auto& g : r.groups) {
        j["groups"].push_back({{"qos_class", g.qos_class},
                               {"average", g.average},
                               {"maximum", g.maximum},
                               {"minimum", g.minimum},
                               {"std_dev", g.std_dev},
                               {"n_vehicles", g.n_vehicles}});
    }
    return j.dump(2);
}

}  // namespace v2v
