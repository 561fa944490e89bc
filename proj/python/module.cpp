#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "v2v/experiment.hpp"
#include "v2v/problem.hpp"
#include "v2v/solver.hpp"

namespace py = pybind11;
using namespace v2v;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("matrix must be non-empty");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw std::invalid_argument("ragged matrix");
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m.at(r, c) = rows[r][c];
        }
    }
    return m;
}

std::vector<std::vector<double>> from_matrix(const Matrix& m) {
    std::vector<std::vector<double>> out(m.rows(),
                                         std::vector<double>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[r][c] = m.at(r, c);
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(v2valloc_core, m) {
    m.doc() = "V2V mode-3 subchannel allocation core";

    py::class_<Channelization>(m, "Channelization")
        .def(py::init<>())
        .def_readwrite("K", &Channelization::K)
        .def_readwrite("L", &Channelization::L)
        .def_readwrite("B", &Channelization::B)
        .def_readwrite("L_max", &Channelization::L_max);

    py::class_<Vehicle>(m, "Vehicle")
        .def(py::init<>())
        .def_readwrite("id", &Vehicle::id)
        .def_readwrite("qos", &Vehicle::qos);

    py::class_<ChannelModelParams>(m, "ChannelModelParams")
        .def(py::init<>())
        .def_readwrite("sinr_lo_db", &ChannelModelParams::sinr_lo_db)
        .def_readwrite("sinr_hi_db", &ChannelModelParams::sinr_hi_db);

    py::class_<Cluster>(m, "Cluster")
        .def(py::init<>())
        .def_readwrite("id", &Cluster::id)
        .def_readwrite("members", &Cluster::members);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("vehicles", &Scenario::vehicles)
        .def_readwrite("clusters", &Scenario::clusters)
        .def_readwrite("channelization", &Scenario::channelization)
        .def_readwrite("epsilon", &Scenario::epsilon)
        .def_readwrite("channel_model", &Scenario::channel_model)
        .def_readwrite("one_hop_cluster_pairs", &Scenario::one_hop_cluster_pairs)
        .def_property_readonly("num_vehicles", &Scenario::num_vehicles);

    py::class_<CapacityMap>(m, "CapacityMap")
        .def_readonly("n", &CapacityMap::n)
        .def_readonly("kl", &CapacityMap::kl)
        .def_readonly("values", &CapacityMap::values)
        .def("at", &CapacityMap::at);

    py::enum_<Formulation>(m, "Formulation")
        .value("EF", Formulation::EF)
        .value("RF", Formulation::RF);

    py::class_<Problem>(m, "Problem")
        .def_readonly("N", &Problem::N)
        .def_readonly("K", &Problem::K)
        .def_readonly("L", &Problem::L)
        .def_readonly("c", &Problem::c)
        .def_readonly("q", &Problem::q)
        .def_readonly("epsilon", &Problem::epsilon)
        .def("constraint_groups", &Problem::constraint_groups)
        .def("ef_products", &Problem::ef_products)
        .def("rf_forms", &Problem::rf_forms)
        .def("feasible", &Problem::feasible)
        .def("objective", &Problem::objective)
        .def("linearized_pairs", &Problem::linearized_pairs);

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("Optimal", SolveStatus::Optimal)
        .value("Feasible", SolveStatus::Feasible)
        .value("Infeasible", SolveStatus::Infeasible)
        .value("NoFeasibleFound", SolveStatus::NoFeasibleFound)
        .value("TimedOut", SolveStatus::TimedOut);

    py::class_<Allocation>(m, "Allocation")
        .def_readonly("x", &Allocation::x);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("status", &SolveResult::status)
        .def_readonly("objective", &SolveResult::objective)
        .def_readonly("allocation", &SolveResult::allocation)
        .def_readonly("nodes", &SolveResult::nodes)
        .def_readonly("tries", &SolveResult::tries);

    py::class_<SolveLimits>(m, "SolveLimits")
        .def(py::init<>())
        .def_readwrite("time_limit_s", &SolveLimits::time_limit_s)
        .def_readwrite("node_limit", &SolveLimits::node_limit);

    m.def("load_scenario",
          [](const std::string& path) { return load_scenario(path); });
    m.def("parse_scenario", &parse_scenario);
    m.def("dump_scenario", &dump_scenario);
    m.def("validate_scenario", &validate_scenario);
    m.def("intra_cluster_pairs", &intra_cluster_pairs);
    m.def("one_hop_pairs", &one_hop_pairs);
    m.def("select_L", &select_L);
    m.def("generate_capacity", &generate_capacity);
    m.def("toy_scenario", &toy_scenario);
    m.def("assemble", &assemble);
    m.def("solve_exact", &solve_exact, py::arg("problem"),
          py::arg("limits") = SolveLimits{});
    m.def("brute_force", &brute_force);
    m.def("random_allocation", &random_allocation, py::arg("scenario"),
          py::arg("capacity"), py::arg("seed"), py::arg("max_tries") = 10'000);
    m.def("verify_toy", []() {
        const auto check = verify_toy();
        return py::make_tuple(check.pass, check.to_text());
    });
    m.def("run_summary_json",
          [](const Scenario& s, const std::string& method, std::uint64_t seed) {
              return summary_json(run(s, method_from_string(method), seed));
          });
    m.def("sweep_epsilon",
          [](const Scenario& s, const std::vector<double>& epsilons, int trials,
             std::uint64_t base_seed, const std::string& method) {
              const auto rows = sweep_epsilon(s, epsilons, trials, base_seed,
                                              method_from_string(method));
              std::vector<py::tuple> out;
              for (const auto& r : rows) {
                  out.push_back(py::make_tuple(r.epsilon, r.trials, r.successes,
                                               r.success_rate));
              }
              return out;
          },
          py::arg("scenario"), py::arg("epsilons"), py::arg("trials"),
          py::arg("base_seed"), py::arg("method") = "ef");

    m.def("kronecker", [](const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b) {
        return from_matrix(kronecker(to_matrix(a), to_matrix(b)));
    });
    m.def("hadamard",
          [](const Vector& u, const Vector& v) { return hadamard(u, v); });
    m.def("quad_form_trace", [](const Vector& x,
                                const std::vector<std::vector<double>>& a,
                                const std::vector<std::vector<double>>& b,
                                const Vector& y) {
        return quad_form_trace(x, to_matrix(a), to_matrix(b), y);
    });
    m.def("kron_compose", [](const std::vector<std::vector<double>>& x,
                             const std::vector<std::vector<double>>& y,
                             const std::vector<std::vector<double>>& w,
                             const std::vector<std::vector<double>>& z) {
        return from_matrix(
            kron_compose(to_matrix(x), to_matrix(y), to_matrix(w), to_matrix(z)));
    });
}
