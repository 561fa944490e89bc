#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2v/experiment.hpp"

namespace fs = std::filesystem;

namespace {

void append_csv(const fs::path& path, const std::string& header,
                const std::string& rows) {
    const bool need_header = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string());
    }
    if (need_header) {
        out << header;
    }
    out << rows;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"V2V mode-3 subchannel allocation"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string formulation = "ef";
    std::uint64_t seed = 0;
    double time_limit = 60.0;
    std::string out_dir = ".";
    std::string epsilons_csv;
    int trials = 50;

    auto* solve = app.add_subcommand("solve", "Solve one allocation instance");
    solve->add_option("--scenario", scenario_path, "Scenario config file")
        ->required();
    solve->add_option("--formulation", formulation, "ef|rf|ra")
        ->check(CLI::IsMember({"ef", "rf", "ra"}));
    solve->add_option("--seed", seed, "Capacity draw seed");
    solve->add_option("--time-limit", time_limit, "Solver time limit, seconds");
    solve->add_option("--out", out_dir, "Output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "Epsilon success-rate sweep");
    sweep->add_option("--scenario", scenario_path, "Scenario config file")
        ->required();
    sweep->add_option("--epsilons", epsilons_csv, "Comma-separated epsilon list")
        ->required();
    sweep->add_option("--trials", trials, "Trials per epsilon");
    sweep->add_option("--seed", seed, "Base seed");
    sweep->add_option("--formulation", formulation, "ef|rf")
        ->check(CLI::IsMember({"ef", "rf"}));
    sweep->add_option("--time-limit", time_limit, "Solver time limit, seconds");
    sweep->add_option("--out", out_dir, "Output directory")->required();

    auto* verify = app.add_subcommand("verify-toy",
                                      "Check conflict-matrix construction "
                                      "against the embedded reference instance");
    (void)verify;

    auto* dump = app.add_subcommand("dump", "Dump a compiled problem");
    dump->add_option("--scenario", scenario_path, "Scenario config file")
        ->required();
    dump->add_option("--formulation", formulation, "ef|rf")
        ->check(CLI::IsMember({"ef", "rf"}));
    dump->add_option("--seed", seed, "Capacity draw seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const v2v::Scenario s = v2v::load_scenario(scenario_path);
            v2v::SolveLimits limits;
            limits.time_limit_s = time_limit;
            const auto report =
                v2v::run(s, v2v::method_from_string(formulation), seed, limits);
            fs::create_directories(out_dir);
            append_csv(fs::path(out_dir) / "rates.csv", v2v::rates_csv_header(),
                       v2v::rates_csv_rows(report));
            std::ofstream summary(fs::path(out_dir) /
                                  (report.scenario_name + "_" + formulation +
                                   "_" + std::to_string(seed) + "_summary.json"));
            summary << v2v::summary_json(report) << "\n";
            std::cout << v2v::summary_json(report) << "\n";
            return report.result.allocation ? 0 : 1;
        }
        if (sweep->parsed()) {
            const v2v::Scenario s = v2v::load_scenario(scenario_path);
            v2v::SolveLimits limits;
            limits.time_limit_s = time_limit;
            const auto rows = v2v::sweep_epsilon(
                s, parse_double_list(epsilons_csv), trials, seed,
                v2v::method_from_string(formulation), limits);
            fs::create_directories(out_dir);
            append_csv(fs::path(out_dir) / "sweep.csv", v2v::sweep_csv_header(),
                       v2v::sweep_csv_rows(s.name, rows));
            std::cout << v2v::sweep_csv_header()
                      << v2v::sweep_csv_rows(s.name, rows);
            return 0;
        }
        if (verify->parsed()) {
            const auto check = v2v::verify_toy();
            std::cout << check.to_text();
            return check.pass ? 0 : 1;
        }
        if (dump->parsed()) {
            const v2v::Scenario s = v2v::load_scenario(scenario_path);
            const auto cm = v2v::generate_capacity(s, s.channel_model, seed);
            const auto kind = formulation == "rf" ? v2v::Formulation::RF
                                                  : v2v::Formulation::EF;
            std::cout << v2v::dump_problem(v2v::assemble(s, cm, kind));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
