#include "v2v/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace v2v {

namespace {

using json = nlohmann::json;

std::unordered_map<int, std::vector<int>> clusters_of_vehicle(const Scenario& s) {
    std::unordered_map<int, std::vector<int>> out;
    for (const auto& c : s.clusters) {
        for (int v : c.members) {
            out[v].push_back(c.id);
        }
    }
    return out;
}

bool share_cluster(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) {
            return true;
        }
    }
    return false;
}

const Cluster* find_cluster(const Scenario& s, int id) {
    for (const auto& c : s.clusters) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<int> intersection(const Cluster& a, const Cluster& b) {
    std::set<int> sa(a.members.begin(), a.members.end());
    std::vector<int> out;
    for (int v : b.members) {
        if (sa.count(v)) {
            out.push_back(v);
        }
    }
    return out;
}

/// Uniform double in [0,1) from the top 53 bits of the generator output, so
/// results do not depend on the standard library's distribution internals.
double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t v) {
    // splitmix64 finalizer
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> out;
    const auto& ch = s.channelization;
    if (ch.K < 1 || ch.K > 7) {
        out.push_back("channelization.K: K <= 7 and K >= 1 required");
    }
    if (ch.K * ch.B > 10.0 + 1e-9) {
        out.push_back("channelization.B: K*B <= 10 MHz required");
    }
    if (ch.L < 1 || ch.L > ch.L_max) {
        out.push_back("channelization.L: 1 <= L <= L_max required");
    }
    if (s.epsilon < 0.0) {
        out.push_back("epsilon: must be >= 0");
    }
    if (s.vehicles.empty()) {
        out.push_back("vehicles: at least one vehicle required");
    }
    std::unordered_set<int> vehicle_ids;
    for (const auto& v : s.vehicles) {
        if (!vehicle_ids.insert(v.id).second) {
            out.push_back("vehicles: duplicate id " + std::to_string(v.id));
        }
        if (v.qos <= 0.0) {
            out.push_back("vehicles: qos of vehicle " + std::to_string(v.id) +
                          " must be > 0");
        }
    }
    std::unordered_set<int> cluster_ids;
    std::unordered_set<int> covered;
    for (const auto& c : s.clusters) {
        if (!cluster_ids.insert(c.id).second) {
            out.push_back("clusters: duplicate id " + std::to_string(c.id));
        }
        if (c.members.empty()) {
            out.push_back("clusters: cluster " + std::to_string(c.id) +
                          " is empty");
        }
        for (int m : c.members) {
            if (!vehicle_ids.count(m)) {
                out.push_back("clusters: cluster " + std::to_string(c.id) +
                              " references unknown vehicle " + std::to_string(m));
            }
            covered.insert(m);
        }
    }
    for (const auto& v : s.vehicles) {
        if (!covered.count(v.id)) {
            out.push_back("vehicles: orphan vehicle " + std::to_string(v.id) +
                          " belongs to no cluster");
        }
    }
    for (const auto& [a, b] : s.one_hop_cluster_pairs) {
        if (!cluster_ids.count(a) || !cluster_ids.count(b)) {
            out.push_back("one_hop_cluster_pairs: unknown cluster in pair (" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
        }
    }
    if (s.channel_model.sinr_lo_db > s.channel_model.sinr_hi_db) {
        out.push_back("channel_model: sinr_lo_db > sinr_hi_db");
    }
    return out;
}

std::vector<std::pair<int, int>> intra_cluster_pairs(const Scenario& s) {
    std::set<std::pair<int, int>> pairs;
    for (const auto& c : s.clusters) {
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            for (std::size_t j = i + 1; j < c.members.size(); ++j) {
                int a = c.members[i];
                int b = c.members[j];
                if (a > b) {
                    std::swap(a, b);
                }
                if (a != b) {
                    pairs.emplace(a, b);
                }
            }
        }
    }
    return {pairs.begin(), pairs.end()};
}

std::vector<std::pair<int, int>> one_hop_pairs(const Scenario& s) {
    const auto membership = clusters_of_vehicle(s);

    // One-hop cluster relation: declared pairs plus implicitly any two
    // clusters with a non-empty intersection.
    std::set<std::pair<int, int>> hop;
    for (auto [a, b] : s.one_hop_cluster_pairs) {
        if (a > b) {
            std::swap(a, b);
        }
        hop.emplace(a, b);
    }
    for (std::size_t i = 0; i < s.clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < s.clusters.size(); ++j) {
            if (!intersection(s.clusters[i], s.clusters[j]).empty()) {
                int a = s.clusters[i].id;
                int b = s.clusters[j].id;
                if (a > b) {
                    std::swap(a, b);
                }
                hop.emplace(a, b);
            }
        }
    }

    std::set<std::pair<int, int>> pairs;
    for (auto [ja, jb] : hop) {
        const Cluster* ca = find_cluster(s, ja);
        const Cluster* cb = find_cluster(s, jb);
        if (ca == nullptr || cb == nullptr) {
            continue;
        }
        const auto inter = intersection(*ca, *cb);
        const std::set<int> inter_set(inter.begin(), inter.end());
        for (int a : ca->members) {
            for (int b : cb->members) {
                if (a == b) {
                    continue;
                }
                if (inter_set.count(a) && inter_set.count(b)) {
                    continue;  // both inside the intersection
                }
                if (share_cluster(membership.at(a), membership.at(b))) {
                    continue;  // mutually aware through a common cluster
                }
                pairs.emplace(std::min(a, b), std::max(a, b));
            }
        }
    }
    return {pairs.begin(), pairs.end()};
}

int select_L(const Scenario& s) {
    std::size_t largest = 0;
    for (const auto& c : s.clusters) {
        largest = std::max(largest, c.members.size());
    }
    if (largest == 0) {
        throw std::invalid_argument("select_L: scenario has no clusters");
    }
    if (static_cast<int>(largest) > s.channelization.L_max) {
        throw std::runtime_error(
            "select_L: insufficient subframes, max cluster size " +
            std::to_string(largest) + " exceeds L_max " +
            std::to_string(s.channelization.L_max));
    }
    return static_cast<int>(largest);
}

CapacityMap generate_capacity(const Scenario& s, const ChannelModelParams& model,
                              std::uint64_t seed) {
    if (model.sinr_lo_db > model.sinr_hi_db) {
        throw std::invalid_argument("generate_capacity: sinr_lo_db > sinr_hi_db");
    }
    const int n = s.num_vehicles();
    const int kl = s.channelization.num_subchannels();
    CapacityMap cm;
    cm.n = n;
    cm.kl = kl;
    cm.values.resize(static_cast<std::size_t>(n) * kl);
    std::mt19937_64 gen(seed);
    const double lo = model.sinr_lo_db;
    const double span = model.sinr_hi_db - model.sinr_lo_db;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < kl; ++k) {
            const double snr_db = lo + span * uniform01(gen);
            const double snr = std::pow(10.0, snr_db / 10.0);
            cm.values[static_cast<std::size_t>(i) * kl + k] =
                s.channelization.B * std::log2(1.0 + snr);
        }
    }
    return cm;
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scenario parse error: ") + e.what());
    }
    Scenario s;
    try {
        s.name = j.value("name", "");
        for (const auto& v : j.at("vehicles")) {
            s.vehicles.push_back({v.at("id").get<int>(), v.at("qos").get<double>()});
        }
        for (const auto& c : j.at("clusters")) {
            Cluster cl;
            cl.id = c.at("id").get<int>();
            cl.members = c.at("members").get<std::vector<int>>();
            s.clusters.push_back(std::move(cl));
        }
        if (j.contains("one_hop_cluster_pairs")) {
            for (const auto& p : j.at("one_hop_cluster_pairs")) {
                s.one_hop_cluster_pairs.emplace_back(p.at(0).get<int>(),
                                                     p.at(1).get<int>());
            }
        }
        const auto& ch = j.at("channelization");
        s.channelization.K = ch.at("K").get<int>();
        s.channelization.L = ch.at("L").get<int>();
        s.channelization.B = ch.at("B").get<double>();
        s.channelization.L_max = ch.value("L_max", 100);
        s.epsilon = j.at("epsilon").get<double>();
        if (j.contains("channel_model")) {
            const auto& m = j.at("channel_model");
            s.channel_model.sinr_lo_db = m.at("sinr_lo_db").get<double>();
            s.channel_model.sinr_hi_db = m.at("sinr_hi_db").get<double>();
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("scenario field error: ") + e.what());
    }
    return s;
}

std::string dump_scenario(const Scenario& s) {
    json j;
    if (!s.name.empty()) {
        j["name"] = s.name;
    }
    j["vehicles"] = json::array();
    for (const auto& v : s.vehicles) {
        j["vehicles"].push_back({{"id", v.id}, {"qos", v.qos}});
    }
    j["clusters"] = json::array();
    for (const auto& c : s.clusters) {
        j["clusters"].push_back({{"id", c.id}, {"members", c.members}});
    }
    j["one_hop_cluster_pairs"] = json::array();
    for (const auto& [a, b] : s.one_hop_cluster_pairs) {
        j["one_hop_cluster_pairs"].push_back({a, b});
    }
    j["channelization"] = {{"K", s.channelization.K},
                           {"L", s.channelization.L},
                           {"B", s.channelization.B},
                           {"L_max", s.channelization.L_max}};
    j["epsilon"] = s.epsilon;
    j["channel_model"] = {{"sinr_lo_db", s.channel_model.sinr_lo_db},
                          {"sinr_hi_db", s.channel_model.sinr_hi_db}};
    return j.dump(2);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open scenario file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    Scenario s = parse_scenario(ss.str());
    if (s.name.empty()) {
        s.name = path.stem().string();
    }
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write scenario file: " + path.string());
    }
    out << dump_scenario(s) << '\n';
}

}  // namespace v2v
