#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace v2v {

/// K subchannels of B MHz per 1 ms subframe, L subframes per allocation
/// window. Subchannel index k (0-based) lives in subframe k / K.
struct Channelization {
    int K = 4;
    int L = 1;
    double B = 2.5;        // MHz
    int L_max = 100;

    int num_subchannels() const { return K * L; }
    int subframe_of(int k) const { return k / K; }
};

struct Vehicle {
    int id = 0;            // 1..N
    double qos = 0.0;      // required capacity q_i, Mbps
};

struct Cluster {
    int id = 0;            // 1..J
    std::vector<int> members;  // vehicle ids; clusters may overlap
};

struct ChannelModelParams {
    double sinr_lo_db = 0.0;
    double sinr_hi_db = 15.0;
};

struct Scenario {
    std::string name;
    std::vector<Vehicle> vehicles;
    std::vector<Cluster> clusters;
    Channelization channelization;
    double epsilon = 0.0;  // QoS window half-width, Mbps
    std::vector<std::pair<int, int>> one_hop_cluster_pairs;
    ChannelModelParams channel_model;

    int num_vehicles() const { return static_cast<int>(vehicles.size()); }
};

/// Achievable capacity c_ik over (vehicle, subchannel), N x KL row-major.
/// The flat layout matches the allocation vector x: vehicle-major,
/// subchannel-minor.
struct CapacityMap {
    int n = 0;
    int kl = 0;
    std::vector<double> values;  // length n * kl

    double at(int vehicle, int subchannel) const {
        return values[static_cast<std::size_t>(vehicle) * kl + subchannel];
    }
};

/// Returns one message per violated invariant; empty means valid.
std::vector<std::string> validate_scenario(const Scenario& s);

/// All unordered same-cluster vehicle pairs (a < b), deduplicated across
/// overlapping clusters, lexicographically sorted. Length defines P.
std::vector<std::pair<int, int>> intra_cluster_pairs(const Scenario& s);

/// All unordered pairs of vehicles in distinct one-hop clusters that share
/// no cluster and do not both lie in the intersection. Length defines U.
std::vector<std::pair<int, int>> one_hop_pairs(const Scenario& s);

/// Largest cluster size; throws if it exceeds L_max.
int select_L(const Scenario& s);

/// Draws SINR in dB i.i.d. uniform per (vehicle, subchannel) and maps it to
/// c_ik = B log2(1 + SINR). Bit-identical for equal (scenario, model, seed).
CapacityMap generate_capacity(const Scenario& s, const ChannelModelParams& model,
                              std::uint64_t seed);

Scenario parse_scenario(const std::string& text);
std::string dump_scenario(const Scenario& s);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Deterministic stream splitter for deriving per-trial seeds from a root
/// seed: trial t uses split_seed(root + t).
std::uint64_t split_seed(std::uint64_t v);

}  // namespace v2v
