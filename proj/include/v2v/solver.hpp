#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "v2v/problem.hpp"

namespace v2v {

/// Per-vehicle view of an allocation: one subframe (or none) and the slot
/// indices used within it.
struct VehicleAssignment {
    int vehicle = 0;           // 1-based id
    int subframe = 0;          // 1-based; 0 when the vehicle holds nothing
    std::vector<int> slots;    // 1-based slot indices within the subframe
};

struct Allocation {
    Bits x;

    std::vector<VehicleAssignment> per_vehicle(int n, int k, int l) const;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, NoFeasibleFound, TimedOut };

const char* to_string(SolveStatus s);

struct SolveLimits {
    double time_limit_s = 60.0;
    std::uint64_t node_limit = 50'000'000;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::optional<Allocation> allocation;
    std::uint64_t nodes = 0;       // branch-and-bound nodes explored
    double wall_time_s = 0.0;
    std::uint64_t tries = 0;       // random-allocation attempts
};

/// Depth-first branch-and-bound over per-vehicle (subframe, subchannel
/// subset) decisions. Type III holds by construction; Types II/IV prune the
/// branching; Type I restricts each vehicle's subset to its QoS window.
/// Vehicles are chosen fail-first (fewest currently valid options); values
/// are tried fewest-slots-first, then by descending capacity sum. The search
/// runs as a ladder of restarts that cycle a fixed set of tie-break orders
/// (plus internally seeded shuffles) under geometrically growing node caps;
/// completing any restart under its cap proves the final status. Pruning
/// adds a capacity upper bound, a per-cluster subframe pigeonhole, and a
/// per-cluster Hall-condition matching over the remaining subframe domains.
/// Fully deterministic for a given problem and limits.
SolveResult solve_exact(const Problem& p, const SolveLimits& limits = {});

/// Exhaustive enumeration over all binary x. Guard: N*K*L <= 24.
SolveResult brute_force(const Problem& p);

/// All feasible allocations of a tiny instance, in numeric x order.
std::vector<Bits> enumerate_feasible(const Problem& p);

struct EfRfComparison {
    SolveResult ef;
    SolveResult rf;
    bool objectives_equal = false;
};

/// Solves the EF and RF compilations of the same instance and compares.
EfRfComparison solve_rf_equals_ef(const Scenario& s, const CapacityMap& cm,
                                  const SolveLimits& limits = {});

/// Random-allocation baseline: per try, each vehicle draws a uniform
/// subframe among those free of Type II conflicts with already-placed
/// vehicles, then a uniform nonempty subset of the slots not blocked by
/// Type IV; a vehicle with no choice fails the try. Type I is not enforced.
SolveResult random_allocation(const Scenario& s, const CapacityMap& cm,
                              std::uint64_t seed, std::uint64_t max_tries = 10'000);

}  // namespace v2v
