#include "v2v/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace v2v {

namespace {

using Clock = std::chrono::steady_clock;

struct Option {
    int subframe;   // 0-based; -1 for the empty allocation
    std::uint32_t mask;  // slot bits within the subframe
    double sum;     // capacity over the chosen slots
};

struct SearchContext {
    const Problem& p;
    const SolveLimits& limits;
    Clock::time_point start;

    std::vector<int> order;                    // vehicle0 by descending q
    std::vector<int> scan;                     // MRV tie-break for this restart
    std::uint64_t restart_cap = 0;             // node count ending this restart
    bool cap_hit = false;
    std::vector<std::vector<Option>> options;  // per vehicle0
    std::vector<double> max_sum;               // vehicle0 -> best option sum
    std::vector<char> can_idle;                // vehicle0 -> has empty option
    double ub_remaining = 0.0;                 // sum of max_sum over unassigned
    std::vector<std::vector<int>> clusters_of; // vehicle0 -> cluster indices
    std::vector<std::vector<int>> neighbors;   // vehicle0 -> one-hop vehicle0s
    std::vector<int> must_remaining;           // cluster -> unassigned must-TX

    std::vector<std::vector<char>> cluster_used;  // [cluster][subframe]
    std::vector<int> cluster_used_count;
    std::vector<std::uint64_t> cluster_mask;   // occupied-subframe bits (L<=64)
    std::vector<std::uint64_t> sf_mask;        // vehicle0 -> feasible subframes
    std::vector<std::vector<int>> cluster_must;  // cluster -> must-transmit v0s
    std::vector<int> match_scratch;              // subframe -> vehicle0 or -1
    // ok_disjoint[v][sf << K | b]: vehicle v has a window-feasible mask in
    // subframe sf avoiding the blocked-slot set b.
    std::vector<std::vector<std::uint8_t>> ok_disjoint;
    std::vector<std::vector<std::int16_t>> slot_block_cnt;  // [v][sf*K+slot]
    std::vector<std::vector<std::uint32_t>> blocked_slots;  // [v][sf]
    bool lookahead = false;

    // Subframes where v currently retains a usable option (Type II free in
    // the calling context is handled by the matching's `free` mask).
    std::uint64_t usable_subframes(int v) const {
        std::uint64_t avail = sf_mask[v];
        std::uint64_t out = 0;
        while (avail) {
            const int sf = std::countr_zero(avail);
            avail &= avail - 1;
            if (ok_disjoint[v][(static_cast<std::size_t>(sf) << p.K) |
                              blocked_slots[v][sf]]) {
                out |= std::uint64_t{1} << sf;
            }
        }
        return out;
    }
    std::vector<int> assigned_subframe;           // vehicle0 -> subframe or -1
    std::vector<std::uint32_t> assigned_mask;
    std::vector<char> is_assigned;

    std::uint64_t nodes = 0;
    bool aborted = false;

    bool have_incumbent = false;
    double best_obj = 0.0;
    Bits best_x;

    explicit SearchContext(const Problem& prob, const SolveLimits& lim)
        : p(prob), limits(lim), start(Clock::now()) {}

    bool out_of_budget() {
        if (nodes > limits.node_limit) {
            return true;
        }
        if ((nodes & 0xfff) == 0) {
            const double elapsed =
                std::chrono::duration<double>(Clock::now() - start).count();
            if (elapsed > limits.time_limit_s) {
                return true;
            }
        }
        return false;
    }
};

bool kuhn_augment(SearchContext& ctx, int v, std::uint64_t free,
                  std::uint64_t& visited) {
    std::uint64_t avail = ctx.usable_subframes(v) & free & ~visited;
    while (avail) {
        const int sf = std::countr_zero(avail);
        avail &= avail - 1;
        visited |= std::uint64_t{1} << sf;
        if (ctx.match_scratch[sf] < 0 ||
            kuhn_augment(ctx, ctx.match_scratch[sf], free, visited)) {
            ctx.match_scratch[sf] = v;
            return true;
        }
    }
    return false;
}

// Hall-style prune: within each cluster, the unassigned must-transmit members
// need a system of distinct free window-feasible subframes (Type IV relaxed).
bool clusters_matchable(SearchContext& ctx) {
    for (std::size_t j = 0; j < ctx.cluster_must.size(); ++j) {
        const std::uint64_t free = ~ctx.cluster_mask[j];
        std::fill(ctx.match_scratch.begin(), ctx.match_scratch.end(), -1);
        for (int v : ctx.cluster_must[j]) {
            if (ctx.is_assigned[v]) {
                continue;
            }
            std::uint64_t visited = 0;
            if (!kuhn_augment(ctx, v, free, visited)) {
                return false;
            }
        }
    }
    return true;
}

double window_lo(const Problem& p, int i) { return p.q[i] - p.epsilon; }
double window_hi(const Problem& p, int i) { return p.q[i] + p.epsilon; }

std::vector<Option> vehicle_options(const Problem& p, int i) {
    std::vector<Option> out;
    const int kl = p.K * p.L;
    const double lo = window_lo(p, i) - kWindowTol;
    const double hi = window_hi(p, i) + kWindowTol;
    for (int l = 0; l < p.L; ++l) {
        for (std::uint32_t mask = 1; mask < (1u << p.K); ++mask) {
            double sum = 0.0;
            for (int slot = 0; slot < p.K; ++slot) {
                if (mask & (1u << slot)) {
                    sum += p.c[static_cast<std::size_t>(i) * kl + l * p.K + slot];
                }
            }
            if (sum >= lo && sum <= hi) {
                out.push_back({l, mask, sum});
            }
        }
    }
    // Fewest slots first (least constraining for the one-hop conflicts),
    // then highest capacity; deterministic tail tie-break.
    std::stable_sort(out.begin(), out.end(), [](const Option& a, const Option& b) {
        const int pa = std::popcount(a.mask);
        const int pb = std::popcount(b.mask);
        if (pa != pb) {
            return pa < pb;
        }
        if (a.sum != b.sum) {
            return a.sum > b.sum;
        }
        if (a.subframe != b.subframe) {
            return a.subframe < b.subframe;
        }
        return a.mask < b.mask;
    });
    if (lo <= 0.0) {
        out.push_back({-1, 0, 0.0});
    }
    return out;
}

// Fail-first vehicle selection: fewest currently valid options, ties by the
// documented static priority (descending q, then id). Keeps the search
// deterministic while avoiding deep thrashing on tightly coupled instances.
int select_vehicle(SearchContext& ctx) {
    int best = -1;
    int best_key = 0;
    for (int v : ctx.scan) {
        if (ctx.is_assigned[v]) {
            continue;
        }
        if (!ctx.lookahead) {
            return v;  // static order fallback
        }
        std::uint64_t blocked = 0;
        for (int j : ctx.clusters_of[v]) {
            blocked |= ctx.cluster_mask[j];
        }
        int key = ctx.can_idle[v] ? 1 : 0;
        for (const Option& o : ctx.options[v]) {
            if (o.subframe < 0) {
                continue;
            }
            if ((blocked >> o.subframe) & 1) {
                continue;
            }
            if ((o.mask & ctx.blocked_slots[v][o.subframe]) == 0) {
                ++key;
            }
        }
        if (key == 0) {
            return v;  // dead end, fail immediately
        }
        if (best < 0 || key < best_key) {
            best = v;
            best_key = key;
        }
    }
    return best;
}

void dfs(SearchContext& ctx, std::size_t pos, double cur) {
    if (ctx.aborted || ctx.cap_hit) {
        return;
    }
    const Problem& p = ctx.p;
    if (pos == ctx.order.size()) {
        if (!ctx.have_incumbent || cur > ctx.best_obj + 1e-12) {
            ctx.have_incumbent = true;
            ctx.best_obj = cur;
            const int kl = p.K * p.L;
            ctx.best_x.assign(static_cast<std::size_t>(p.N) * kl, 0);
            for (int i = 0; i < p.N; ++i) {
                if (ctx.assigned_subframe[i] < 0) {
                    continue;
                }
                for (int slot = 0; slot < p.K; ++slot) {
                    if (ctx.assigned_mask[i] & (1u << slot)) {
                        ctx.best_x[static_cast<std::size_t>(i) * kl +
                                   ctx.assigned_subframe[i] * p.K + slot] = 1;
                    }
                }
            }
        }
        return;
    }
    if (ctx.have_incumbent && cur + ctx.ub_remaining <= ctx.best_obj + 1e-12) {
        return;
    }
    // Pigeonhole: every still-unassigned vehicle that must transmit needs a
    // distinct free subframe within each of its clusters.
    for (std::size_t j = 0; j < ctx.cluster_used.size(); ++j) {
        if (ctx.must_remaining[j] > p.L - ctx.cluster_used_count[j]) {
            return;
        }
    }
    if (ctx.lookahead && !clusters_matchable(ctx)) {
        return;
    }

    const int i = select_vehicle(ctx);
    for (const Option& opt : ctx.options[i]) {
        ++ctx.nodes;
        if (ctx.out_of_budget()) {
            ctx.aborted = true;
            return;
        }
        if (ctx.nodes >= ctx.restart_cap) {
            ctx.cap_hit = true;
            return;
        }
        if (opt.subframe >= 0) {
            bool blocked = false;
            for (int j : ctx.clusters_of[i]) {
                if (ctx.cluster_used[j][opt.subframe]) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) {
                continue;
            }
            for (int nb : ctx.neighbors[i]) {
                if (ctx.is_assigned[nb] &&
                    ctx.assigned_subframe[nb] == opt.subframe &&
                    (ctx.assigned_mask[nb] & opt.mask) != 0) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) {
                continue;
            }
        }
        ctx.is_assigned[i] = 1;
        ctx.assigned_subframe[i] = opt.subframe;
        ctx.assigned_mask[i] = opt.mask;
        ctx.ub_remaining -= ctx.max_sum[i];
        if (!ctx.can_idle[i]) {
            for (int j : ctx.clusters_of[i]) {
                --ctx.must_remaining[j];
            }
        }
        if (opt.subframe >= 0) {
            for (int j : ctx.clusters_of[i]) {
                ctx.cluster_used[j][opt.subframe] = 1;
                ctx.cluster_mask[j] |= std::uint64_t{1} << opt.subframe;
                ++ctx.cluster_used_count[j];
            }
            if (ctx.lookahead) {
                for (int nb : ctx.neighbors[i]) {
                    for (int slot = 0; slot < p.K; ++slot) {
                        if (opt.mask & (1u << slot)) {
                            if (ctx.slot_block_cnt[nb][opt.subframe * p.K +
                                                       slot]++ == 0) {
                                ctx.blocked_slots[nb][opt.subframe] |= 1u << slot;
                            }
                        }
                    }
                }
            }
        }
        dfs(ctx, pos + 1, cur + opt.sum);
        if (opt.subframe >= 0) {
            for (int j : ctx.clusters_of[i]) {
                ctx.cluster_used[j][opt.subframe] = 0;
                ctx.cluster_mask[j] &= ~(std::uint64_t{1} << opt.subframe);
                --ctx.cluster_used_count[j];
            }
            if (ctx.lookahead) {
                for (int nb : ctx.neighbors[i]) {
                    for (int slot = 0; slot < p.K; ++slot) {
                        if (opt.mask & (1u << slot)) {
                            if (--ctx.slot_block_cnt[nb][opt.subframe * p.K +
                                                         slot] == 0) {
                                ctx.blocked_slots[nb][opt.subframe] &=
                                    ~(1u << slot);
                            }
                        }
                    }
                }
            }
        }
        ctx.is_assigned[i] = 0;
        ctx.assigned_subframe[i] = -1;
        ctx.assigned_mask[i] = 0;
        ctx.ub_remaining += ctx.max_sum[i];
        if (!ctx.can_idle[i]) {
            for (int j : ctx.clusters_of[i]) {
                ++ctx.must_remaining[j];
            }
        }
        if (ctx.aborted || ctx.cap_hit) {
            return;
        }
    }
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::NoFeasibleFound: return "no_feasible_found";
        case SolveStatus::TimedOut: return "timed_out";
    }
    return "unknown";
}

std::vector<VehicleAssignment> Allocation::per_vehicle(int n, int k, int l) const {
    std::vector<VehicleAssignment> out;
    const int kl = k * l;
    for (int i = 0; i < n; ++i) {
        VehicleAssignment va;
        va.vehicle = i + 1;
        for (int kk = 0; kk < kl; ++kk) {
            if (x[static_cast<std::size_t>(i) * kl + kk]) {
                va.subframe = kk / k + 1;
                va.slots.push_back(kk % k + 1);
            }
        }
        out.push_back(std::move(va));
    }
    return out;
}

SolveResult solve_exact(const Problem& p, const SolveLimits& limits) {
    SearchContext ctx(p, limits);
    const std::size_t num_clusters = p.scenario.clusters.size();

    ctx.order.resize(p.N);
    for (int i = 0; i < p.N; ++i) {
        ctx.order[i] = i;
    }
    std::stable_sort(ctx.order.begin(), ctx.order.end(), [&p](int a, int b) {
        if (p.q[a] != p.q[b]) {
            return p.q[a] > p.q[b];
        }
        return a < b;
    });

    ctx.options.resize(p.N);
    ctx.clusters_of.resize(p.N);
    ctx.neighbors.resize(p.N);
    for (int i = 0; i < p.N; ++i) {
        ctx.options[i] = vehicle_options(p, i);
    }
    for (std::size_t j = 0; j < num_clusters; ++j) {
        for (int m : p.scenario.clusters[j].members) {
            ctx.clusters_of[m - 1].push_back(static_cast<int>(j));
        }
    }
    for (const auto& [a, b] : p.conflict.onehop_pairs) {
        ctx.neighbors[a - 1].push_back(b - 1);
        ctx.neighbors[b - 1].push_back(a - 1);
    }

    ctx.max_sum.assign(p.N, 0.0);
    ctx.can_idle.assign(p.N, 0);
    ctx.must_remaining.assign(num_clusters, 0);
    ctx.ub_remaining = 0.0;
    for (int i = 0; i < p.N; ++i) {
        for (const Option& o : ctx.options[i]) {
            ctx.max_sum[i] = std::max(ctx.max_sum[i], o.sum);
        }
        ctx.ub_remaining += ctx.max_sum[i];
        ctx.can_idle[i] =
            !ctx.options[i].empty() && ctx.options[i].back().subframe < 0;
        if (!ctx.can_idle[i]) {
            for (int j : ctx.clusters_of[i]) {
                ++ctx.must_remaining[j];
            }
        }
    }

    SolveResult result;
    // A vehicle without any window-feasible option decides the instance.
    for (int i = 0; i < p.N; ++i) {
        if (ctx.options[i].empty()) {
            result.status = SolveStatus::Infeasible;
            return result;
        }
    }

    ctx.cluster_used.assign(num_clusters, std::vector<char>(p.L, 0));
    ctx.cluster_used_count.assign(num_clusters, 0);
    ctx.cluster_mask.assign(num_clusters, 0);
    ctx.lookahead = p.L <= 64 && p.K <= 8;
    if (ctx.lookahead) {
        ctx.sf_mask.assign(p.N, 0);
        for (int i = 0; i < p.N; ++i) {
            for (const Option& o : ctx.options[i]) {
                if (o.subframe >= 0) {
                    ctx.sf_mask[i] |= std::uint64_t{1} << o.subframe;
                }
            }
        }
        ctx.cluster_must.assign(num_clusters, {});
        for (std::size_t j = 0; j < num_clusters; ++j) {
            for (int m : p.scenario.clusters[j].members) {
                const int v = m - 1;
                if (ctx.options[v].back().subframe >= 0) {
                    ctx.cluster_must[j].push_back(v);
                }
            }
        }
        ctx.match_scratch.assign(p.L, -1);
        ctx.ok_disjoint.assign(p.N, {});
        ctx.slot_block_cnt.assign(
            p.N, std::vector<std::int16_t>(static_cast<std::size_t>(p.L) * p.K, 0));
        ctx.blocked_slots.assign(p.N, std::vector<std::uint32_t>(p.L, 0));
        const std::uint32_t kpow = 1u << p.K;
        for (int i = 0; i < p.N; ++i) {
            ctx.ok_disjoint[i].assign(static_cast<std::size_t>(p.L) * kpow, 0);
            for (const Option& o : ctx.options[i]) {
                if (o.subframe < 0) {
                    continue;
                }
                for (std::uint32_t b = 0; b < kpow; ++b) {
                    if ((o.mask & b) == 0) {
                        ctx.ok_disjoint[i][(static_cast<std::size_t>(o.subframe)
                                            << p.K) |
                                           b] = 1;
                    }
                }
            }
        }
    }
    ctx.assigned_subframe.assign(p.N, -1);
    ctx.assigned_mask.assign(p.N, 0);
    ctx.is_assigned.assign(p.N, 0);

    // Restart ladder: the MRV tie-break order is the one degree of freedom
    // that decides between quick success and deep thrashing on tightly
    // coupled instances, so cycle a fixed set of orders with geometrically
    // growing node caps. Completing any restart without hitting its cap
    // proves the final status; the incumbent carries across restarts.
    std::vector<std::vector<int>> scans;
    scans.push_back(ctx.order);  // descending q, ties by id
    scans.emplace_back();
    for (int i = 0; i < p.N; ++i) {
        scans.back().push_back(i);  // ascending id
    }
    scans.emplace_back(scans.back().rbegin(), scans.back().rend());
    scans.emplace_back(ctx.order.rbegin(), ctx.order.rend());

    bool complete = false;
    std::uint64_t cap = 50'000;
    std::mt19937_64 shuffle_gen(0x9E3779B97F4A7C15ull);
    const auto base_options = ctx.options;
    for (std::size_t r = 0; !complete && !ctx.aborted; ++r) {
        if (r < scans.size()) {
            ctx.scan = scans[r];
        } else {
            // Deterministic Fisher-Yates diversification of both the MRV
            // tie-break order and the per-vehicle value order (the empty
            // option, when present, stays last).
            ctx.scan = ctx.order;
            for (std::size_t i = ctx.scan.size(); i > 1; --i) {
                std::swap(ctx.scan[i - 1], ctx.scan[shuffle_gen() % i]);
            }
            ctx.options = base_options;
            for (auto& opts : ctx.options) {
                std::size_t m = opts.size();
                while (m > 0 && opts[m - 1].subframe < 0) {
                    --m;
                }
                for (std::size_t i = m; i > 1; --i) {
                    std::swap(opts[i - 1], opts[shuffle_gen() % i]);
                }
            }
        }
        ctx.cap_hit = false;
        ctx.restart_cap = ctx.nodes + cap;
        dfs(ctx, 0, 0.0);
        if (!ctx.cap_hit && !ctx.aborted) {
            complete = true;
        }
        if (r % scans.size() == scans.size() - 1) {
            cap *= 2;
        }
        if (cap > limits.node_limit * 2 + 1) {
            break;  // safety net; out_of_budget normally fires first
        }
    }
    if (!complete && !ctx.aborted) {
        ctx.aborted = true;
    }

    result.nodes = ctx.nodes;
    result.wall_time_s =
        std::chrono::duration<double>(Clock::now() - ctx.start).count();
    if (ctx.aborted) {
        result.status = SolveStatus::TimedOut;
    } else {
        result.status =
            ctx.have_incumbent ? SolveStatus::Optimal : SolveStatus::Infeasible;
    }
    if (ctx.have_incumbent) {
        // Canonical summation order, so the reported objective is exactly
        // cᵀx for the returned allocation.
        result.objective = p.objective(ctx.best_x);
        result.allocation = Allocation{ctx.best_x};
    }
    return result;
}

SolveResult brute_force(const Problem& p) {
    const int nvars = p.num_vars();
    if (nvars > 24) {
        throw std::invalid_argument("brute_force: instance too large (NKL > 24)");
    }
    const auto start = Clock::now();
    SolveResult result;
    Bits x(nvars, 0);
    bool found = false;
    double best = 0.0;
    Bits best_x;
    for (std::uint32_t m = 0; m < (1u << nvars); ++m) {
        for (int b = 0; b < nvars; ++b) {
            x[b] = (m >> b) & 1u;
        }
        if (!p.feasible(x)) {
            continue;
        }
        const double obj = p.objective(x);
        if (!found || obj > best + 1e-12) {
            found = true;
            best = obj;
            best_x = x;
        }
    }
    result.nodes = std::uint64_t{1} << nvars;
    result.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
    if (found) {
        result.status = SolveStatus::Optimal;
        result.objective = best;
        result.allocation = Allocation{best_x};
    } else {
        result.status = SolveStatus::Infeasible;
    }
    return result;
}

std::vector<Bits> enumerate_feasible(const Problem& p) {
    const int nvars = p.num_vars();
    if (nvars > 24) {
        throw std::invalid_argument("enumerate_feasible: instance too large");
    }
    std::vector<Bits> out;
    Bits x(nvars, 0);
    for (std::uint32_t m = 0; m < (1u << nvars); ++m) {
        for (int b = 0; b < nvars; ++b) {
            x[b] = (m >> b) & 1u;
        }
        if (p.feasible(x)) {
            out.push_back(x);
        }
    }
    return out;
}

EfRfComparison solve_rf_equals_ef(const Scenario& s, const CapacityMap& cm,
                                  const SolveLimits& limits) {
    EfRfComparison cmp;
    cmp.ef = solve_exact(assemble(s, cm, Formulation::EF), limits);
    cmp.rf = solve_exact(assemble(s, cm, Formulation::RF), limits);
    if (cmp.ef.status == SolveStatus::Infeasible &&
        cmp.rf.status == SolveStatus::Infeasible) {
        cmp.objectives_equal = true;
    } else {
        cmp.objectives_equal = cmp.ef.status == cmp.rf.status &&
                               cmp.ef.objective == cmp.rf.objective;
    }
    return cmp;
}

SolveResult random_allocation(const Scenario& s, const CapacityMap& cm,
                              std::uint64_t seed, std::uint64_t max_tries) {
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        throw std::invalid_argument("random_allocation: invalid scenario");
    }
    const auto start = Clock::now();
    const int n = s.num_vehicles();
    const int k = s.channelization.K;
    const int l = s.channelization.L;
    const int kl = k * l;

    std::vector<std::vector<int>> clusters_of(n);
    for (std::size_t j = 0; j < s.clusters.size(); ++j) {
        for (int m : s.clusters[j].members) {
            clusters_of[m - 1].push_back(static_cast<int>(j));
        }
    }
    std::vector<std::vector<int>> neighbors(n);
    for (const auto& [a, b] : one_hop_pairs(s)) {
        neighbors[a - 1].push_back(b - 1);
        neighbors[b - 1].push_back(a - 1);
    }

    std::mt19937_64 gen(seed);
    SolveResult result;

    std::vector<int> subframe(n);
    std::vector<std::uint32_t> mask(n);
    std::vector<std::vector<char>> cluster_used(s.clusters.size());
    for (std::uint64_t attempt = 1; attempt <= max_tries; ++attempt) {
        result.tries = attempt;
        for (auto& cu : cluster_used) {
            cu.assign(l, 0);
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            std::vector<int> candidates;
            for (int sf = 0; sf < l; ++sf) {
                bool free_sf = true;
                for (int j : clusters_of[i]) {
                    if (cluster_used[j][sf]) {
                        free_sf = false;
                        break;
                    }
                }
                if (free_sf) {
                    candidates.push_back(sf);
                }
            }
            if (candidates.empty()) {
                ok = false;
                break;
            }
            const int sf = candidates[gen() % candidates.size()];
            std::uint32_t blocked = 0;
            for (int nb : neighbors[i]) {
                if (nb < i && subframe[nb] == sf) {
                    blocked |= mask[nb];
                }
            }
            std::vector<int> open;
            for (int slot = 0; slot < k; ++slot) {
                if (!(blocked & (1u << slot))) {
                    open.push_back(slot);
                }
            }
            if (open.empty()) {
                ok = false;
                break;
            }
            const std::uint32_t pick =
                1u + static_cast<std::uint32_t>(gen() % ((1u << open.size()) - 1u));
            std::uint32_t m = 0;
            for (std::size_t bi = 0; bi < open.size(); ++bi) {
                if (pick & (1u << bi)) {
                    m |= 1u << open[bi];
                }
            }
            subframe[i] = sf;
            mask[i] = m;
            for (int j : clusters_of[i]) {
                cluster_used[j][sf] = 1;
            }
        }
        if (!ok) {
            continue;
        }
        Bits x(static_cast<std::size_t>(n) * kl, 0);
        double obj = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int slot = 0; slot < k; ++slot) {
                if (mask[i] & (1u << slot)) {
                    const int idx = i * kl + subframe[i] * k + slot;
                    x[idx] = 1;
                    obj += cm.values[idx];
                }
            }
        }
        result.status = SolveStatus::Feasible;
        result.objective = obj;
        result.allocation = Allocation{std::move(x)};
        result.wall_time_s =
            std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    }
    result.status = SolveStatus::NoFeasibleFound;
    result.wall_time_s =
        std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

}  // namespace v2v
