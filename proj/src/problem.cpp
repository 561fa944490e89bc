#include "v2v/problem.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace v2v {

namespace {

int var_index(int vehicle0, int subchannel0, int kl) {
    return vehicle0 * kl + subchannel0;
}

std::vector<std::pair<int, int>> subframe_pairs(int l) {
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a <= l; ++a) {
        for (int b = a + 1; b <= l; ++b) {
            out.emplace_back(a, b);
        }
    }
    return out;
}

std::pair<BinaryMatrix, BinaryMatrix> build_pair_rows(
    const std::vector<std::pair<int, int>>& pairs, int n, const char* what) {
    BinaryMatrix am(pairs.size(), n);
    BinaryMatrix ap(pairs.size(), n);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const auto [a, b] = pairs[r];
        if (a < 1 || a > n || b < 1 || b > n) {
            throw std::out_of_range(std::string(what) + ": pair index out of range");
        }
        am.set(r, a - 1);
        ap.set(r, b - 1);
    }
    return {am, ap};
}

}  // namespace

std::pair<BinaryMatrix, BinaryMatrix> build_G(
    const std::vector<std::pair<int, int>>& pairs, int n) {
    return build_pair_rows(pairs, n, "build_G");
}

std::pair<BinaryMatrix, BinaryMatrix> build_H(
    const std::vector<std::pair<int, int>>& pairs, int n) {
    return build_pair_rows(pairs, n, "build_H");
}

std::pair<BinaryMatrix, BinaryMatrix> build_Q(int l) {
    if (l < 1) {
        throw std::invalid_argument("build_Q: L must be >= 1");
    }
    const auto pairs = subframe_pairs(l);
    BinaryMatrix qm(pairs.size(), l);
    BinaryMatrix qp(pairs.size(), l);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        qp.set(r, pairs[r].first - 1);
        qm.set(r, pairs[r].second - 1);
    }
    return {qm, qp};
}

BinaryMatrix tilde(const BinaryMatrix& am, const BinaryMatrix& ap) {
    if (am.rows() != ap.rows() || am.cols() != ap.cols()) {
        throw std::invalid_argument("tilde: shape mismatch");
    }
    BinaryMatrix out(am.cols(), am.cols());
    for (std::size_t r = 0; r < am.rows(); ++r) {
        for (std::size_t i = 0; i < am.cols(); ++i) {
            if (!am.get(r, i)) {
                continue;
            }
            for (std::size_t j = 0; j < ap.cols(); ++j) {
                if (ap.get(r, j)) {
                    out.set(i, j);
                }
            }
        }
    }
    return out;
}

Vector subframe_occupancy(const Bits& x, int n, int k, int l) {
    if (static_cast<int>(x.size()) != n * k * l) {
        throw std::invalid_argument("subframe_occupancy: length mismatch");
    }
    Vector xs(static_cast<std::size_t>(n) * l, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int sf = 0; sf < l; ++sf) {
            double sum = 0.0;
            for (int slot = 0; slot < k; ++slot) {
                sum += x[static_cast<std::size_t>(i) * k * l + sf * k + slot];
            }
            xs[static_cast<std::size_t>(i) * l + sf] = sum;
        }
    }
    return xs;
}

Problem assemble(const Scenario& s, const CapacityMap& cm, Formulation kind) {
    if (auto violations = validate_scenario(s); !violations.empty()) {
        std::string msg = "assemble: invalid scenario:";
        for (const auto& v : violations) {
            msg += "\n  " + v;
        }
        throw std::invalid_argument(msg);
    }
    const int n = s.num_vehicles();
    const int kl = s.channelization.num_subchannels();
    if (cm.n != n || cm.kl != kl) {
        throw std::invalid_argument("assemble: capacity map dimensions mismatch");
    }

    Problem p;
    p.kind = kind;
    p.scenario = s;
    p.capacity = cm;
    p.N = n;
    p.K = s.channelization.K;
    p.L = s.channelization.L;
    p.epsilon = s.epsilon;
    p.c = cm.values;
    p.q.resize(n);
    for (const auto& v : s.vehicles) {
        p.q[v.id - 1] = v.qos;
    }

    p.conflict.intra_pairs = intra_cluster_pairs(s);
    p.conflict.onehop_pairs = one_hop_pairs(s);
    std::tie(p.conflict.Gm, p.conflict.Gp) = build_G(p.conflict.intra_pairs, n);
    std::tie(p.conflict.Qm, p.conflict.Qp) = build_Q(p.L);
    std::tie(p.conflict.Hm, p.conflict.Hp) = build_H(p.conflict.onehop_pairs, n);
    p.conflict.Gt = tilde(p.conflict.Gm, p.conflict.Gp);
    p.conflict.Qt = tilde(p.conflict.Qm, p.conflict.Qp);
    p.conflict.Ht = tilde(p.conflict.Hm, p.conflict.Hp);
    return p;
}

int Problem::constraint_groups() const {
    if (kind == Formulation::EF) {
        return N + conflict.P() + conflict.U();
    }
    return N + 3;
}

std::vector<double> Problem::ef_products(const Bits& x) const {
    if (static_cast<int>(x.size()) != num_vars()) {
        throw std::invalid_argument("ef_products: length mismatch");
    }
    const Vector xs = subframe_occupancy(x, N, K, L);
    std::vector<double> out;
    const int s_pairs = L * (L - 1) / 2;
    out.reserve(static_cast<std::size_t>(conflict.P()) * L +
                static_cast<std::size_t>(N) * s_pairs +
                static_cast<std::size_t>(conflict.U()) * K * L);

    // Type II: (G± ⊗ I_L) x_s, PL entries.
    for (const auto& [a, b] : conflict.intra_pairs) {
        for (int l = 0; l < L; ++l) {
            out.push_back(xs[static_cast<std::size_t>(a - 1) * L + l] *
                          xs[static_cast<std::size_t>(b - 1) * L + l]);
        }
    }
    // Type III: (I_N ⊗ Q±) x_s, N*S entries.
    for (int i = 0; i < N; ++i) {
        for (int la = 0; la < L; ++la) {
            for (int lb = la + 1; lb < L; ++lb) {
                out.push_back(xs[static_cast<std::size_t>(i) * L + la] *
                              xs[static_cast<std::size_t>(i) * L + lb]);
            }
        }
    }
    // Type IV: (H± ⊗ I_KL) x, U*KL entries.
    const int kl = K * L;
    for (const auto& [a, b] : conflict.onehop_pairs) {
        for (int k = 0; k < kl; ++k) {
            out.push_back(static_cast<double>(x[var_index(a - 1, k, kl)]) *
                          static_cast<double>(x[var_index(b - 1, k, kl)]));
        }
    }
    return out;
}

std::array<double, 3> Problem::rf_forms(const Bits& x) const {
    if (static_cast<int>(x.size()) != num_vars()) {
        throw std::invalid_argument("rf_forms: length mismatch");
    }
    const Vector xs = subframe_occupancy(x, N, K, L);
    const int kl = K * L;

    // x_sᵀ (G̃ ⊗ I_L) x_s
    double g = 0.0;
    for (const auto& [a, b] : conflict.intra_pairs) {
        for (int l = 0; l < L; ++l) {
            g += xs[static_cast<std::size_t>(a - 1) * L + l] *
                 xs[static_cast<std::size_t>(b - 1) * L + l];
        }
    }
    // x_sᵀ (I_N ⊗ Q̃) x_s
    double q_form = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int la = 0; la < L; ++la) {
            for (int lb = la + 1; lb < L; ++lb) {
                q_form += xs[static_cast<std::size_t>(i) * L + la] *
                          xs[static_cast<std::size_t>(i) * L + lb];
            }
        }
    }
    // xᵀ (H̃ ⊗ I_KL) x
    double h = 0.0;
    for (const auto& [a, b] : conflict.onehop_pairs) {
        for (int k = 0; k < kl; ++k) {
            h += static_cast<double>(x[var_index(a - 1, k, kl)]) *
                 static_cast<double>(x[var_index(b - 1, k, kl)]);
        }
    }
    return {g, q_form, h};
}

bool Problem::feasible_conflicts(const Bits& x) const {
    if (kind == Formulation::RF) {
        const auto forms = rf_forms(x);
        return forms[0] == 0.0 && forms[1] == 0.0 && forms[2] == 0.0;
    }
    for (double v : ef_products(x)) {
        if (v != 0.0) {
            return false;
        }
    }
    return true;
}

bool Problem::feasible(const Bits& x) const {
    if (!feasible_conflicts(x)) {
        return false;
    }
    const int kl = K * L;
    for (int i = 0; i < N; ++i) {
        double attained = 0.0;
        for (int k = 0; k < kl; ++k) {
            if (x[var_index(i, k, kl)]) {
                attained += c[var_index(i, k, kl)];
            }
        }
        if (attained < q[i] - epsilon - kWindowTol ||
            attained > q[i] + epsilon + kWindowTol) {
            return false;
        }
    }
    return true;
}

double Problem::objective(const Bits& x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            sum += c[i];
        }
    }
    return sum;
}

std::vector<std::pair<int, int>> Problem::linearized_pairs() const {
    std::set<std::pair<int, int>> pairs;
    const int kl = K * L;
    auto add = [&pairs](int a, int b) {
        pairs.emplace(std::min(a, b), std::max(a, b));
    };
    // Type II: same-cluster vehicles, any two slots of the same subframe.
    for (const auto& [a, b] : conflict.intra_pairs) {
        for (int l = 0; l < L; ++l) {
            for (int s1 = 0; s1 < K; ++s1) {
                for (int s2 = 0; s2 < K; ++s2) {
                    add(var_index(a - 1, l * K + s1, kl),
                        var_index(b - 1, l * K + s2, kl));
                }
            }
        }
    }
    // Type III: one vehicle, slots in distinct subframes.
    for (int i = 0; i < N; ++i) {
        for (int la = 0; la < L; ++la) {
            for (int lb = la + 1; lb < L; ++lb) {
                for (int s1 = 0; s1 < K; ++s1) {
                    for (int s2 = 0; s2 < K; ++s2) {
                        add(var_index(i, la * K + s1, kl),
                            var_index(i, lb * K + s2, kl));
                    }
                }
            }
        }
    }
    // Type IV: one-hop vehicles, the same global subchannel.
    for (const auto& [a, b] : conflict.onehop_pairs) {
        for (int k = 0; k < kl; ++k) {
            add(var_index(a - 1, k, kl), var_index(b - 1, k, kl));
        }
    }
    return {pairs.begin(), pairs.end()};
}

ViolationReport check_feasible(const Bits& x, const Problem& p) {
    if (static_cast<int>(x.size()) != p.num_vars()) {
        throw std::invalid_argument("check_feasible: length mismatch");
    }
    ViolationReport report;
    const int kl = p.K * p.L;

    // Type I: attained rate outside [q - eps, q + eps].
    for (int i = 0; i < p.N; ++i) {
        double attained = 0.0;
        for (int k = 0; k < kl; ++k) {
            if (x[var_index(i, k, kl)]) {
                attained += p.c[var_index(i, k, kl)];
            }
        }
        const double lo = p.q[i] - p.epsilon;
        const double hi = p.q[i] + p.epsilon;
        if (attained < lo - kWindowTol || attained > hi + kWindowTol) {
            report.type1.push_back({i + 1, attained, lo, hi});
        }
    }

    const Vector xs = subframe_occupancy(x, p.N, p.K, p.L);
    auto occupies = [&xs, &p](int vehicle0, int subframe0) {
        return xs[static_cast<std::size_t>(vehicle0) * p.L + subframe0] > 0.0;
    };

    // Type II: a same-cluster pair sharing a subframe.
    for (const auto& [a, b] : p.conflict.intra_pairs) {
        for (int l = 0; l < p.L; ++l) {
            if (occupies(a - 1, l) && occupies(b - 1, l)) {
                report.type2.push_back({{a, b}, l + 1});
            }
        }
    }
    // Type III: one vehicle spanning two subframes.
    for (int i = 0; i < p.N; ++i) {
        for (int la = 0; la < p.L; ++la) {
            for (int lb = la + 1; lb < p.L; ++lb) {
                if (occupies(i, la) && occupies(i, lb)) {
                    report.type3.push_back({i + 1, {la + 1, lb + 1}});
                }
            }
        }
    }
    // Type IV: a one-hop pair sharing a subchannel.
    for (const auto& [a, b] : p.conflict.onehop_pairs) {
        for (int k = 0; k < kl; ++k) {
            if (x[var_index(a - 1, k, kl)] && x[var_index(b - 1, k, kl)]) {
                report.type4.push_back({{a, b}, k + 1});
            }
        }
    }
    return report;
}

std::string dump_problem(const Problem& p) {
    std::ostringstream out;
    char buf[128];
    out << "# formulation " << (p.kind == Formulation::EF ? "ef" : "rf") << "\n";
    out << "# dims N " << p.N << " K " << p.K << " L " << p.L << "\n";
    out << "# groups " << p.constraint_groups() << "\n";
    const int kl = p.K * p.L;
    for (int i = 0; i < p.N; ++i) {
        for (int k = 0; k < kl; ++k) {
            std::snprintf(buf, sizeof buf, "obj %d %d %.9g", i + 1, k + 1,
                          p.c[var_index(i, k, kl)]);
            out << buf << "\n";
        }
    }
    for (int i = 0; i < p.N; ++i) {
        std::snprintf(buf, sizeof buf, "window %d %.9g %.9g", i + 1,
                      p.q[i] - p.epsilon, p.q[i] + p.epsilon);
        out << buf << "\n";
    }
    for (const auto& [a, b] : p.conflict.intra_pairs) {
        out << "intra_pair " << a << " " << b << "\n";
    }
    for (const auto& [a, b] : p.conflict.onehop_pairs) {
        out << "onehop_pair " << a << " " << b << "\n";
    }
    return out.str();
}

}  // namespace v2v
