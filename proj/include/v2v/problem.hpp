#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "v2v/scenario.hpp"
#include "v2v/tensor.hpp"

namespace v2v {

/// Binary allocation vector, vehicle-major over the KL subchannels.
using Bits = std::vector<std::uint8_t>;

enum class Formulation { EF, RF };

/// Pair-row conflict matrices and their aggregated (tilde) forms.
///
/// Row conventions: for vehicle pairs (a,b) with a < b, the minus matrix
/// selects a and the plus matrix selects b. Q rows are indexed by subframe
/// pairs (l,l') with l < l' in lexicographic order, so Q± is S x L with
/// S = L(L-1)/2.
struct ConflictMatrices {
    BinaryMatrix Gm, Gp;  // P x N
    BinaryMatrix Qm, Qp;  // S x L
    BinaryMatrix Hm, Hp;  // U x N
    BinaryMatrix Gt;      // N x N
    BinaryMatrix Qt;      // L x L, strictly lower triangular ones
    BinaryMatrix Ht;      // N x N

    std::vector<std::pair<int, int>> intra_pairs;   // 1-based vehicle ids
    std::vector<std::pair<int, int>> onehop_pairs;  // 1-based vehicle ids

    int P() const { return static_cast<int>(intra_pairs.size()); }
    int U() const { return static_cast<int>(onehop_pairs.size()); }
};

struct TypeIViolation {
    int vehicle;
    double attained;
    double lo, hi;
};
struct TypeIIViolation {
    std::pair<int, int> vehicles;
    int subframe;  // 1-based
};
struct TypeIIIViolation {
    int vehicle;
    std::pair<int, int> subframes;  // 1-based, first < second
};
struct TypeIVViolation {
    std::pair<int, int> vehicles;
    int subchannel;  // 1-based global index in 1..KL
};

struct ViolationReport {
    std::vector<TypeIViolation> type1;
    std::vector<TypeIIViolation> type2;
    std::vector<TypeIIIViolation> type3;
    std::vector<TypeIVViolation> type4;

    bool empty() const {
        return type1.empty() && type2.empty() && type3.empty() && type4.empty();
    }
    bool conflict_free() const {  // Types II-IV only (the RA criterion)
        return type2.empty() && type3.empty() && type4.empty();
    }
};

/// Compiled allocation problem. EF keeps the per-pair quadratic equalities;
/// RF carries the same data but evaluates the three aggregated scalar forms
/// through the factored Kronecker representation.
struct Problem {
    Formulation kind = Formulation::EF;
    Scenario scenario;
    CapacityMap capacity;
    Vector c;        // objective, length N*K*L
    Vector q;        // demand per vehicle, length N
    double epsilon = 0.0;
    ConflictMatrices conflict;
    int N = 0, K = 0, L = 0;

    int num_vars() const { return N * K * L; }

    /// EF: N + P + U, RF: N + 3 (vacuous groups excluded per degenerate rule).
    int constraint_groups() const;

    /// Concatenated left-hand sides of the three quadratic constraint
    /// families, in order: Type II (P*L entries), Type III (N*S entries),
    /// Type IV (U*K*L entries). All zero iff the allocation is conflict-free.
    std::vector<double> ef_products(const Bits& x) const;

    /// The three surrogate scalar quadratic forms, evaluated lazily through
    /// the subframe-occupancy factorization (no NKL x NKL materialization).
    std::array<double, 3> rf_forms(const Bits& x) const;

    bool feasible_conflicts(const Bits& x) const;  // Types II-IV
    bool feasible(const Bits& x) const;            // Types I-IV

    double objective(const Bits& x) const;

    /// Pairwise linearization: x_a + x_b <= 1 over exactly the variable pairs
    /// whose product appears in some EF quadratic constraint. Exact for
    /// binary x.
    std::vector<std::pair<int, int>> linearized_pairs() const;
};

/// Row p selects the first pair member in Am and the second in Ap.
std::pair<BinaryMatrix, BinaryMatrix> build_G(
    const std::vector<std::pair<int, int>>& pairs, int n);
std::pair<BinaryMatrix, BinaryMatrix> build_Q(int l);
std::pair<BinaryMatrix, BinaryMatrix> build_H(
    const std::vector<std::pair<int, int>>& pairs, int n);

/// Amᵀ·Ap clipped to 0/1.
BinaryMatrix tilde(const BinaryMatrix& am, const BinaryMatrix& ap);

/// x_s = (I_NL ⊗ 1_{1xK}) x: per (vehicle, subframe) subchannel counts.
Vector subframe_occupancy(const Bits& x, int n, int k, int l);

Problem assemble(const Scenario& s, const CapacityMap& cm, Formulation kind);

ViolationReport check_feasible(const Bits& x, const Problem& p);

/// Debug/interop dump: one record per line (objective coefficients, window
/// bounds, conflict pairs), column order matching the x layout.
std::string dump_problem(const Problem& p);

/// Comparison slack for Type I window bounds.
inline constexpr double kWindowTol = 1e-9;

}  // namespace v2v
