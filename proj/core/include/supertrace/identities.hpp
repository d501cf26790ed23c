#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supertrace/freetrace.hpp"
#include "supertrace/gmatrix.hpp"
#include "supertrace/rational.hpp"

namespace supertrace::identities {

using freetrace::Letter;
using freetrace::Perm;
using freetrace::TraceExpression;
using gmatrix::SuperMatrix;
using superalg::SuperPolynomial;

// Exact rank of a growing family of sparse rational rows. Deterministic:
// pivots are the least keys, rows are reduced in insertion order.
template <class Key>
class ExactRank {
public:
    bool add_row(std::map<Key, Rational> row) {
        for (;;) {
            if (row.empty()) return false;
            const Key& lead = row.begin()->first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                Rational inv = 1 / row.begin()->second;
                for (auto& [k, v] : row) v *= inv;
                pivots_.emplace(lead, std::move(row));
                return true;
            }
            Rational c = row.begin()->second;
            for (const auto& [k, v] : it->second) {
                auto [jt, inserted] = row.try_emplace(k, 0);
                jt->second -= c * v;
                if (jt->second == 0) row.erase(jt);
            }
        }
    }
    std::size_t rank() const { return pivots_.size(); }

private:
    std::map<Key, std::map<Key, Rational>> pivots_;
};

struct IdentitySpec {
    enum class Kind { T, CH };
    int n = 1;
    int e = 0;
    int f = 0;
    Kind kind = Kind::T;
};

// T_{e,f} = sum over S_{n+1} of sign(sigma) Phi_sigma for the standard
// coloring with e bosonic and f fermionic points, e+f = n+1. Multilinear in
// y_1..y_e, x_1..x_f; vanishes identically on n x n matrices.
TraceExpression gen_T(int e, int f, int n);

// CH_{e,f} = sum over S_{n+1} of sign(sigma) Psi_sigma, the last point
// stripped. The stripped variable is x_f when f >= 1 and y_e otherwise;
// tr(gen_CH * stripped) = gen_T.
TraceExpression gen_CH(int e, int f, int n);
Letter ch_stripped_variable(int e, int f);
// Variant that opens the cycle of the bosonic point e instead (e >= 1);
// satisfies tr(. * y_e) = gen_T as well.
TraceExpression gen_CH_strip_bosonic(int e, int f, int n);

using Assignment = std::map<Letter, SuperMatrix>;

// Evaluation homomorphism: letters to parity-matching matrices, trace
// factors through gmatrix::trace, t(1) to the matrix size.
SuperPolynomial evaluate_scalar(const TraceExpression& expr, const Assignment& assignment,
                                std::optional<std::size_t> dim = std::nullopt);
SuperMatrix evaluate_matrix(const TraceExpression& expr, const Assignment& assignment,
                            std::optional<std::size_t> dim = std::nullopt);

struct Verdict {
    bool zero = false;
    std::string witness;  // empty when zero
};

// Evaluates the identity on fresh generic matrices of the given size
// (defaults to spec.n, the size where it must vanish).
Verdict verify_identity(const IdentitySpec& spec, std::optional<int> at_size = std::nullopt);

struct DeductionReport {
    TraceExpression nilpotency_sub;  // all-bosonic CH with y_i <- x_1^2
    bool nilpotency_zero = false;
    TraceExpression recursion_sub;  // mixed CH with y_i <- x_1^2, x kept
    bool recursion_zero = false;
    bool all_zero() const { return nilpotency_zero && recursion_zero; }
};

// The two classical one-matrix facts recovered by substitution into CH:
// xi^{2n} = 0 and the trace recursion for tr(xi^{2n-1}).
DeductionReport deduce_section11(int n);

struct RankResult {
    long span_dim = 0;
    long kernel_dim = 0;
};

// Rank of {Phi_sigma : sigma in S_m} evaluated at generic matrices of size n
// with e bosonic and f fermionic variables. Equals the codimension c_m(M_n)
// for every split e+f = m.
RankResult relation_rank(int m, int e, int f, int n, unsigned threads = 1, bool force = false);

struct ChargeTableRow {
    int charge = 0;
    std::vector<TraceExpression> bosonic_monomials;
    std::vector<TraceExpression> fermionic_monomials;
    std::optional<long> bosonic_rank;
    std::optional<long> fermionic_rank;
};

// Canonical nonzero trace monomials in fermionic variables x_k of charge k,
// without single-letter factors (the trace-zero setting), graded by total
// charge. With rank_at set, also the exact rank of each parity block
// evaluated at generic fermionic matrices of that size (traceless ones when
// traceless_matrices is set).
std::vector<ChargeTableRow> charge_table(int lmax, std::optional<int> rank_at = std::nullopt,
                                         bool traceless_matrices = true, unsigned threads = 1,
                                         bool force = false);

struct Charge7Report {
    bool x1_pow7_zero = false;          // tr(xi_1^7) = 0
    bool relation_zero = false;         // 3 t(x1^5 x2) + t(x1^2 x2) t(x1^3) = 0
    bool x1_5_x2_nonzero = false;       // t(x1^5 x2) alone does not vanish
    bool even_power_trace_zero = false; // tr(xi_1^4) = 0, kills t(x1 x2) t(x1^4)
    bool expansion_matches = false;     // T_{2,2}(x1^2, x1^2, x1, x2) core terms
    bool expansion_evaluates_zero = false;
    TraceExpression expansion_core;
    bool all_ok() const {
        return x1_pow7_zero && relation_zero && x1_5_x2_nonzero && even_power_trace_zero &&
               expansion_matches && expansion_evaluates_zero;
    }
};

// The charge-7 relation for 3x3 traceless fermionic matrices.
Charge7Report charge7_relation_check();

struct FultonCheckResult {
    int configurations = 0;
    int comparisons = 0;
    bool ok = false;
};

// Splicing sign: tau_C(sigma o c) = gamma * tau_C'(sigma)|_{z_i <- word(i,E)}
// with gamma independent of sigma. Verifies the case formula for gamma
// against the ratio of both sides on canonical forms.
FultonCheckResult fulton_sign_check(int trials, unsigned seed = 12345);

struct PolarizationReport {
    TraceExpression polarized;   // multilinear component in the fresh letters
    std::vector<Letter> fresh;   // v_1..v_h
    TraceExpression restituted;  // fresh letters set back to var
    bool restitution_matches = false;  // restituted == h! * expr
};

// Full polarization of a variable of homogeneous degree h followed by
// restitution; restitution always returns h! times the input.
PolarizationReport polarize_restitute(const TraceExpression& expr, Letter var, int h);

// Decodes a multilinear expression and checks the conjugation symmetry of its
// group-algebra coefficients: symmetric within bosonic slots, sign-twisted
// within fermionic ones.
bool decoded_conjugation_symmetry_check(const TraceExpression& expr, int e, int f);

// Rank-one substitution oracle: evaluating Phi_sigma at u (x) phi matrices
// equals the product of pairings <phi_{sigma^{-1}(i)}, u_i>, and also its
// cycle-reordered form with the fermionic rearrangement sign.
bool rank1_oracle_check(const Perm& sigma, int e, int f, int n);

}  // namespace supertrace::identities
