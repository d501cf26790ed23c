#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supertrace/errors.hpp"
#include "supertrace/rational.hpp"

namespace supertrace::qindex {

// Power series in q truncated at a fixed order, exact rational coefficients.
// All arithmetic is closed at the common truncation order.
class QSeries {
public:
    explicit QSeries(int order = 0);
    static QSeries one(int order);
    static QSeries monomial(const Rational& c, int qpow, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& operator[](int k) const { return coeffs_.at(k); }
    Rational& coeff(int k) { return coeffs_.at(k); }

    QSeries& operator+=(const QSeries& rhs);
    QSeries& operator-=(const QSeries& rhs);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    void scale(const Rational& c);

    // requires an invertible constant term
    QSeries inverse() const;
    QSeries pow(unsigned k) const;

    bool operator==(const QSeries&) const = default;

    std::string str() const;  // e.g. "1 - q - q^2 + q^5 + q^7"
    std::vector<std::string> coeff_strings() const;

private:
    void check_order(const QSeries& rhs) const;
    std::vector<Rational> coeffs_;  // index = power of q
};

// Truncated series in q whose coefficients are Laurent polynomials in
// z_1..z_n. Supports stay finite: every kept factor contributes bounded
// z-degree per power of q.
class TorusQSeries {
public:
    TorusQSeries(int nvars, int order);
    static TorusQSeries one(int nvars, int order);

    int nvars() const { return nvars_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    // multiply by (1 - c * z^zexp * q^qpow) in place
    void mul_binomial(const std::vector<int>& zexp, int qpow, const Rational& c);

    TorusQSeries& operator+=(const TorusQSeries& rhs);
    friend TorusQSeries operator*(const TorusQSeries& a, const TorusQSeries& b);
    void scale(const Rational& c);

    // z-degree-zero Laurent coefficient per power of q
    QSeries constant_term() const;

    bool operator==(const TorusQSeries&) const = default;
    const std::map<std::vector<int>, Rational>& q_coefficient(int k) const { return coeffs_.at(k); }

private:
    int nvars_ = 0;
    std::vector<std::map<std::vector<int>, Rational>> coeffs_;
};

// (c q^s; q)_inf truncated: product of (1 - c q^{s+i}); factors beyond the
// truncation order are identically 1. nfactors >= 0 gives the finite
// q-Pochhammer (c q^s; q)_nfactors instead.
QSeries pochhammer(const Rational& c, int qpow, int order, int nfactors = -1);
// (c z^zexp q^s; q)_inf over n torus variables.
TorusQSeries pochhammer(const std::vector<int>& zexp, const Rational& c, int qpow, int nvars,
                        int order, int nfactors = -1);

// (q; q)_inf truncated.
QSeries euler_product(int order);

// (1/n!) CT[ prod_{i!=j}(1-z_i^{-1}z_j) prod_{k>=1} prod_{i,j}(1-z_i^{-1}z_j q^k) ].
// Equals (q;q)_inf at every truncation order, independently of n.
QSeries molien_weyl_index(int n, int order, bool force = false);

struct AndrewsReport {
    QSeries andrews_ct;      // CT of the i<j split form
    QSeries symmetrized_ct;  // (1/n!) CT of the full i!=j form
    QSeries target;          // (q;q)_inf^{1-n}
    bool ok = false;
};

// Constant-term identity behind the index computation.
AndrewsReport andrews_ct_check(int n, int order);

// Index of the free supercommutative algebra on paired bosonic/fermionic
// generators of the given charges: telescopes to exactly 1.
bool free_index_identity_check(const std::vector<int>& charges, int order);

// ---------------------------------------------------------------------------
// Hilbert series computed by exact rank of evaluated spanning sets.

enum class SeriesMode { invariants, equivariants, traceless, free_traceless };

// Closed-form readings used for comparison, as Laurent polynomials in q.
struct FormulaReading {
    std::map<int, Rational> coeffs;
    std::string text;
};

FormulaReading invariant_series_closed(int n);       // prod_{i=1..n} (1+q^{2i-1})
FormulaReading equivariant_series_printed(int n);    // the literal printed form
FormulaReading equivariant_series_corrected(int n);  // prod_{i=1..n-1}(1+q^{2i-1}) * sum_{i<2n} q^i

bool reading_matches(const FormulaReading& reading, const std::vector<long>& computed);

// Coefficients 0..order of the charge-graded dimension series.
//  - invariants:   invariant algebra of one generic fermionic matrix
//  - equivariants: module of equivariant maps of one generic fermionic matrix
//  - traceless:    bosonic invariants of traceless fermionic matrices, by rank
//  - free_traceless: the free (n = infinity) dimensions
std::vector<long> hilbert_series_by_rank(SeriesMode mode, int n, int order, unsigned threads = 1,
                                         bool force = false);

}  // namespace supertrace::qindex
