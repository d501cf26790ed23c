#include "supertrace/qindex.hpp"

#include <algorithm>
#include <sstream>

#include "supertrace/gmatrix.hpp"
#include "supertrace/identities.hpp"
#include "supertrace/parallel.hpp"

namespace supertrace::qindex {

QSeries::QSeries(int order) {
    if (order < 0) throw Error("truncation order must be >= 0");
    coeffs_.assign(order + 1, Rational(0));
}

QSeries QSeries::one(int order) {
    QSeries s(order);
    s.coeffs_[0] = 1;
    return s;
}

QSeries QSeries::monomial(const Rational& c, int qpow, int order) {
    QSeries s(order);
    if (qpow <= order) s.coeffs_[qpow] = c;
    return s;
}

void QSeries::check_order(const QSeries& rhs) const {
    if (coeffs_.size() != rhs.coeffs_.size()) throw SizeMismatch("q-series truncation orders differ");
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
    check_order(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) {
    check_order(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    a.check_order(b);
    QSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (int j = 0; i + j <= a.order(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return r;
}

void QSeries::scale(const Rational& c) {
    for (auto& v : coeffs_) v *= c;
}

QSeries QSeries::inverse() const {
    if (coeffs_[0] == 0) throw Error("series with zero constant term has no inverse");
    QSeries r(order());
    Rational inv0 = 1 / coeffs_[0];
    r.coeffs_[0] = inv0;
    for (int k = 1; k <= order(); ++k) {
        Rational acc(0);
        for (int j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
        r.coeffs_[k] = -acc * inv0;
    }
    return r;
}

QSeries QSeries::pow(unsigned k) const {
    QSeries r = QSeries::one(order());
    QSeries base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

std::string QSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= order(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        Rational a = c > 0 ? c : Rational(-c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = a == 1;
        if (k == 0) {
            os << a.get_str();
        } else {
            if (!unit) os << a.get_str() << "*";
            os << "q";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) return "0";
    return os.str();
}

std::vector<std::string> QSeries::coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (auto& c : coeffs_) out.push_back(c.get_str());
    return out;
}

TorusQSeries::TorusQSeries(int nvars, int order) : nvars_(nvars) {
    if (order < 0 || nvars < 0) throw Error("bad torus series shape");
    coeffs_.resize(order + 1);
}

TorusQSeries TorusQSeries::one(int nvars, int order) {
    TorusQSeries s(nvars, order);
    s.coeffs_[0][std::vector<int>(nvars, 0)] = 1;
    return s;
}

void TorusQSeries::mul_binomial(const std::vector<int>& zexp, int qpow, const Rational& c) {
    if (static_cast<int>(zexp.size()) != nvars_) throw SizeMismatch("z-exponent arity mismatch");
    if (qpow < 0) throw Error("q-power must be >= 0");
    if (c == 0) return;
    if (qpow == 0) {
        bool pure_const = std::all_of(zexp.begin(), zexp.end(), [](int e) { return e == 0; });
        if (pure_const && c == 1) {
            for (auto& layer : coeffs_) layer.clear();
            return;
        }
    }
    // (this) *= 1 - c z^zexp q^qpow, highest q-order first so each layer is
    // updated from not-yet-modified lower layers
    for (int k = order(); k >= 0; --k) {
        int src = k - qpow;
        if (src < 0) continue;
        std::map<std::vector<int>, Rational> aliased;
        const auto* source = &coeffs_[src];
        if (src == k) {  // q^0 factor: take a snapshot of the layer
            aliased = coeffs_[src];
            source = &aliased;
        }
        for (auto& [mono, coeff] : *source) {
            std::vector<int> shifted = mono;
            for (int v = 0; v < nvars_; ++v) shifted[v] += zexp[v];
            auto [it, inserted] = coeffs_[k].try_emplace(std::move(shifted), 0);
            it->second -= c * coeff;
            if (it->second == 0) coeffs_[k].erase(it);
        }
    }
}

TorusQSeries& TorusQSeries::operator+=(const TorusQSeries& rhs) {
    if (nvars_ != rhs.nvars_ || coeffs_.size() != rhs.coeffs_.size())
        throw SizeMismatch("torus series shapes differ");
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        for (auto& [mono, c] : rhs.coeffs_[k]) {
            auto [it, inserted] = coeffs_[k].try_emplace(mono, 0);
            it->second += c;
            if (it->second == 0) coeffs_[k].erase(it);
        }
    return *this;
}

TorusQSeries operator*(const TorusQSeries& a, const TorusQSeries& b) {
    if (a.nvars_ != b.nvars_ || a.coeffs_.size() != b.coeffs_.size())
        throw SizeMismatch("torus series shapes differ");
    TorusQSeries r(a.nvars_, a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (auto& [ma, ca] : a.coeffs_[i])
            for (int j = 0; i + j <= a.order(); ++j)
                for (auto& [mb, cb] : b.coeffs_[j]) {
                    std::vector<int> m = ma;
                    for (int v = 0; v < a.nvars_; ++v) m[v] += mb[v];
                    auto [it, inserted] = r.coeffs_[i + j].try_emplace(std::move(m), 0);
                    it->second += ca * cb;
                    if (it->second == 0) r.coeffs_[i + j].erase(it);
                }
    return r;
}

void TorusQSeries::scale(const Rational& c) {
    if (c == 0) {
        for (auto& layer : coeffs_) layer.clear();
        return;
    }
    for (auto& layer : coeffs_)
        for (auto& [mono, coeff] : layer) coeff *= c;
}

QSeries TorusQSeries::constant_term() const {
    QSeries s(order());
    std::vector<int> zero(nvars_, 0);
    for (int k = 0; k <= order(); ++k) {
        auto it = coeffs_[k].find(zero);
        if (it != coeffs_[k].end()) s.coeff(k) = it->second;
    }
    return s;
}

QSeries pochhammer(const Rational& c, int qpow, int order, int nfactors) {
    if (c != 0 && qpow == 0 && nfactors < 0)
        throw Error("infinite product does not truncate: factor (1-c) repeats");
    QSeries r = QSeries::one(order);
    if (c == 0) return r;
    for (int i = 0; nfactors < 0 || i < nfactors; ++i) {
        int p = qpow + i;
        if (p > order) break;
        QSeries factor = QSeries::one(order);
        factor -= QSeries::monomial(c, p, order);
        r = r * factor;
    }
    return r;
}

TorusQSeries pochhammer(const std::vector<int>& zexp, const Rational& c, int qpow, int nvars,
                        int order, int nfactors) {
    bool zfree = std::all_of(zexp.begin(), zexp.end(), [](int e) { return e == 0; });
    if (c != 0 && qpow == 0 && zfree && nfactors < 0)
        throw Error("infinite product does not truncate: factor (1-c) repeats");
    TorusQSeries r = TorusQSeries::one(nvars, order);
    if (c == 0) return r;
    for (int i = 0; nfactors < 0 || i < nfactors; ++i) {
        int p = qpow + i;
        if (p > order) break;  // remaining factors are 1 mod q^{order+1}
        r.mul_binomial(zexp, p, c);
    }
    return r;
}

QSeries euler_product(int order) { return pochhammer(Rational(1), 1, order); }

QSeries molien_weyl_index(int n, int order, bool force) {
    if (!force && (n > 3 || order > 10))
        throw TooLarge("molien_weyl_index capped at n <= 3, order <= 10 (use force)");
    if (n < 1) throw Error("n must be >= 1");
    TorusQSeries p = TorusQSeries::one(n, order);
    auto unit = [&](int i, int j) {
        std::vector<int> e(n, 0);
        e[i] -= 1;
        e[j] += 1;
        return e;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) p.mul_binomial(unit(i, j), 0, Rational(1));
    for (int k = 1; k <= order; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                p.mul_binomial(i == j ? std::vector<int>(n, 0) : unit(i, j), k, Rational(1));
    QSeries ct = p.constant_term();
    Rational inv_fact(1);
    inv_fact /= Rational(factorial(unsigned(n)));
    ct.scale(inv_fact);
    return ct;
}

AndrewsReport andrews_ct_check(int n, int order) {
    if (n < 1 || n > 3) throw TooLarge("andrews_ct_check supports n in {1,2,3}");
    AndrewsReport report{QSeries(order), QSeries(order), QSeries(order), false};
    auto unit = [&](int i, int j) {
        std::vector<int> e(n, 0);
        e[i] -= 1;
        e[j] += 1;
        return e;
    };
    {
        TorusQSeries p = TorusQSeries::one(n, order);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                for (int k = 0; k <= order; ++k) p.mul_binomial(unit(i, j), k, Rational(1));
                for (int k = 1; k <= order; ++k) p.mul_binomial(unit(j, i), k, Rational(1));
            }
        report.andrews_ct = p.constant_term();
    }
    {
        TorusQSeries p = TorusQSeries::one(n, order);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j)
                    for (int k = 0; k <= order; ++k) p.mul_binomial(unit(i, j), k, Rational(1));
        QSeries ct = p.constant_term();
        Rational inv_fact(1);
        inv_fact /= Rational(factorial(unsigned(n)));
        ct.scale(inv_fact);
        report.symmetrized_ct = ct;
    }
    report.target = n == 1 ? QSeries::one(order) : euler_product(order).inverse().pow(unsigned(n - 1));
    report.ok = report.andrews_ct == report.target && report.symmetrized_ct == report.target;
    return report;
}

bool free_index_identity_check(const std::vector<int>& charges, int order) {
    QSeries p = QSeries::one(order);
    for (int c : charges) {
        if (c < 1) throw Error("charges must be positive");
        // bosonic generator: geometric series 1/(1-q^c)
        QSeries geom(order);
        for (int k = 0; k * c <= order; ++k) geom.coeff(k * c) = 1;
        p = p * geom;
        // fermionic partner with the index sign flip: factor (1-q^c)
        QSeries factor = QSeries::one(order);
        factor -= QSeries::monomial(Rational(1), c, order);
        p = p * factor;
    }
    return p == QSeries::one(order);
}

// ---------------------------------------------------------------------------

FormulaReading invariant_series_closed(int n) {
    FormulaReading r;
    r.coeffs[0] = 1;
    for (int i = 1; i <= n; ++i) {
        std::map<int, Rational> next;
        for (auto& [d, c] : r.coeffs) {
            next[d] += c;
            next[d + 2 * i - 1] += c;
        }
        r.coeffs = std::move(next);
    }
    std::ostringstream os;
    for (int i = 1; i <= n; ++i) os << "(1+q^" << 2 * i - 1 << ")";
    r.text = os.str();
    return r;
}

FormulaReading equivariant_series_printed(int n) {
    FormulaReading r;
    r.coeffs[0] = 1;
    for (int i = 0; i <= n - 1; ++i) {
        std::map<int, Rational> next;
        for (auto& [d, c] : r.coeffs) {
            next[d] += c;
            next[d + 2 * i - 1] += c;  // i = 0 contributes q^{-1}
        }
        r.coeffs = std::move(next);
    }
    std::map<int, Rational> sum;
    for (int i = 0; i <= 2 * n - 1; ++i) {
        sum[0] += 1;
        sum[i] += 1;
    }
    std::map<int, Rational> prod;
    for (auto& [d1, c1] : r.coeffs)
        for (auto& [d2, c2] : sum) prod[d1 + d2] += c1 * c2;
    for (auto it = prod.begin(); it != prod.end();)
        it = it->second == 0 ? prod.erase(it) : std::next(it);
    r.coeffs = std::move(prod);
    std::ostringstream os;
    os << "prod_{i=0}^{" << n - 1 << "}(1+q^{2i-1}) * sum_{i=0}^{" << 2 * n - 1 << "}(1+q^i)";
    r.text = os.str();
    return r;
}

FormulaReading equivariant_series_corrected(int n) {
    FormulaReading r;
    r.coeffs[0] = 1;
    for (int i = 1; i <= n - 1; ++i) {
        std::map<int, Rational> next;
        for (auto& [d, c] : r.coeffs) {
            next[d] += c;
            next[d + 2 * i - 1] += c;
        }
        r.coeffs = std::move(next);
    }
    std::map<int, Rational> prod;
    for (auto& [d, c] : r.coeffs)
        for (int i = 0; i <= 2 * n - 1; ++i) prod[d + i] += c;
    r.coeffs = std::move(prod);
    std::ostringstream os;
    os << "prod_{i=1}^{" << n - 1 << "}(1+q^{2i-1}) * sum_{i=0}^{" << 2 * n - 1 << "} q^i";
    r.text = os.str();
    return r;
}

bool reading_matches(const FormulaReading& reading, const std::vector<long>& computed) {
    for (auto& [d, c] : reading.coeffs) {
        if (d < 0 || d >= static_cast<int>(computed.size())) {
            if (d < 0 && c != 0) return false;
            continue;  // beyond the computed window
        }
        if (c != computed[std::size_t(d)]) return false;
    }
    for (std::size_t d = 0; d < computed.size(); ++d) {
        auto it = reading.coeffs.find(int(d));
        Rational want = it == reading.coeffs.end() ? Rational(0) : it->second;
        if (want != computed[d]) return false;
    }
    return true;
}

namespace {

using gmatrix::SuperMatrix;
using identities::ExactRank;
using superalg::GeneratorRegistry;
using superalg::Kind;
using superalg::SuperMonomial;
using superalg::SuperPolynomial;

// subsets of {1,3,5,...} with the given sum; these index the nonzero trace
// monomials tr(xi^{d1}) ... tr(xi^{dk}) of one fermionic matrix
std::vector<std::vector<int>> odd_subsets_with_sum(int target) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next_min, int rest) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int d = next_min; d <= rest; d += 2) {
            cur.push_back(d);
            self(self, d + 2, rest - d);
            cur.pop_back();
        }
    };
    rec(rec, 1, target);
    return out;
}

}  // namespace

std::vector<long> hilbert_series_by_rank(SeriesMode mode, int n, int order, unsigned threads,
                                         bool force) {
    if (!force && order > 8) throw TooLarge("hilbert series capped at order <= 8 (use force)");
    if (mode == SeriesMode::free_traceless || mode == SeriesMode::traceless) {
        std::optional<int> rank_at;
        if (mode == SeriesMode::traceless) {
            if (!force && n > 3) throw TooLarge("traceless series capped at n <= 3");
            rank_at = n;
        }
        auto rows = identities::charge_table(order, rank_at, true, threads, force);
        std::vector<long> out(order + 1, 0);
        out[0] = 1;  // the empty monomial
        for (auto& row : rows)
            out[std::size_t(row.charge)] =
                rank_at ? *row.bosonic_rank : long(row.bosonic_monomials.size());
        return out;
    }

    if (!force && n > 3) throw TooLarge("hilbert series capped at n <= 3");
    GeneratorRegistry reg;
    SuperMatrix xi = gmatrix::generic_matrix(reg, Kind::fermionic, "xi", std::size_t(n));
    reg.freeze();
    std::vector<SuperMatrix> powers(std::size_t(2 * n + 1), SuperMatrix(std::size_t(n), &reg));
    for (std::size_t a = 0; a < powers.size(); ++a) powers[a] = gmatrix::pow(xi, unsigned(a));
    auto traces_of = [&](const std::vector<int>& subset) {
        SuperPolynomial s = SuperPolynomial::constant(1);
        for (int d : subset) s = s * gmatrix::trace(gmatrix::pow(xi, unsigned(d)));
        return s;
    };

    std::vector<long> out(order + 1, 0);
    for (int ell = 0; ell <= order; ++ell) {
        if (mode == SeriesMode::invariants) {
            ExactRank<SuperMonomial> acc;
            for (auto& subset : odd_subsets_with_sum(ell)) acc.add_row(traces_of(subset).terms());
            out[std::size_t(ell)] = long(acc.rank());
        } else {
            ExactRank<std::pair<std::size_t, SuperMonomial>> acc;
            for (int a = 0; a <= std::min(ell, 2 * n - 1); ++a) {
                for (auto& subset : odd_subsets_with_sum(ell - a)) {
                    SuperMatrix value = powers[std::size_t(a)].scaled_left(traces_of(subset));
                    std::map<std::pair<std::size_t, SuperMonomial>, Rational> row;
                    for (std::size_t i = 0; i < value.size(); ++i)
                        for (std::size_t j = 0; j < value.size(); ++j)
                            for (auto& [mono, c] : value.at(i, j).terms())
                                row[{i * value.size() + j, mono}] = c;
                    acc.add_row(std::move(row));
                }
            }
            out[std::size_t(ell)] = long(acc.rank());
        }
    }
    return out;
}

}  // namespace supertrace::qindex
