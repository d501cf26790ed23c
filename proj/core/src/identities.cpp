#include "supertrace/identities.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "supertrace/parallel.hpp"

namespace supertrace::identities {

using freetrace::bos;
using freetrace::Coloring;
using freetrace::encode_phi;
using freetrace::encode_psi_strip;
using freetrace::epsilon_sign;
using freetrace::fer;
using freetrace::tau_eval;
using freetrace::Word;
using gmatrix::generic_matrix;
using gmatrix::MatrixParity;
using gmatrix::trace;
using superalg::GeneratorRegistry;
using superalg::Kind;
using superalg::SuperMonomial;

namespace {

void check_ef_arity(int e, int f, int n) {
    if (e < 0 || f < 0 || n < 0 || e + f != n + 1)
        throw BadArity("need e,f >= 0 with e+f = n+1");
}

}  // namespace

TraceExpression gen_T(int e, int f, int n) {
    check_ef_arity(e, f, n);
    TraceExpression sum;
    for (auto& sigma : Perm::all(n + 1)) {
        TraceExpression phi = encode_phi(sigma, e, f);
        phi.scale(Rational(sigma.sign()));
        sum += phi;
    }
    return sum;
}

Letter ch_stripped_variable(int e, int f) { return f >= 1 ? fer(f) : bos(e); }

TraceExpression gen_CH(int e, int f, int n) {
    check_ef_arity(e, f, n);
    TraceExpression sum;
    for (auto& sigma : Perm::all(n + 1)) {
        TraceExpression psi = encode_psi_strip(sigma, e, f, n + 1);
        psi.scale(Rational(sigma.sign()));
        sum += psi;
    }
    return sum;
}

TraceExpression gen_CH_strip_bosonic(int e, int f, int n) {
    check_ef_arity(e, f, n);
    if (e < 1) throw BadArity("bosonic strip needs e >= 1");
    TraceExpression sum;
    for (auto& sigma : Perm::all(n + 1)) {
        TraceExpression psi = encode_psi_strip(sigma, e, f, e);
        psi.scale(Rational(sigma.sign()));
        sum += psi;
    }
    return sum;
}

namespace {

struct EvalContext {
    std::size_t n = 0;
    const GeneratorRegistry* registry = nullptr;
};

EvalContext check_assignment(const TraceExpression& expr, const Assignment& assignment,
                             std::optional<std::size_t> dim) {
    EvalContext ctx;
    if (dim) ctx.n = *dim;
    bool have_n = dim.has_value();
    for (auto& [letter, matrix] : assignment) {
        if (!have_n) {
            ctx.n = matrix.size();
            have_n = true;
        } else if (matrix.size() != ctx.n) {
            throw SizeMismatch("assigned matrices have different sizes");
        }
        if (matrix.registry()) {
            if (ctx.registry && ctx.registry != matrix.registry())
                throw RegistryMismatch("assigned matrices use different registries");
            ctx.registry = matrix.registry();
        }
        if (!matrix.is_zero()) {
            MatrixParity mp = matrix.parity();
            bool want_odd = letter.parity == Parity::odd;
            if (mp == MatrixParity::mixed || (mp == MatrixParity::odd) != want_odd)
                throw ParityMismatch("matrix parity does not match variable " +
                                     freetrace::to_string(letter));
        }
    }
    for (auto& l : expr.support())
        if (!assignment.count(l))
            throw Error("unassigned variable " + freetrace::to_string(l));
    if (!have_n) throw Error("evaluation dimension unknown: empty assignment and no dim given");
    return ctx;
}

SuperMatrix eval_word(const Word& w, const Assignment& assignment, const EvalContext& ctx) {
    SuperMatrix prod = SuperMatrix::identity(ctx.n, ctx.registry);
    for (auto& l : w) prod = prod * assignment.at(l);
    return prod;
}

SuperPolynomial eval_trace_factors(const freetrace::TraceTerm& term, const Rational& coeff,
                                   const Assignment& assignment, const EvalContext& ctx) {
    SuperPolynomial scalar = SuperPolynomial::constant(coeff);
    for (auto& factor : term.factors) {
        if (factor.empty()) {
            scalar = scalar * SuperPolynomial::constant(Rational(long(ctx.n)));  // t(1) = n
        } else {
            scalar = scalar * trace(eval_word(factor, assignment, ctx));
        }
    }
    return scalar;
}

}  // namespace

SuperPolynomial evaluate_scalar(const TraceExpression& expr, const Assignment& assignment,
                                std::optional<std::size_t> dim) {
    if (!expr.in_trace_algebra())
        throw Error("expression has untraced outer words; use evaluate_matrix");
    EvalContext ctx = check_assignment(expr, assignment, dim);
    SuperPolynomial result;
    for (auto& [term, coeff] : expr.terms()) result += eval_trace_factors(term, coeff, assignment, ctx);
    return result;
}

SuperMatrix evaluate_matrix(const TraceExpression& expr, const Assignment& assignment,
                            std::optional<std::size_t> dim) {
    EvalContext ctx = check_assignment(expr, assignment, dim);
    SuperMatrix result(ctx.n, ctx.registry);
    for (auto& [term, coeff] : expr.terms()) {
        SuperPolynomial scalar = eval_trace_factors(term, coeff, assignment, ctx);
        SuperMatrix outer = eval_word(term.outer, assignment, ctx);
        result += outer.scaled_left(scalar);
    }
    return result;
}

namespace {

std::vector<Letter> identity_free_slots(const IdentitySpec& spec) {
    std::vector<Letter> vars;
    int e = spec.e, f = spec.f;
    if (spec.kind == IdentitySpec::Kind::CH) {
        if (f >= 1)
            --f;
        else
            --e;
    }
    for (int i = 1; i <= e; ++i) vars.push_back(bos(i));
    for (int j = 1; j <= f; ++j) vars.push_back(fer(j));
    return vars;
}

}  // namespace

Verdict verify_identity(const IdentitySpec& spec, std::optional<int> at_size) {
    check_ef_arity(spec.e, spec.f, spec.n);
    int size = at_size.value_or(spec.n);
    if (size < 1) throw Error("matrix size must be >= 1");
    TraceExpression expr = spec.kind == IdentitySpec::Kind::T ? gen_T(spec.e, spec.f, spec.n)
                                                              : gen_CH(spec.e, spec.f, spec.n);
    GeneratorRegistry reg;
    Assignment assignment;
    for (auto& v : identity_free_slots(spec)) {
        auto label = (v.parity == Parity::even ? "eta" : "xi") + std::to_string(v.index);
        assignment.emplace(v, generic_matrix(reg, v.parity == Parity::even ? Kind::bosonic : Kind::fermionic,
                                             label, std::size_t(size)));
    }
    reg.freeze();
    Verdict verdict;
    if (spec.kind == IdentitySpec::Kind::T) {
        SuperPolynomial value = evaluate_scalar(expr, assignment, std::size_t(size));
        verdict.zero = value.is_zero();
        if (!verdict.zero) verdict.witness = value.terms().begin()->second.get_str() + " * ...";
    } else {
        SuperMatrix value = evaluate_matrix(expr, assignment, std::size_t(size));
        verdict.zero = value.is_zero();
        if (!verdict.zero) {
            for (std::size_t i = 0; i < value.size() && verdict.witness.empty(); ++i)
                for (std::size_t j = 0; j < value.size(); ++j)
                    if (!value.at(i, j).is_zero()) {
                        verdict.witness = "entry (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ") nonzero";
                        break;
                    }
        }
    }
    return verdict;
}

DeductionReport deduce_section11(int n) {
    if (n < 1 || n > 3) throw TooLarge("deduction exercised for n in {1,2,3}");
    DeductionReport report;
    TraceExpression xi_squared = TraceExpression::from_word({fer(1), fer(1)});

    TraceExpression ch_bos = gen_CH(n + 1, 0, n);
    for (int i = 1; i <= n; ++i) ch_bos = ch_bos.substituted(bos(i), xi_squared);
    report.nilpotency_sub = ch_bos;

    TraceExpression ch_mixed = gen_CH(n - 1, 2, n);
    for (int i = 1; i <= n - 1; ++i) ch_mixed = ch_mixed.substituted(bos(i), xi_squared);
    report.recursion_sub = ch_mixed;

    GeneratorRegistry reg;
    Assignment assignment;
    assignment.emplace(fer(1), generic_matrix(reg, Kind::fermionic, "xi", std::size_t(n)));
    reg.freeze();
    report.nilpotency_zero = evaluate_matrix(report.nilpotency_sub, assignment, std::size_t(n)).is_zero();
    report.recursion_zero = evaluate_matrix(report.recursion_sub, assignment, std::size_t(n)).is_zero();
    return report;
}

RankResult relation_rank(int m, int e, int f, int n, unsigned threads, bool force) {
    if (e < 0 || f < 0 || e + f != m) throw BadArity("relation_rank needs e+f = m");
    if (!force && (m > 6 || n > 3)) throw TooLarge("relation_rank capped at m <= 6, n <= 3 (use force)");
    GeneratorRegistry reg;
    Assignment assignment;
    for (int i = 1; i <= e; ++i)
        assignment.emplace(bos(i), generic_matrix(reg, Kind::bosonic, "eta" + std::to_string(i),
                                                  std::size_t(n)));
    for (int j = 1; j <= f; ++j)
        assignment.emplace(fer(j), generic_matrix(reg, Kind::fermionic, "xi" + std::to_string(j),
                                                  std::size_t(n)));
    reg.freeze();
    auto perms = Perm::all(m);
    auto rows = parallel_map(
        perms.size(),
        [&](std::size_t i) {
            return evaluate_scalar(encode_phi(perms[i], e, f), assignment, std::size_t(n)).terms();
        },
        threads);
    ExactRank<SuperMonomial> acc;
    for (auto& row : rows) acc.add_row(row);
    RankResult r;
    r.span_dim = long(acc.rank());
    r.kernel_dim = long(perms.size()) - r.span_dim;
    return r;
}

namespace {

// Canonical nonzero trace words of the given charge in the letters x_k
// (charge of x_k is k), at least two letters long.
std::vector<Word> charge_words(int charge) {
    std::set<Word> words;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            if (parts.size() < 2) return;
            Word w;
            for (int k : parts) w.push_back(fer(k));
            auto cw = freetrace::canonicalize_word(w);
            if (!cw.zero) words.insert(cw.word);
            return;
        }
        for (int k = 1; k <= rest; ++k) {
            parts.push_back(k);
            self(self, rest - k);
            parts.pop_back();
        }
    };
    rec(rec, charge);
    return std::vector<Word>(words.begin(), words.end());
}

int word_charge(const Word& w) {
    int c = 0;
    for (auto& l : w) c += l.index;
    return c;
}

}  // namespace

std::vector<ChargeTableRow> charge_table(int lmax, std::optional<int> rank_at,
                                         bool traceless_matrices, unsigned threads, bool force) {
    if (!force && lmax > 8) throw TooLarge("charge_table capped at lmax <= 8 (use force)");
    if (rank_at && !force && *rank_at > 3) throw TooLarge("charge_table ranks capped at n <= 3");

    // all usable words up to charge lmax, sorted
    std::vector<Word> words;
    for (int c = 2; c <= lmax; ++c) {
        auto w = charge_words(c);
        words.insert(words.end(), w.begin(), w.end());
    }
    std::sort(words.begin(), words.end());

    std::vector<ChargeTableRow> rows;
    for (int ell = 1; ell <= lmax; ++ell) {
        ChargeTableRow row;
        row.charge = ell;
        std::vector<std::vector<Word>> selections;
        std::vector<Word> current;
        auto rec = [&](auto&& self, std::size_t start, int rest) -> void {
            if (rest == 0) {
                selections.push_back(current);
                return;
            }
            for (std::size_t j = start; j < words.size(); ++j) {
                int c = word_charge(words[j]);
                if (c > rest) continue;
                bool odd = freetrace::word_parity(words[j]) == Parity::odd;
                if (odd && !current.empty() && current.back() == words[j]) continue;
                current.push_back(words[j]);
                // a bosonic factor may repeat, an odd one may not
                self(self, odd ? j + 1 : j, rest - c);
                current.pop_back();
            }
        };
        rec(rec, 0, ell);
        for (auto& sel : selections) {
            TraceExpression mono = TraceExpression::term(sel, {}, Rational(1));
            if (mono.is_zero()) continue;
            if (mono.terms().begin()->first.parity() == Parity::even)
                row.bosonic_monomials.push_back(mono);
            else
                row.fermionic_monomials.push_back(mono);
        }
        rows.push_back(std::move(row));
    }

    if (rank_at) {
        int n = *rank_at;
        GeneratorRegistry reg;
        Assignment assignment;
        int max_index = std::max(1, lmax - 1);
        for (int k = 1; k <= max_index; ++k)
            assignment.emplace(fer(k), generic_matrix(reg, Kind::fermionic, "xi" + std::to_string(k),
                                                      std::size_t(n), traceless_matrices));
        reg.freeze();
        for (auto& row : rows) {
            auto rank_of = [&](const std::vector<TraceExpression>& monos) {
                auto evaluated = parallel_map(
                    monos.size(),
                    [&](std::size_t i) {
                        return evaluate_scalar(monos[i], assignment, std::size_t(n)).terms();
                    },
                    threads);
                ExactRank<SuperMonomial> acc;
                for (auto& r : evaluated) acc.add_row(r);
                return long(acc.rank());
            };
            row.bosonic_rank = rank_of(row.bosonic_monomials);
            row.fermionic_rank = rank_of(row.fermionic_monomials);
        }
    }
    return rows;
}

Charge7Report charge7_relation_check() {
    Charge7Report report;
    GeneratorRegistry reg;
    auto xi1 = generic_matrix(reg, Kind::fermionic, "xi1", 3, /*traceless=*/true);
    auto xi2 = generic_matrix(reg, Kind::fermionic, "xi2", 3, /*traceless=*/true);
    reg.freeze();
    Assignment assignment{{fer(1), xi1}, {fer(2), xi2}};

    Word x1_7(7, fer(1));
    report.x1_pow7_zero =
        evaluate_scalar(TraceExpression::trace_of_word(x1_7), assignment, std::size_t(3)).is_zero();

    Word x1_5_x2(5, fer(1));
    x1_5_x2.push_back(fer(2));
    TraceExpression t_x15x2 = TraceExpression::trace_of_word(x1_5_x2);
    TraceExpression t_x12x2 = TraceExpression::trace_of_word({fer(1), fer(1), fer(2)});
    TraceExpression t_x13 = TraceExpression::trace_of_word({fer(1), fer(1), fer(1)});
    TraceExpression relation = Rational(3) * t_x15x2 + t_x12x2 * t_x13;
    report.relation_zero = evaluate_scalar(relation, assignment, std::size_t(3)).is_zero();
    report.x1_5_x2_nonzero = !evaluate_scalar(t_x15x2, assignment, std::size_t(3)).is_zero();
    report.even_power_trace_zero = trace(gmatrix::pow(xi1, 4)).is_zero();

    TraceExpression x1sq = TraceExpression::from_word({fer(1), fer(1)});
    TraceExpression expansion = gen_T(2, 2, 3).substituted(bos(1), x1sq).substituted(bos(2), x1sq);
    report.expansion_evaluates_zero =
        evaluate_scalar(expansion, assignment, std::size_t(3)).is_zero();

    // terms without single-letter trace factors; the fixed-point terms carry
    // a t(x1) or t(x2) and die only on traceless evaluation
    for (auto& [term, coeff] : expansion.terms()) {
        bool single = false;
        for (auto& fct : term.factors)
            if (fct.size() == 1) single = true;
        if (!single) report.expansion_core += TraceExpression::term(term.factors, term.outer, coeff);
    }
    TraceExpression expected = Rational(-6) * t_x15x2 + Rational(2) * (t_x13 * t_x12x2);
    report.expansion_matches = report.expansion_core == expected;
    return report;
}

namespace {

std::vector<std::vector<int>> cycles_on_support(const std::function<int(int)>& image,
                                                const std::vector<int>& support) {
    std::vector<std::vector<int>> cycles;
    std::set<int> seen;
    for (int start : support) {
        if (seen.count(start)) continue;
        std::vector<int> cycle;
        int cur = start;
        do {
            cycle.push_back(cur);
            seen.insert(cur);
            cur = image(cur);
        } while (cur != start);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

Letter colored_letter(int a, Parity p) { return p == Parity::odd ? fer(a) : bos(a); }

}  // namespace

FultonCheckResult fulton_sign_check(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    FultonCheckResult result;
    result.ok = true;
    for (int trial = 0; trial < trials; ++trial) {
        int total = std::uniform_int_distribution<int>(3, 7)(rng);
        // split {1..total} into A (containing i) and B
        std::vector<int> all(total);
        std::iota(all.begin(), all.end(), 1);
        std::shuffle(all.begin(), all.end(), rng);
        int asize = std::uniform_int_distribution<int>(1, total - 1)(rng);
        std::vector<int> A(all.begin(), all.begin() + asize);
        std::vector<int> B(all.begin() + asize, all.end());
        std::sort(A.begin(), A.end());
        std::sort(B.begin(), B.end());
        int i = A[std::uniform_int_distribution<std::size_t>(0, A.size() - 1)(rng)];
        std::vector<int> E = B;
        std::shuffle(E.begin(), E.end(), rng);

        std::vector<Parity> color(total + 1, Parity::even);
        for (int a = 1; a <= total; ++a)
            color[a] = std::uniform_int_distribution<int>(0, 1)(rng) ? Parity::odd : Parity::even;
        auto color_C = [&](int a) { return color[a]; };

        // parity of the cycle word (i, E)
        int odd_letters = color[i] == Parity::odd;
        for (int b : E) odd_letters ^= (color[b] == Parity::odd);
        std::vector<Parity> colorp = color;
        colorp[i] = Parity(odd_letters);
        auto color_Cp = [&](int a) { return colorp[a]; };
        bool color_changed = colorp[i] != color[i];

        // case formula for gamma
        std::vector<int> word_AB = A;
        word_AB.insert(word_AB.end(), B.begin(), B.end());
        std::vector<int> word_iE{i};
        word_iE.insert(word_iE.end(), E.begin(), E.end());
        int gamma_box = epsilon_sign(word_AB, color_C) * epsilon_sign(E, color_C) *
                        epsilon_sign(word_iE, color_C);
        if (color_changed) {
            int above = 0;
            for (int a : A)
                if (a != i && a > i && color[a] == Parity::odd) ++above;
            if (above & 1) gamma_box = -gamma_box;
        }

        // cycle c = (i, E): i -> E[0] -> ... -> E.back() -> i
        std::map<int, int> cmap;
        for (int a = 1; a <= total; ++a) cmap[a] = a;
        if (!E.empty()) {
            cmap[i] = E[0];
            for (std::size_t k = 0; k + 1 < E.size(); ++k) cmap[E[k]] = E[k + 1];
            cmap[E.back()] = i;
        }

        TraceExpression replacement =
            tau_eval({}, word_iE, color_C, [&](int a) { return colored_letter(a, color[a]); });

        std::optional<int> gamma_seen;
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<int> image = A;
            std::shuffle(image.begin(), image.end(), rng);
            std::map<int, int> sig;
            for (std::size_t k = 0; k < A.size(); ++k) sig[A[k]] = image[k];

            auto sigma_c = [&](int a) {
                int ca = cmap.at(a);
                auto it = sig.find(ca);
                return it == sig.end() ? ca : it->second;
            };
            std::vector<int> full_support(total);
            std::iota(full_support.begin(), full_support.end(), 1);
            auto lhs = tau_eval(cycles_on_support(sigma_c, full_support), {}, color_C,
                                [&](int a) { return colored_letter(a, color[a]); });

            auto sigma_only = [&](int a) { return sig.at(a); };
            auto base = tau_eval(cycles_on_support(sigma_only, A), {}, color_Cp,
                                 [&](int a) { return colored_letter(a, colorp[a]); });
            auto rhs = base.substituted(colored_letter(i, colorp[i]), replacement);

            ++result.comparisons;
            if (lhs.is_zero() || rhs.is_zero() || lhs.terms().size() != 1 ||
                rhs.terms().size() != 1 ||
                lhs.terms().begin()->first != rhs.terms().begin()->first) {
                result.ok = false;
                continue;
            }
            Rational ratio = lhs.terms().begin()->second / rhs.terms().begin()->second;
            ratio.canonicalize();
            int gamma_obs = ratio == 1 ? 1 : (ratio == -1 ? -1 : 0);
            if (gamma_obs == 0 || gamma_obs != gamma_box ||
                (gamma_seen && *gamma_seen != gamma_obs))
                result.ok = false;
            gamma_seen = gamma_obs;
        }
        ++result.configurations;
    }
    return result;
}

PolarizationReport polarize_restitute(const TraceExpression& expr, Letter var, int h) {
    if (h < 1) throw Error("polarization degree must be >= 1");
    for (auto& [term, coeff] : expr.terms()) {
        unsigned d = 0;
        for (auto& f : term.factors) d += std::count(f.begin(), f.end(), var);
        d += std::count(term.outer.begin(), term.outer.end(), var);
        if (d != unsigned(h)) throw NotHomogeneous("expression is not homogeneous of degree h in var");
    }
    PolarizationReport report;
    int base = 0;
    for (auto& l : expr.support())
        if (l.parity == var.parity) base = std::max(base, l.index);
    TraceExpression sum;
    for (int k = 1; k <= h; ++k) {
        report.fresh.push_back(Letter{var.parity, base + k});
        sum += TraceExpression::from_letter(report.fresh.back());
    }
    report.polarized = expr.substituted(var, sum).component_multilinear_in(report.fresh);
    report.restituted = report.polarized;
    for (auto& v : report.fresh)
        report.restituted = report.restituted.substituted(v, TraceExpression::from_letter(var));
    TraceExpression scaled = expr;
    scaled.scale(Rational(factorial(unsigned(h))));
    report.restitution_matches = report.restituted == scaled;
    return report;
}

bool decoded_conjugation_symmetry_check(const TraceExpression& expr, int e, int f) {
    std::map<std::vector<int>, Rational> coeffs;  // one-line sigma -> c_sigma
    for (auto& [term, c] : expr.terms()) {
        TraceExpression unit = TraceExpression::term(term.factors, term.outer, Rational(1));
        auto decoded = freetrace::decode_phi(unit, e, f);
        Rational c_sigma = c * Rational(decoded.sign);
        c_sigma.canonicalize();
        coeffs[decoded.sigma.one_line()] = c_sigma;
    }
    auto coeff_of = [&](const Perm& p) {
        auto it = coeffs.find(p.one_line());
        return it == coeffs.end() ? Rational(0) : it->second;
    };
    for (auto& alpha : Perm::all(e))
        for (auto& beta : Perm::all(f)) {
            std::vector<int> tau_img(e + f);
            for (int i = 1; i <= e; ++i) tau_img[i - 1] = alpha.apply(i);
            for (int j = 1; j <= f; ++j) tau_img[e + j - 1] = e + beta.apply(j);
            Perm tau{tau_img};
            for (auto& [line, c] : coeffs) {
                Perm sigma{line};
                Perm conj = tau.compose_after(sigma).compose_after(tau.inverse());
                Rational want = c * Rational(beta.sign());
                want.canonicalize();
                if (coeff_of(conj) != want) return false;
            }
        }
    return true;
}

bool rank1_oracle_check(const Perm& sigma, int e, int f, int n) {
    int m = e + f;
    if (sigma.size() != m) throw BadArity("sigma must live in S_{e+f}");
    GeneratorRegistry reg;
    std::vector<std::vector<SuperPolynomial>> u(m + 1), form(m + 1);
    for (int i = 1; i <= m; ++i) {
        Kind uk = i <= e ? Kind::bosonic : Kind::fermionic;
        for (int k = 1; k <= n; ++k) {
            auto ui = reg.add(uk, "u" + std::to_string(i) + "_" + std::to_string(k));
            u[i].push_back(SuperPolynomial::generator(reg, uk, ui));
            auto pi = reg.add(Kind::bosonic, "p" + std::to_string(i) + "_" + std::to_string(k));
            form[i].push_back(SuperPolynomial::generator(reg, Kind::bosonic, pi));
        }
    }
    reg.freeze();
    Assignment assignment;
    for (int i = 1; i <= m; ++i) {
        SuperMatrix a(std::size_t(n), &reg);
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k) a.at(h, k) = u[i][h] * form[i][k];
        assignment.emplace(i <= e ? bos(i) : fer(i - e), a);
    }
    auto pairing = [&](int a, int b) {
        SuperPolynomial s;
        for (int k = 0; k < n; ++k) s += form[a][k] * u[b][k];
        return s;
    };
    SuperPolynomial lhs = evaluate_scalar(encode_phi(sigma, e, f), assignment, std::size_t(n));

    Perm inv = sigma.inverse();
    SuperPolynomial rhs1 = SuperPolynomial::constant(1);
    for (int i = 1; i <= m; ++i) rhs1 = rhs1 * pairing(inv.apply(i), i);

    // cycle-reordered form: along a cycle (i_1,...,i_k) of sigma the factors
    // are <phi_{i_k},u_{i_1}> <phi_{i_1},u_{i_2}> ... , with the sign that
    // rearranges the fermionic u-indices into display order
    auto cycles = sigma.canonical_cycles();
    std::vector<int> flat;
    for (auto& c : cycles) flat.insert(flat.end(), c.begin(), c.end());
    int eps = epsilon_sign(flat, Coloring::standard(e, f));
    SuperPolynomial rhs2 = SuperPolynomial::constant(eps);
    for (auto& c : cycles) {
        SuperPolynomial cyc = pairing(c.back(), c.front());
        for (std::size_t k = 0; k + 1 < c.size(); ++k) cyc = cyc * pairing(c[k], c[k + 1]);
        rhs2 = rhs2 * cyc;
    }
    return lhs == rhs1 && lhs == rhs2;
}

}  // namespace supertrace::identities
