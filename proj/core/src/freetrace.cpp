#include "supertrace/freetrace.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace supertrace::freetrace {

std::string to_string(Letter l) {
    return (l.parity == Parity::even ? "y" : "x") + std::to_string(l.index);
}

Letter letter_from_string(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y'))
        throw ParseError("bad letter token: " + s);
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("bad letter token: " + s);
    int idx = std::stoi(s.substr(1));
    if (idx < 1) throw ParseError("letter index must be >= 1: " + s);
    return Letter{s[0] == 'y' ? Parity::even : Parity::odd, idx};
}

Parity word_parity(const Word& w) {
    int odd = 0;
    for (auto& l : w) odd ^= (l.parity == Parity::odd);
    return Parity(odd);
}

std::string word_str(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += to_string(w[i]);
    }
    return s;
}

CanonWord canonicalize_word(const Word& w) {
    CanonWord best{w, 1, false};
    if (w.empty()) return best;
    Parity total = word_parity(w);
    Word rot = w;
    int sign = 1;
    bool best_seen_negated = false;
    for (std::size_t step = 0; step < w.size(); ++step) {
        if (step > 0) {
            // t(a w') = (-1)^{d(a) d(w')} t(w' a)
            Parity da = rot.front().parity;
            Parity drest = total + da;
            if (da == Parity::odd && drest == Parity::odd) sign = -sign;
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        }
        if (step == 0) {
            best.word = rot;
            best.sign = 1;
            continue;
        }
        if (rot < best.word) {
            best.word = rot;
            best.sign = sign;
            best_seen_negated = false;
        } else if (rot == best.word && sign != best.sign) {
            best_seen_negated = true;
        }
    }
    if (best_seen_negated) return CanonWord{{}, 1, true};
    return best;
}

bool is_zero_trace_word(const Word& w) { return canonicalize_word(w).zero; }

Parity TraceTerm::parity() const {
    int odd = word_parity(outer) == Parity::odd;
    for (auto& f : factors) odd ^= (word_parity(f) == Parity::odd);
    return Parity(odd);
}

TraceExpression TraceExpression::constant(Rational c) {
    TraceExpression e;
    if (c != 0) e.terms_.emplace(TraceTerm{}, std::move(c));
    return e;
}

TraceExpression TraceExpression::from_letter(Letter l) { return from_word({l}); }

TraceExpression TraceExpression::from_word(const Word& w) {
    TraceExpression e;
    e.terms_.emplace(TraceTerm{{}, w}, Rational(1));
    return e;
}

TraceExpression TraceExpression::trace_of_word(const Word& w) { return term({w}, {}, Rational(1)); }

TraceExpression TraceExpression::term(const std::vector<Word>& factors, const Word& outer, Rational c) {
    TraceExpression e;
    if (c == 0) return e;
    int sign = 1;
    std::vector<Word> canon;
    canon.reserve(factors.size());
    for (auto& f : factors) {
        CanonWord cw = canonicalize_word(f);
        if (cw.zero) return e;
        sign *= cw.sign;
        canon.push_back(std::move(cw.word));
    }
    // Sort the factors; odd factors anticommute, a repeated odd factor kills
    // the term.
    for (std::size_t i = 0; i < canon.size(); ++i)
        for (std::size_t j = i + 1; j < canon.size(); ++j) {
            bool oi = word_parity(canon[i]) == Parity::odd;
            bool oj = word_parity(canon[j]) == Parity::odd;
            if (oi && oj && canon[i] == canon[j]) return e;
            if (canon[j] < canon[i] && oi && oj) sign = -sign;
        }
    std::stable_sort(canon.begin(), canon.end());
    Rational coeff = sign < 0 ? Rational(-c) : c;
    e.terms_.emplace(TraceTerm{std::move(canon), outer}, std::move(coeff));
    return e;
}

bool TraceExpression::in_trace_algebra() const {
    for (auto& [t, c] : terms_)
        if (!t.outer.empty()) return false;
    return true;
}

std::optional<Parity> TraceExpression::homogeneous_parity() const {
    std::optional<Parity> p;
    for (auto& [t, c] : terms_) {
        Parity tp = t.parity();
        if (!p)
            p = tp;
        else if (*p != tp)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::even);
}

void TraceExpression::add_term(TraceTerm t, Rational c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(t), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TraceExpression& TraceExpression::operator+=(const TraceExpression& rhs) {
    for (auto& [t, c] : rhs.terms_) add_term(t, c);
    return *this;
}

TraceExpression& TraceExpression::operator-=(const TraceExpression& rhs) {
    for (auto& [t, c] : rhs.terms_) add_term(t, -c);
    return *this;
}

TraceExpression TraceExpression::operator-() const {
    TraceExpression r(*this);
    for (auto& [t, c] : r.terms_) c = -c;
    return r;
}

void TraceExpression::scale(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return;
    }
    for (auto& [t, coeff] : terms_) {
        coeff *= c;
        coeff.canonicalize();
    }
}

TraceExpression operator*(const TraceExpression& a, const TraceExpression& b) {
    TraceExpression r;
    for (auto& [ta, ca] : a.terms_) {
        Parity wa = word_parity(ta.outer);
        for (auto& [tb, cb] : b.terms_) {
            // move the trace factors of tb left across the outer word of ta
            int odd_factors = 0;
            for (auto& f : tb.factors) odd_factors ^= (word_parity(f) == Parity::odd);
            int sign = (odd_factors && wa == Parity::odd) ? -1 : 1;
            std::vector<Word> factors = ta.factors;
            factors.insert(factors.end(), tb.factors.begin(), tb.factors.end());
            Word outer = ta.outer;
            outer.insert(outer.end(), tb.outer.begin(), tb.outer.end());
            Rational c = ca * cb;
            c.canonicalize();
            if (sign < 0) c = -c;
            r += TraceExpression::term(factors, outer, c);
        }
    }
    return r;
}

TraceExpression TraceExpression::traced() const {
    TraceExpression r;
    for (auto& [t, c] : terms_) {
        std::vector<Word> factors = t.factors;
        factors.push_back(t.outer);  // empty outer contributes the t(1) symbol
        r += TraceExpression::term(factors, {}, c);
    }
    return r;
}

TraceExpression TraceExpression::substituted(Letter var, const TraceExpression& replacement) const {
    auto rp = replacement.homogeneous_parity();
    if (!rp || *rp != var.parity)
        throw ParityMismatch("substitution must be homogeneous of the variable's parity");
    auto subst_word = [&](const Word& w) {
        TraceExpression prod = TraceExpression::constant(1);
        for (auto& l : w) prod = prod * (l == var ? replacement : TraceExpression::from_letter(l));
        return prod;
    };
    TraceExpression r;
    for (auto& [t, c] : terms_) {
        TraceExpression acc = TraceExpression::constant(c);
        for (auto& f : t.factors) acc = acc * subst_word(f).traced();
        acc = acc * subst_word(t.outer);
        r += acc;
    }
    return r;
}

TraceExpression TraceExpression::relabeled(const std::function<Letter(Letter)>& fn) const {
    auto map_word = [&](const Word& w) {
        Word out;
        out.reserve(w.size());
        for (auto& l : w) {
            Letter m = fn(l);
            if (m.parity != l.parity) throw ParityMismatch("relabeling must preserve parity");
            out.push_back(m);
        }
        return out;
    };
    TraceExpression r;
    for (auto& [t, c] : terms_) {
        std::vector<Word> factors;
        factors.reserve(t.factors.size());
        for (auto& f : t.factors) factors.push_back(map_word(f));
        r += TraceExpression::term(factors, map_word(t.outer), c);
    }
    return r;
}

unsigned TraceExpression::max_degree_in(Letter l) const {
    unsigned best = 0;
    for (auto& [t, c] : terms_) {
        unsigned d = 0;
        for (auto& f : t.factors) d += std::count(f.begin(), f.end(), l);
        d += std::count(t.outer.begin(), t.outer.end(), l);
        best = std::max(best, d);
    }
    return best;
}

namespace {
unsigned term_degree_in(const TraceTerm& t, Letter l) {
    unsigned d = 0;
    for (auto& f : t.factors) d += std::count(f.begin(), f.end(), l);
    d += std::count(t.outer.begin(), t.outer.end(), l);
    return d;
}
}  // namespace

bool TraceExpression::is_multilinear_in(const std::vector<Letter>& vars) const {
    for (auto& [t, c] : terms_)
        for (auto& v : vars)
            if (term_degree_in(t, v) != 1) return false;
    return true;
}

TraceExpression TraceExpression::component_multilinear_in(const std::vector<Letter>& vars) const {
    TraceExpression r;
    for (auto& [t, c] : terms_) {
        bool keep = true;
        for (auto& v : vars)
            if (term_degree_in(t, v) != 1) {
                keep = false;
                break;
            }
        if (keep) r.add_term(t, c);
    }
    return r;
}

std::set<Letter> TraceExpression::support() const {
    std::set<Letter> s;
    for (auto& [t, c] : terms_) {
        for (auto& f : t.factors) s.insert(f.begin(), f.end());
        s.insert(t.outer.begin(), t.outer.end());
    }
    return s;
}

std::string TraceExpression::str() const {
    if (terms_.empty()) return "0";
    auto term_str = [](const TraceTerm& t, const Rational& c) {
        std::string s = "(* " + c.get_str();
        for (auto& f : t.factors) {
            s += " (t";
            for (auto& l : f) s += " " + to_string(l);
            s += ")";
        }
        for (auto& l : t.outer) s += " " + to_string(l);
        s += ")";
        return s;
    };
    if (terms_.size() == 1) {
        auto& [t, c] = *terms_.begin();
        return term_str(t, c);
    }
    std::string s = "(+";
    for (auto& [t, c] : terms_) s += " " + term_str(t, c);
    s += ")";
    return s;
}

namespace {

struct SCursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'");
        ++i;
    }
    std::string token() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')')
            ++i;
        if (start == i) throw ParseError("expected token");
        return s.substr(start, i - start);
    }
};

// (* coeff (t letters...)* outer-letters...)
std::pair<std::vector<Word>, std::pair<Word, Rational>> parse_term_body(SCursor& c) {
    c.expect('(');
    if (c.token() != "*") throw ParseError("term must start with (*");
    Rational coeff = rational_from_string(c.token());
    std::vector<Word> factors;
    Word outer;
    for (;;) {
        char p = c.peek();
        if (p == ')') {
            ++c.i;
            break;
        }
        if (p == '(') {
            ++c.i;
            if (c.token() != "t") throw ParseError("expected trace factor (t ...)");
            Word w;
            while (c.peek() != ')') w.push_back(letter_from_string(c.token()));
            ++c.i;
            if (!outer.empty()) throw ParseError("trace factors must precede the outer word");
            factors.push_back(std::move(w));
        } else {
            outer.push_back(letter_from_string(c.token()));
        }
    }
    return {std::move(factors), {std::move(outer), std::move(coeff)}};
}

}  // namespace

TraceExpression TraceExpression::parse(const std::string& text) {
    SCursor c{text};
    if (c.peek() == '0') {
        ++c.i;
        if (c.peek() != '\0') throw ParseError("trailing input after 0");
        return TraceExpression();
    }
    c.expect('(');
    // look ahead: '+' for a sum, '*' for a single term
    char head = c.peek();
    TraceExpression result;
    if (head == '+') {
        ++c.i;
        while (c.peek() != ')') {
            auto [factors, rest] = parse_term_body(c);
            result += TraceExpression::term(factors, rest.first, rest.second);
        }
        ++c.i;
    } else {
        c.i -= 1;  // rewind the '('
        auto [factors, rest] = parse_term_body(c);
        result += TraceExpression::term(factors, rest.first, rest.second);
    }
    if (c.peek() != '\0') throw ParseError("trailing input after expression");
    return result;
}

std::pair<TraceExpression, int> TraceExpression::parse_term(const std::string& text) {
    SCursor c{text};
    auto [factors, rest] = parse_term_body(c);
    if (c.peek() != '\0') throw ParseError("trailing input after term");
    auto expr = TraceExpression::term(factors, rest.first, rest.second);
    if (expr.is_zero()) return {expr, 0};
    const Rational& out = expr.terms().begin()->second;
    Rational ratio = out / rest.second;
    ratio.canonicalize();
    return {expr, ratio < 0 ? -1 : 1};
}

// ---------------------------------------------------------------------------

Perm::Perm(std::vector<int> one_line) : img_(std::move(one_line)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
        if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
            throw Error("not a permutation in one-line notation");
        seen[v - 1] = true;
    }
}

Perm Perm::identity(int m) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 1);
    return Perm(std::move(v));
}

Perm Perm::from_cycles(int m, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 1);
    for (auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int from = c[i], to = c[(i + 1) % c.size()];
            if (from < 1 || from > m) throw Error("cycle entry out of range");
            v[from - 1] = to;
        }
    }
    return Perm(std::move(v));
}

std::vector<Perm> Perm::all(int m) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Perm> out;
    do {
        out.push_back(Perm(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

Perm Perm::inverse() const {
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[img_[i] - 1] = static_cast<int>(i) + 1;
    return Perm(std::move(v));
}

Perm Perm::compose_after(const Perm& g) const {
    if (size() != g.size()) throw Error("permutation sizes differ");
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[i] = apply(g.img_[i]);
    return Perm(std::move(v));
}

int Perm::sign() const {
    int s = 1;
    for (auto& c : canonical_cycles())
        if (c.size() % 2 == 0) s = -s;
    return s;
}

std::vector<std::vector<int>> Perm::canonical_cycles() const {
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(img_.size(), false);
    for (int start = 1; start <= size(); ++start) {
        if (seen[start - 1]) continue;
        std::vector<int> cycle;
        int cur = start;
        do {
            cycle.push_back(cur);
            seen[cur - 1] = true;
            cur = apply(cur);
        } while (cur != start);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

Perm::Opened Perm::opened_at(int p) const {
    if (p < 1 || p > size()) throw Error("opened_at: point out of range");
    Opened out;
    for (auto& c : canonical_cycles()) {
        auto it = std::find(c.begin(), c.end(), p);
        if (it == c.end()) {
            out.cycles.push_back(c);
        } else {
            std::vector<int> rotated(it + 1, c.end());
            rotated.insert(rotated.end(), c.begin(), it);  // ends just before p
            out.opened = std::move(rotated);
        }
    }
    return out;
}

std::string Perm::cycle_str() const {
    std::string s;
    for (auto& c : canonical_cycles()) {
        s += "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        s += ")";
    }
    return s;
}

Coloring Coloring::standard(int e, int f) {
    Coloring c;
    c.colors.assign(e, Parity::even);
    c.colors.insert(c.colors.end(), f, Parity::odd);
    return c;
}

bool Coloring::is_standard() const {
    bool seen_odd = false;
    for (auto p : colors) {
        if (p == Parity::odd)
            seen_odd = true;
        else if (seen_odd)
            return false;
    }
    return true;
}

int Coloring::bosonic_count() const {
    return static_cast<int>(std::count(colors.begin(), colors.end(), Parity::even));
}

int epsilon_sign(const std::vector<int>& word, const std::function<Parity(int)>& color) {
    std::vector<int> ferm;
    for (int a : word)
        if (color(a) == Parity::odd) ferm.push_back(a);
    int sign = 1;
    for (std::size_t i = 0; i < ferm.size(); ++i)
        for (std::size_t j = i + 1; j < ferm.size(); ++j)
            if (ferm[i] > ferm[j]) sign = -sign;
    return sign;
}

int epsilon_sign(const std::vector<int>& word, const Coloring& coloring) {
    return epsilon_sign(word, [&](int a) { return coloring.color(a); });
}

TraceExpression tau_eval(const std::vector<std::vector<int>>& cycles, const std::vector<int>& outer,
                         const std::function<Parity(int)>& color,
                         const std::function<Letter(int)>& letter_of) {
    std::vector<int> flat;
    for (auto& c : cycles) flat.insert(flat.end(), c.begin(), c.end());
    flat.insert(flat.end(), outer.begin(), outer.end());
    int eps = epsilon_sign(flat, color);
    auto to_word = [&](const std::vector<int>& vals) {
        Word w;
        w.reserve(vals.size());
        for (int a : vals) {
            Letter l = letter_of(a);
            if (l.parity != color(a)) throw ParityMismatch("letter parity disagrees with coloring");
            w.push_back(l);
        }
        return w;
    };
    std::vector<Word> factors;
    factors.reserve(cycles.size());
    for (auto& c : cycles) factors.push_back(to_word(c));
    return TraceExpression::term(factors, to_word(outer), Rational(eps));
}

Letter standard_letter(int a, int e) { return a <= e ? bos(a) : fer(a - e); }

TraceExpression encode_phi(const Perm& sigma, int e, int f) {
    if (sigma.size() != e + f) throw BadArity("permutation size must be e+f");
    return encode_phi_display(sigma.canonical_cycles(), e, f);
}

TraceExpression encode_phi(const ColoredPermutation& cp) {
    if (!cp.coloring.is_standard())
        throw Error("encoding requires the standard coloring (bosonic block first)");
    if (cp.sigma.size() != cp.coloring.m()) throw BadArity("permutation and coloring sizes differ");
    int e = cp.coloring.bosonic_count();
    return encode_phi(cp.sigma, e, cp.coloring.m() - e);
}

TraceExpression encode_phi_display(const std::vector<std::vector<int>>& cycles, int e, int f) {
    Coloring c = Coloring::standard(e, f);
    return tau_eval(cycles, {}, [&](int a) { return c.color(a); },
                    [&](int a) { return standard_letter(a, e); });
}

TraceExpression encode_psi(const Perm& sigma, int e, int f) {
    return encode_psi_strip(sigma, e, f, e + f);
}

TraceExpression encode_psi_strip(const Perm& sigma, int e, int f, int strip_point) {
    if (sigma.size() != e + f) throw BadArity("permutation size must be e+f");
    Coloring c = Coloring::standard(e, f);
    auto opened = sigma.opened_at(strip_point);
    return tau_eval(opened.cycles, opened.opened, [&](int a) { return c.color(a); },
                    [&](int a) { return standard_letter(a, e); });
}

namespace {

int support_value(Letter l, int e) { return l.parity == Parity::even ? l.index : l.index + e; }

std::vector<std::vector<int>> cycles_from_factors(const std::vector<Word>& factors, int e) {
    std::vector<std::vector<int>> cycles;
    for (auto& f : factors) {
        std::vector<int> c;
        c.reserve(f.size());
        for (auto& l : f) c.push_back(support_value(l, e));
        cycles.push_back(std::move(c));
    }
    return cycles;
}

void check_single_multilinear(const TraceExpression& expr, int e, int f, bool outer_allowed) {
    if (expr.terms().size() != 1) throw NotMultilinear("expected a single trace monomial");
    std::vector<Letter> vars;
    for (int i = 1; i <= e; ++i) vars.push_back(bos(i));
    for (int j = 1; j <= f; ++j) vars.push_back(fer(j));
    if (!expr.is_multilinear_in(vars)) throw NotMultilinear("term is not multilinear in y1..ye, x1..xf");
    const TraceTerm& t = expr.terms().begin()->first;
    std::size_t letters = t.outer.size();
    for (auto& w : t.factors) letters += w.size();
    if (letters != static_cast<std::size_t>(e + f)) throw NotMultilinear("extra variables present");
    if (!outer_allowed && !t.outer.empty()) throw NotMultilinear("unexpected outer word");
}

}  // namespace

Decoded decode_phi(const TraceExpression& expr, int e, int f) {
    check_single_multilinear(expr, e, f, false);
    const auto& [t, c] = *expr.terms().begin();
    Perm sigma = Perm::from_cycles(e + f, cycles_from_factors(t.factors, e));
    TraceExpression again = encode_phi(sigma, e, f);
    const auto& [t2, c2] = *again.terms().begin();
    if (t2 != t) throw NotMultilinear("monomial is not an encoded permutation");
    Rational ratio = c / c2;
    ratio.canonicalize();
    if (ratio != 1 && ratio != -1) throw NotMultilinear("coefficient is not +-1");
    return Decoded{sigma, ratio < 0 ? -1 : 1};
}

Decoded decode_psi(const TraceExpression& expr, int e, int f) {
    check_single_multilinear(expr, e, f, true);
    const auto& [t, c] = *expr.terms().begin();
    int m1 = e + f + 1;
    auto cycles = cycles_from_factors(t.factors, e);
    std::vector<int> last;
    for (auto& l : t.outer) last.push_back(support_value(l, e));
    last.push_back(m1);
    cycles.push_back(std::move(last));
    Perm sigma = Perm::from_cycles(m1, cycles);
    TraceExpression again = encode_psi_strip(sigma, e, f + 1, m1);
    const auto& [t2, c2] = *again.terms().begin();
    if (t2 != t) throw NotMultilinear("monomial is not an encoded partial p-string");
    Rational ratio = c / c2;
    ratio.canonicalize();
    if (ratio != 1 && ratio != -1) throw NotMultilinear("coefficient is not +-1");
    return Decoded{sigma, ratio < 0 ? -1 : 1};
}

bool relabel_symmetry_check(const Perm& sigma, int e, int f, const Perm& alpha, const Perm& beta) {
    if (alpha.size() != e || beta.size() != f) throw BadArity("alpha in S_e, beta in S_f required");
    std::vector<int> tau_img(e + f);
    for (int i = 1; i <= e; ++i) tau_img[i - 1] = alpha.apply(i);
    for (int j = 1; j <= f; ++j) tau_img[e + j - 1] = e + beta.apply(j);
    Perm tau{tau_img};
    Perm conj = tau.compose_after(sigma).compose_after(tau.inverse());
    TraceExpression lhs = encode_phi(conj, e, f);
    TraceExpression rhs = encode_phi(sigma, e, f).relabeled([&](Letter l) {
        return l.parity == Parity::even ? bos(alpha.apply(l.index)) : fer(beta.apply(l.index));
    });
    rhs.scale(Rational(beta.sign()));
    return lhs == rhs;
}

}  // namespace supertrace::freetrace
