#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "supertrace/errors.hpp"
#include "supertrace/parity.hpp"
#include "supertrace/rational.hpp"

namespace supertrace::freetrace {

// Variable of the free superalgebra: y_i bosonic, x_i fermionic.
struct Letter {
    Parity parity = Parity::even;
    int index = 1;
    // Total order: bosonic before fermionic, then by index.
    auto operator<=>(const Letter&) const = default;
};

inline Letter bos(int i) { return Letter{Parity::even, i}; }
inline Letter fer(int i) { return Letter{Parity::odd, i}; }

std::string to_string(Letter l);
Letter letter_from_string(const std::string& s);

using Word = std::vector<Letter>;

Parity word_parity(const Word& w);
std::string word_str(const Word& w);

// Representative of a signed cyclic class: the lexicographically least
// rotation together with the sign accumulated by the rotations, or zero when
// the class is self-negating (even powers of odd-parity words).
struct CanonWord {
    Word word;
    int sign = 1;
    bool zero = false;
};

CanonWord canonicalize_word(const Word& w);

// True iff t(w) = 0, i.e. w is an even power of a word of odd parity.
bool is_zero_trace_word(const Word& w);

// Monomial of the free superalgebra with trace: a product of canonical trace
// factors (odd factors pairwise distinct and sorted, they anticommute) times
// an optional untraced outer word.
struct TraceTerm {
    std::vector<Word> factors;
    Word outer;

    Parity parity() const;
    auto operator<=>(const TraceTerm&) const = default;
};

class TraceExpression {
public:
    TraceExpression() = default;
    static TraceExpression constant(Rational c);
    static TraceExpression from_letter(Letter l);
    static TraceExpression from_word(const Word& w);       // untraced word
    static TraceExpression trace_of_word(const Word& w);   // t(w)
    // c * t(f_1) ... t(f_k) * outer with the factors in the given order.
    static TraceExpression term(const std::vector<Word>& factors, const Word& outer, Rational c);

    const std::map<TraceTerm, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool in_trace_algebra() const;  // every term has an empty outer word
    std::optional<Parity> homogeneous_parity() const;

    TraceExpression& operator+=(const TraceExpression& rhs);
    TraceExpression& operator-=(const TraceExpression& rhs);
    friend TraceExpression operator+(TraceExpression a, const TraceExpression& b) { return a += b; }
    friend TraceExpression operator-(TraceExpression a, const TraceExpression& b) { return a -= b; }
    friend TraceExpression operator*(const TraceExpression& a, const TraceExpression& b);
    friend TraceExpression operator*(const Rational& c, TraceExpression e) { e.scale(c); return e; }
    TraceExpression operator-() const;
    void scale(const Rational& c);
    bool operator==(const TraceExpression&) const = default;

    // Formal trace t(.): traces the outer word of every term (t(1) for the
    // empty word, kept as a symbol until evaluation).
    TraceExpression traced() const;

    // Replaces every occurrence of var; the replacement must be homogeneous
    // of the same parity (substitutions in a T-ideal are parity-respecting).
    TraceExpression substituted(Letter var, const TraceExpression& replacement) const;

    // Parity-preserving bijective renaming of letters.
    TraceExpression relabeled(const std::function<Letter(Letter)>& fn) const;

    unsigned max_degree_in(Letter l) const;
    bool is_multilinear_in(const std::vector<Letter>& vars) const;
    // Terms of degree exactly one in each of the given variables.
    TraceExpression component_multilinear_in(const std::vector<Letter>& vars) const;
    std::set<Letter> support() const;

    std::string str() const;
    static TraceExpression parse(const std::string& text);
    // Single-term parse that also reports the sign the normalization applied
    // (0 when the term normalizes to zero).
    static std::pair<TraceExpression, int> parse_term(const std::string& text);

private:
    void add_term(TraceTerm t, Rational c);
    std::map<TraceTerm, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Permutations, colorings and the encoding maps.

class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> one_line);
    static Perm identity(int m);
    static Perm from_cycles(int m, const std::vector<std::vector<int>>& cycles);
    static std::vector<Perm> all(int m);  // lexicographic one-line order

    int size() const { return static_cast<int>(img_.size()); }
    int apply(int i) const { return img_.at(i - 1); }
    const std::vector<int>& one_line() const { return img_; }
    Perm inverse() const;
    // (a.compose_after(b))(x) = a(b(x))
    Perm compose_after(const Perm& g) const;
    int sign() const;
    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

    // Canonical parenthesized string: each cycle led by its minimum, leaders
    // increasing left to right.
    std::vector<std::vector<int>> canonical_cycles() const;

    struct Opened {
        std::vector<std::vector<int>> cycles;  // remaining trace cycles in order
        std::vector<int> opened;               // the opened cycle, p removed
    };
    // Partial p-string: the cycle containing p is rotated to end with p,
    // moved last and opened; p itself is dropped.
    Opened opened_at(int p) const;

    std::string cycle_str() const;

private:
    std::vector<int> img_;
};

struct Coloring {
    std::vector<Parity> colors;  // color of point i at colors[i-1]

    static Coloring standard(int e, int f);
    int m() const { return static_cast<int>(colors.size()); }
    Parity color(int a) const { return colors.at(a - 1); }
    bool is_standard() const;
    int bosonic_count() const;
};

// Permutation together with a coloring of its support.
struct ColoredPermutation {
    Perm sigma;
    Coloring coloring;
};

// Sign of the permutation that sorts the fermionic subsequence of the word.
int epsilon_sign(const std::vector<int>& word, const std::function<Parity(int)>& color);
int epsilon_sign(const std::vector<int>& word, const Coloring& coloring);

// Colored evaluation of a (partial) p-string over an arbitrary support:
// epsilon * t(cycle_1) ... t(cycle_r) * outer, with each support value a
// mapped to the letter given by letter_of.
TraceExpression tau_eval(const std::vector<std::vector<int>>& cycles, const std::vector<int>& outer,
                         const std::function<Parity(int)>& color,
                         const std::function<Letter(int)>& letter_of);

// Letter map of the standard coloring: a <= e -> y_a, a > e -> x_{a-e}.
Letter standard_letter(int a, int e);

// Encoding of sigma in S_{e+f} as a multilinear trace monomial in
// y_1..y_e, x_1..x_f (computed from the canonical p-string).
TraceExpression encode_phi(const Perm& sigma, int e, int f);
TraceExpression encode_phi(const ColoredPermutation& cp);  // standard coloring required
// Same, from an explicit cycle display (for display-independence checks).
TraceExpression encode_phi_display(const std::vector<std::vector<int>>& cycles, int e, int f);

// Equivariant encoding: sigma in S_{e+f}, the cycle containing strip_point is
// opened into the outer word and strip_point dropped. Defaults to the last
// point, whose letter is x_f (or y_e when f = 0).
TraceExpression encode_psi(const Perm& sigma, int e, int f);
TraceExpression encode_psi_strip(const Perm& sigma, int e, int f, int strip_point);

struct Decoded {
    Perm sigma;
    int sign = 1;
};

// Inverse of the encoding on single multilinear monomials.
Decoded decode_phi(const TraceExpression& expr, int e, int f);
Decoded decode_psi(const TraceExpression& expr, int e, int f);  // sigma in S_{e+f+1}

// Equivariance of the encoding under relabeling: for tau = (alpha, beta),
// encode(tau sigma tau^{-1}) = sign(beta) * encode(sigma) with y_i -> y_alpha(i),
// x_j -> x_beta(j).
bool relabel_symmetry_check(const Perm& sigma, int e, int f, const Perm& alpha, const Perm& beta);

}  // namespace supertrace::freetrace
