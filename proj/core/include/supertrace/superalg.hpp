#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supertrace/errors.hpp"
#include "supertrace/parity.hpp"
#include "supertrace/rational.hpp"

namespace supertrace::superalg {

enum class Kind : std::uint8_t { bosonic = 0, fermionic = 1 };

inline Parity parity_of(Kind k) {
    return k == Kind::fermionic ? Parity::odd : Parity::even;
}

// Allocates generators of the free supercommutative algebra K(V).
// Indices are dense and contiguous per kind; (kind, label) <-> index is a
// bijection for the lifetime of the registry. Polynomials built over
// different registries must never be combined.
class GeneratorRegistry {
public:
    GeneratorRegistry();

    std::uint32_t add(Kind kind, std::string label);
    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::size_t count(Kind kind) const { return labels_[idx(kind)].size(); }
    const std::string& label(Kind kind, std::uint32_t index) const;
    std::optional<std::pair<Kind, std::uint32_t>> find(const std::string& label) const;
    std::uint64_t id() const { return id_; }

private:
    static std::size_t idx(Kind k) { return static_cast<std::size_t>(k); }
    std::uint64_t id_;
    bool frozen_ = false;
    std::vector<std::string> labels_[2];
    std::map<std::string, std::pair<Kind, std::uint32_t>> by_label_;
};

// Strictly increasing set of fermionic generator ids, stored as a bitset.
class FermionicSet {
public:
    bool empty() const { return words_.empty(); }
    std::size_t count() const;
    bool test(std::uint32_t i) const;
    void set(std::uint32_t i);
    std::vector<std::uint32_t> to_indices() const;

    bool intersects(const FermionicSet& other) const;
    // Concatenation sign of two sorted blocks: parity of the number of pairs
    // (p in *this, q in other) with q < p. Disjointness is the caller's job.
    int merge_sign(const FermionicSet& other) const;
    FermionicSet merged_with(const FermionicSet& other) const;

    auto operator<=>(const FermionicSet&) const = default;

private:
    void trim();
    std::vector<std::uint64_t> words_;
};

struct SuperMonomial {
    // (generator id, exponent>0) pairs, sorted by id.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bosonic;
    FermionicSet fermionic;

    Parity parity() const { return Parity(fermionic.count() & 1); }
    unsigned bosonic_degree() const;
    unsigned total_degree() const { return bosonic_degree() + unsigned(fermionic.count()); }
    bool is_one() const { return bosonic.empty() && fermionic.empty(); }

    auto operator<=>(const SuperMonomial&) const = default;
};

// Element of K(V) = S(V0) (x) /\V1 over Q, canonical: one entry per monomial,
// no zero coefficients.
class SuperPolynomial {
public:
    SuperPolynomial() = default;
    static SuperPolynomial constant(Rational c);
    static SuperPolynomial generator(const GeneratorRegistry& reg, Kind kind, std::uint32_t index);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<SuperMonomial, Rational>& terms() const { return terms_; }
    const GeneratorRegistry* registry() const { return registry_; }

    bool is_constant() const;
    Rational constant_value() const;  // coefficient of the unit monomial

    // nullopt if terms of mixed parity; the zero polynomial reports even.
    std::optional<Parity> homogeneous_parity() const;

    SuperPolynomial& operator+=(const SuperPolynomial& rhs);
    SuperPolynomial& operator-=(const SuperPolynomial& rhs);
    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
    SuperPolynomial operator-() const;
    friend SuperPolynomial operator*(const Rational& c, SuperPolynomial p) { p.scale(c); return p; }
    void scale(const Rational& c);

    // value equality; the registry only guards operations
    bool operator==(const SuperPolynomial& rhs) const { return terms_ == rhs.terms_; }

    std::string str() const;
    static SuperPolynomial parse(const std::string& text, const GeneratorRegistry& reg);

private:
    friend SuperPolynomial supercommutator(const SuperPolynomial&, const SuperPolynomial&);
    void add_term(SuperMonomial m, Rational c);
    void adopt_registry(const SuperPolynomial& other);
    const GeneratorRegistry* registry_ = nullptr;
    std::map<SuperMonomial, Rational> terms_;
};

// [a,b]_s = ab - (-1)^{d(a)d(b)} ba for parity-homogeneous a, b.
// Identically zero here; kept as an executable axiom check.
SuperPolynomial supercommutator(const SuperPolynomial& a, const SuperPolynomial& b);

}  // namespace supertrace::superalg
