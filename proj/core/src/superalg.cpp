#include "supertrace/superalg.hpp"

#include <atomic>
#include <bit>
#include <cctype>
#include <sstream>

namespace supertrace::superalg {

namespace {
std::atomic<std::uint64_t> g_next_registry_id{1};
}

GeneratorRegistry::GeneratorRegistry() : id_(g_next_registry_id.fetch_add(1)) {}

std::uint32_t GeneratorRegistry::add(Kind kind, std::string label) {
    if (frozen_) throw Error("registry is frozen, cannot add generator '" + label + "'");
    if (by_label_.count(label)) throw LabelReused("generator label reused: " + label);
    auto& v = labels_[idx(kind)];
    auto index = static_cast<std::uint32_t>(v.size());
    by_label_.emplace(label, std::make_pair(kind, index));
    v.push_back(std::move(label));
    return index;
}

const std::string& GeneratorRegistry::label(Kind kind, std::uint32_t index) const {
    return labels_[idx(kind)].at(index);
}

std::optional<std::pair<Kind, std::uint32_t>> GeneratorRegistry::find(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::size_t FermionicSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool FermionicSet::test(std::uint32_t i) const {
    std::size_t w = i >> 6;
    if (w >= words_.size()) return false;
    return (words_[w] >> (i & 63)) & 1;
}

void FermionicSet::set(std::uint32_t i) {
    std::size_t w = i >> 6;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t(1) << (i & 63);
}

std::vector<std::uint32_t> FermionicSet::to_indices() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t x = words_[w];
        while (x) {
            unsigned b = std::countr_zero(x);
            out.push_back(std::uint32_t(w * 64 + b));
            x &= x - 1;
        }
    }
    return out;
}

bool FermionicSet::intersects(const FermionicSet& other) const {
    std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < n; ++w)
        if (words_[w] & other.words_[w]) return true;
    return false;
}

int FermionicSet::merge_sign(const FermionicSet& other) const {
    // Parity of #{(p,q) : p in this, q in other, q < p}.
    std::size_t inversions = 0;
    std::size_t suffix = count();  // this-bits in words >= current word
    std::size_t nw = std::max(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < nw; ++w) {
        std::uint64_t aw = w < words_.size() ? words_[w] : 0;
        std::uint64_t bw = w < other.words_.size() ? other.words_[w] : 0;
        suffix -= std::popcount(aw);
        std::uint64_t x = bw;
        while (x) {
            unsigned q = std::countr_zero(x);
            x &= x - 1;
            std::uint64_t above = q == 63 ? 0 : (aw >> (q + 1));
            inversions += suffix + std::popcount(above);
        }
    }
    return (inversions & 1) ? -1 : 1;
}

FermionicSet FermionicSet::merged_with(const FermionicSet& other) const {
    FermionicSet r;
    r.words_.resize(std::max(words_.size(), other.words_.size()), 0);
    for (std::size_t w = 0; w < r.words_.size(); ++w) {
        std::uint64_t aw = w < words_.size() ? words_[w] : 0;
        std::uint64_t bw = w < other.words_.size() ? other.words_[w] : 0;
        r.words_[w] = aw | bw;
    }
    r.trim();
    return r;
}

void FermionicSet::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

unsigned SuperMonomial::bosonic_degree() const {
    unsigned d = 0;
    for (auto& [id, e] : bosonic) d += e;
    return d;
}

SuperPolynomial SuperPolynomial::constant(Rational c) {
    SuperPolynomial p;
    if (c != 0) p.terms_.emplace(SuperMonomial{}, std::move(c));
    return p;
}

SuperPolynomial SuperPolynomial::generator(const GeneratorRegistry& reg, Kind kind, std::uint32_t index) {
    if (index >= reg.count(kind)) throw Error("generator index out of range");
    SuperPolynomial p;
    p.registry_ = &reg;
    SuperMonomial m;
    if (kind == Kind::bosonic)
        m.bosonic.emplace_back(index, 1);
    else
        m.fermionic.set(index);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

bool SuperPolynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational SuperPolynomial::constant_value() const {
    auto it = terms_.find(SuperMonomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Parity> SuperPolynomial::homogeneous_parity() const {
    Parity p = Parity::even;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (first) {
            p = m.parity();
            first = false;
        } else if (m.parity() != p) {
            return std::nullopt;
        }
    }
    return p;
}

void SuperPolynomial::adopt_registry(const SuperPolynomial& other) {
    if (other.registry_ == nullptr) return;
    if (registry_ == nullptr) {
        registry_ = other.registry_;
    } else if (registry_ != other.registry_) {
        throw RegistryMismatch("cannot combine polynomials from different generator registries");
    }
}

void SuperPolynomial::add_term(SuperMonomial m, Rational c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& rhs) {
    adopt_registry(rhs);
    for (auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& rhs) {
    adopt_registry(rhs);
    for (auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

SuperPolynomial SuperPolynomial::operator-() const {
    SuperPolynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

void SuperPolynomial::scale(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return;
    }
    for (auto& [m, coeff] : terms_) {
        coeff *= c;
        coeff.canonicalize();
    }
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    SuperPolynomial r;
    r.adopt_registry(a);
    r.adopt_registry(b);
    for (auto& [ma, ca] : a.terms_) {
        for (auto& [mb, cb] : b.terms_) {
            if (ma.fermionic.intersects(mb.fermionic)) continue;  // repeated odd generator
            int sign = ma.fermionic.merge_sign(mb.fermionic);
            SuperMonomial m;
            m.fermionic = ma.fermionic.merged_with(mb.fermionic);
            m.bosonic.reserve(ma.bosonic.size() + mb.bosonic.size());
            auto ia = ma.bosonic.begin(), ib = mb.bosonic.begin();
            while (ia != ma.bosonic.end() || ib != mb.bosonic.end()) {
                if (ib == mb.bosonic.end() || (ia != ma.bosonic.end() && ia->first < ib->first)) {
                    m.bosonic.push_back(*ia++);
                } else if (ia == ma.bosonic.end() || ib->first < ia->first) {
                    m.bosonic.push_back(*ib++);
                } else {
                    m.bosonic.emplace_back(ia->first, ia->second + ib->second);
                    ++ia;
                    ++ib;
                }
            }
            Rational c = ca * cb;
            c.canonicalize();
            if (sign < 0) c = -c;
            r.add_term(std::move(m), std::move(c));
        }
    }
    return r;
}

SuperPolynomial supercommutator(const SuperPolynomial& a, const SuperPolynomial& b) {
    auto pa = a.homogeneous_parity();
    auto pb = b.homogeneous_parity();
    if (!pa || !pb) throw NonHomogeneous("supercommutator requires parity-homogeneous operands");
    SuperPolynomial ba = b * a;
    if (sign_of_swap(*pa, *pb) < 0) {
        return a * b + ba;
    }
    return a * b - ba;
}

std::string SuperPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << a.get_str();
        for (auto& [id, e] : m.bosonic) {
            os << " * b[" << (registry_ ? registry_->label(Kind::bosonic, id) : std::to_string(id)) << "]";
            if (e > 1) os << "^" << e;
        }
        for (auto id : m.fermionic.to_indices()) {
            os << " * f[" << (registry_ ? registry_->label(Kind::fermionic, id) : std::to_string(id)) << "]";
        }
    }
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

Rational parse_coefficient(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
    std::size_t digits = c.i;
    while (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '/')) ++c.i;
    if (c.i == digits)
        throw ParseError("expected rational coefficient at position " + std::to_string(start));
    return rational_from_string(c.s.substr(start, c.i - start));
}

}  // namespace

SuperPolynomial SuperPolynomial::parse(const std::string& text, const GeneratorRegistry& reg) {
    Cursor c{text};
    SuperPolynomial result;
    bool any = false;
    while (!c.eof()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            if (ch == '-') sign = -1;
            ++c.i;
            if (!any && c.eof()) throw ParseError("dangling sign");
        } else if (any) {
            throw ParseError("expected '+' or '-' between terms");
        }
        // term: either a leading coefficient, factors, or both joined by '*'
        SuperPolynomial term = SuperPolynomial::constant(Rational(sign));
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            c.skip_ws();
            char p = c.peek();
            if (p == 'b' || p == 'f') {
                Kind kind = p == 'b' ? Kind::bosonic : Kind::fermionic;
                ++c.i;
                if (c.peek() != '[') throw ParseError("expected '[' after generator kind");
                ++c.i;
                std::size_t close = c.s.find(']', c.i);
                if (close == std::string::npos) throw ParseError("unterminated generator label");
                std::string label = c.s.substr(c.i, close - c.i);
                c.i = close + 1;
                auto found = reg.find(label);
                if (!found || found->first != kind)
                    throw ParseError("unknown generator " + std::string(1, p) + "[" + label + "]");
                unsigned exp = 1;
                if (c.peek() == '^') {
                    ++c.i;
                    std::size_t st = c.i;
                    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
                    if (st == c.i) throw ParseError("expected exponent digits");
                    exp = std::stoul(c.s.substr(st, c.i - st));
                }
                auto g = SuperPolynomial::generator(reg, kind, found->second);
                for (unsigned k = 0; k < exp; ++k) term = term * g;
                saw_factor = true;
            } else if (std::isdigit(static_cast<unsigned char>(p)) || p == '-' || p == '+') {
                Rational coeff = parse_coefficient(c);
                term.scale(coeff);
                saw_factor = true;
            } else {
                throw ParseError("unexpected character in term");
            }
            c.skip_ws();
            if (c.peek() == '*') {
                ++c.i;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!saw_factor) throw ParseError("empty term");
        result += term;
        any = true;
    }
    if (!any) throw ParseError("empty polynomial text (use \"0\")");
    return result;
}

}  // namespace supertrace::superalg
