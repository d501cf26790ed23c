#include "supertrace/gmatrix.hpp"

#include <sstream>

namespace supertrace::gmatrix {

SuperMatrix::SuperMatrix(std::size_t n, const GeneratorRegistry* reg)
    : n_(n), registry_(reg), entries_(n * n) {}

SuperMatrix SuperMatrix::identity(std::size_t n, const GeneratorRegistry* reg) {
    SuperMatrix m(n, reg);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = SuperPolynomial::constant(1);
    return m;
}

SuperPolynomial& SuperMatrix::at(std::size_t row, std::size_t col) {
    return entries_.at(row * n_ + col);
}

const SuperPolynomial& SuperMatrix::at(std::size_t row, std::size_t col) const {
    return entries_.at(row * n_ + col);
}

MatrixParity SuperMatrix::parity() const {
    bool any_even = false, any_odd = false;
    for (auto& e : entries_) {
        if (e.is_zero()) continue;
        auto p = e.homogeneous_parity();
        if (!p) return MatrixParity::mixed;
        (*p == Parity::even ? any_even : any_odd) = true;
    }
    if (any_even && any_odd) return MatrixParity::mixed;
    if (any_odd) return MatrixParity::odd;
    return MatrixParity::even;
}

bool SuperMatrix::is_zero() const {
    for (auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

void SuperMatrix::check_compatible(const SuperMatrix& rhs) const {
    if (n_ != rhs.n_) throw SizeMismatch("matrix sizes differ");
    if (registry_ && rhs.registry_ && registry_ != rhs.registry_)
        throw RegistryMismatch("matrices over different registries");
}

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& rhs) {
    check_compatible(rhs);
    if (!registry_) registry_ = rhs.registry_;
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_compatible(b);
    SuperMatrix r(a);
    if (!r.registry_) r.registry_ = b.registry_;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_compatible(b);
    SuperMatrix r(a.n_, a.registry_ ? a.registry_ : b.registry_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t j = 0; j < a.n_; ++j) {
            SuperPolynomial acc;
            for (std::size_t k = 0; k < a.n_; ++k) acc += a.at(i, k) * b.at(k, j);
            r.at(i, j) = std::move(acc);
        }
    return r;
}

SuperMatrix operator*(const Rational& c, SuperMatrix m) {
    for (auto& e : m.entries_) e.scale(c);
    return m;
}

SuperMatrix SuperMatrix::scaled_left(const SuperPolynomial& s) const {
    SuperMatrix r(n_, registry_ ? registry_ : s.registry());
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = s * entries_[i];
    return r;
}

SuperMatrix SuperMatrix::scaled_right(const SuperPolynomial& s) const {
    SuperMatrix r(n_, registry_ ? registry_ : s.registry());
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * s;
    return r;
}

SuperMatrix pow(const SuperMatrix& a, unsigned k) {
    SuperMatrix result = SuperMatrix::identity(a.size(), a.registry());
    SuperMatrix base = a;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

SuperPolynomial trace(const SuperMatrix& a) {
    SuperPolynomial t;
    for (std::size_t i = 0; i < a.size(); ++i) t += a.at(i, i);
    return t;
}

SuperMatrix generic_matrix(GeneratorRegistry& reg, Kind kind, const std::string& label,
                           std::size_t n, bool traceless) {
    SuperMatrix m(n, &reg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (traceless && i == n - 1 && j == n - 1) continue;
            auto name = label + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
            auto idx = reg.add(kind, name);
            m.at(i, j) = SuperPolynomial::generator(reg, kind, idx);
        }
    if (traceless && n > 0) {
        SuperPolynomial last;
        for (std::size_t i = 0; i + 1 < n; ++i) last -= m.at(i, i);
        m.at(n - 1, n - 1) = std::move(last);
    }
    return m;
}

SuperMatrix dynkin_residual(std::size_t n) {
    GeneratorRegistry reg;
    auto xi = generic_matrix(reg, Kind::fermionic, "xi", n);
    reg.freeze();
    SuperMatrix residual = Rational(long(n)) * pow(xi, unsigned(2 * n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        SuperPolynomial t = trace(pow(xi, unsigned(2 * (n - i) - 1)));
        residual = residual - pow(xi, unsigned(2 * i)).scaled_right(t);
    }
    return residual;
}

std::string SuperMatrix::pretty() const {
    std::vector<std::string> cells(entries_.size());
    std::vector<std::size_t> width(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            cells[i * n_ + j] = at(i, j).str();
            width[j] = std::max(width[j], cells[i * n_ + j].size());
        }
    std::ostringstream os;
    for (std::size_t i = 0; i < n_; ++i) {
        os << "[ ";
        for (std::size_t j = 0; j < n_; ++j) {
            const auto& s = cells[i * n_ + j];
            os << s << std::string(width[j] - s.size(), ' ') << (j + 1 < n_ ? "  " : " ");
        }
        os << "]\n";
    }
    return os.str();
}

namespace {
std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}
}  // namespace

std::string SuperMatrix::to_json() const {
    std::ostringstream os;
    const char* par = parity() == MatrixParity::even   ? "even"
                      : parity() == MatrixParity::odd ? "odd"
                                                      : "mixed";
    os << "{\"n\":" << n_ << ",\"parity\":\"" << par << "\",\"entries\":[";
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < n_; ++j)
            os << (j ? "," : "") << '"' << json_escape(at(i, j).str()) << '"';
        os << "]";
    }
    os << "]}";
    return os.str();
}

}  // namespace supertrace::gmatrix
