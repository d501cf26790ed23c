#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "supertrace/superalg.hpp"

namespace supertrace::gmatrix {

using superalg::GeneratorRegistry;
using superalg::Kind;
using superalg::SuperPolynomial;

enum class MatrixParity { even, odd, mixed };

// n x n matrix over the supercommutative algebra of a registry. M_n(C) sits
// totally in degree 0, so entry arithmetic needs no extra matrix-level signs.
class SuperMatrix {
public:
    SuperMatrix() = default;
    SuperMatrix(std::size_t n, const GeneratorRegistry* reg);
    static SuperMatrix identity(std::size_t n, const GeneratorRegistry* reg = nullptr);

    std::size_t size() const { return n_; }
    const GeneratorRegistry* registry() const { return registry_; }
    SuperPolynomial& at(std::size_t row, std::size_t col);
    const SuperPolynomial& at(std::size_t row, std::size_t col) const;

    MatrixParity parity() const;
    bool is_zero() const;
    bool operator==(const SuperMatrix& rhs) const {
        return n_ == rhs.n_ && entries_ == rhs.entries_;
    }

    SuperMatrix& operator+=(const SuperMatrix& rhs);
    friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator*(const Rational& c, SuperMatrix m);

    // Multiplies every entry by the scalar on the indicated side.
    SuperMatrix scaled_left(const SuperPolynomial& s) const;
    SuperMatrix scaled_right(const SuperPolynomial& s) const;

    std::string pretty() const;
    std::string to_json() const;  // {"n":..,"parity":..,"entries":[[...]]}

private:
    void check_compatible(const SuperMatrix& rhs) const;
    std::size_t n_ = 0;
    const GeneratorRegistry* registry_ = nullptr;
    std::vector<SuperPolynomial> entries_;
};

SuperMatrix pow(const SuperMatrix& a, unsigned k);
SuperPolynomial trace(const SuperMatrix& a);

// Allocates n*n fresh generators named <label>_<row>_<col> (n*n - 1 when
// traceless: the last diagonal entry is minus the sum of the others).
SuperMatrix generic_matrix(GeneratorRegistry& reg, Kind kind, const std::string& label,
                           std::size_t n, bool traceless = false);

// Residual of the one-matrix recursion: n*xi^(2n-1) - sum_{i=0}^{n-1} xi^(2i) t_{n-i}
// with t_j = tr(xi^(2j-1)) and xi a fresh generic fermionic matrix of size n.
// Contract: the zero matrix.
SuperMatrix dynkin_residual(std::size_t n);

}  // namespace supertrace::gmatrix
