#include <doctest.h>

#include <json.hpp>
#include <random>

#include "supertrace/gmatrix.hpp"

using namespace supertrace;
using namespace supertrace::gmatrix;
using superalg::GeneratorRegistry;
using superalg::Kind;

namespace {

// oracle: the same product written out as an explicit index sum
SuperMatrix product_by_index_sums(const std::vector<SuperMatrix>& factors) {
    std::size_t n = factors.front().size();
    SuperMatrix out(n, factors.front().registry());
    std::vector<std::size_t> idx(factors.size() + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            SuperPolynomial acc;
            // sum over all intermediate index paths i -> k1 -> ... -> j
            std::vector<std::size_t> path(factors.size() + 1);
            path.front() = i;
            path.back() = j;
            auto rec = [&](auto&& self, std::size_t pos) -> void {
                if (pos + 1 == factors.size()) {
                    SuperPolynomial term = SuperPolynomial::constant(1);
                    for (std::size_t t = 0; t < factors.size(); ++t)
                        term = term * factors[t].at(path[t], path[t + 1]);
                    acc += term;
                    return;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    path[pos + 1] = k;
                    self(self, pos + 1);
                }
            };
            if (factors.size() == 1) {
                acc = factors[0].at(i, j);
            } else {
                rec(rec, 0);
            }
            out.at(i, j) = acc;
        }
    return out;
}

SuperMatrix random_homogeneous(std::mt19937& rng, GeneratorRegistry& reg, std::size_t n, Kind kind,
                               const std::string& tag) {
    // random +-1/0 combinations of fresh generators of one parity
    SuperMatrix m(n, &reg);
    std::uniform_int_distribution<int> coeff(-1, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto id = reg.add(kind, tag + "_" + std::to_string(i) + "_" + std::to_string(j));
            m.at(i, j) = Rational(coeff(rng)) * SuperPolynomial::generator(reg, kind, id);
        }
    return m;
}

}  // namespace

TEST_CASE("identity and powers") {
    GeneratorRegistry reg;
    auto a = generic_matrix(reg, Kind::bosonic, "a", 2);
    CHECK(a * SuperMatrix::identity(2, &reg) == a);
    CHECK(pow(a, 0) == SuperMatrix::identity(2, &reg));
    CHECK(pow(a, 3) == a * a * a);
    CHECK(trace(SuperMatrix::identity(3)) == SuperPolynomial::constant(3));
}

TEST_CASE("matmul agrees with the index-sum oracle") {
    GeneratorRegistry reg;
    auto xi = generic_matrix(reg, Kind::fermionic, "xi", 2);
    auto cubed = product_by_index_sums({xi, xi, xi});
    CHECK(pow(xi, 3) == cubed);
    CHECK_FALSE(cubed.is_zero());  // xi^(2n-1) does not vanish
}

TEST_CASE("one fermionic matrix: even traces and the top power vanish") {
    for (std::size_t n = 1; n <= 3; ++n) {
        GeneratorRegistry reg;
        auto xi = generic_matrix(reg, Kind::fermionic, "xi", n);
        for (std::size_t k = 1; k <= n + 1; ++k) CHECK(trace(pow(xi, unsigned(2 * k))).is_zero());
        CHECK(pow(xi, unsigned(2 * n)).is_zero());
        CHECK_FALSE(pow(xi, unsigned(2 * n - 1)).is_zero());
    }
}

TEST_CASE("generic matrix shapes") {
    GeneratorRegistry reg;
    auto one = generic_matrix(reg, Kind::fermionic, "a", 1);
    CHECK(one.size() == 1);
    CHECK(one.parity() == MatrixParity::odd);

    auto t = generic_matrix(reg, Kind::fermionic, "b", 2, /*traceless=*/true);
    CHECK(trace(t).is_zero());
    CHECK(t.at(1, 1) == -t.at(0, 0));
    CHECK(reg.count(Kind::fermionic) == 1 + 3);  // n^2 - 1 fresh generators for the traceless one

    auto full = generic_matrix(reg, Kind::fermionic, "c", 3);
    CHECK(reg.count(Kind::fermionic) == 4 + 9);
    CHECK_FALSE(trace(full).is_zero());
    CHECK_THROWS_AS(generic_matrix(reg, Kind::fermionic, "c", 2), LabelReused);
}

TEST_CASE("graded trace symmetry tr(AB) = +-tr(BA)") {
    std::mt19937 rng(11);
    for (int t = 0; t < 12; ++t) {
        GeneratorRegistry reg;
        std::size_t n = 1 + (t % 3);
        Kind ka = (t & 1) ? Kind::fermionic : Kind::bosonic;
        Kind kb = (t & 2) ? Kind::fermionic : Kind::bosonic;
        auto a = random_homogeneous(rng, reg, n, ka, "a");
        auto b = random_homogeneous(rng, reg, n, kb, "b");
        int s = (ka == Kind::fermionic && kb == Kind::fermionic) ? -1 : 1;
        CHECK(trace(a * b) == Rational(s) * trace(b * a));
    }
}

TEST_CASE("trace recursion residual vanishes") {
    CHECK(dynkin_residual(1).is_zero());
    CHECK(dynkin_residual(2).is_zero());
}

TEST_CASE("shape errors") {
    GeneratorRegistry r1, r2;
    auto a = generic_matrix(r1, Kind::bosonic, "a", 2);
    auto b = generic_matrix(r1, Kind::bosonic, "b", 3);
    auto c = generic_matrix(r2, Kind::bosonic, "c", 2);
    CHECK_THROWS_AS(a * b, SizeMismatch);
    CHECK_THROWS_AS(a + b, SizeMismatch);
    CHECK_THROWS_AS(a * c, RegistryMismatch);
}

TEST_CASE("json export is well formed and entries parse back") {
    GeneratorRegistry reg;
    auto xi = generic_matrix(reg, Kind::fermionic, "xi", 2);
    auto sq = pow(xi, 2);
    auto j = nlohmann::json::parse(sq.to_json());
    CHECK(j["n"] == 2);
    CHECK(j["parity"] == "even");
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0].size() == 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            auto text = j["entries"][r][c].get<std::string>();
            CHECK(SuperPolynomial::parse(text, reg) == sq.at(r, c));
        }
    CHECK(xi.pretty().find("f[xi_1_2]") != std::string::npos);
}
