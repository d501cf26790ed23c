#include <doctest.h>

#include <random>

#include "supertrace/identities.hpp"

// Cross-module checks: evaluation into generic matrices is a trace-preserving
// homomorphism of superalgebras, and substitution commutes with it.

using namespace supertrace;
using namespace supertrace::identities;
using freetrace::bos;
using freetrace::fer;
using freetrace::TraceExpression;
using freetrace::Word;
using gmatrix::SuperMatrix;
using superalg::GeneratorRegistry;
using superalg::Kind;

namespace {

std::mt19937& rng() {
    static std::mt19937 r(777);
    return r;
}

Word random_word(int maxlen) {
    std::uniform_int_distribution<int> len(1, maxlen), pick(0, 3);
    Word w;
    int l = len(rng());
    for (int i = 0; i < l; ++i) {
        int v = pick(rng());
        w.push_back(v < 2 ? bos(v + 1) : fer(v - 1));
    }
    return w;
}

TraceExpression random_expr() {
    std::uniform_int_distribution<int> nterms(1, 3), coeff(-2, 2), nfact(0, 2), with_outer(0, 1);
    TraceExpression e;
    for (int t = 0; t < nterms(rng()); ++t) {
        std::vector<Word> factors;
        for (int k = 0; k < nfact(rng()); ++k) factors.push_back(random_word(3));
        Word outer = with_outer(rng()) ? random_word(3) : Word{};
        e += TraceExpression::term(factors, outer, Rational(coeff(rng())));
    }
    return e;
}

struct Fixture {
    GeneratorRegistry reg;
    Assignment assignment;
    Fixture() {
        assignment.emplace(bos(1), gmatrix::generic_matrix(reg, Kind::bosonic, "a", 2));
        assignment.emplace(bos(2), gmatrix::generic_matrix(reg, Kind::bosonic, "b", 2));
        assignment.emplace(fer(1), gmatrix::generic_matrix(reg, Kind::fermionic, "c", 2));
        assignment.emplace(fer(2), gmatrix::generic_matrix(reg, Kind::fermionic, "d", 2));
        reg.freeze();
    }
};

}  // namespace

TEST_CASE("evaluation is multiplicative") {
    Fixture fx;
    for (int t = 0; t < 40; ++t) {
        auto a = random_expr(), b = random_expr();
        auto lhs = evaluate_matrix(a * b, fx.assignment, 2);
        auto rhs = evaluate_matrix(a, fx.assignment, 2) * evaluate_matrix(b, fx.assignment, 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluation intertwines the formal and matrix traces") {
    Fixture fx;
    for (int t = 0; t < 40; ++t) {
        auto a = random_expr();
        auto lhs = evaluate_scalar(a.traced(), fx.assignment, 2);
        auto rhs = gmatrix::trace(evaluate_matrix(a, fx.assignment, 2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("substitution commutes with evaluation") {
    Fixture fx;
    for (int t = 0; t < 40; ++t) {
        auto a = random_expr();
        // replace x1 by an odd word in the remaining variables
        Word repl_word;
        repl_word.push_back(fer(2));
        if (t % 2) repl_word.push_back(bos(1));
        auto repl = TraceExpression::from_word(repl_word);
        auto substituted = a.substituted(fer(1), repl);
        Assignment moved = fx.assignment;
        moved.erase(fer(1));
        moved.emplace(fer(1), evaluate_matrix(repl, fx.assignment, 2));
        auto lhs = evaluate_matrix(substituted, fx.assignment, 2);
        auto rhs = evaluate_matrix(a, moved, 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("the formal trace axioms hold under evaluation") {
    Fixture fx;
    for (int t = 0; t < 30; ++t) {
        // t(ab) = (-1)^{d(a)d(b)} t(ba) for homogeneous words
        Word wa = random_word(3), wb = random_word(3);
        auto a = TraceExpression::from_word(wa), b = TraceExpression::from_word(wb);
        int s = (freetrace::word_parity(wa) == Parity::odd &&
                 freetrace::word_parity(wb) == Parity::odd)
                    ? -1
                    : 1;
        auto lhs = evaluate_scalar((a * b).traced(), fx.assignment, 2);
        auto rhs = evaluate_scalar((b * a).traced(), fx.assignment, 2);
        CHECK(lhs == Rational(s) * rhs);
        // t(t(a) b) = t(a) t(b)
        auto lhs2 = evaluate_scalar((a.traced() * b).traced(), fx.assignment, 2);
        auto rhs2 = evaluate_scalar(a.traced() * b.traced(), fx.assignment, 2);
        CHECK(lhs2 == rhs2);
    }
}
