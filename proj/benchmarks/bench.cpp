#include <benchmark/benchmark.h>

#include "supertrace/identities.hpp"
#include "supertrace/qindex.hpp"

using namespace supertrace;
using superalg::GeneratorRegistry;
using superalg::Kind;

static void BM_MatrixPower(benchmark::State& state) {
    auto n = std::size_t(state.range(0));
    GeneratorRegistry reg;
    auto xi = gmatrix::generic_matrix(reg, Kind::fermionic, "xi", n);
    for (auto _ : state) {
        auto p = gmatrix::pow(xi, unsigned(2 * n - 1));
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_MatrixPower)->Arg(2)->Arg(3);

static void BM_EncodePhi(benchmark::State& state) {
    auto perms = freetrace::Perm::all(7);
    std::size_t i = 0;
    for (auto _ : state) {
        auto phi = freetrace::encode_phi(perms[i % perms.size()], 3, 4);
        benchmark::DoNotOptimize(phi);
        ++i;
    }
}
BENCHMARK(BM_EncodePhi);

static void BM_GenT(benchmark::State& state) {
    int n = int(state.range(0));
    for (auto _ : state) {
        auto t = identities::gen_T(0, n + 1, n);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_GenT)->Arg(2)->Arg(3);

static void BM_RelationRank(benchmark::State& state) {
    for (auto _ : state) {
        auto r = identities::relation_rank(4, 2, 2, 2);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_RelationRank);

static void BM_MolienWeyl(benchmark::State& state) {
    int n = int(state.range(0));
    for (auto _ : state) {
        auto s = qindex::molien_weyl_index(n, 6);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_MolienWeyl)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
