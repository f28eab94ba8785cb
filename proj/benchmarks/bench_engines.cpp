#include "coindiff/graph.hpp"
#include "coindiff/realize.hpp"
#include "coindiff/series.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace coindiff;

namespace {

Decomposition triangular(Family f, unsigned rank) {
    return Decomposition::triangular(std::make_shared<const LieSuperAlgebra>(build_simply_laced(f, rank)));
}

std::uint32_t top_generator(const Decomposition& d) {
    const auto& alg = d.algebra();
    std::uint32_t best = 0;
    for (std::uint32_t i = 0; i < alg.dim(); ++i)
        if (*alg.element(i).degree > *alg.element(best).degree) best = i;
    return best;
}

void BM_SeriesTopGenerator(benchmark::State& state) {
    const auto d = triangular(Family::D, static_cast<unsigned>(state.range(0)));
    const auto g = top_generator(d);
    const unsigned t = d.algebra().depth() + d.algebra().max_degree();
    for (auto _ : state) benchmark::DoNotOptimize(phi_h_subalgebra(d, Vector::basis(g), t));
}
BENCHMARK(BM_SeriesTopGenerator)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GraphTopGenerator(benchmark::State& state) {
    const auto d = triangular(Family::D, static_cast<unsigned>(state.range(0)));
    const ActionGraph graph(d);
    const auto g = top_generator(d);
    for (auto _ : state) benchmark::DoNotOptimize(path_integral(graph, g));
}
BENCHMARK(BM_GraphTopGenerator)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_E6DegreeOneStats(benchmark::State& state) {
    const auto d = triangular(Family::E, 6);
    const ActionGraph graph(d);
    std::vector<std::uint32_t> gens;
    for (std::uint32_t i = 0; i < d.algebra().dim(); ++i)
        if (*d.algebra().element(i).degree == 1) gens.push_back(i);
    for (auto _ : state)
        benchmark::DoNotOptimize(path_integrals(graph, gens, {}, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_E6DegreeOneStats)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);

void BM_CoinducedCommutatorD4(benchmark::State& state) {
    const auto d = triangular(Family::D, 4);
    const auto rep = HRepresentation::symbolic_character(d);
    const auto g = top_generator(d);
    auto pa = phi_h_subalgebra(d, Vector::basis(g), 10);
    auto pb = phi_h_subalgebra(d, Vector::basis(0), 10);
    const auto a = coinduced_operator(d, pa.phi, pa.h, rep);
    const auto b = coinduced_operator(d, pb.phi, pb.h, rep);
    for (auto _ : state) benchmark::DoNotOptimize(supercommutator(a, b));
}
BENCHMARK(BM_CoinducedCommutatorD4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
