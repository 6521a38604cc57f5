#include <benchmark/benchmark.h>

#include <gmmp/hom_ext.hpp>
#include <gmmp/massey.hpp>
#include <gmmp/parser.hpp>

using namespace gmmp;

namespace {

RingPtr ring4() { return PolyRing::free_ring({"x0", "x1", "x2", "x3"}); }

std::vector<Polynomial> det_gens(const RingPtr& r) {
    std::vector<Polynomial> out;
    for (const char* s : {"x1^2 - x0*x2", "x0*x1 - x2^2", "x0^2 - x1*x2", "x2^4 - x1*x3^3",
                          "x1*x2^3 - x0*x3^3", "x0*x2^3 - x2*x3^3"})
        out.push_back(parse_poly(s, r));
    return out;
}

void bm_groebner(benchmark::State& state) {
    auto r = ring4();
    auto gens = det_gens(r);
    for (auto _ : state) {
        auto gb = buchberger_ideal(r, gens);
        benchmark::DoNotOptimize(gb.gens().size());
    }
}
BENCHMARK(bm_groebner)->Unit(benchmark::kMillisecond);

void bm_resolution(benchmark::State& state) {
    auto r = ring4();
    auto spec = ModuleSpec::cyclic(r, det_gens(r));
    for (auto _ : state) {
        auto res = minimal_resolution(spec, 3);
        benchmark::DoNotOptimize(res.length());
    }
}
BENCHMARK(bm_resolution)->Unit(benchmark::kMillisecond);

void bm_ext_basis(benchmark::State& state) {
    auto r = ring4();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, det_gens(r)), 3);
    for (auto _ : state) {
        auto ext = ExtBasis::compute(res);
        benchmark::DoNotOptimize(ext.dim1());
    }
}
BENCHMARK(bm_ext_basis)->Unit(benchmark::kMillisecond);

void bm_cup_table(benchmark::State& state) {
    auto r = ring4();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, det_gens(r)), 3);
    auto ext = ExtBasis::compute(res);
    MasseyEngine eng(ext, MasseyEngine::tangent_ring(ext.dim1()));
    for (auto _ : state) {
        auto values = eng.cup_table();
        benchmark::DoNotOptimize(values.size());
    }
}
BENCHMARK(bm_cup_table)->Unit(benchmark::kMillisecond);

void bm_restricted_hull(benchmark::State& state) {
    auto r = ring4();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, det_gens(r)), 3);
    auto ext = ExtBasis::compute(res);
    auto sub = ext.restricted({22, 23, 24});
    MasseyEngine eng(sub, MasseyEngine::tangent_ring(3));
    for (auto _ : state) {
        auto ra = eng.compute_hull(5);
        benchmark::DoNotOptimize(ra.stabilized);
    }
}
BENCHMARK(bm_restricted_hull)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
