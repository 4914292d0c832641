#include <benchmark/benchmark.h>

#include <vector>

#include "polariton/cli.hpp"
#include "polariton/kernels.hpp"

using namespace polariton;

namespace {

std::vector<ProbePoint> probe_grid(int n) {
    std::vector<ProbePoint> q;
    q.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q.push_back({-100.0 + 0.2 * (i - n / 2) / n, 0.05 * (j - n / 2) / n});
    return q;
}

std::vector<double> drift_grid(int n) { return linspace(-5.0, -300.0, n); }

template <auto Kernel>
void chi(benchmark::State& st) {
    const Susceptibility s(ChiModel::Residue, fig3b_params());
    const auto q = probe_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(s, q));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(q.size()));
}

template <auto Kernel>
void quadrature(benchmark::State& st) {
    const ModelParams p = fig3b_params();
    const auto q = probe_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(p, q, QuadOptions{}));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(q.size()));
}

template <auto Kernel>
void resonance(benchmark::State& st) {
    const ModelParams p = fig3b_params();
    const auto d = drift_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(p, d));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(d.size()));
}

}  // namespace

BENCHMARK(chi<serial::chi_grid>)->Name("chi_grid/serial")->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(chi<omp::chi_grid>)->Name("chi_grid/omp")->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(quadrature<serial::quadrature_grid>)->Name("quadrature_grid/serial")->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(quadrature<omp::quadrature_grid>)->Name("quadrature_grid/omp")->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(resonance<serial::resonance_sweep>)->Name("resonance_sweep/serial")->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(resonance<omp::resonance_sweep>)->Name("resonance_sweep/omp")->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
