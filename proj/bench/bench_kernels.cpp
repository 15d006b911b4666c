// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels against their OpenMP versions.

#include "arof/beamforming.hpp"
#include "arof/kernels.hpp"

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

namespace
{

std::vector<arof::cplx> weights(std::size_t n)
{
    std::vector<arof::cplx> w(n);
    for (std::size_t k = 0; k < n; ++k)
        w[k] = std::polar(1.0, 0.37 * static_cast<double>(k));
    return w;
}

std::vector<arof::SpectralLine> comb(std::size_t n)
{
    std::vector<arof::SpectralLine> lines(n);
    for (std::size_t i = 0; i < n; ++i)
        lines[i] = {193.0e12 + 1.0e9 * static_cast<double>(i), std::polar(1.0, 0.11 * static_cast<double>(i))};
    return lines;
}

template <bool Parallel>
void bm_array_factor(benchmark::State &state)
{
    const auto w = weights(static_cast<std::size_t>(state.range(0)));
    const auto grid = arof::angle_grid(0.0, 180.0, 0.01);
    std::vector<double> out(grid.size());
    for (auto _ : state)
    {
        if constexpr (Parallel)
            arof::kernels::array_factor_parallel(w, 28e9, 0.005, grid, out);
        else
            arof::kernels::array_factor_serial(w, 28e9, 0.005, grid, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

template <bool Parallel>
void bm_pair_beats(benchmark::State &state)
{
    const auto lines = comb(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
    {
        auto beats = Parallel ? arof::kernels::pair_beats_parallel(lines, 1.0)
                              : arof::kernels::pair_beats_serial(lines, 1.0);
        benchmark::DoNotOptimize(beats.data());
    }
}

} // namespace

BENCHMARK(bm_array_factor<false>)->Arg(4)->Arg(64);
BENCHMARK(bm_array_factor<true>)->Arg(4)->Arg(64);
BENCHMARK(bm_pair_beats<false>)->Arg(64)->Arg(1024);
BENCHMARK(bm_pair_beats<true>)->Arg(64)->Arg(1024);

BENCHMARK_MAIN();
