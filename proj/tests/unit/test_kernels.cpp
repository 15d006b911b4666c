// SPDX-License-Identifier: Apache-2.0

#include "arof/beamforming.hpp"
#include "arof/kernels.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace arof;

TEST_CASE("array factor kernels agree bit for bit")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<cplx> w(2 + static_cast<std::size_t>(u(rng) * 30));
        for (auto &x : w)
            x = std::polar(u(rng), 6.3 * u(rng));
        const auto grid = angle_grid(0.0, 180.0, 0.05 + u(rng));
        std::vector<double> a(grid.size()), b(grid.size());
        const double f = 1e9 + u(rng) * 40e9;
        const double d = 0.001 + u(rng) * 0.05;
        kernels::array_factor_serial(w, f, d, grid, a);
        kernels::array_factor_parallel(w, f, d, grid, b);
        CHECK(a == b);
    }
}

TEST_CASE("pair beat kernels agree bit for bit")
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t n : {0u, 1u, 2u, 7u, 64u, 300u})
    {
        std::vector<SpectralLine> lines(n);
        for (std::size_t i = 0; i < n; ++i)
            lines[i] = {193e12 + 1e9 * static_cast<double>(i) + u(rng) * 1e8, std::polar(u(rng), 6.3 * u(rng))};
        const auto a = kernels::pair_beats_serial(lines, 0.8);
        const auto b = kernels::pair_beats_parallel(lines, 0.8);
        REQUIRE(a.size() == n * (n ? n - 1 : 0) / 2);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            CHECK(a[i].freq == b[i].freq);
            CHECK(a[i].amp == b[i].amp);
            CHECK(a[i].hi == b[i].hi);
            CHECK(a[i].lo == b[i].lo);
            CHECK(a[i].hi > a[i].lo);
            CHECK(a[i].freq == lines[a[i].hi].freq - lines[a[i].lo].freq);
        }
    }
}

TEST_CASE("beam patterns do not depend on the execution policy")
{
    const std::vector<cplx> w{1.0, std::polar(1.0, 0.4), std::polar(1.0, 0.8), std::polar(1.0, 1.2)};
    const auto grid = angle_grid();
    const ArrayGeometry g{4, 0.05};
    const auto a = array_factor(w, 3e9, g, grid, ExecPolicy::serial);
    const auto b = array_factor(w, 3e9, g, grid, ExecPolicy::parallel);
    CHECK(a.magnitude_db == b.magnitude_db);
}
