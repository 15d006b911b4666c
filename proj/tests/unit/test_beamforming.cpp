// SPDX-License-Identifier: Apache-2.0

#include "arof/beamforming.hpp"
#include "arof/errors.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace arof;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr double kPi = std::numbers::pi;
const double kD1 = kSpeedOfLight / (2.0 * 3e9);
const double kD2 = kSpeedOfLight / (2.0 * 28e9);

std::vector<double> linear_delays(std::size_t n, double inc)
{
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k)
        d[k] = static_cast<double>(k) * inc;
    return d;
}

BeamPattern ttd_pattern(std::size_t n, double inc, double freq, double spacing, double step = kDefaultAngleStep)
{
    const auto w = ttd_weights(linear_delays(n, inc), freq);
    return array_factor(w, freq, ArrayGeometry{n, spacing}, angle_grid(0.0, 180.0, step));
}

// Independent array factor: element k at -k d sees exp(-j 2 pi f k d cos(theta) / c).
double oracle_af(std::span<const cplx> w, double freq, double spacing, double theta_deg)
{
    cplx acc = 0.0;
    const double u = std::cos(theta_deg * kPi / 180.0);
    for (std::size_t k = 0; k < w.size(); ++k)
        acc += w[k] * std::polar(1.0, -2.0 * kPi * freq * static_cast<double>(k) * spacing * u / kSpeedOfLight);
    return std::abs(acc);
}

double closed_form_angle(double inc, double spacing)
{
    return std::acos(-kSpeedOfLight * inc / spacing) * 180.0 / kPi;
}

} // namespace

TEST_CASE("angle grid")
{
    const auto g = angle_grid(0.0, 180.0, 0.01);
    CHECK(g.size() == 18001);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 180.0);
    CHECK(angle_grid(0.0, 1.0, 0.3).size() == 4);
    CHECK_THROWS_AS(angle_grid(0.0, 180.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(angle_grid(10.0, 5.0, 1.0), InvalidInput);
}

TEST_CASE("array factor matches a direct sum")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto grid = angle_grid(0.0, 180.0, 0.5);
    for (int trial = 0; trial < 40; ++trial)
    {
        const std::size_t n = 2 + static_cast<std::size_t>(u(rng) * 10);
        std::vector<cplx> w(n);
        for (auto &x : w)
            x = std::polar(0.2 + u(rng), 2 * kPi * u(rng));
        const double freq = 1e9 + u(rng) * 40e9;
        const double spacing = 0.002 + u(rng) * 0.1;
        const auto p = array_factor(w, freq, ArrayGeometry{n, spacing}, grid);
        double peak = 0.0;
        for (double a : grid)
            peak = std::max(peak, oracle_af(w, freq, spacing, a));
        REQUIRE(p.magnitude_db.size() == grid.size());
        CHECK(*std::max_element(p.magnitude_db.begin(), p.magnitude_db.end()) == 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double want = oracle_af(w, freq, spacing, grid[i]) / peak;
            if (want > 1e-12)
                CHECK_THAT(p.magnitude_db[i], WithinAbs(20.0 * std::log10(want), 1e-9));
            else
                CHECK(p.magnitude_db[i] <= -200.0);
        }
    }
}

TEST_CASE("broadside and steered peaks")
{
    SECTION("zero delay points broadside, pattern symmetric")
    {
        const auto p = ttd_pattern(4, 0.0, 3e9, kD1);
        const auto r = peak_angle(p);
        CHECK_THAT(r.peak_angle, WithinAbs(90.0, 1e-9));
        for (std::size_t i = 0; i < p.angles_deg.size(); ++i)
            CHECK_THAT(p.magnitude_db[i], WithinAbs(p.magnitude_db[p.angles_deg.size() - 1 - i], 1e-9));
    }
    SECTION("sub-6 reference increment")
    {
        const double inc = 155.2e-12;
        const auto r = peak_angle(ttd_pattern(4, inc, 3e9, kD1));
        CHECK_THAT(r.peak_angle, WithinAbs(closed_form_angle(inc, kD1), 0.01));
        CHECK_THAT(r.peak_angle, WithinAbs(158.5, 0.5));
    }
    SECTION("sub-6 at the widest chirp")
    {
        const auto r = peak_angle(ttd_pattern(4, 26.8e-12, 3e9, kD1));
        CHECK_THAT(r.peak_angle, WithinAbs(99.25, 0.02));
    }
    SECTION("same angle on both arrays when increments scale with spacing")
    {
        const double inc1 = 94.73e-12;
        const double inc2 = inc1 * kD2 / kD1;
        const auto a = peak_angle(ttd_pattern(4, inc1, 3e9, kD1));
        const auto b = peak_angle(ttd_pattern(4, inc2, 28e9, kD2), a.peak_angle);
        CHECK_THAT(a.peak_angle, WithinAbs(124.7, 0.1));
        CHECK_THAT(b.peak_angle, WithinAbs(a.peak_angle, 0.01));
    }
    SECTION("4-element half-wave main lobe is about 26 degrees wide at broadside")
    {
        const auto r = peak_angle(ttd_pattern(4, 0.0, 3e9, kD1));
        CHECK_THAT(r.peak_width_3db, WithinAbs(26.3, 0.5));
        CHECK_THAT(r.sidelobe_level_db, WithinAbs(-11.3, 0.3));
    }
}

TEST_CASE("peak angle follows the steering law")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 60; ++trial)
    {
        const double freq = trial % 2 ? 3e9 : 28e9;
        const double d = kSpeedOfLight / (2.0 * freq);
        const double inc = 0.95 * u(rng) * d / kSpeedOfLight;
        const auto r = peak_angle(ttd_pattern(4, inc, freq, d));
        CHECK_THAT(r.peak_angle, WithinAbs(closed_form_angle(inc, d), 0.01));
        CHECK(steering_angle(inc, d).has_value());
        CHECK_THAT(*steering_angle(inc, d), WithinAbs(closed_form_angle(inc, d), 1e-12));
    }
}

TEST_CASE("negated delays mirror the beam about broadside")
{
    for (double inc : {12e-12, 47e-12, 120e-12})
    {
        const auto a = peak_angle(ttd_pattern(4, inc, 3e9, kD1));
        const auto b = peak_angle(ttd_pattern(4, -inc, 3e9, kD1));
        CHECK_THAT(a.peak_angle + b.peak_angle, WithinAbs(180.0, 1e-6));
    }
}

TEST_CASE("true time delay steers every frequency the same way")
{
    const double inc = 13.0e-12;
    const double want = closed_form_angle(inc, kD2);
    for (double f : {24e9, 26e9, 28e9, 30e9, 31e9, 34e9})
    {
        // Above 28 GHz the spacing exceeds half a wavelength; name the intended lobe.
        const auto r = peak_angle(ttd_pattern(4, inc, f, kD2), want);
        CHECK_THAT(r.peak_angle, WithinAbs(want, 0.05));
    }
}

TEST_CASE("degenerate patterns and bad input")
{
    const auto grid = angle_grid(0.0, 180.0, 1.0);
    const std::vector<cplx> single{1.0, 0.0, 0.0, 0.0};
    const auto flat = array_factor(single, 3e9, ArrayGeometry{4, kD1}, grid);
    CHECK_THROWS_AS(peak_angle(flat), NoPeakError);

    const std::vector<cplx> three{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(array_factor(three, 3e9, ArrayGeometry{4, kD1}, grid), InvalidInput);
    const std::vector<cplx> four(4, 1.0);
    CHECK_THROWS_AS(array_factor(four, 0.0, ArrayGeometry{4, kD1}, grid), InvalidInput);
    CHECK_THROWS_AS(array_factor(four, 3e9, ArrayGeometry{4, 0.0}, grid), InvalidInput);
    CHECK_THROWS_AS(array_factor(four, 3e9, ArrayGeometry{4, kD1}, std::vector<double>{}), InvalidInput);
    CHECK_THROWS_AS(array_factor(four, 3e9, ArrayGeometry{4, kD1}, std::vector<double>{10.0, 5.0}),
                    InvalidInput);
    CHECK_THROWS_AS(ArrayGeometry::half_wavelength(1, 3e9).validate(), InvalidInput);
    CHECK_THAT(ArrayGeometry::half_wavelength(4, 3e9).spacing, WithinRel(kD1, 1e-15));
}

TEST_CASE("steering angle outside the visible region")
{
    CHECK_FALSE(steering_angle(1.01 * kD1 / kSpeedOfLight, kD1).has_value());
    CHECK_FALSE(steering_angle(-1.01 * kD1 / kSpeedOfLight, kD1).has_value());
    REQUIRE(steering_angle(kD1 / kSpeedOfLight, kD1).has_value());
    CHECK_THAT(*steering_angle(kD1 / kSpeedOfLight, kD1), WithinAbs(180.0, 1e-4));
    CHECK_THAT(*steering_angle(0.0, kD1), WithinAbs(90.0, 1e-12));
}

TEST_CASE("grating lobes resolve toward the expected angle")
{
    // Two wavelengths spacing: equal lobes at 60, 90 and 120 degrees for zero delay.
    const double d = 2.0 * kSpeedOfLight / 28e9;
    const auto p = ttd_pattern(4, 0.0, 28e9, d, 0.01);
    CHECK_THAT(peak_angle(p, 118.0).peak_angle, WithinAbs(120.0, 1e-6));
    CHECK_THAT(peak_angle(p, 61.0).peak_angle, WithinAbs(60.0, 1e-6));
    CHECK_THAT(peak_angle(p, 95.0).peak_angle, WithinAbs(90.0, 1e-6));
    CHECK(peak_angle(p).peak_angle < 60.0 + 1e-6);
}

TEST_CASE("delay increment is the least-squares slope")
{
    CHECK(delay_increment(linear_delays(4, 0.0)) == 0.0);
    CHECK_THAT(delay_increment(linear_delays(4, 17e-12)), WithinRel(17e-12, 1e-14));
    const std::vector<double> noisy{0.0, 11e-12, 19e-12, 31e-12};
    CHECK_THAT(delay_increment(noisy), WithinRel(10.1e-12, 1e-12));
    CHECK_THROWS_AS(delay_increment(std::vector<double>{1.0}), InvalidInput);
}

TEST_CASE("beam squint: true time delay against frozen phase shifts")
{
    const auto geom = ArrayGeometry::half_wavelength(4, 28e9);
    const auto delays = linear_delays(4, 16.6e-12);
    const std::vector<double> freqs{28e9, 30e9, 31e9};
    const auto grid = angle_grid();

    const auto ttd = squint_metric(geom, delays, 28e9, freqs, SquintMode::ttd, grid);
    CHECK(ttd.max_spread <= 0.1);
    for (const auto &e : ttd.entries)
        CHECK_THAT(e.peak_angle, WithinAbs(ttd.design_angle, 0.05));

    const auto ps = squint_metric(geom, delays, 28e9, freqs, SquintMode::phase_shift, grid);
    CHECK_THAT(ps.design_angle, WithinAbs(ttd.design_angle, 1e-9));
    CHECK_THAT(ps.entries[0].peak_angle, WithinAbs(ps.design_angle, 0.01));
    // Frozen phases: cos(theta_f) = cos(theta_0) * f0 / f.
    const double c0 = std::cos(ps.design_angle * kPi / 180.0);
    for (const auto &e : ps.entries)
        CHECK_THAT(e.peak_angle, WithinAbs(std::acos(c0 * 28e9 / e.freq) * 180.0 / kPi, 0.02));
    CHECK(ps.max_spread > 5.0);

    SECTION("evaluation at the design frequency only")
    {
        const std::vector<double> only{28e9};
        for (auto mode : {SquintMode::ttd, SquintMode::phase_shift})
            CHECK(squint_metric(geom, delays, 28e9, only, mode, grid).max_spread == 0.0);
    }
}

TEST_CASE("squint of the reference mmWave beam")
{
    // mmWave increment produced by the reference chain.
    const double inc = 16.627e-12;
    const auto geom = ArrayGeometry::half_wavelength(4, 28e9);
    const std::vector<double> freqs{28e9, 30e9, 31e9};
    const auto ps = squint_metric(geom, linear_delays(4, inc), 28e9, freqs, SquintMode::phase_shift, angle_grid());
    CHECK_THAT(ps.design_angle, WithinAbs(158.57, 0.05));
    CHECK_THAT(ps.entries[2].peak_angle, WithinAbs(147.2, 0.1));
    CHECK_THAT(ps.design_angle - ps.entries[2].peak_angle, WithinAbs(11.3, 0.1));
}

TEST_CASE("squint flags beams pushed out of the visible region")
{
    // Design near endfire; frozen phases at a lower frequency ask for |cos| > 1.
    const auto geom = ArrayGeometry::half_wavelength(4, 28e9);
    const auto delays = linear_delays(4, 0.98 * geom.spacing / kSpeedOfLight);
    const std::vector<double> freqs{28e9, 20e9};
    const auto ps = squint_metric(geom, delays, 28e9, freqs, SquintMode::phase_shift, angle_grid());
    CHECK_FALSE(ps.entries[0].out_of_range);
    CHECK(ps.entries[1].out_of_range);

    CHECK_THROWS_AS(squint_metric(geom, delays, 28e9, std::vector<double>{}, SquintMode::ttd, angle_grid()),
                    InvalidInput);
    CHECK_THROWS_AS(squint_metric(geom, delays, 0.0, freqs, SquintMode::ttd, angle_grid()), InvalidInput);
}
