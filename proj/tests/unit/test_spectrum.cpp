// SPDX-License-Identifier: Apache-2.0

#include "arof/errors.hpp"
#include "arof/spectrum.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace arof;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

// Power series J_n(x) = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!), independent of the library.
double bessel_series(int n, double x)
{
    if (n < 0)
        return (n % 2 ? -1.0 : 1.0) * bessel_series(-n, x);
    long double term = 1.0L;
    for (int i = 1; i <= n; ++i)
        term *= static_cast<long double>(x) / 2.0L / i;
    long double sum = term;
    const long double h2 = static_cast<long double>(x) * x / 4.0L;
    for (int k = 1; k < 60; ++k)
    {
        term *= -h2 / (static_cast<long double>(k) * (k + n));
        sum += term;
    }
    return static_cast<double>(sum);
}

// Expected MZM harmonic coefficient from the series oracle.
double expected_coeff(int q, double x, int bias)
{
    const int a = std::abs(q);
    const double s = 1.0 / std::numbers::sqrt2;
    if (a == 0)
        return s * bessel_series(0, x);
    if (a % 2 == 0)
        return s * ((a / 2) % 2 ? -1.0 : 1.0) * bessel_series(a, x);
    const int n = (a + 1) / 2;
    return bias * s * (n % 2 ? -1.0 : 1.0) * bessel_series(a, x);
}

MzmConfig mzm_at(double x, int order = 5)
{
    MzmConfig c;
    c.v_pi = 1.0;
    c.v_drive = 2.0 * x / std::numbers::pi;
    c.truncation_order = order;
    return c;
}

} // namespace

TEST_CASE("laser_line amplitude is the square root of power")
{
    auto a = laser_line(1.0, 193.500e12);
    REQUIRE(a.size() == 1);
    CHECK(a[0].freq == 193.500e12);
    CHECK(a[0].amp == cplx(1.0, 0.0));

    CHECK(laser_line(4.0, 193.5e12)[0].amp.real() == 2.0);
    CHECK_THAT(laser_line(0.001, 193.525e12)[0].amp.real(), WithinAbs(0.0316228, 5e-8));
    CHECK(laser_line(0.001, 193.525e12)[0].amp.imag() == 0.0);

    CHECK_THROWS_AS(laser_line(0.0, 193.5e12), InvalidInput);
    CHECK_THROWS_AS(laser_line(-1.0, 193.5e12), InvalidInput);
}

TEST_CASE("direct modulation adds half-amplitude sidebands")
{
    const double f0 = 193.5e12;
    const auto carrier = laser_line(1.0, f0);

    SECTION("one tone")
    {
        auto s = direct_modulate(carrier, ToneSet{{3e9}});
        REQUIRE(s.size() == 3);
        CHECK(s[0].freq == f0 - 3e9);
        CHECK(s[0].amp == cplx(0.5));
        CHECK(s[1].amp == cplx(1.0));
        CHECK(s[2].freq == f0 + 3e9);
        CHECK(s[2].amp == cplx(0.5));
    }
    SECTION("no tones is the identity")
    {
        auto s = direct_modulate(carrier, ToneSet{});
        REQUIRE(s.size() == 1);
        CHECK(s[0].amp == cplx(1.0));
    }
    SECTION("three tones give seven lines")
    {
        auto s = direct_modulate(carrier, ToneSet{{3e9, 5e9, 6e9}});
        REQUIRE(s.size() == 7);
        for (double off : {-6e9, -5e9, -3e9, 3e9, 5e9, 6e9})
        {
            const auto *l = s.find(f0 + off);
            REQUIRE(l);
            CHECK(l->amp == cplx(0.5));
        }
        CHECK(s.find(f0)->amp == cplx(1.0));
    }
    SECTION("sidebands inherit the carrier phase")
    {
        auto rotated = carrier.scaled(std::polar(1.0, 0.7));
        auto s = direct_modulate(rotated, ToneSet{{5e9}});
        CHECK_THAT(std::arg(s[0].amp), WithinAbs(0.7, 1e-15));
        CHECK_THAT(std::abs(s[0].amp), WithinAbs(0.5, 1e-15));
    }
    SECTION("tones that reach a neighbouring line are rejected")
    {
        auto two = OpticalSpectrum::from_lines({{f0, 1.0}, {f0 + 10e9, 1.0}});
        CHECK_THROWS_AS(direct_modulate(two, ToneSet{{6e9}}), ToneOverlapError);
        CHECK_NOTHROW(direct_modulate(two, ToneSet{{4e9}}));
    }
    SECTION("invalid tone sets")
    {
        CHECK_THROWS_AS(direct_modulate(carrier, ToneSet{{3e9, 3e9}}), InvalidInput);
        CHECK_THROWS_AS(direct_modulate(carrier, ToneSet{{-1e9}}), InvalidInput);
    }
}

TEST_CASE("MZM harmonic coefficients match the Bessel power series")
{
    for (double x : {0.0, 0.05, 0.1, 0.5, std::numbers::pi / 4, 1.0, std::numbers::pi / 2, 2.5, -0.8})
        for (int bias : {+1, -1})
            for (int q = -8; q <= 8; ++q)
                CHECK_THAT(mzm_harmonic_coefficient(q, x, bias), WithinAbs(expected_coeff(q, x, bias), 1e-14));
}

TEST_CASE("MZM comb at x = pi/2 has the expected magnitudes")
{
    const double f0 = 193.5e12;
    auto comb = mzm_modulate(laser_line(1.0, f0), mzm_at(std::numbers::pi / 2));
    const double want[] = {0.33376, 0.40084, 0.17657, 0.04880};
    for (int q = 0; q <= 3; ++q)
        for (int sign : {-1, 1})
        {
            const auto *l = comb.find(f0 + sign * q * 50e9);
            REQUIRE(l);
            // The quoted values are good to about four decimals (J_1(pi/2)/sqrt(2) = 0.400805).
            CHECK_THAT(std::abs(l->amp), WithinAbs(want[q], 5e-5));
            CHECK_THAT(std::abs(l->amp), WithinRel(std::abs(bessel_series(q, std::numbers::pi / 2)) /
                                                         std::numbers::sqrt2, 1e-12));
        }
    CHECK(comb.size() == 11);
}

TEST_CASE("MZM with zero drive only scales by 1/sqrt(2)")
{
    MzmConfig c;
    c.v_drive = 0.0;
    const auto in = direct_modulate(laser_line(1e-3, 193.5e12), ToneSet{{3e9, 5e9}});
    const auto out = mzm_modulate(in, c);
    REQUIRE(out.size() == in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
    {
        CHECK(out[i].freq == in[i].freq);
        CHECK_THAT(std::abs(out[i].amp - in[i].amp / std::numbers::sqrt2), WithinAbs(0.0, 1e-17));
    }

    SECTION("and commutes with direct modulation")
    {
        const ToneSet tones{{3e9, 5e9, 6e9}};
        const auto a = mzm_modulate(direct_modulate(laser_line(1.0, 193.5e12), tones), c);
        const auto b = direct_modulate(mzm_modulate(laser_line(1.0, 193.5e12), c), tones);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            CHECK(a[i].freq == b[i].freq);
            CHECK_THAT(std::abs(a[i].amp - b[i].amp), WithinAbs(0.0, 1e-16));
        }
    }
}

TEST_CASE("MZM energy bound and truncation check")
{
    for (double x : {0.1, std::numbers::pi / 4, std::numbers::pi / 2})
    {
        const auto in = laser_line(2.0, 193.5e12);
        const auto out = mzm_modulate(in, mzm_at(x));
        // The untruncated output carries half the input power.
        const double deficit = mzm_truncation_deficit(x, 5);
        CHECK(out.total_power() <= in.total_power());
        CHECK(deficit < 1e-6);
        CHECK_THAT(out.total_power(), WithinRel(0.5 * in.total_power() * (1.0 - deficit), 1e-9));
    }
    CHECK(mzm_truncation_deficit(0.0, 1) == 0.0);
    CHECK(mzm_required_order(std::numbers::pi / 2, 1e-6) <= 5);
    CHECK(mzm_required_order(std::numbers::pi / 2, 1e-12) > 5);

    CHECK_THROWS_AS(mzm_modulate(laser_line(1.0, 193.5e12), mzm_at(std::numbers::pi / 2, 1)), RangeError);
    MzmConfig bad;
    bad.v_pi = 0.0;
    CHECK_THROWS_AS(mzm_modulate(laser_line(1.0, 193.5e12), bad), InvalidInput);
    bad = MzmConfig{};
    bad.bias_sign = 0;
    CHECK_THROWS_AS(mzm_modulate(laser_line(1.0, 193.5e12), bad), InvalidInput);
}

TEST_CASE("MZM rejects drives that alias separate input lines")
{
    auto two = OpticalSpectrum::from_lines({{193.5e12, 1.0}, {193.55e12, 1.0}});
    CHECK_THROWS_AS(mzm_modulate(two, mzm_at(1.0)), AliasingError);
    auto offset = OpticalSpectrum::from_lines({{193.5e12, 1.0}, {193.525e12, 1.0}});
    CHECK_NOTHROW(mzm_modulate(offset, mzm_at(1.0)));
}

TEST_CASE("modulation is linear over disjoint channels")
{
    const auto a = laser_line(1.0, 193.500e12);
    const auto b = laser_line(0.25, 193.525e12).scaled(std::polar(1.0, 1.1));
    const auto ab = merge(a, b);
    const ToneSet tones{{3e9, 5e9}};

    const auto lhs = mzm_modulate(direct_modulate(ab, tones), mzm_at(1.2));
    const auto rhs = merge(mzm_modulate(direct_modulate(a, tones), mzm_at(1.2)),
                           mzm_modulate(direct_modulate(b, tones), mzm_at(1.2)));
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i)
    {
        CHECK(lhs[i].freq == rhs[i].freq);
        CHECK_THAT(std::abs(lhs[i].amp - rhs[i].amp), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("coupler scales by 1/sqrt(2) and interleaves the combs")
{
    const auto x = direct_modulate(laser_line(1.0, 193.5e12), ToneSet{{3e9}});
    const auto c = couple(x, OpticalSpectrum{});
    REQUIRE(c.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK_THAT(std::abs(c[i].amp - x[i].amp / std::numbers::sqrt2), WithinAbs(0.0, 1e-15));

    // Each input is scaled by 1/sqrt(2) before the coherent sum: 2A/sqrt(2).
    const auto same = couple(laser_line(1.0, 193.5e12), laser_line(1.0, 193.5e12));
    REQUIRE(same.size() == 1);
    CHECK_THAT(same[0].amp.real(), WithinAbs(std::numbers::sqrt2, 1e-15));

    const auto l1 = mzm_modulate(laser_line(1e-3, 193.500e12), MzmConfig{});
    const auto l2 = mzm_modulate(laser_line(1e-3, 193.525e12), MzmConfig{});
    const auto comb = couple(l1, l2);
    for (std::size_t i = 1; i < comb.size(); ++i)
        CHECK(comb[i].freq - comb[i - 1].freq == 25e9);
    for (int k = 0; k < 8; ++k)
        CHECK(comb.find(193.450e12 + k * 25e9) != nullptr);
}

TEST_CASE("prune_merge")
{
    SECTION("zero threshold keeps everything")
    {
        auto s = prune_merge({{1e12, 1e-30}, {2e12, 1.0}}, 0.0, 10.0);
        CHECK(s.size() == 2);
    }
    SECTION("destructive sum empties the spectrum")
    {
        auto s = prune_merge({{1e12, 0.3}, {1e12 + 1.0, -0.3}}, 0.0, 10.0);
        CHECK(s.empty());
    }
    SECTION("lines below the threshold go")
    {
        auto s = prune_merge({{1e12, 1e-3}, {2e12, 1.0}}, 1e-2, 10.0);
        REQUIRE(s.size() == 1);
        CHECK(s[0].freq == 2e12);
    }
    SECTION("merged line takes the strongest member's frequency")
    {
        auto s = prune_merge({{1e12 + 5.0, 0.1}, {1e12, 1.0}}, 0.0, 10.0);
        REQUIRE(s.size() == 1);
        CHECK(s[0].freq == 1e12);
        CHECK_THAT(s[0].amp.real(), WithinAbs(1.1, 1e-15));
    }
    SECTION("weak high-order harmonics fall below the relative threshold")
    {
        // J_5(0.05)/sqrt(2) ~ 6e-11, below 1e-9 of the carrier; J_4 is not.
        auto comb = mzm_modulate(laser_line(1.0, 193.5e12), mzm_at(0.05));
        CHECK(comb.find(193.5e12 + 5 * 50e9) == nullptr);
        CHECK(comb.find(193.5e12 - 5 * 50e9) == nullptr);
        CHECK(comb.find(193.5e12 + 4 * 50e9) != nullptr);
        CHECK(std::abs(bessel_series(5, 0.05)) / std::numbers::sqrt2 < 1e-9 * comb.max_amplitude());
    }
}

TEST_CASE("spectrum invariants hold for random line sets")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<SpectralLine> lines;
        const int n = static_cast<int>(u(rng) * 30);
        for (int i = 0; i < n; ++i)
            lines.push_back({193e12 + std::floor(u(rng) * 2000) * 1e3 * (u(rng) < 0.5 ? 1.0 : 1e3),
                             std::polar(u(rng) < 0.1 ? 1e-12 : u(rng), 6.0 * u(rng))});
        const auto s = OpticalSpectrum::from_lines(lines);
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            CHECK(std::abs(s[i].amp) >= kRelativePruneThreshold * s.max_amplitude());
            if (i > 0)
                CHECK(s[i].freq - s[i - 1].freq > kMergeToleranceHz);
        }
    }
    CHECK_THROWS_AS(OpticalSpectrum::from_lines({{-1.0, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(OpticalSpectrum::from_lines({{1e12, cplx(NAN, 0)}}), InvalidInput);
}
