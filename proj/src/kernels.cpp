// SPDX-License-Identifier: Apache-2.0

#include "arof/kernels.hpp"

#include "arof/delay.hpp"
#include "arof/errors.hpp"

#include <cmath>
#include <numbers>

namespace arof::kernels
{
namespace
{

inline double af_point(std::span<const cplx> w, double k0d, double angle_deg)
{
    const double u = std::cos(angle_deg * std::numbers::pi / 180.0);
    const double step = -k0d * u;
    cplx sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
        sum += w[k] * std::polar(1.0, step * static_cast<double>(k));
    return std::abs(sum);
}

void check_sizes(std::span<const double> angles, std::span<double> out)
{
    if (angles.size() != out.size())
        throw InvalidInput("array factor output size does not match the angle grid");
}

inline std::size_t pair_index(std::size_t hi, std::size_t lo) { return hi * (hi - 1) / 2 + lo; }

} // namespace

void array_factor_serial(std::span<const cplx> weights, double freq, double spacing,
                         std::span<const double> angles_deg, std::span<double> out)
{
    check_sizes(angles_deg, out);
    const double k0d = 2.0 * std::numbers::pi * freq * spacing / kSpeedOfLight;
    for (std::size_t i = 0; i < angles_deg.size(); ++i)
        out[i] = af_point(weights, k0d, angles_deg[i]);
}

void array_factor_parallel(std::span<const cplx> weights, double freq, double spacing,
                           std::span<const double> angles_deg, std::span<double> out)
{
    check_sizes(angles_deg, out);
    const double k0d = 2.0 * std::numbers::pi * freq * spacing / kSpeedOfLight;
    const auto n = static_cast<std::int64_t>(angles_deg.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = af_point(weights, k0d, angles_deg[i]);
}

std::vector<Beat> pair_beats_serial(std::span<const SpectralLine> lines, double responsivity)
{
    const std::size_t n = lines.size();
    std::vector<Beat> out(n < 2 ? 0 : n * (n - 1) / 2);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            out[pair_index(i, j)] = {lines[i].freq - lines[j].freq,
                                     2.0 * responsivity * lines[i].amp * std::conj(lines[j].amp),
                                     static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    return out;
}

std::vector<Beat> pair_beats_parallel(std::span<const SpectralLine> lines, double responsivity)
{
    const std::size_t n = lines.size();
    std::vector<Beat> out(n < 2 ? 0 : n * (n - 1) / 2);
    const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t ii = 1; ii < rows; ++ii)
    {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < i; ++j)
            out[pair_index(i, j)] = {lines[i].freq - lines[j].freq,
                                     2.0 * responsivity * lines[i].amp * std::conj(lines[j].amp),
                                     static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    }
    return out;
}

} // namespace arof::kernels
