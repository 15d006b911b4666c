// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a plain serial version kept as the reference for tests and
// the benchmark. Both produce bit-identical output: every output element is
// computed independently, in the same operation order.

#ifndef AROF_KERNELS_HPP
#define AROF_KERNELS_HPP

#include "arof/spectrum.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace arof::kernels
{

// |sum_k w_k exp(-j 2 pi f k d cos(theta) / c)| for every angle (degrees).
// Element k sits at -k*d on the array axis, so a positive per-element delay
// steers toward theta > 90 degrees.
void array_factor_serial(std::span<const cplx> weights, double freq, double spacing,
                         std::span<const double> angles_deg, std::span<double> out);
void array_factor_parallel(std::span<const cplx> weights, double freq, double spacing,
                           std::span<const double> angles_deg, std::span<double> out);

struct Beat
{
    double freq = 0.0; // f_hi - f_lo, Hz
    cplx amp{};        // 2 R a_hi conj(a_lo)
    std::uint32_t hi = 0;
    std::uint32_t lo = 0;
};

// All unordered line pairs of an ascending spectrum, ordered by (hi, lo).
std::vector<Beat> pair_beats_serial(std::span<const SpectralLine> lines, double responsivity);
std::vector<Beat> pair_beats_parallel(std::span<const SpectralLine> lines, double responsivity);

} // namespace arof::kernels

#endif
