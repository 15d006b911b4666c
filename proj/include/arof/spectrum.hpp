// SPDX-License-Identifier: Apache-2.0
//
// Sparse optical spectra: a field is a finite set of monochromatic lines,
// each with an absolute optical frequency and a complex amplitude in sqrt(W).
// Modulation stages map spectra to spectra exactly, so every downstream
// quantity (beat tones, delays, beam patterns) is computed without sampling.

#ifndef AROF_SPECTRUM_HPP
#define AROF_SPECTRUM_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace arof
{

using cplx = std::complex<double>;

inline constexpr double kMergeToleranceHz = 1.0e3;
inline constexpr double kRelativePruneThreshold = 1.0e-9;

struct SpectralLine
{
    double freq = 0.0; // Hz
    cplx amp{};        // sqrt(W)
};

// Lines kept strictly ascending in frequency. Construction goes through
// prune_merge, so any two lines are further apart than the merge tolerance.
class OpticalSpectrum
{
public:
    OpticalSpectrum() = default;

    // Merges lines closer than kMergeToleranceHz and drops lines below
    // kRelativePruneThreshold times the strongest line.
    static OpticalSpectrum from_lines(std::vector<SpectralLine> lines);

    const std::vector<SpectralLine> &lines() const noexcept { return lines_; }
    std::size_t size() const noexcept { return lines_.size(); }
    bool empty() const noexcept { return lines_.empty(); }
    auto begin() const noexcept { return lines_.begin(); }
    auto end() const noexcept { return lines_.end(); }
    const SpectralLine &operator[](std::size_t i) const { return lines_[i]; }

    double total_power() const noexcept;
    double max_amplitude() const noexcept;

    // Line at freq within tolerance, or nullptr.
    const SpectralLine *find(double freq, double tolerance = kMergeToleranceHz) const noexcept;

    OpticalSpectrum scaled(cplx factor) const;

private:
    friend OpticalSpectrum prune_merge(std::vector<SpectralLine> lines, double amp_threshold, double freq_tolerance);
    std::vector<SpectralLine> lines_;
};

// Sorts, coherently sums chains of lines spaced within freq_tolerance,
// then removes lines with |amp| < amp_threshold (exact zeros always).
OpticalSpectrum prune_merge(std::vector<SpectralLine> lines, double amp_threshold, double freq_tolerance);
OpticalSpectrum prune_merge(const OpticalSpectrum &spec, double amp_threshold, double freq_tolerance);

// Multiset union, then the default merge/prune.
OpticalSpectrum merge(const OpticalSpectrum &a, const OpticalSpectrum &b);

struct ToneSet
{
    std::vector<double> tones; // Hz

    // Throws InvalidInput unless positive, finite and distinct.
    void validate() const;
    double max_tone() const noexcept;
};

struct MzmConfig
{
    double drive_freq = 50.0e9; // Hz
    double v_drive = 1.0;       // V
    double v_pi = 1.0;          // V
    int bias_sign = +1;         // +1 or -1 quadrature point
    int truncation_order = 5;
    // Maximum allowed fraction of the modulated power lost to truncation.
    double energy_tolerance = 1.0e-6;

    // Modulation index pi * V_dr / (2 V_pi).
    double modulation_index() const noexcept;
    void validate() const;
};

OpticalSpectrum laser_line(double power_w, double center_freq);

// Ideal direct modulation: each line A at F becomes A at F plus A/2 at F +- f_i.
OpticalSpectrum direct_modulate(const OpticalSpectrum &spec, const ToneSet &tones);

// Complex amplitude multiplying the input field at harmonic q of the drive
// for a quadrature-biased MZM, q in [-N, N].
double mzm_harmonic_coefficient(int q, double modulation_index, int bias_sign);

// Power fraction missing when the harmonic series is cut at order N,
// relative to the untruncated output power (which is half the input).
double mzm_truncation_deficit(double modulation_index, int truncation_order);

// Smallest order whose truncation deficit is below tolerance.
int mzm_required_order(double modulation_index, double tolerance);

OpticalSpectrum mzm_modulate(const OpticalSpectrum &spec, const MzmConfig &cfg);

// Lossless 2x1 coupler: every input amplitude scaled by 1/sqrt(2).
OpticalSpectrum couple(const OpticalSpectrum &a, const OpticalSpectrum &b);

} // namespace arof

#endif
