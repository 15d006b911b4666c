// SPDX-License-Identifier: Apache-2.0

#include "arof/beamforming.hpp"

#include "arof/delay.hpp"
#include "arof/errors.hpp"
#include "arof/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace arof
{

void ArrayGeometry::validate() const
{
    if (n_elements < 2)
        throw InvalidInput("array needs at least two elements");
    if (!(spacing > 0.0))
        throw InvalidInput("element spacing must be positive");
}

ArrayGeometry ArrayGeometry::half_wavelength(std::size_t n_elements, double design_freq)
{
    if (!(design_freq > 0.0))
        throw InvalidInput("design frequency must be positive");
    ArrayGeometry g{n_elements, kSpeedOfLight / (2.0 * design_freq)};
    g.validate();
    return g;
}

std::vector<double> angle_grid(double start, double stop, double step)
{
    if (!(step > 0.0) || !(stop >= start))
        throw InvalidInput("angle grid needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = start + static_cast<double>(i) * step;
    return grid;
}

BeamPattern array_factor(std::span<const cplx> weights, double freq, const ArrayGeometry &geom,
                         std::span<const double> angles_deg, ExecPolicy policy)
{
    geom.validate();
    if (angles_deg.empty())
        throw InvalidInput("angle grid is empty");
    if (weights.size() != geom.n_elements)
        throw InvalidInput("weight count " + std::to_string(weights.size()) + " does not match " +
                           std::to_string(geom.n_elements) + " elements");
    for (std::size_t i = 1; i < angles_deg.size(); ++i)
        if (!(angles_deg[i] > angles_deg[i - 1]))
            throw InvalidInput("angle grid must be strictly increasing");
    if (!(freq > 0.0))
        throw InvalidInput("pattern frequency must be positive");

    BeamPattern p;
    p.freq = freq;
    p.angles_deg.assign(angles_deg.begin(), angles_deg.end());
    p.magnitude_db.resize(angles_deg.size());
    if (policy == ExecPolicy::parallel)
        kernels::array_factor_parallel(weights, freq, geom.spacing, angles_deg, p.magnitude_db);
    else
        kernels::array_factor_serial(weights, freq, geom.spacing, angles_deg, p.magnitude_db);

    const double peak = *std::max_element(p.magnitude_db.begin(), p.magnitude_db.end());
    if (!(peak > 0.0))
        throw InvalidInput("array factor vanishes everywhere (all weights zero?)");
    for (auto &v : p.magnitude_db)
        v = v > 0.0 ? std::max(kPatternFloorDb, 20.0 * std::log10(v / peak)) : kPatternFloorDb;
    return p;
}

std::vector<cplx> ttd_weights(std::span<const double> delays, double freq)
{
    std::vector<cplx> w;
    w.reserve(delays.size());
    for (double tau : delays)
        w.push_back(delay_phasor(freq, tau));
    return w;
}

double delay_increment(std::span<const double> delays)
{
    const std::size_t n = delays.size();
    if (n < 2)
        throw InvalidInput("delay increment needs at least two elements");
    const double mean_k = (static_cast<double>(n) - 1.0) / 2.0;
    double mean_t = 0.0;
    for (double t : delays)
        mean_t += t;
    mean_t /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double dk = static_cast<double>(k) - mean_k;
        num += dk * (delays[k] - mean_t);
        den += dk * dk;
    }
    return num / den;
}

std::optional<double> steering_angle(double increment, double spacing)
{
    if (!(spacing > 0.0))
        throw InvalidInput("element spacing must be positive");
    const double u = -kSpeedOfLight * increment / spacing;
    // Endfire itself is visible; allow for rounding in c * tau / d.
    if (!(std::abs(u) <= 1.0 + 1e-12))
        return std::nullopt;
    return std::acos(std::clamp(u, -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

namespace
{

struct Lobe
{
    std::size_t index = 0;
    double angle = 0.0;
    double level = 0.0;
};

// Vertex of the parabola through three neighbouring samples.
Lobe refine(const BeamPattern &p, std::size_t i)
{
    const auto &x = p.angles_deg;
    const auto &y = p.magnitude_db;
    Lobe lobe{i, x[i], y[i]};
    if (i == 0 || i + 1 >= x.size())
        return lobe;
    const double u0 = x[i - 1] - x[i], u2 = x[i + 1] - x[i];
    const double v0 = y[i - 1] - y[i], v2 = y[i + 1] - y[i];
    const double det = u0 * u0 * u2 - u2 * u2 * u0;
    if (det == 0.0)
        return lobe;
    const double a = (v0 * u2 - v2 * u0) / det;
    const double b = (u0 * u0 * v2 - u2 * u2 * v0) / det;
    if (!(a < 0.0))
        return lobe;
    const double shift = std::clamp(-b / (2.0 * a), u0, u2);
    lobe.angle = x[i] + shift;
    lobe.level = y[i] + a * shift * shift + b * shift;
    return lobe;
}

double crossing(const BeamPattern &p, std::size_t inside, std::size_t outside, double level)
{
    const double x0 = p.angles_deg[inside], x1 = p.angles_deg[outside];
    const double y0 = p.magnitude_db[inside], y1 = p.magnitude_db[outside];
    if (y0 == y1)
        return x0;
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

} // namespace

SteeringResult peak_angle(const BeamPattern &pattern, std::optional<double> expected_deg)
{
    const auto &y = pattern.magnitude_db;
    const std::size_t n = y.size();
    if (n == 0 || pattern.angles_deg.size() != n)
        throw InvalidInput("beam pattern is empty or malformed");
    const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
    if (*mx - *mn < 1e-9)
        throw NoPeakError("beam pattern is flat");

    std::vector<Lobe> lobes;
    for (std::size_t i = 0; i < n; ++i)
    {
        const bool left_ok = i == 0 || y[i] > y[i - 1];
        const bool right_ok = i + 1 == n || y[i] >= y[i + 1];
        if (left_ok && right_ok)
            lobes.push_back(refine(pattern, i));
    }
    if (lobes.empty())
        throw NoPeakError("beam pattern has no local maximum");

    double top = -std::numeric_limits<double>::infinity();
    for (const auto &l : lobes)
        top = std::max(top, l.level);

    const Lobe *main = nullptr;
    for (const auto &l : lobes)
    {
        if (l.level < top - kEqualLobeToleranceDb)
            continue;
        if (!main)
            main = &l;
        else if (expected_deg && std::abs(l.angle - *expected_deg) < std::abs(main->angle - *expected_deg))
            main = &l;
    }

    SteeringResult r;
    r.peak_angle = main->angle;

    const double level = main->level - 3.0;
    std::size_t j = main->index;
    while (j > 0 && y[j - 1] >= level)
        --j;
    const double left = j == 0 ? pattern.angles_deg.front() : crossing(pattern, j, j - 1, level);
    j = main->index;
    while (j + 1 < n && y[j + 1] >= level)
        ++j;
    const double right = j + 1 == n ? pattern.angles_deg.back() : crossing(pattern, j, j + 1, level);
    r.peak_width_3db = right - left;

    r.sidelobe_level_db = -std::numeric_limits<double>::infinity();
    for (const auto &l : lobes)
        if (&l != main)
            r.sidelobe_level_db = std::max(r.sidelobe_level_db, l.level);
    return r;
}

SquintReport squint_metric(const ArrayGeometry &geom, std::span<const double> delays, double design_freq,
                           std::span<const double> eval_freqs, SquintMode mode, std::span<const double> angles_deg)
{
    geom.validate();
    if (eval_freqs.empty())
        throw InvalidInput("squint metric needs at least one evaluation frequency");
    if (delays.size() != geom.n_elements)
        throw InvalidInput("delay count does not match element count");
    if (!(design_freq > 0.0))
        throw InvalidInput("design frequency must be positive");

    const double inc = delay_increment(delays);
    const auto design_expected = steering_angle(inc, geom.spacing);
    if (!design_expected)
        throw RangeError("design steering lies outside the visible region");

    const auto design_weights = ttd_weights(delays, design_freq);
    SquintReport rep;
    rep.design_angle =
        peak_angle(array_factor(design_weights, design_freq, geom, angles_deg), design_expected).peak_angle;

    for (double f : eval_freqs)
    {
        SquintEntry e;
        e.freq = f;
        // A frozen phase progression acts like a delay scaled by f_design / f.
        const double effective_inc = mode == SquintMode::ttd ? inc : inc * design_freq / f;
        const auto expected = steering_angle(effective_inc, geom.spacing);
        if (!expected)
        {
            e.out_of_range = true;
            e.peak_angle = std::numeric_limits<double>::quiet_NaN();
            rep.entries.push_back(e);
            continue;
        }
        const auto weights = mode == SquintMode::ttd ? ttd_weights(delays, f) : design_weights;
        e.peak_angle = peak_angle(array_factor(weights, f, geom, angles_deg), expected).peak_angle;
        rep.max_spread = std::max(rep.max_spread, std::abs(e.peak_angle - rep.design_angle));
        rep.entries.push_back(e);
    }
    return rep;
}

std::vector<ToneSteering> steer_band(std::span<const ElementFeed> feeds, const ArrayGeometry &geom,
                                     std::span<const double> angles_deg)
{
    if (feeds.size() != geom.n_elements)
        throw InvalidInput("feed count does not match element count");
    std::vector<ToneSteering> out;
    if (feeds.empty())
        return out;

    for (const auto &ref : feeds.front().tones)
    {
        if (!ref.service || std::isnan(ref.relative_delay))
            continue;
        const double f = ref.tone.freq;
        std::vector<cplx> weights;
        std::vector<double> delays;
        for (const auto &feed : feeds)
        {
            auto it = std::find_if(feed.tones.begin(), feed.tones.end(), [f](const FeedTone &t) {
                return std::abs(t.tone.freq - f) <= kMergeToleranceHz;
            });
            if (it == feed.tones.end())
                throw DeadElementError(feed.element, to_string(feed.band));
            // Uniform amplitude taper: only the phase of each feed is kept.
            weights.push_back(std::polar(1.0, it->tone.phase));
            delays.push_back(it->relative_delay);
        }
        ToneSteering ts;
        ts.freq = f;
        ts.delay_increment = delay_increment(delays);
        ts.expected_angle = steering_angle(ts.delay_increment, geom.spacing);
        ts.pattern = array_factor(weights, f, geom, angles_deg);
        ts.steering = peak_angle(ts.pattern, ts.expected_angle);
        out.push_back(std::move(ts));
    }
    return out;
}

} // namespace arof
