// SPDX-License-Identifier: Apache-2.0

#include "arof/chain.hpp"

#include "arof/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace arof
{
namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
auto stage(const char *name, F &&f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (const StageError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw StageError(name, e.what());
    }
}

BandSummary summarize(const ScenarioConfig &cfg, const FeedSet &feeds, Band band, double slope,
                      const std::vector<double> &angles)
{
    BandSummary s;
    s.band = band;
    s.optical_slope = slope;
    s.delta_t = slope * cfg.channel_pitch();
    s.design_freq = band == Band::sub6 ? cfg.sub6_design_freq : cfg.mm_design_freq;
    s.geom = {cfg.n_elements, band == Band::sub6 ? cfg.sub6_spacing() : cfg.mm_spacing()};
    s.tones = steer_band(feeds.band(band), s.geom, angles);
    if (s.tones.empty())
        throw NoPeakError("no service tone survives in the " + to_string(band) + " band");

    double lo = s.tones.front().steering.peak_angle;
    double hi = lo;
    for (const auto &t : s.tones)
    {
        s.mean_increment += t.delay_increment;
        s.mean_angle += t.steering.peak_angle;
        lo = std::min(lo, t.steering.peak_angle);
        hi = std::max(hi, t.steering.peak_angle);
    }
    const auto n = static_cast<double>(s.tones.size());
    s.mean_increment /= n;
    s.mean_angle /= n;
    s.angle_spread = hi - lo;
    return s;
}

} // namespace

ChainResult run_chain(const ScenarioConfig &cfg)
{
    const ChainSetup setup = stage("setup", [&] {
        cfg.validate();
        return cfg.to_setup();
    });

    ChainResult r;
    r.feeds = stage("front-end", [&] { return extract_element_feeds(setup); });

    const double cu_slope = setup.cu_law.slope;
    const double mm_slope = cu_slope + (setup.rrh_law ? setup.rrh_law->slope : 0.0);
    const auto angles = stage("beamforming", [&] { return cfg.angles(); });
    r.sub6 = stage("beamforming", [&] { return summarize(cfg, r.feeds, Band::sub6, cu_slope, angles); });
    r.mmwave = stage("beamforming", [&] { return summarize(cfg, r.feeds, Band::mmwave, mm_slope, angles); });

    for (const auto *band : {&r.feeds.sub6, &r.feeds.mmwave})
        for (const auto &feed : *band)
            for (const auto &t : feed.tones)
                if (t.service && t.spur_ratio > 0.0)
                    r.spurs.push_back({feed.band, feed.element, t.tone.freq, t.spur_ratio});
    return r;
}

ResultTable steering_table(const ChainResult &r)
{
    ResultTable t({{"band", ""},
                   {"freq", "GHz"},
                   {"delta_t", "ps"},
                   {"delay_increment", "ps"},
                   {"expected_angle", "deg"},
                   {"peak_angle", "deg"},
                   {"width_3db", "deg"},
                   {"sidelobe_level", "dB"}});
    for (const auto *b : {&r.sub6, &r.mmwave})
        for (const auto &ts : b->tones)
            t.add_row({to_string(b->band), ts.freq / 1e9, b->delta_t / 1e-12, ts.delay_increment / 1e-12,
                       ts.expected_angle.value_or(kNaN), ts.steering.peak_angle, ts.steering.peak_width_3db,
                       ts.steering.sidelobe_level_db});
    return t;
}

ResultTable feeds_table(const ChainResult &r)
{
    ResultTable t({{"band", ""},
                   {"element", ""},
                   {"freq", "GHz"},
                   {"amplitude", "A"},
                   {"phase", "rad"},
                   {"service", ""},
                   {"spur_ratio", ""},
                   {"relative_delay", "ps"},
                   {"predicted_delay", "ps"}});
    for (const auto *band : {&r.feeds.sub6, &r.feeds.mmwave})
        for (const auto &feed : *band)
            for (const auto &ft : feed.tones)
                t.add_row({to_string(feed.band), static_cast<double>(feed.element), ft.tone.freq / 1e9, ft.tone.amp,
                           ft.tone.phase, ft.service ? 1.0 : 0.0, ft.spur_ratio, ft.relative_delay / 1e-12,
                           ft.predicted_delay / 1e-12});
    return t;
}

ResultTable pattern_table(const ChainResult &r)
{
    ResultTable t({{"band", ""}, {"freq", "GHz"}, {"angle", "deg"}, {"magnitude", "dB"}});
    for (const auto *b : {&r.sub6, &r.mmwave})
        for (const auto &ts : b->tones)
            for (std::size_t i = 0; i < ts.pattern.angles_deg.size(); ++i)
                t.add_row({to_string(b->band), ts.freq / 1e9, ts.pattern.angles_deg[i], ts.pattern.magnitude_db[i]});
    return t;
}

ResultTable spur_table(const ChainResult &r)
{
    ResultTable t({{"band", ""}, {"element", ""}, {"freq", "GHz"}, {"spur_ratio", ""}});
    for (const auto &s : r.spurs)
        t.add_row({to_string(s.band), static_cast<double>(s.element), s.freq / 1e9, s.spur_ratio});
    return t;
}

ResultTable run_sweep(const ScenarioConfig &cfg, const SweepSpec &sweep, ExecPolicy policy)
{
    const auto unit = display_unit(key_dimension(sweep.var));
    const auto values = sweep.values();
    const auto n = static_cast<long>(values.size());

    ResultTable t({{"step", ""},
                   {sweep.var, unit.name},
                   {"delta_t_sub6", "ps"},
                   {"delta_t_mm", "ps"},
                   {"increment_sub6", "ps"},
                   {"increment_mm", "ps"},
                   {"angle_sub6", "deg"},
                   {"angle_mm", "deg"},
                   {"spread_sub6", "deg"},
                   {"spread_mm", "deg"},
                   {"status", ""}});
    std::vector<std::vector<Cell>> rows(values.size());

    auto run_step = [&](long i) {
        const double v = values[static_cast<std::size_t>(i)];
        std::vector<Cell> row{static_cast<double>(i), v / unit.scale};
        try
        {
            ScenarioConfig step_cfg = cfg;
            step_cfg.sweep.reset();
            step_cfg.set(sweep.var, v);
            const ChainResult res = run_chain(step_cfg);
            row.insert(row.end(), {res.sub6.delta_t / 1e-12, res.mmwave.delta_t / 1e-12,
                                   res.sub6.mean_increment / 1e-12, res.mmwave.mean_increment / 1e-12,
                                   res.sub6.mean_angle, res.mmwave.mean_angle, res.sub6.angle_spread,
                                   res.mmwave.angle_spread, std::string("ok")});
        }
        catch (const std::exception &e)
        {
            row.resize(2, kNaN);
            row.insert(row.end(), 8, kNaN);
            row.emplace_back(std::string(e.what()));
        }
        rows[static_cast<std::size_t>(i)] = std::move(row);
    };

    if (policy == ExecPolicy::parallel)
    {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i)
            run_step(i);
    }
    else
    {
        for (long i = 0; i < n; ++i)
            run_step(i);
    }

    for (auto &row : rows)
        t.add_row(std::move(row));
    return t;
}

std::size_t failed_rows(const ResultTable &sweep_table)
{
    const std::size_t col = sweep_table.column_index("status");
    return static_cast<std::size_t>(std::count_if(sweep_table.rows.begin(), sweep_table.rows.end(), [&](const auto &row) {
        const auto *s = std::get_if<std::string>(&row[col]);
        return !s || *s != "ok";
    }));
}

} // namespace arof
