// SPDX-License-Identifier: Apache-2.0
//
// End-to-end runs driven by a ScenarioConfig, and their tabular reports.

#ifndef AROF_CHAIN_HPP
#define AROF_CHAIN_HPP

#include "arof/beamforming.hpp"
#include "arof/config.hpp"
#include "arof/table.hpp"

#include <vector>

namespace arof
{

struct BandSummary
{
    Band band = Band::sub6;
    double delta_t = 0.0;        // s, optical delay difference over one channel pitch
    double optical_slope = 0.0;  // s/Hz, cumulative law seen by this band
    double design_freq = 0.0;
    ArrayGeometry geom;
    std::vector<ToneSteering> tones; // service tones only
    double mean_increment = 0.0; // s, mean fitted RF delay increment
    double mean_angle = 0.0;     // degrees, mean service-tone peak angle
    double angle_spread = 0.0;   // degrees, max - min peak angle
};

struct SpurEntry
{
    Band band = Band::sub6;
    std::size_t element = 0;
    double freq = 0.0;
    double spur_ratio = 0.0;
};

struct ChainResult
{
    FeedSet feeds;
    BandSummary sub6;
    BandSummary mmwave;
    std::vector<SpurEntry> spurs; // service tones carrying intermodulation

    const BandSummary &band(Band b) const { return b == Band::sub6 ? sub6 : mmwave; }
};

// Stage failures are rethrown as StageError naming the stage.
ChainResult run_chain(const ScenarioConfig &cfg);

ResultTable steering_table(const ChainResult &r);
ResultTable feeds_table(const ChainResult &r);
ResultTable pattern_table(const ChainResult &r);
ResultTable spur_table(const ChainResult &r);

// One row per sweep value, in step order. Failed steps keep their row with
// NaN results and the error text in the status column.
ResultTable run_sweep(const ScenarioConfig &cfg, const SweepSpec &sweep, ExecPolicy policy = ExecPolicy::parallel);

// Number of rows whose status is not "ok".
std::size_t failed_rows(const ResultTable &sweep_table);

} // namespace arof

#endif
