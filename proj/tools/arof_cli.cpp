// SPDX-License-Identifier: Apache-2.0
//
// arof: run scenarios, sweeps, squint and cost reports from the command line.
// Exit codes: 0 success, 2 invalid input or configuration, 3 runtime failure.

#include "arof/chain.hpp"
#include "arof/cost.hpp"
#include "arof/errors.hpp"
#include "criteria.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

void write(const arof::ResultTable &t, const std::string &path)
{
    if (path.empty() || path == "-")
        std::cout << arof::to_csv(t);
    else
        arof::emit(t, path);
}

arof::Band parse_band(const std::string &s)
{
    if (s == "sub6")
        return arof::Band::sub6;
    if (s == "mmwave")
        return arof::Band::mmwave;
    throw arof::InvalidInput("band must be sub6 or mmwave");
}

int cmd_chain(const std::string &config, const std::string &out, const std::string &feeds,
              const std::string &patterns, const std::string &spurs)
{
    const auto cfg = arof::load_config(config);
    const auto res = arof::run_chain(cfg);
    write(arof::steering_table(res), out);
    if (!feeds.empty())
        write(arof::feeds_table(res), feeds);
    if (!patterns.empty())
        write(arof::pattern_table(res), patterns);
    if (!spurs.empty())
        write(arof::spur_table(res), spurs);
    return kExitOk;
}

int cmd_sweep(const std::string &config, const std::string &out, const std::string &sweep, bool serial)
{
    const auto cfg = arof::load_config(config);
    std::optional<arof::SweepSpec> spec = cfg.sweep;
    if (!sweep.empty())
        spec = arof::parse_sweep(sweep);
    if (!spec)
        throw arof::InvalidInput("no sweep given: pass --sweep VAR=START:STOP:STEP or set sweep.spec");
    const auto t = arof::run_sweep(cfg, *spec, serial ? arof::ExecPolicy::serial : arof::ExecPolicy::parallel);
    write(t, out);
    if (const auto failed = arof::failed_rows(t))
    {
        std::cerr << "arof: " << failed << " of " << t.rows.size() << " sweep steps failed\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_squint(const std::string &config, const std::string &out, const std::string &band_name)
{
    const auto cfg = arof::load_config(config);
    const auto band = parse_band(band_name);
    const auto res = arof::run_chain(cfg);
    const auto &summary = res.band(band);

    std::vector<double> delays(summary.geom.n_elements);
    for (std::size_t k = 0; k < delays.size(); ++k)
        delays[k] = static_cast<double>(k) * summary.mean_increment;
    std::vector<double> freqs;
    for (const auto &t : summary.tones)
        freqs.push_back(t.freq);
    const auto grid = cfg.angles();

    arof::ResultTable t({{"mode", ""},
                         {"freq", "GHz"},
                         {"peak_angle", "deg"},
                         {"design_angle", "deg"},
                         {"shift", "deg"},
                         {"out_of_range", ""}});
    for (auto mode : {arof::SquintMode::ttd, arof::SquintMode::phase_shift})
    {
        const auto rep = arof::squint_metric(summary.geom, delays, summary.design_freq, freqs, mode, grid);
        for (const auto &e : rep.entries)
            t.add_row({std::string(mode == arof::SquintMode::ttd ? "ttd" : "phase_shift"), e.freq / 1e9, e.peak_angle,
                       rep.design_angle, e.peak_angle - rep.design_angle, e.out_of_range ? 1.0 : 0.0});
    }
    write(t, out);
    return kExitOk;
}

int cmd_cost(const std::string &out, std::size_t services, std::size_t elements, std::size_t mm_services,
             bool include_cu)
{
    arof::CostScenario s{services, elements, arof::Architecture::proposed, include_cu, mm_services};
    const auto prop = arof::component_counts(s);
    s.architecture = arof::Architecture::conventional;
    const auto conv = arof::component_counts(s);
    const auto diff = arof::tally_diff(conv, prop, arof::default_weights());

    arof::ResultTable t({{"component", ""}, {"kind", ""}, {"proposed", "units"}, {"conventional", "units"},
                         {"saved", "units"}});
    for (std::size_t i = 0; i < arof::kComponentKinds; ++i)
    {
        const auto c = static_cast<arof::Component>(i);
        t.add_row({std::string(arof::component_name(c)), std::string(arof::is_active(c) ? "active" : "passive"),
                   static_cast<double>(prop[c]), static_cast<double>(conv[c]), static_cast<double>(diff.delta[i])});
    }
    t.add_row({std::string("active_total"), std::string("active"), static_cast<double>(prop.active_total()),
               static_cast<double>(conv.active_total()), diff.score});
    t.add_row({std::string("passive_total"), std::string("passive"), static_cast<double>(prop.passive_total()),
               static_cast<double>(conv.passive_total()),
               static_cast<double>(conv.passive_total() - prop.passive_total())});
    write(t, out);
    return kExitOk;
}

int cmd_selftest()
{
    return arof::acceptance::report(arof::acceptance::run_all(), std::cout) ? kExitOk : kExitRuntime;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Optical true-time-delay beamforming simulator"};
    app.require_subcommand(1);

    std::string config, out, sweep, feeds, patterns, spurs, band = "mmwave";
    bool serial = false;
    bool include_cu = false;
    std::size_t services = 6, elements = 4, mm_services = 3;

    auto *chain = app.add_subcommand("chain", "Run one scenario; writes the steering table");
    chain->add_option("--config", config, "Scenario file")->required();
    chain->add_option("--out", out, "Steering table CSV (default stdout)");
    chain->add_option("--feeds", feeds, "Per-element tone table CSV");
    chain->add_option("--patterns", patterns, "Beam pattern table CSV");
    chain->add_option("--spurs", spurs, "Spur contamination table CSV");

    auto *sw = app.add_subcommand("sweep", "Sweep one config key; one row per step");
    sw->add_option("--config", config, "Scenario file")->required();
    sw->add_option("--out", out, "Output CSV (default stdout)");
    sw->add_option("--sweep", sweep, "VAR=START:STOP:STEP, overrides sweep.spec");
    sw->add_flag("--serial", serial, "Run steps one at a time");

    auto *sq = app.add_subcommand("squint", "Compare true-time-delay and phase-shifter steering over a band");
    sq->add_option("--config", config, "Scenario file")->required();
    sq->add_option("--out", out, "Output CSV (default stdout)");
    sq->add_option("--band", band, "sub6 or mmwave")->check(CLI::IsMember({"sub6", "mmwave"}));

    auto *cost = app.add_subcommand("cost", "Remote radio head component counts");
    cost->add_option("--out", out, "Output CSV (default stdout)");
    cost->add_option("--services", services, "Number of services")->check(CLI::PositiveNumber);
    cost->add_option("--elements", elements, "Antenna elements per array")->check(CLI::PositiveNumber);
    cost->add_option("--mm-services", mm_services, "How many services are mmWave");
    cost->add_flag("--include-cu", include_cu, "Count central-unit parts too");

    auto *self = app.add_subcommand("selftest", "Run the acceptance checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try
    {
        if (*chain)
            return cmd_chain(config, out, feeds, patterns, spurs);
        if (*sw)
            return cmd_sweep(config, out, sweep, serial);
        if (*sq)
            return cmd_squint(config, out, band);
        if (*cost)
            return cmd_cost(out, services, elements, mm_services, include_cu);
        if (*self)
            return cmd_selftest();
    }
    catch (const arof::InvalidInput &e)
    {
        std::cerr << "arof: invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
    catch (const std::exception &e)
    {
        std::cerr << "arof: error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitInvalid;
}
