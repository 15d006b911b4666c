// SPDX-License-Identifier: Apache-2.0

#include "arof/cost.hpp"

#include "arof/errors.hpp"

namespace arof
{

std::string_view component_name(Component c)
{
    switch (c)
    {
    case Component::interleaver: return "interleaver";
    case Component::cfbg: return "cfbg";
    case Component::dwdm_demux: return "dwdm_demux";
    case Component::wdm_mux: return "wdm_mux";
    case Component::pd: return "pd";
    case Component::bpf: return "bpf";
    case Component::ea: return "ea";
    case Component::phase_shifter: return "phase_shifter";
    case Component::psl: return "psl";
    case Component::laser: return "laser";
    case Component::mzm: return "mzm";
    case Component::count_: break;
    }
    return "unknown";
}

bool is_active(Component c)
{
    switch (c)
    {
    case Component::interleaver:
    case Component::cfbg:
    case Component::dwdm_demux:
    case Component::wdm_mux:
        return false;
    default:
        return true;
    }
}

void CostScenario::validate() const
{
    if (n_services < 1 || n_elements < 1)
        throw InvalidInput("cost scenario needs at least one service and one antenna element");
    if (n_mmwave_services > n_services)
        throw InvalidInput("mmWave service count exceeds the total service count");
}

long long ComponentTally::active_total() const
{
    long long t = 0;
    for (std::size_t i = 0; i < kComponentKinds; ++i)
        if (is_active(static_cast<Component>(i)))
            t += counts[i];
    return t;
}

long long ComponentTally::passive_total() const
{
    long long t = 0;
    for (std::size_t i = 0; i < kComponentKinds; ++i)
        if (!is_active(static_cast<Component>(i)))
            t += counts[i];
    return t;
}

ComponentTally component_counts(const CostScenario &s)
{
    s.validate();
    const auto ns = static_cast<long long>(s.n_services);
    const auto na = static_cast<long long>(s.n_elements);

    ComponentTally t;
    if (s.architecture == Architecture::proposed)
    {
        t[Component::interleaver] = 1;
        t[Component::cfbg] = 1;
        t[Component::dwdm_demux] = 2;
        t[Component::pd] = 2 * na;
        t[Component::bpf] = 2 * na;
        t[Component::ea] = 2 * na;
        if (s.include_central_unit)
        {
            t[Component::laser] = 2;
            t[Component::mzm] = 2;
            t[Component::cfbg] += 2;
        }
    }
    else
    {
        t[Component::dwdm_demux] = 1;
        t[Component::pd] = ns;
        t[Component::bpf] = ns * na;
        t[Component::ea] = ns * na;
        t[Component::phase_shifter] = ns * na;
        t[Component::psl] = ns;
        t.mmwave_phase_shifters = static_cast<long long>(s.n_mmwave_services) * na;
        t.sub6_phase_shifters = (ns - static_cast<long long>(s.n_mmwave_services)) * na;
        if (s.include_central_unit)
        {
            t[Component::laser] = ns;
            t[Component::wdm_mux] = 1;
        }
    }
    return t;
}

ComponentWeights default_weights()
{
    ComponentWeights w{};
    for (std::size_t i = 0; i < kComponentKinds; ++i)
        w[i] = is_active(static_cast<Component>(i)) ? 1.0 : 0.0;
    return w;
}

TallyDiff tally_diff(const ComponentTally &a, const ComponentTally &b, const ComponentWeights &weights)
{
    TallyDiff d;
    for (std::size_t i = 0; i < kComponentKinds; ++i)
    {
        if (weights[i] < 0.0)
            throw InvalidInput("component weights must be non-negative");
        d.delta[i] = a.counts[i] - b.counts[i];
        d.score += weights[i] * static_cast<double>(d.delta[i]);
    }
    return d;
}

} // namespace arof
