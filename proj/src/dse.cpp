#include "nvxbar/dse.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nvxbar/error.hpp"
#include "nvxbar/mapper.hpp"

namespace nvxbar {

namespace {

struct Measurement
{
    double energy{0.0};
    double mean_latency{0.0};
    double variation{0.0};
    double expanded_fraction{0.0};
};

Measurement measure(const Network &network, const CrossbarSpec &spec,
        const TechnologyParams &tech, std::span<const SpikeTrain> trains,
        const SweepOptions &options)
{
    const Hardware hardware{network.clusters.size(), spec, tech};
    const auto placement = map_network(network, hardware);
    const auto result =
            simulate(placement, trains, options.duration, tech, options.neuron);

    Measurement m;
    m.energy = result.energy.total_j;
    m.mean_latency = result.latency.aggregate.mean;
    m.variation = variation(result.latency.extremes);
    std::size_t used = 0;
    for (const auto &x : placement.crossbars)
    {
        used += x.power_gated() ? 0 : 1;
    }
    m.expanded_fraction = used == 0
            ? 0.0
            : static_cast<double>(placement.config_count(Configuration::c11())) /
                    static_cast<double>(used);
    return m;
}

double normalized(double value, double base)
{
    if (base == 0.0)
    {
        return value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return value / base;
}

} // namespace

std::vector<GridPoint> square_grid(std::span<const std::size_t> values)
{
    std::vector<GridPoint> grid;
    for (auto p : values)
    {
        for (auto q : values)
        {
            grid.emplace_back(p, q);
        }
    }
    return grid;
}

std::vector<std::vector<SweepPoint>> sweep_pq(std::span<const NamedNetwork> networks,
        const CrossbarSpec &base_spec, const TechnologyParams &tech,
        std::span<const GridPoint> grid, const SweepOptions &options)
{
    base_spec.validate();
    if (grid.empty())
    {
        throw InvalidGrid("P/Q grid is empty");
    }
    for (const auto &[p, q] : grid)
    {
        if (p < 1 || p > base_spec.n || q < 1 || q > base_spec.n)
        {
            throw InvalidGrid(fmt::format(
                    "grid point ({},{}) outside 1..{}", p, q, base_spec.n));
        }
    }

    std::vector<std::vector<SweepPoint>> sweeps;
    for (const auto &named : networks)
    {
        const auto trains = generate_spike_trains(presynaptic_neurons(named.network),
                options.spike_rate, options.duration, options.seed);
        const auto base = measure(named.network, base_spec.unpartitioned(), tech,
                trains, options);

        std::vector<SweepPoint> points;
        for (const auto &[p, q] : grid)
        {
            SweepPoint point;
            point.network = named.name;
            point.spec = base_spec;
            point.spec.p = p;
            point.spec.q = q;
            try
            {
                const auto m = measure(named.network, point.spec, tech, trains, options);
                point.norm_energy = normalized(m.energy, base.energy);
                point.norm_latency = normalized(m.mean_latency, base.mean_latency);
                point.norm_variation = normalized(m.variation, base.variation);
                point.expanded_fraction = m.expanded_fraction;
            }
            catch (const Infeasible &e)
            {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                point.feasible = false;
                point.note = e.what();
                point.norm_energy = nan;
                point.norm_latency = nan;
                point.norm_variation = nan;
                point.expanded_fraction = nan;
            }
            points.push_back(std::move(point));
        }
        sweeps.push_back(std::move(points));
    }
    return sweeps;
}

std::vector<NhNlPoint> sweep_nhnl(std::size_t n, const TechnologyParams &tech,
        std::span<const std::size_t> nh_grid, std::span<const std::size_t> nl_grid)
{
    if (nh_grid.empty() || nl_grid.empty())
    {
        throw InvalidGrid("N_h / N_l grids must be non-empty");
    }
    for (auto nh : nh_grid)
    {
        for (auto nl : nl_grid)
        {
            if (nh + nl > n)
            {
                throw InvalidGrid(fmt::format(
                        "N_h + N_l = {} + {} exceeds N = {}", nh, nl, n));
            }
        }
    }

    const auto baseline = extreme_latency_stats(
            CrossbarSpec::baseline(n), Configuration::c11(), tech);
    const double base_variation = variation(baseline);

    std::vector<NhNlPoint> rows;
    for (auto nl : nl_grid)
    {
        for (auto nh : nh_grid)
        {
            const CrossbarSpec spec{n, nh, nl, n, n, Control::Double};
            NhNlPoint row;
            row.n_h = nh;
            row.n_l = nl;
            row.extremes = extreme_latency_stats(spec, Configuration::c11(), tech);
            row.variation = variation(row.extremes);
            row.norm_variation = normalized(row.variation, base_variation);
            rows.push_back(row);
        }
    }
    return rows;
}

GridPoint select_tradeoff(std::span<const std::vector<SweepPoint>> sweeps,
        double latency_tolerance)
{
    if (sweeps.empty())
    {
        throw NoFeasibleKnee("no sweeps to select from");
    }
    const auto &reference = sweeps.front();
    for (const auto &sweep : sweeps)
    {
        bool same = sweep.size() == reference.size();
        for (std::size_t i = 0; same && i < sweep.size(); ++i)
        {
            same = sweep[i].spec.p == reference[i].spec.p &&
                    sweep[i].spec.q == reference[i].spec.q;
        }
        if (!same)
        {
            throw InvalidGrid("sweeps do not share a grid");
        }
    }

    GridPoint selected{0, 0};
    for (const auto &sweep : sweeps)
    {
        const SweepPoint *knee = nullptr;
        for (const auto &point : sweep)
        {
            if (!point.feasible || !(point.norm_latency <= 1.0 + latency_tolerance))
            {
                continue;
            }
            if (knee == nullptr)
            {
                knee = &point;
                continue;
            }
            const auto area = point.spec.p * point.spec.q;
            const auto knee_area = knee->spec.p * knee->spec.q;
            if (area < knee_area || (area == knee_area && point.spec.p > knee->spec.p))
            {
                knee = &point;
            }
        }
        if (knee == nullptr)
        {
            throw NoFeasibleKnee(fmt::format(
                    "network '{}' regresses latency at every grid point",
                    sweep.empty() ? std::string("?") : sweep.front().network));
        }
        selected.first = std::max(selected.first, knee->spec.p);
        selected.second = std::max(selected.second, knee->spec.q);
    }
    return selected;
}

void write_sweep_csv(std::ostream &os, std::span<const std::vector<SweepPoint>> sweeps)
{
    os << "network,P,Q,norm_energy,norm_latency,norm_variation,expanded_fraction\n";
    for (const auto &sweep : sweeps)
    {
        for (const auto &p : sweep)
        {
            os << fmt::format("{},{},{},{},{},{},{}\n", p.network, p.spec.p, p.spec.q,
                    p.norm_energy, p.norm_latency, p.norm_variation,
                    p.expanded_fraction);
        }
    }
}

void write_nhnl_csv(std::ostream &os, std::span<const NhNlPoint> rows)
{
    os << "n_h,n_l,best_s,worst_s,ratio,variation,norm_variation\n";
    for (const auto &r : rows)
    {
        os << fmt::format("{},{},{},{},{},{},{}\n", r.n_h, r.n_l, r.extremes.best,
                r.extremes.worst, r.extremes.ratio, r.variation, r.norm_variation);
    }
}

} // namespace nvxbar
