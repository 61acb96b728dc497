// Acceptance checks. One line per criterion; exit status is the number of
// failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "nvxbar/analysis.hpp"
#include "nvxbar/crossbar.hpp"
#include "nvxbar/dse.hpp"
#include "nvxbar/mapper.hpp"
#include "nvxbar/simulate.hpp"
#include "nvxbar/techmodel.hpp"
#include "nvxbar/workload.hpp"

using namespace nvxbar;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
    bool pass{true};
    std::string detail;
};

// Collects failed expectations; keeps the first few messages.
class Check
{
public:
    void expect(bool ok, const std::string &what)
    {
        ++total_;
        if (!ok)
        {
            ++failed_;
            if (failed_ <= 3)
            {
                messages_ += (messages_.empty() ? "" : "; ") + what;
            }
        }
    }

    Outcome outcome(const std::string &summary) const
    {
        if (failed_ == 0)
        {
            return {true, fmt::format("{} ({} checks)", summary, total_)};
        }
        return {false, fmt::format("{}/{} checks failed: {}", failed_, total_, messages_)};
    }

private:
    std::size_t total_{0};
    std::size_t failed_{0};
    std::string messages_;
};

bool rel_close(double a, double b, double tol)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

// Elmore delay at stage k of a uniform line of `length` segments, summed
// resistor by resistor: resistor i carries the capacitance of stages i..length.
double elmore(std::size_t k, std::size_t length, double r, double c)
{
    double sum = 0.0;
    for (std::size_t i = 1; i <= k; ++i)
    {
        sum += r * c * static_cast<double>(length - i + 1);
    }
    return sum;
}

Dimensions dims_oracle(const std::string &config, const CrossbarSpec &s)
{
    if (config == "00")
    {
        return {s.p, s.q};
    }
    if (config == "01")
    {
        return {s.n, s.q};
    }
    if (config == "10")
    {
        return {s.p, s.n};
    }
    return {s.n, s.n};
}

TechnologyParams random_tech(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.1, 10.0);
    auto t = tech_preset("45nm");
    t.r_wordline_unit *= u(rng);
    t.r_bitline_unit *= u(rng);
    t.c_wordline_unit *= u(rng);
    t.c_bitline_unit *= u(rng);
    t.c_sense *= u(rng);
    t.t_iso_on *= u(rng);
    return t;
}

Placement two_cell(const CrossbarSpec &spec, Cell near, StateLabel near_state, Cell far,
        StateLabel far_state)
{
    CrossbarPlacement x;
    x.cluster = 0;
    x.spec = spec;
    x.config = Configuration::c11();
    x.row_of_pre = {{1, near.row}, {2, far.row}};
    x.col_of_post = {{10, near.col}, {11, far.col}};
    x.synapses = {{1, 10, near_state, near}, {2, 11, far_state, far}};
    Placement p;
    p.spec = spec;
    p.crossbars.push_back(x);
    return p;
}

// ------------------------------------------------------------------ 1

Outcome formula_exactness()
{
    Check c;
    c.expect(cost_per_bit(128, 16.0) == 566.0, "cost_per_bit(128,16)");
    c.expect(total_bits(128) == 32768, "total_bits(128)");
    c.expect(isolation_transistor_count(4, Granularity::Fine) == 24, "iso(4,fine)");
    c.expect(isolation_transistor_count(4, Granularity::Coarse) == 8, "iso(4,coarse)");
    c.expect(isolation_transistor_count(128, Granularity::Coarse) == 256, "iso(128,coarse)");
    c.expect(synapse_utilization(4, 4) * 100.0 == 25.0, "utilization 4/16");
    c.expect(synapse_utilization(3, 4) * 100.0 == 18.75, "utilization 3/16");
    c.expect(synapse_utilization(128, 128) * 100.0 == 0.78125, "utilization 128/16384");
    return c.outcome("566 nm^2/bit, 32768 bits, iso 24/8/256, utilization 25/18.75/0.78125 %");
}

// ------------------------------------------------------------------ 2

Outcome configuration_table()
{
    Check c;
    const CrossbarSpec spec{4, 0, 0, 3, 2, Control::Double};
    const auto tech = tech_preset("45nm");
    const std::map<std::string, std::pair<std::size_t, int>> expected{
            {"00", {6, 0}}, {"01", {8, 1}}, {"10", {12, 1}}, {"11", {16, 2}}};
    for (const auto &[name, want] : expected)
    {
        const auto config = Configuration::from_name(name);
        const auto dims = config_dimensions(config, spec);
        c.expect(dims == dims_oracle(name, spec), "dimensions " + name);
        c.expect(static_energy_weight(config, spec) == want.first, "weight " + name);
        const Cell worst{dims.rows - 1, dims.cols - 1};
        c.expect(extreme_latency_stats(spec, config, tech).worst_cell == worst,
                "worst cell " + name);
        const auto lat = path_latency(worst, StateLabel::HRS, config, spec, tech);
        c.expect(lat.iso_component == want.second * tech.t_iso_on, "iso component " + name);
    }

    const Cell corner{3, 3};
    const auto expanded = path_latency(corner, StateLabel::HRS, Configuration::c11(), spec, tech);
    const auto base = path_latency(corner, StateLabel::HRS, Configuration::c11(),
            CrossbarSpec::baseline(4), tech);
    c.expect(expanded.parasitic_component == base.parasitic_component, "same parasitic");
    c.expect(expanded.sense_component == base.sense_component, "same sense");
    c.expect(base.iso_component == 0.0, "baseline has no isolation");
    c.expect(expanded.iso_component == 2.0 * tech.t_iso_on, "2 t_ON");
    const double gap = expanded.total - base.total;
    c.expect(std::abs(gap - 2.0 * tech.t_iso_on) <= 4 * std::numeric_limits<double>::epsilon() *
                            expanded.total,
            "worst('11') - baseline worst = 2 t_ON");
    return c.outcome("dims (3,2)/(4,2)/(3,4)/(4,4), weights 6/8/12/16, iso 0/1/1/2 t_ON");
}

// ------------------------------------------------------------------ 3

Outcome two_path_theorem()
{
    Check c;
    std::mt19937_64 rng(3);
    const auto base = CrossbarSpec::baseline(4);
    const CrossbarSpec opt{4, 1, 1, 4, 4, Control::Double};
    const Cell near{0, 0}, far{3, 3};
    double worst_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto tech = random_tech(rng);
        const double r_wl = tech.r_wordline_unit, c_wl = tech.c_wordline_unit;
        const double r_bl = tech.r_bitline_unit, c_bl = tech.c_bitline_unit;
        const double D = elmore(1, 4, r_wl, c_wl) + elmore(1, 4, r_bl, c_bl);
        const double delta_big = elmore(4, 4, r_wl, c_wl) + elmore(4, 4, r_bl, c_bl) - D;
        const double delta_small = (73000.0 - 1500.0) * tech.c_sense;

        const auto adverse = latency_stats(
                two_cell(base, near, StateLabel::LRS1, far, StateLabel::HRS), tech).aggregate;
        const auto optimized = latency_stats(
                two_cell(opt, near, StateLabel::HRS, far, StateLabel::LRS1), tech).aggregate;
        const double want_a = delta_big + delta_small;
        const double want_o = std::abs(delta_big - delta_small);
        worst_err = std::max({worst_err, std::abs(adverse.diff - want_a) / want_a,
                std::abs(optimized.diff - want_o) / want_o});
        c.expect(rel_close(adverse.diff, want_a, 1e-12),
                fmt::format("adverse diff {} vs {}", adverse.diff, want_a));
        c.expect(rel_close(optimized.diff, want_o, 1e-12),
                fmt::format("optimized diff {} vs {}", optimized.diff, want_o));
    }
    return c.outcome(fmt::format("1000 draws, max relative error {:.2e}", worst_err));
}

// ------------------------------------------------------------------ 4

Outcome average_latency_formula()
{
    Check c;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> count(1, 200);
    std::uniform_int_distribution<std::size_t> size(4, 128);
    double worst_err = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto tech = random_tech(rng);
        const std::size_t n_side = size(rng);
        const std::size_t m = count(rng);
        std::size_t n = count(rng);
        if (n == m)
        {
            ++n;
        }
        std::uniform_int_distribution<std::size_t> pick(1, n_side - 1);
        const Cell near{0, 0};
        const Cell far{pick(rng), pick(rng)};
        const CrossbarSpec base = CrossbarSpec::baseline(n_side);
        const CrossbarSpec opt{n_side, 1, 0, n_side, n_side, Control::Double};

        // The LRS synapse sees m spikes and the HRS synapse n spikes. In
        // two_cell, neuron 1 drives the near cell and neuron 2 the far one.
        auto trains_for = [](std::size_t near_spikes, std::size_t far_spikes) {
            std::vector<SpikeTrain> trains{{1, {}}, {2, {}}};
            for (std::size_t i = 0; i < near_spikes; ++i)
            {
                trains[0].times.push_back(static_cast<double>(i) * 1e-3);
            }
            for (std::size_t i = 0; i < far_spikes; ++i)
            {
                trains[1].times.push_back(static_cast<double>(i) * 1e-3);
            }
            return trains;
        };
        auto mean_latency = [&](const Placement &p, const std::vector<SpikeTrain> &trains) {
            std::vector<double> samples;
            for (const auto &a : propagate(p, trains, tech))
            {
                samples.insert(samples.end(), a.times.size(), a.latency);
            }
            return LatencyStats::from_samples(samples).mean;
        };
        const double adverse =
                mean_latency(two_cell(base, near, StateLabel::LRS1, far, StateLabel::HRS),
                        trains_for(m, n));
        const double optimized =
                mean_latency(two_cell(opt, near, StateLabel::HRS, far, StateLabel::LRS1),
                        trains_for(n, m));
        const double delta =
                path_latency(far, StateLabel::LRS1, Configuration::c11(), base, tech)
                        .parasitic_component -
                path_latency(near, StateLabel::LRS1, Configuration::c11(), base, tech)
                        .parasitic_component;
        const double formula = average_latency_delta(m, n, delta);
        const double simulated = adverse - optimized;
        worst_err = std::max(worst_err, std::abs(simulated - formula) / std::abs(formula));
        c.expect(rel_close(simulated, formula, 1e-9),
                fmt::format("m={} n={}: {} vs {}", m, n, simulated, formula));
    }
    return c.outcome(fmt::format("100 draws, max relative error {:.2e}", worst_err));
}

// ------------------------------------------------------------------ 5

Cluster random_cluster(std::mt19937_64 &rng, int id)
{
    std::uniform_int_distribution<std::size_t> side(1, 64);
    std::uniform_real_distribution<double> density(0.05, 0.6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Cluster c;
    c.id = id;
    const auto pre = side(rng);
    const auto post = side(rng);
    for (std::size_t i = 0; i < pre; ++i)
    {
        c.pre_neurons.push_back(static_cast<NeuronId>(i));
    }
    for (std::size_t j = 0; j < post; ++j)
    {
        c.post_neurons.push_back(static_cast<NeuronId>(1000 + j));
    }
    const double d = density(rng);
    for (std::size_t i = 0; i < pre; ++i)
    {
        for (std::size_t j = 0; j < post; ++j)
        {
            if (u(rng) < d)
            {
                c.synapses.push_back({i, j, kAllStates[rng() % 4]});
            }
        }
    }
    if (c.synapses.empty())
    {
        c.synapses.push_back({0, 0, StateLabel::HRS});
    }
    return c;
}

Outcome mapper_soundness()
{
    Check c;
    const CrossbarSpec spec{128, 64, 64, 96, 96, Control::Double};
    std::map<std::string, std::size_t> histogram;
    std::size_t synapses = 0;
    for (int seed = 0; seed < 1000; ++seed)
    {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto cluster = random_cluster(rng, seed);
        const auto a = assign_cluster(cluster, spec);
        const auto config = select_configuration(cluster, a, spec);
        ++histogram[config.name()];
        const auto dims = dims_oracle(config.name(), spec);

        std::size_t region_bad = 0, outside = 0;
        for (const auto &s : cluster.synapses)
        {
            const auto cell = a.cell_of(s);
            const bool in_a = cell.row < spec.n_h && cell.col < spec.n_h;
            const bool in_b =
                    cell.row >= spec.n - spec.n_l && cell.col >= spec.n - spec.n_l;
            if ((in_a && s.state != StateLabel::HRS) ||
                    (in_b && s.state != StateLabel::LRS1))
            {
                ++region_bad;
            }
            if (cell.row >= dims.rows || cell.col >= dims.cols)
            {
                ++outside;
            }
        }
        synapses += cluster.synapses.size();
        c.expect(region_bad == 0, fmt::format("seed {}: {} region violations", seed, region_bad));
        c.expect(outside == 0, fmt::format("seed {}: {} cells outside '{}'", seed, outside,
                                       config.name()));

        const std::set<std::size_t> rows(a.row_of_pre.begin(), a.row_of_pre.end());
        const std::set<std::size_t> cols(a.col_of_post.begin(), a.col_of_post.end());
        c.expect(rows.size() == cluster.pre_neurons.size() &&
                        cols.size() == cluster.post_neurons.size(),
                fmt::format("seed {}: shared rows or columns", seed));

        // Brute force: no legal configuration with less static area holds
        // every used cell.
        const auto weight = dims.rows * dims.cols;
        for (const char *other : {"00", "01", "10", "11"})
        {
            const auto d = dims_oracle(other, spec);
            bool holds = true;
            for (const auto &s : cluster.synapses)
            {
                const auto cell = a.cell_of(s);
                holds = holds && cell.row < d.rows && cell.col < d.cols;
            }
            c.expect(!(holds && d.rows * d.cols < weight),
                    fmt::format("seed {}: '{}' is smaller than chosen '{}'", seed, other,
                            config.name()));
        }
    }
    return c.outcome(fmt::format("1000 clusters, {} synapses, configs 00={} 01={} 10={} 11={}",
            synapses, histogram["00"], histogram["01"], histogram["10"], histogram["11"]));
}

// ------------------------------------------------------------------ 6

Outcome expanded_minimization()
{
    Check c;
    std::size_t optimized_total = 0, region_free_total = 0, random_total = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        SyntheticParams p;
        p.clusters = 8;
        p.pre_min = 8;
        p.pre_max = 64;
        p.post_min = 8;
        p.post_max = 64;
        p.density = 0.25;
        p.seed = seed;
        const auto w = generate_synthetic(p);

        Hardware regions;
        regions.crossbar_count = p.clusters;
        regions.spec = CrossbarSpec{128, 64, 64, 96, 96, Control::Double};
        Hardware plain = regions;
        plain.spec.n_h = 0;
        plain.spec.n_l = 0;

        const auto optimized = map_network(w.network, regions).config_count(Configuration::c11());
        const auto region_free = map_network(w.network, plain).config_count(Configuration::c11());
        const auto random =
                map_network_random(w.network, plain, seed).config_count(Configuration::c11());
        optimized_total += optimized;
        region_free_total += region_free;
        random_total += random;
        c.expect(optimized <= random,
                fmt::format("seed {}: optimized {} > random {}", seed, optimized, random));
        c.expect(region_free <= random,
                fmt::format("seed {}: region-free {} > random {}", seed, region_free, random));
    }
    return c.outcome(fmt::format("'11' crossbars over 100 networks: optimized {} "
                                 "(region-free {}), random {}",
            optimized_total, region_free_total, random_total));
}

// ------------------------------------------------------------------ 7

Outcome energy_ordering()
{
    Check c;
    const CrossbarSpec spec{4, 0, 0, 3, 2, Control::Double};
    const auto tech = tech_preset("45nm");
    Activity activity;
    activity.duration = 0.5;
    activity.spikes_per_neuron[1] = 40;
    activity.spike_count = 60;
    activity.routed_spike_hops = 9;
    std::map<std::string, double> total;
    for (auto config : kAllConfigurations)
    {
        CrossbarPlacement x;
        x.cluster = 0;
        x.spec = spec;
        x.config = config;
        x.row_of_pre[1] = 0;
        x.col_of_post[2] = 0;
        x.synapses.push_back({1, 2, StateLabel::LRS2, {0, 0}});
        Placement p;
        p.spec = spec;
        p.crossbars.push_back(x);
        const auto e = energy_report(p, activity, tech);
        total[config.name()] = e.total_j;
        c.expect(e.static_j == static_cast<double>(static_energy_weight(config, spec)) *
                                tech.leakage_per_cell * activity.duration,
                "static energy " + config.name());
    }
    c.expect(total["00"] < total["01"] && total["01"] < total["11"], "00 < 01 < 11");
    c.expect(total["00"] < total["10"] && total["10"] < total["11"], "00 < 10 < 11");

    const auto tech16 = tech_preset("16nm");
    const auto neuron = IFNeuron::with_default_increments(tech16);
    double worst_ratio = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        SyntheticParams p;
        p.clusters = 5;
        p.pre_min = 8;
        p.pre_max = 96;
        p.post_min = 8;
        p.post_max = 96;
        p.density = 0.1;
        p.seed = seed;
        const auto w = generate_synthetic(p);
        Hardware hw;
        hw.crossbar_count = p.clusters;
        hw.spec = CrossbarSpec{128, 16, 16, 80, 64, Control::Double};
        const auto dbl = map_network(w.network, hw);
        hw.spec.control = Control::Single;
        const auto sgl = map_network(w.network, hw);
        const double e_double = simulate(dbl, w.trains, 1.0, tech16, neuron).energy.total_j;
        const double e_single = simulate(sgl, w.trains, 1.0, tech16, neuron).energy.total_j;
        worst_ratio = std::max(worst_ratio, e_double / e_single);
        c.expect(e_double <= e_single, fmt::format("seed {}: double {} > single {}", seed,
                                               e_double, e_single));
    }
    return c.outcome(fmt::format(
            "weights 6/8/12/16 order holds; double/single energy <= {:.4f} on 20 workloads",
            worst_ratio));
}

// ------------------------------------------------------------------ 8

Outcome technology_direction()
{
    Check c;
    std::string summary;
    for (const auto &name : tech_preset_names())
    {
        const auto tech = tech_preset(name);
        const auto base = extreme_latency_stats(CrossbarSpec::baseline(128),
                Configuration::c11(), tech);
        const auto opt = extreme_latency_stats(CrossbarSpec{128, 64, 64, 128, 128,
                                                       Control::Double},
                Configuration::c11(), tech);
        c.expect(opt.ratio > base.ratio, name + ": ratio not closer to 1");
        summary += fmt::format("{} {:.4f}->{:.4f} ", name, base.ratio, opt.ratio);

        const std::vector<std::size_t> nh{0, 8, 16, 24, 32, 40, 48, 56, 64};
        const std::vector<std::size_t> nl{0, 16, 32, 64};
        const auto rows = sweep_nhnl(128, tech, nh, nl);
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (i % nh.size() != 0)
            {
                c.expect(rows[i].variation <= rows[i - 1].variation,
                        fmt::format("{}: variation rises at N_h={} N_l={}", name, rows[i].n_h,
                                rows[i].n_l));
            }
        }
    }
    return c.outcome("best/worst ratio baseline->regions: " + summary);
}

// ------------------------------------------------------------------ 9

Outcome dse_shape()
{
    Check c;
    SyntheticParams p;
    p.clusters = 6;
    p.pre_min = 40;
    p.pre_max = 96;
    p.post_min = 40;
    p.post_max = 96;
    p.density = 0.15;
    p.seed = 9;
    const auto w = generate_synthetic(p);
    std::size_t largest = 0;
    for (const auto &cl : w.network.clusters)
    {
        largest = std::max({largest, cl.pre_neurons.size(), cl.post_neurons.size()});
    }
    c.expect(largest <= 96 && largest > 80, fmt::format("workload largest side {}", largest));

    const auto tech = tech_preset("16nm");
    SweepOptions options;
    options.seed = 9;
    options.neuron = IFNeuron::with_default_increments(tech);
    const std::vector<std::size_t> values{64, 72, 80, 96, 112, 128};
    const auto grid = square_grid(values);
    const std::vector<NamedNetwork> nets{{"synthetic", w.network}};
    const CrossbarSpec base{128, 0, 0, 128, 128, Control::Single};
    const auto sweep = sweep_pq(nets, base, tech, grid, options).front();

    for (const auto &a : sweep)
    {
        c.expect(a.feasible, fmt::format("({},{}) infeasible", a.spec.p, a.spec.q));
        for (const auto &b : sweep)
        {
            if (a.expanded_fraction == 0.0 && b.expanded_fraction == 0.0 &&
                    a.spec.p * a.spec.q < b.spec.p * b.spec.q)
            {
                c.expect(a.norm_energy <= b.norm_energy,
                        fmt::format("energy ({},{}) > ({},{})", a.spec.p, a.spec.q, b.spec.p,
                                b.spec.q));
            }
        }
    }

    auto at = [&](std::size_t v) {
        return *std::find_if(sweep.begin(), sweep.end(),
                [&](const SweepPoint &s) { return s.spec.p == v && s.spec.q == v; });
    };
    std::string knee = "none";
    for (std::size_t i = values.size() - 1; i > 0; --i)
    {
        const auto prev = at(values[i]);
        const auto here = at(values[i - 1]);
        if (here.expanded_fraction > 0.0 && prev.expanded_fraction == 0.0)
        {
            knee = fmt::format("P=Q={} (latency {:.4f} -> {:.4f})", values[i - 1],
                    prev.norm_latency, here.norm_latency);
            c.expect(here.norm_latency > prev.norm_latency, "no latency increase at knee");
            break;
        }
    }
    c.expect(knee != "none", "no expanded point on the diagonal");
    const auto selected = select_tradeoff(std::vector<std::vector<SweepPoint>>{sweep});
    return c.outcome(fmt::format("36 points, knee at {}, energy at P=Q=96 {:.4f}, selected ({},{})",
            knee, at(96).norm_energy, selected.first, selected.second));
}

// ------------------------------------------------------------------ 10

Outcome isi_demo()
{
    Check c;
    std::ifstream in(fs::path(NVXBAR_DATA_DIR) / "fixtures" / "isi_demo.json");
    const auto j = nlohmann::json::parse(in);
    IFNeuron neuron;
    neuron.v_threshold = j["neuron"]["v_threshold"].get<double>();
    neuron.v_increment_per_state.fill(j["neuron"]["increment"].get<double>());
    neuron.leak_per_second = j["neuron"]["leak_per_second"].get<double>();
    neuron.refractory = j["neuron"]["refractory"].get<double>();

    std::map<int, std::vector<double>> inputs;
    for (const auto &input : j["inputs"])
    {
        for (double t : input["times_us"])
        {
            inputs[input["neuron"].get<int>()].push_back(t * 1e-6);
        }
    }
    auto fire = [&](const std::map<int, std::vector<double>> &trains) {
        std::vector<Arrival> arrivals;
        for (const auto &[id, times] : trains)
        {
            for (double t : times)
            {
                arrivals.push_back({t, StateLabel::LRS1});
            }
        }
        std::stable_sort(arrivals.begin(), arrivals.end(),
                [](const Arrival &a, const Arrival &b) { return a.time < b.time; });
        return if_neuron_fire(neuron, arrivals).times;
    };
    const auto undelayed = fire(inputs);
    auto delayed_inputs = inputs;
    const auto &d = j["delayed"];
    delayed_inputs[d["neuron"].get<int>()][d["spike"].get<std::size_t>()] +=
            d["delay_us"].get<double>() * 1e-6;
    const auto delayed = fire(delayed_inputs);
    c.expect(undelayed.size() == 1, fmt::format("{} undelayed spikes", undelayed.size()));
    c.expect(delayed.empty(), fmt::format("{} delayed spikes", delayed.size()));

    // Dyadic times keep every subtraction exact.
    const double t1 = 1.0, t2 = 3.0, x = 0.25, y = 0.75, delta = 0.125;
    const std::vector<double> input{t1, t2};
    const std::vector<double> out_a{t1 + x, t2 + y};
    const std::vector<double> out_b{t1 + x + delta, t2 + y};
    c.expect(isi_distortion(input, out_a) == y - x, "distortion y-x");
    c.expect(isi_distortion(input, out_b) == y - x - delta, "distortion y-x-delta");
    return c.outcome(fmt::format("undelayed {} spike at {:.0f} us, delayed {} spikes",
            undelayed.size(), undelayed.empty() ? 0.0 : undelayed.front() * 1e6,
            delayed.size()));
}

// ------------------------------------------------------------------ 11

Outcome die_area()
{
    Check c;
    const auto o = die_area_overhead(128);
    const double height = o.height_fraction * 100.0;
    const double width = o.width_fraction * 100.0;
    c.expect(std::abs(height - 1.83) <= 0.05, fmt::format("height {}%", height));
    c.expect(std::abs(width - 1.01) <= 0.05, fmt::format("width {}%", width));
    return c.outcome(fmt::format("height {:.4f}%, width {:.4f}%", height, width));
}

// ------------------------------------------------------------------ 12

std::map<std::string, std::string> snapshot(const fs::path &dir)
{
    std::map<std::string, std::string> files;
    for (const auto &entry : fs::recursive_directory_iterator(dir))
    {
        if (entry.is_regular_file())
        {
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            files[fs::relative(entry.path(), dir).string()] = ss.str();
        }
    }
    return files;
}

Outcome determinism()
{
    Check c;
    const fs::path dir = fs::temp_directory_path() / "nvxbar_acceptance_determinism";
    const std::string cli = NVXBAR_CLI_PATH;
    const std::string d = dir.string();
    const std::vector<std::string> commands{
            fmt::format("'{}' gen --clusters 4 --pre 8:48 --post 8:48 --density 0.3 --seed 12 "
                        "--duration 0.5 --network-out '{}/net.json' --spikes-out "
                        "'{}/spikes.csv' > '{}/gen.txt'",
                    cli, d, d, d),
            fmt::format("'{}' map --network '{}/net.json' --spec 128,16,16,96,96 --out "
                        "'{}/placement.json' > '{}/map.txt'",
                    cli, d, d, d),
            fmt::format("'{}' map --network '{}/net.json' --spec 128,0,0,96,96 --mapper random "
                        "--seed 4 --out '{}/random.json' > '{}/map_random.txt'",
                    cli, d, d, d),
            fmt::format("'{}' simulate --placement '{}/placement.json' --spikes '{}/spikes.csv' "
                        "--duration 0.5 --format both --out '{}/sim' > '{}/sim.txt'",
                    cli, d, d, d, d),
            fmt::format("'{}' dse --networks '{}/net.json' --spec 128,0,0 --grid 64,96,128 "
                        "--seed 5 --duration 0.2 --nh-grid 0,32,64 --nl-grid 0,32 --out "
                        "'{}/dse.csv' --nhnl-out '{}/nhnl.csv' > '{}/dse.txt'",
                    cli, d, d, d, d),
    };
    std::vector<std::map<std::string, std::string>> runs;
    for (int run = 0; run < 2; ++run)
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
        for (const auto &command : commands)
        {
            const int status = std::system(command.c_str());
            c.expect(status == 0, fmt::format("run {} exit {}: {}", run, status, command));
        }
        runs.push_back(snapshot(dir));
    }
    fs::remove_all(dir);
    c.expect(runs[0].size() >= 10, fmt::format("only {} output files", runs[0].size()));
    c.expect(runs[0].size() == runs[1].size(), "file sets differ");
    for (const auto &[name, bytes] : runs[0])
    {
        const auto it = runs[1].find(name);
        c.expect(it != runs[1].end() && it->second == bytes, name + " differs");
    }
    return c.outcome(fmt::format("{} files byte-identical across two runs", runs[0].size()));
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        std::string name;
        std::function<Outcome()> run;
        double budget_s; // 0 = no runtime bound
    };
    const std::vector<Criterion> criteria{
            {1, "formula exactness", formula_exactness, 1.0},
            {2, "configuration table", configuration_table, 1.0},
            {3, "two-path theorem", two_path_theorem, 1.0},
            {4, "average-latency formula", average_latency_formula, 0.0},
            {5, "mapper soundness", mapper_soundness, 10.0},
            {6, "'11' minimization", expanded_minimization, 0.0},
            {7, "energy ordering", energy_ordering, 0.0},
            {8, "technology-optimization direction", technology_direction, 0.0},
            {9, "DSE shape", dse_shape, 60.0},
            {10, "IF-neuron ISI demo", isi_demo, 0.0},
            {11, "die-area overhead", die_area, 0.0},
            {12, "determinism", determinism, 0.0},
    };

    int failures = 0;
    for (const auto &criterion : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try
        {
            outcome = criterion.run();
        }
        catch (const std::exception &e)
        {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_s > 0.0 && seconds >= criterion.budget_s)
        {
            outcome.pass = false;
            outcome.detail += fmt::format("; over the {:.0f} s budget", criterion.budget_s);
        }
        failures += outcome.pass ? 0 : 1;
        std::cout << fmt::format("[{}] criterion {}: {} ({:.2f} s) {}\n",
                outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name, seconds,
                outcome.detail)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures,
            criteria.size());
    return failures;
}
