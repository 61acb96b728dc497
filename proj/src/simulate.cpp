#include "nvxbar/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "nvxbar/error.hpp"

namespace nvxbar {

namespace {

std::string path_name(Cell c)
{
    // Reports use the 1-based t_{i,j} naming.
    return fmt::format("t_{{{},{}}}", c.row + 1, c.col + 1);
}

void require_two(std::span<const double> times)
{
    if (times.size() < 2)
    {
        throw TooFewSpikes(fmt::format(
                "ISI needs at least two spikes, got {}", times.size()));
    }
}

} // namespace

IFNeuron IFNeuron::with_default_increments(const TechnologyParams &tech)
{
    IFNeuron n;
    const double lrs1 = tech.resistance(StateLabel::LRS1);
    for (auto s : kAllStates)
    {
        n.v_increment_per_state[index_of(s)] = 0.8 * lrs1 / tech.resistance(s);
    }
    return n;
}

void IFNeuron::validate() const
{
    if (!(v_threshold > 0.0))
    {
        throw InvalidParams("neuron threshold must be positive");
    }
    for (double inc : v_increment_per_state)
    {
        if (!(inc > 0.0))
        {
            throw InvalidParams("neuron increments must be positive");
        }
    }
    if (!(leak_per_second >= 0.0) || !(refractory >= 0.0))
    {
        throw InvalidParams("neuron leak and refractory period must be >= 0");
    }
}

LatencyStats LatencyStats::from_samples(std::span<const double> latencies)
{
    std::vector<Cell> cells(latencies.size());
    return from_cells(cells, latencies);
}

LatencyStats LatencyStats::from_cells(std::span<const Cell> cells,
        std::span<const double> latencies)
{
    if (latencies.empty())
    {
        throw EmptyPlacement("no latency samples");
    }
    LatencyStats s;
    s.count = latencies.size();
    std::size_t best = 0;
    std::size_t worst = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < latencies.size(); ++i)
    {
        if (latencies[i] < latencies[best])
        {
            best = i;
        }
        if (latencies[i] > latencies[worst])
        {
            worst = i;
        }
        sum += latencies[i];
    }
    s.best = latencies[best];
    s.worst = latencies[worst];
    s.best_cell = cells[best];
    s.worst_cell = cells[worst];
    s.diff = s.worst - s.best;
    s.ratio = s.worst > 0.0 ? s.best / s.worst : 1.0;
    s.mean = std::clamp(sum / static_cast<double>(s.count), s.best, s.worst);
    return s;
}

double compute_isi(std::span<const double> times)
{
    require_two(times);
    double sum = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
    {
        sum += times[i] - times[i - 1];
    }
    return sum / static_cast<double>(times.size() - 1);
}

double compute_isi(const SpikeTrain &train) { return compute_isi(train.times); }

double isi_distortion(std::span<const double> input, std::span<const double> output)
{
    require_two(input);
    require_two(output);
    return std::abs(compute_isi(output) - compute_isi(input));
}

double isi_distortion(const SpikeTrain &input, const SpikeTrain &output)
{
    return isi_distortion(std::span<const double>(input.times),
            std::span<const double>(output.times));
}

std::vector<SynapseArrivals> propagate(const Placement &placement,
        std::span<const SpikeTrain> trains, const TechnologyParams &tech)
{
    std::map<NeuronId, const SpikeTrain *> by_neuron;
    for (const auto &t : trains)
    {
        by_neuron[t.neuron] = &t;
    }

    std::vector<SynapseArrivals> out;
    std::set<NeuronId> known;
    for (const auto &xbar : placement.crossbars)
    {
        if (xbar.power_gated())
        {
            continue;
        }
        for (const auto &[neuron, row] : xbar.row_of_pre)
        {
            known.insert(neuron);
        }
        for (const auto &[neuron, col] : xbar.col_of_post)
        {
            known.insert(neuron);
        }
        for (const auto &s : xbar.synapses)
        {
            SynapseArrivals a;
            a.crossbar = xbar.crossbar;
            a.synapse = s;
            a.latency = path_latency(s.cell, s.state, xbar.config, xbar.spec, tech).total;
            if (const auto it = by_neuron.find(s.pre); it != by_neuron.end())
            {
                a.times.reserve(it->second->times.size());
                for (double t : it->second->times)
                {
                    a.times.push_back(t + a.latency);
                }
            }
            out.push_back(std::move(a));
        }
    }

    for (const auto &t : trains)
    {
        if (!t.times.empty() && !known.contains(t.neuron))
        {
            throw UnknownNeuron(fmt::format(
                    "neuron {} spikes but is not placed on any crossbar", t.neuron));
        }
    }
    return out;
}

SpikeTrain if_neuron_fire(const IFNeuron &neuron, std::span<const Arrival> arrivals,
        NeuronId id)
{
    SpikeTrain out{id, {}};
    double v = 0.0;
    double last = 0.0;
    double refractory_until = -std::numeric_limits<double>::infinity();
    bool started = false;
    for (const auto &a : arrivals)
    {
        if (started)
        {
            v = std::max(0.0, v - neuron.leak_per_second * (a.time - last));
        }
        started = true;
        last = a.time;
        if (a.time < refractory_until)
        {
            continue;
        }
        v += neuron.v_increment_per_state[index_of(a.state)];
        if (v >= neuron.v_threshold)
        {
            // Coincident threshold crossings collapse into one output spike.
            if (out.times.empty() || a.time > out.times.back())
            {
                out.times.push_back(a.time);
            }
            v = 0.0;
            refractory_until = a.time + neuron.refractory;
        }
    }
    return out;
}

LatencyStats extreme_latency_stats(const CrossbarSpec &spec, Configuration config,
        const TechnologyParams &tech)
{
    const auto dims = config_dimensions(config, spec);
    double best = std::numeric_limits<double>::infinity();
    double worst = -std::numeric_limits<double>::infinity();
    Cell best_cell;
    Cell worst_cell;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < dims.rows; ++r)
    {
        for (std::size_t c = 0; c < dims.cols; ++c)
        {
            const auto permitted = region_of(r, c, spec).permitted_states;
            for (auto s : kAllStates)
            {
                if (!permitted.contains(s))
                {
                    continue;
                }
                const double t =
                        path_latency_unchecked({r, c}, s, config, spec, tech).total;
                if (t < best)
                {
                    best = t;
                    best_cell = {r, c};
                }
                if (t > worst)
                {
                    worst = t;
                    worst_cell = {r, c};
                }
                sum += t;
                ++count;
            }
        }
    }
    LatencyStats out;
    out.best = best;
    out.worst = worst;
    out.best_cell = best_cell;
    out.worst_cell = worst_cell;
    out.diff = worst - best;
    out.ratio = worst > 0.0 ? best / worst : 1.0;
    out.count = count;
    out.mean = std::clamp(sum / static_cast<double>(count), best, worst);
    return out;
}

double variation(const LatencyStats &stats) noexcept { return 1.0 - stats.ratio; }

PlacementLatency latency_stats(const Placement &placement,
        const TechnologyParams &tech)
{
    PlacementLatency out;
    std::vector<double> all;
    std::vector<Cell> all_cells;
    std::map<int, LatencyStats> extremes_by_config;
    std::vector<LatencyStats> extremes;

    for (const auto &xbar : placement.crossbars)
    {
        if (xbar.power_gated() || xbar.synapses.empty())
        {
            out.per_crossbar.emplace_back();
            continue;
        }
        std::vector<double> latencies;
        std::vector<Cell> cells;
        for (const auto &s : xbar.synapses)
        {
            latencies.push_back(
                    path_latency(s.cell, s.state, xbar.config, xbar.spec, tech).total);
            cells.push_back(s.cell);
        }
        out.per_crossbar.push_back(LatencyStats::from_cells(cells, latencies));
        all.insert(all.end(), latencies.begin(), latencies.end());
        all_cells.insert(all_cells.end(), cells.begin(), cells.end());

        // Crossbars share one spec, so extremes only depend on the config.
        auto it = extremes_by_config.find(xbar.config.code());
        if (it == extremes_by_config.end() || !(xbar.spec == placement.spec))
        {
            it = extremes_by_config
                         .insert_or_assign(xbar.config.code(),
                                 extreme_latency_stats(xbar.spec, xbar.config, tech))
                         .first;
        }
        extremes.push_back(it->second);
    }
    if (all.empty())
    {
        throw EmptyPlacement("placement holds no synapses");
    }
    out.aggregate = LatencyStats::from_cells(all_cells, all);

    LatencyStats ext = extremes.front();
    double weighted = 0.0;
    std::size_t pairs = 0;
    for (const auto &e : extremes)
    {
        if (e.best < ext.best)
        {
            ext.best = e.best;
            ext.best_cell = e.best_cell;
        }
        if (e.worst > ext.worst)
        {
            ext.worst = e.worst;
            ext.worst_cell = e.worst_cell;
        }
        weighted += e.mean * static_cast<double>(e.count);
        pairs += e.count;
    }
    ext.count = pairs;
    ext.diff = ext.worst - ext.best;
    ext.ratio = ext.worst > 0.0 ? ext.best / ext.worst : 1.0;
    ext.mean = std::clamp(weighted / static_cast<double>(pairs), ext.best, ext.worst);
    out.extremes = ext;
    return out;
}

double average_latency_delta(std::size_t lrs_count, std::size_t hrs_count,
        double delta)
{
    if (lrs_count + hrs_count == 0)
    {
        throw EmptyCounts("m + n must be positive");
    }
    const auto m = static_cast<double>(lrs_count);
    const auto n = static_cast<double>(hrs_count);
    return (n - m) / (n + m) * delta;
}

int access_multiplier(Cell cell, Configuration config, const CrossbarSpec &spec)
{
    const bool far = (spec.has_row_partition() && cell.row >= spec.p) ||
            (spec.has_col_partition() && cell.col >= spec.q);
    if (!far)
    {
        return 1;
    }
    switch (config.code())
    {
    case 3:
        return 3;
    case 1:
    case 2:
        return 2;
    default:
        return 1;
    }
}

EnergyReport energy_report(const Placement &placement, const Activity &activity,
        const TechnologyParams &tech)
{
    if (!(activity.duration > 0.0) || !std::isfinite(activity.duration))
    {
        throw NegativeActivity(fmt::format(
                "activity duration must be positive, got {}", activity.duration));
    }
    EnergyReport e;
    for (const auto &xbar : placement.crossbars)
    {
        if (xbar.power_gated())
        {
            continue;
        }
        e.static_j += static_cast<double>(static_energy_weight(xbar.config, xbar.spec)) *
                tech.leakage_per_cell * activity.duration;
        for (const auto &s : xbar.synapses)
        {
            const auto it = activity.spikes_per_neuron.find(s.pre);
            if (it == activity.spikes_per_neuron.end() || it->second == 0)
            {
                continue;
            }
            const double t_access =
                    path_latency(s.cell, s.state, xbar.config, xbar.spec, tech).total;
            e.access_overhead_j += static_cast<double>(it->second) *
                    tech.p_wordline_raise * t_access *
                    access_multiplier(s.cell, xbar.config, xbar.spec);
        }
    }
    e.spike_j = static_cast<double>(activity.spike_count) * tech.e_spike;
    e.routing_j = static_cast<double>(activity.routed_spike_hops) * tech.e_route_hop;
    e.total_j = e.static_j + e.spike_j + e.routing_j + e.access_overhead_j;
    return e;
}

SimulationResult simulate(const Placement &placement,
        std::span<const SpikeTrain> trains, double duration,
        const TechnologyParams &tech, const IFNeuron &neuron)
{
    neuron.validate();
    for (const auto &t : trains)
    {
        t.validate();
    }

    SimulationResult result;
    result.latency = latency_stats(placement, tech);
    const auto arrivals = propagate(placement, trains, tech);

    struct Inputs
    {
        std::vector<std::pair<double, std::size_t>> arrivals; // (time, order)
        std::vector<StateLabel> states;
        std::vector<double> sent;
    };
    std::map<NeuronId, const SpikeTrain *> train_of;
    for (const auto &t : trains)
    {
        train_of[t.neuron] = &t;
    }
    std::map<NeuronId, Inputs> per_post;
    for (const auto &a : arrivals)
    {
        auto &in = per_post[a.synapse.post];
        if (a.times.empty())
        {
            continue;
        }
        const auto &sent = train_of.at(a.synapse.pre)->times;
        for (std::size_t k = 0; k < a.times.size(); ++k)
        {
            in.arrivals.emplace_back(a.times[k], in.states.size());
            in.states.push_back(a.synapse.state);
            in.sent.push_back(sent[k]);
        }
    }

    std::map<NeuronId, std::size_t> spikes_of;
    Activity activity;
    activity.duration = duration;
    for (const auto &t : trains)
    {
        activity.spikes_per_neuron[t.neuron] = t.times.size();
        spikes_of[t.neuron] = t.times.size();
        result.input_spikes += t.times.size();
    }

    std::size_t output_spikes = 0;
    for (auto &[post, in] : per_post)
    {
        std::sort(in.arrivals.begin(), in.arrivals.end());
        std::vector<Arrival> ordered;
        std::vector<double> arrival_times;
        ordered.reserve(in.arrivals.size());
        for (const auto &[time, idx] : in.arrivals)
        {
            ordered.push_back(Arrival{time, in.states[idx]});
            arrival_times.push_back(time);
        }
        auto fired = if_neuron_fire(neuron, ordered, post);
        output_spikes += fired.times.size();
        spikes_of[post] = fired.times.size();

        if (in.sent.size() >= 2)
        {
            std::sort(in.sent.begin(), in.sent.end());
            NeuronIsi row;
            row.neuron = post;
            row.input_spikes = in.sent.size();
            row.output_spikes = fired.times.size();
            row.isi_in = compute_isi(in.sent);
            row.isi_out = compute_isi(arrival_times);
            row.distortion = std::abs(row.isi_out - row.isi_in);
            result.isi.push_back(row);
        }
        result.outputs.push_back(std::move(fired));
    }

    activity.spike_count = result.input_spikes + output_spikes;
    for (const auto &r : placement.routes)
    {
        const auto it = spikes_of.find(r.src_neuron);
        if (it != spikes_of.end())
        {
            activity.routed_spike_hops += it->second * r.hops;
        }
    }
    result.energy = energy_report(placement, activity, tech);
    return result;
}

void to_json(nlohmann::json &j, const LatencyStats &s)
{
    j = nlohmann::json{{"best", s.best}, {"worst", s.worst}, {"diff", s.diff},
            {"ratio", s.ratio}, {"mean", s.mean}, {"count", s.count},
            {"best_path", path_name(s.best_cell)},
            {"worst_path", path_name(s.worst_cell)}};
}

void to_json(nlohmann::json &j, const EnergyReport &e)
{
    j = nlohmann::json{{"static_j", e.static_j}, {"spike_j", e.spike_j},
            {"routing_j", e.routing_j}, {"access_overhead_j", e.access_overhead_j},
            {"total_j", e.total_j}};
}

nlohmann::json simulation_json(const SimulationResult &result,
        const Placement &placement)
{
    auto per_crossbar = nlohmann::json::array();
    for (std::size_t i = 0; i < placement.crossbars.size(); ++i)
    {
        const auto &xbar = placement.crossbars[i];
        nlohmann::json entry{{"id", xbar.crossbar},
                {"config", xbar.config.name()},
                {"power_gated", xbar.power_gated()}};
        entry["stats"] = result.latency.per_crossbar[i]
                ? nlohmann::json(*result.latency.per_crossbar[i])
                : nlohmann::json(nullptr);
        per_crossbar.push_back(std::move(entry));
    }
    auto isi = nlohmann::json::array();
    for (const auto &row : result.isi)
    {
        isi.push_back({{"neuron", row.neuron}, {"input_spikes", row.input_spikes},
                {"output_spikes", row.output_spikes}, {"isi_in", row.isi_in},
                {"isi_out", row.isi_out}, {"distortion", row.distortion}});
    }
    std::size_t output_spikes = 0;
    for (const auto &t : result.outputs)
    {
        output_spikes += t.times.size();
    }
    return nlohmann::json{
            {"latency",
                    {{"aggregate", result.latency.aggregate},
                            {"extremes", result.latency.extremes},
                            {"variation", variation(result.latency.extremes)},
                            {"per_crossbar", per_crossbar}}},
            {"energy", result.energy},
            {"spikes", {{"input", result.input_spikes}, {"output", output_spikes}}},
            {"isi", isi}};
}

void write_csv_reports(const SimulationResult &result, const Placement &placement,
        const std::filesystem::path &dir)
{
    auto open = [&](const char *name) {
        std::ofstream out(dir / name);
        if (!out)
        {
            throw ParseError(fmt::format("cannot write {}", (dir / name).string()));
        }
        return out;
    };

    auto latency = open("latency.csv");
    latency << "crossbar,cluster,config,synapses,best_s,worst_s,diff_s,ratio,mean_s,"
               "best_path,worst_path\n";
    auto row = [&](const std::string &id, const std::string &cluster,
                       const std::string &config, const LatencyStats &s) {
        latency << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", id, cluster,
                config, s.count, s.best, s.worst, s.diff, s.ratio, s.mean,
                path_name(s.best_cell), path_name(s.worst_cell));
    };
    for (std::size_t i = 0; i < placement.crossbars.size(); ++i)
    {
        const auto &xbar = placement.crossbars[i];
        if (!result.latency.per_crossbar[i])
        {
            continue;
        }
        row(std::to_string(xbar.crossbar), std::to_string(*xbar.cluster),
                xbar.config.name(), *result.latency.per_crossbar[i]);
    }
    row("all", "", "", result.latency.aggregate);
    row("extremes", "", "", result.latency.extremes);

    auto energy = open("energy.csv");
    energy << "component,joules\n";
    energy << fmt::format("static,{}\nspike,{}\nrouting,{}\naccess_overhead,{}\ntotal,{}\n",
            result.energy.static_j, result.energy.spike_j, result.energy.routing_j,
            result.energy.access_overhead_j, result.energy.total_j);

    auto isi = open("isi.csv");
    isi << "neuron,input_spikes,output_spikes,isi_in_s,isi_out_s,distortion_s\n";
    for (const auto &r : result.isi)
    {
        isi << fmt::format("{},{},{},{},{},{}\n", r.neuron, r.input_spikes,
                r.output_spikes, r.isi_in, r.isi_out, r.distortion);
    }
}

} // namespace nvxbar
