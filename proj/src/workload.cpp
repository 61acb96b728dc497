#include "nvxbar/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "nvxbar/error.hpp"

namespace nvxbar {

void Cluster::validate() const
{
    if (synapses.empty())
    {
        throw ValidationError(fmt::format("cluster {}: no synapses", id));
    }
    std::set<NeuronId> seen_pre(pre_neurons.begin(), pre_neurons.end());
    std::set<NeuronId> seen_post(post_neurons.begin(), post_neurons.end());
    if (seen_pre.size() != pre_neurons.size())
    {
        throw ValidationError(
                fmt::format("cluster {}: duplicate presynaptic neuron", id));
    }
    if (seen_post.size() != post_neurons.size())
    {
        throw ValidationError(
                fmt::format("cluster {}: duplicate postsynaptic neuron", id));
    }
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < synapses.size(); ++i)
    {
        const auto &s = synapses[i];
        if (s.pre >= pre_neurons.size() || s.post >= post_neurons.size())
        {
            throw ValidationError(fmt::format(
                    "cluster {}: synapse {} index ({},{}) out of range", id, i,
                    s.pre, s.post));
        }
        if (!pairs.emplace(s.pre, s.post).second)
        {
            throw ValidationError(fmt::format(
                    "cluster {}: duplicate synapse ({},{})", id, s.pre, s.post));
        }
    }
}

const Cluster *Network::find_cluster(int id) const noexcept
{
    for (const auto &c : clusters)
    {
        if (c.id == id)
        {
            return &c;
        }
    }
    return nullptr;
}

void Network::validate() const
{
    std::set<int> ids;
    for (const auto &c : clusters)
    {
        if (!ids.insert(c.id).second)
        {
            throw ValidationError(fmt::format("duplicate cluster id {}", c.id));
        }
        c.validate();
    }
    auto has_neuron = [](const Cluster &c, NeuronId n) {
        return std::find(c.pre_neurons.begin(), c.pre_neurons.end(), n) !=
                        c.pre_neurons.end() ||
                std::find(c.post_neurons.begin(), c.post_neurons.end(), n) !=
                        c.post_neurons.end();
    };
    for (std::size_t i = 0; i < routes.size(); ++i)
    {
        const auto &r = routes[i];
        const auto *src = find_cluster(r.src_cluster);
        const auto *dst = find_cluster(r.dst_cluster);
        if (src == nullptr || dst == nullptr)
        {
            throw ValidationError(fmt::format(
                    "route {}: unknown cluster ({} -> {})", i, r.src_cluster,
                    r.dst_cluster));
        }
        if (!has_neuron(*src, r.src_neuron) || !has_neuron(*dst, r.dst_neuron))
        {
            throw ValidationError(fmt::format(
                    "route {}: neuron not in its cluster ({}:{} -> {}:{})", i,
                    r.src_cluster, r.src_neuron, r.dst_cluster, r.dst_neuron));
        }
        if (r.hops < 1)
        {
            throw ValidationError(fmt::format("route {}: hops must be >= 1", i));
        }
    }
}

void SpikeTrain::validate() const
{
    for (std::size_t i = 0; i < times.size(); ++i)
    {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i]))
        {
            throw ValidationError(fmt::format(
                    "neuron {}: spike time {} is negative or not finite", neuron,
                    times[i]));
        }
        if (i > 0 && !(times[i] > times[i - 1]))
        {
            throw ValidationError(fmt::format(
                    "neuron {}: spike times must strictly increase", neuron));
        }
    }
}

void to_json(nlohmann::json &j, const Cluster &c)
{
    auto synapses = nlohmann::json::array();
    for (const auto &s : c.synapses)
    {
        synapses.push_back({{"pre", s.pre}, {"post", s.post},
                {"state", std::string(to_string(s.state))}});
    }
    j = nlohmann::json{{"id", c.id}, {"pre", c.pre_neurons},
            {"post", c.post_neurons}, {"synapses", synapses}};
}

void from_json(const nlohmann::json &j, Cluster &c)
{
    c.id = j.at("id").get<int>();
    c.pre_neurons = j.at("pre").get<std::vector<NeuronId>>();
    c.post_neurons = j.at("post").get<std::vector<NeuronId>>();
    c.synapses.clear();
    for (const auto &s : j.at("synapses"))
    {
        c.synapses.push_back(Synapse{s.at("pre").get<std::size_t>(),
                s.at("post").get<std::size_t>(),
                parse_state(s.at("state").get<std::string>())});
    }
}

void to_json(nlohmann::json &j, const Route &r)
{
    j = nlohmann::json{{"src_cluster", r.src_cluster},
            {"src_neuron", r.src_neuron}, {"dst_cluster", r.dst_cluster},
            {"dst_neuron", r.dst_neuron}, {"hops", r.hops}};
}

void from_json(const nlohmann::json &j, Route &r)
{
    r.src_cluster = j.at("src_cluster").get<int>();
    r.src_neuron = j.at("src_neuron").get<NeuronId>();
    r.dst_cluster = j.at("dst_cluster").get<int>();
    r.dst_neuron = j.at("dst_neuron").get<NeuronId>();
    r.hops = j.at("hops").get<unsigned>();
}

void to_json(nlohmann::json &j, const Network &n)
{
    j = nlohmann::json{{"clusters", n.clusters}, {"routes", n.routes}};
}

void from_json(const nlohmann::json &j, Network &n)
{
    n.clusters = j.at("clusters").get<std::vector<Cluster>>();
    n.routes = j.value("routes", std::vector<Route>{});
}

Network load_network(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ParseError(fmt::format("cannot open network file {}", path.string()));
    }
    Network network;
    try
    {
        network = nlohmann::json::parse(in).get<Network>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
    network.validate();
    return network;
}

void save_network(const Network &network, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw ParseError(fmt::format("cannot write {}", path.string()));
    }
    out << nlohmann::json(network).dump(1) << '\n';
}

std::vector<SpikeTrain> load_spikes(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ParseError(fmt::format("cannot open spike file {}", path.string()));
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("neuron,time_us", 0) != 0)
    {
        throw ParseError(fmt::format(
                "{}: expected header 'neuron,time_us'", path.string()));
    }
    std::map<NeuronId, std::vector<double>> times;
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        if (line.empty())
        {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
        {
            throw ParseError(fmt::format("{}:{}: bad row '{}'", path.string(),
                    line_no, line));
        }
        NeuronId neuron = 0;
        const char *first = line.data();
        const auto [ptr, ec] = std::from_chars(first, first + comma, neuron);
        if (ec != std::errc{} || ptr != first + comma)
        {
            throw ParseError(fmt::format("{}:{}: bad row '{}'", path.string(),
                    line_no, line));
        }
        double time_us = 0.0;
        try
        {
            std::size_t used = 0;
            time_us = std::stod(line.substr(comma + 1), &used);
            if (used != line.size() - comma - 1)
            {
                throw std::invalid_argument("trailing characters");
            }
        }
        catch (const std::exception &)
        {
            throw ParseError(fmt::format("{}:{}: bad time in '{}'", path.string(),
                    line_no, line));
        }
        times[neuron].push_back(time_us * 1e-6);
    }

    std::vector<SpikeTrain> trains;
    for (auto &[neuron, t] : times)
    {
        std::sort(t.begin(), t.end());
        SpikeTrain train{neuron, std::move(t)};
        train.validate();
        trains.push_back(std::move(train));
    }
    return trains;
}

void save_spikes(std::span<const SpikeTrain> trains,
        const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw ParseError(fmt::format("cannot write {}", path.string()));
    }
    out << "neuron,time_us\n";
    for (const auto &train : trains)
    {
        for (double t : train.times)
        {
            out << fmt::format("{},{}\n", train.neuron, t * 1e6);
        }
    }
}

std::vector<StateLabel> quantize_weights(std::span<const double> conductances,
        const std::array<ResistanceState, 4> &states)
{
    std::vector<StateLabel> out;
    out.reserve(conductances.size());
    for (double g : conductances)
    {
        if (!(g > 0.0) || !std::isfinite(g))
        {
            throw NonPositiveWeight(fmt::format("conductance {} is not positive", g));
        }
        // States are ordered by increasing resistance, so scanning in order
        // and replacing only on a strictly smaller distance keeps the
        // lower-resistance state on ties.
        std::size_t best = 0;
        double best_distance = std::abs(g - 1.0 / states[0].ohms);
        for (std::size_t i = 1; i < states.size(); ++i)
        {
            const double d = std::abs(g - 1.0 / states[i].ohms);
            const double tie_band = 1e-12 * std::max(d, best_distance);
            if (d < best_distance - tie_band)
            {
                best = i;
                best_distance = d;
            }
        }
        out.push_back(states[best].label);
    }
    return out;
}

namespace {

void check_synthetic(const SyntheticParams &p)
{
    if (p.clusters < 1)
    {
        throw InvalidParams("need at least one cluster");
    }
    if (p.pre_min < 1 || p.pre_min > p.pre_max || p.post_min < 1 ||
            p.post_min > p.post_max)
    {
        throw InvalidParams(fmt::format("bad neuron ranges pre {}:{} post {}:{}",
                p.pre_min, p.pre_max, p.post_min, p.post_max));
    }
    if (!(p.density > 0.0 && p.density <= 1.0))
    {
        throw InvalidParams(fmt::format("density {} outside (0, 1]", p.density));
    }
    double sum = 0.0;
    for (double w : p.state_mix)
    {
        if (!(w >= 0.0))
        {
            throw InvalidParams("state mix entries must be non-negative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
    {
        throw InvalidParams(fmt::format("state mix sums to {}, not 1", sum));
    }
    if (!(p.spike_rate >= 0.0) || !(p.duration > 0.0))
    {
        throw InvalidParams("spike rate must be >= 0 and duration > 0");
    }
    if (p.max_hops < 1)
    {
        throw InvalidParams("max_hops must be >= 1");
    }
}

} // namespace

SyntheticWorkload generate_synthetic(const SyntheticParams &params)
{
    check_synthetic(params);
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<std::size_t> pre_dist(params.pre_min, params.pre_max);
    std::uniform_int_distribution<std::size_t> post_dist(
            params.post_min, params.post_max);
    std::bernoulli_distribution keep(params.density);
    std::discrete_distribution<int> state_dist(
            params.state_mix.begin(), params.state_mix.end());
    std::uniform_int_distribution<unsigned> hop_dist(1, params.max_hops);

    SyntheticWorkload out;
    NeuronId next_id = 0;
    for (std::size_t c = 0; c < params.clusters; ++c)
    {
        Cluster cluster;
        cluster.id = static_cast<int>(c);
        const std::size_t pre_count = pre_dist(rng);
        const std::size_t post_count = post_dist(rng);
        for (std::size_t i = 0; i < pre_count; ++i)
        {
            cluster.pre_neurons.push_back(next_id++);
        }
        for (std::size_t i = 0; i < post_count; ++i)
        {
            cluster.post_neurons.push_back(next_id++);
        }
        for (std::size_t i = 0; i < pre_count; ++i)
        {
            for (std::size_t j = 0; j < post_count; ++j)
            {
                if (params.density >= 1.0 || keep(rng))
                {
                    cluster.synapses.push_back(Synapse{
                            i, j, static_cast<StateLabel>(state_dist(rng))});
                }
            }
        }
        if (cluster.synapses.empty())
        {
            cluster.synapses.push_back(
                    Synapse{0, 0, static_cast<StateLabel>(state_dist(rng))});
        }
        out.network.clusters.push_back(std::move(cluster));
    }

    for (std::size_t c = 0; c + 1 < params.clusters; ++c)
    {
        const auto &src = out.network.clusters[c];
        const auto &dst = out.network.clusters[c + 1];
        std::uniform_int_distribution<std::size_t> target(0, dst.pre_neurons.size() - 1);
        for (NeuronId post : src.post_neurons)
        {
            out.network.routes.push_back(Route{src.id, post, dst.id,
                    dst.pre_neurons[target(rng)], hop_dist(rng)});
        }
    }

    const auto pre = presynaptic_neurons(out.network);
    out.trains = generate_spike_trains(pre, params.spike_rate, params.duration,
            params.seed ^ 0x9e3779b97f4a7c15ULL);
    return out;
}

std::vector<SpikeTrain> generate_spike_trains(std::span<const NeuronId> neurons,
        double rate, double duration, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<SpikeTrain> trains;
    trains.reserve(neurons.size());
    for (NeuronId n : neurons)
    {
        SpikeTrain train{n, {}};
        if (rate > 0.0)
        {
            std::exponential_distribution<double> gap(rate);
            double t = gap(rng);
            while (t < duration)
            {
                if (train.times.empty() || t > train.times.back())
                {
                    train.times.push_back(t);
                }
                t += gap(rng);
            }
        }
        trains.push_back(std::move(train));
    }
    return trains;
}

std::vector<NeuronId> presynaptic_neurons(const Network &network)
{
    std::set<NeuronId> ids;
    for (const auto &c : network.clusters)
    {
        ids.insert(c.pre_neurons.begin(), c.pre_neurons.end());
    }
    return {ids.begin(), ids.end()};
}

std::vector<Cluster> partition_simple(const Layer &layer, std::size_t n)
{
    if (n < 2)
    {
        throw DimensionTooSmall(fmt::format("crossbar dimension {} < 2", n));
    }
    if (layer.synapses.empty())
    {
        throw ValidationError("layer has no synapses");
    }

    std::map<std::pair<std::size_t, std::size_t>, std::vector<Synapse>> blocks;
    for (const auto &s : layer.synapses)
    {
        if (s.pre >= layer.pre_count || s.post >= layer.post_count)
        {
            throw ValidationError(fmt::format(
                    "layer synapse ({},{}) out of range", s.pre, s.post));
        }
        blocks[{s.pre / n, s.post / n}].push_back(s);
    }

    std::vector<Cluster> clusters;
    for (const auto &[key, synapses] : blocks)
    {
        std::set<std::size_t> pre_set;
        std::set<std::size_t> post_set;
        for (const auto &s : synapses)
        {
            pre_set.insert(s.pre);
            post_set.insert(s.post);
        }
        Cluster c;
        c.id = static_cast<int>(clusters.size());
        std::map<std::size_t, std::size_t> pre_index;
        std::map<std::size_t, std::size_t> post_index;
        for (auto p : pre_set)
        {
            pre_index[p] = c.pre_neurons.size();
            c.pre_neurons.push_back(static_cast<NeuronId>(p));
        }
        for (auto p : post_set)
        {
            post_index[p] = c.post_neurons.size();
            c.post_neurons.push_back(static_cast<NeuronId>(p));
        }
        for (const auto &s : synapses)
        {
            c.synapses.push_back(Synapse{pre_index[s.pre], post_index[s.post], s.state});
        }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

} // namespace nvxbar
