#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "nvxbar/states.hpp"
#include "nvxbar/techmodel.hpp"

namespace nvxbar {

using NeuronId = std::uint32_t;

/// Synapse inside a cluster. `pre` and `post` index the cluster's neuron
/// lists, not global neuron ids.
struct Synapse
{
    std::size_t pre{0};
    std::size_t post{0};
    StateLabel state{StateLabel::LRS1};

    bool operator==(const Synapse &) const = default;
};

struct Cluster
{
    int id{0};
    std::vector<NeuronId> pre_neurons;
    std::vector<NeuronId> post_neurons;
    std::vector<Synapse> synapses;

    /// Throws ValidationError naming the cluster.
    void validate() const;

    bool operator==(const Cluster &) const = default;
};

struct Route
{
    int src_cluster{0};
    NeuronId src_neuron{0};
    int dst_cluster{0};
    NeuronId dst_neuron{0};
    unsigned hops{1};

    bool operator==(const Route &) const = default;
};

struct Network
{
    std::vector<Cluster> clusters;
    std::vector<Route> routes;

    /// Throws ValidationError with the cluster or route locus.
    void validate() const;
    const Cluster *find_cluster(int id) const noexcept;

    bool operator==(const Network &) const = default;
};

/// Firing times of one neuron, in seconds, strictly increasing.
struct SpikeTrain
{
    NeuronId neuron{0};
    std::vector<double> times;

    void validate() const;
    bool operator==(const SpikeTrain &) const = default;
};

void to_json(nlohmann::json &j, const Cluster &c);
void from_json(const nlohmann::json &j, Cluster &c);
void to_json(nlohmann::json &j, const Route &r);
void from_json(const nlohmann::json &j, Route &r);
void to_json(nlohmann::json &j, const Network &n);
void from_json(const nlohmann::json &j, Network &n);

/// Throws ParseError (unreadable/malformed) or ValidationError.
Network load_network(const std::filesystem::path &path);
void save_network(const Network &network, const std::filesystem::path &path);

/// CSV with header `neuron,time_us`; rows grouped per neuron on load.
std::vector<SpikeTrain> load_spikes(const std::filesystem::path &path);
void save_spikes(std::span<const SpikeTrain> trains,
        const std::filesystem::path &path);

/// Maps each conductance (siemens) to the state with the nearest
/// conductance 1/R. Exact ties go to the lower-resistance state.
/// Throws NonPositiveWeight.
std::vector<StateLabel> quantize_weights(std::span<const double> conductances,
        const std::array<ResistanceState, 4> &states);

struct SyntheticParams
{
    std::size_t clusters{1};
    std::size_t pre_min{1};
    std::size_t pre_max{1};
    std::size_t post_min{1};
    std::size_t post_max{1};
    double density{1.0};
    /// Probability of LRS1, LRS2, LRS3, HRS.
    std::array<double, 4> state_mix{0.25, 0.25, 0.25, 0.25};
    double spike_rate{30.0}; // Hz
    double duration{1.0};    // s
    std::uint64_t seed{0};
    unsigned max_hops{4};
};

struct SyntheticWorkload
{
    Network network;
    std::vector<SpikeTrain> trains;
};

/// Random clustered network plus exponential inter-arrival spike trains for
/// every presynaptic neuron. Deterministic for a fixed seed. Throws
/// InvalidParams.
SyntheticWorkload generate_synthetic(const SyntheticParams &params);

/// Independent exponential inter-arrival trains on [0, duration).
std::vector<SpikeTrain> generate_spike_trains(std::span<const NeuronId> neurons,
        double rate, double duration, std::uint64_t seed);

/// Every presynaptic neuron of every cluster, ascending, deduplicated.
std::vector<NeuronId> presynaptic_neurons(const Network &network);

/// An unpartitioned layer, neurons numbered 0..count-1.
struct Layer
{
    std::size_t pre_count{0};
    std::size_t post_count{0};
    std::vector<Synapse> synapses;
};

/// Greedy tiling of a layer into n x n blocks; one cluster per non-empty
/// block, keeping only the neurons that have a synapse in the block.
/// Neuron ids are the layer indices. Throws ValidationError on an empty
/// synapse list and DimensionTooSmall for n < 2.
std::vector<Cluster> partition_simple(const Layer &layer, std::size_t n);

} // namespace nvxbar
