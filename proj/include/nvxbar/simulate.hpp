#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "nvxbar/mapper.hpp"
#include "nvxbar/techmodel.hpp"
#include "nvxbar/workload.hpp"

namespace nvxbar {

/// Integrate-and-fire neuron with linear leak and reset to zero.
struct IFNeuron
{
    double v_threshold{1.0};
    std::array<double, 4> v_increment_per_state{0.8, 0.8, 0.8, 0.8};
    double leak_per_second{0.0};
    double refractory{0.0};

    /// Increments proportional to state conductance, LRS1 -> 0.8.
    static IFNeuron with_default_increments(const TechnologyParams &tech);

    void validate() const;
};

struct Arrival
{
    double time{0.0};
    StateLabel state{StateLabel::LRS1};
};

struct LatencyStats
{
    double best{0.0};
    double worst{0.0};
    double diff{0.0};
    double ratio{1.0};
    double mean{0.0};
    std::size_t count{0};
    /// Cells of the best and worst sample, when the sample came from cells.
    Cell best_cell;
    Cell worst_cell;

    /// Throws EmptyPlacement on an empty sample.
    static LatencyStats from_samples(std::span<const double> latencies);
    static LatencyStats from_cells(std::span<const Cell> cells,
            std::span<const double> latencies);
};

struct EnergyReport
{
    double static_j{0.0};
    double spike_j{0.0};
    double routing_j{0.0};
    double access_overhead_j{0.0};
    double total_j{0.0};
};

/// Mean inter-spike interval over a non-decreasing list of times.
/// Throws TooFewSpikes for fewer than two spikes.
double compute_isi(std::span<const double> times);
double compute_isi(const SpikeTrain &train);

/// |ISI(output) - ISI(input)|. Throws TooFewSpikes.
double isi_distortion(std::span<const double> input, std::span<const double> output);
double isi_distortion(const SpikeTrain &input, const SpikeTrain &output);

struct SynapseArrivals
{
    std::size_t crossbar{0};
    PlacedSynapse synapse;
    double latency{0.0};
    std::vector<double> times;
};

/// Delays every presynaptic spike through its synapse's path latency.
/// Throws UnknownNeuron for a spiking neuron missing from the placement.
std::vector<SynapseArrivals> propagate(const Placement &placement,
        std::span<const SpikeTrain> trains, const TechnologyParams &tech);

/// Event-driven integration of sorted arrivals.
SpikeTrain if_neuron_fire(const IFNeuron &neuron,
        std::span<const Arrival> arrivals, NeuronId id = 0);

struct PlacementLatency
{
    /// Empty entries for power-gated crossbars.
    std::vector<std::optional<LatencyStats>> per_crossbar;
    LatencyStats aggregate;
    /// Extremes over every permitted (cell, state) pair of the active arrays.
    LatencyStats extremes;
};

/// Throws EmptyPlacement when no synapse is placed.
PlacementLatency latency_stats(const Placement &placement,
        const TechnologyParams &tech);

/// Best/worst over every cell of the active array of `config` and every
/// state the cell's region permits; mean over those pairs.
LatencyStats extreme_latency_stats(const CrossbarSpec &spec,
        Configuration config, const TechnologyParams &tech);

/// Relative spread 1 - best/worst; 0 means no variation.
double variation(const LatencyStats &stats) noexcept;

/// Change in mean latency, ((n-m)/(n+m)) * delta. Throws EmptyCounts.
double average_latency_delta(std::size_t lrs_count, std::size_t hrs_count,
        double delta);

struct Activity
{
    double duration{1.0};
    std::map<NeuronId, std::size_t> spikes_per_neuron; // presynaptic spikes
    std::size_t spike_count{0};
    std::size_t routed_spike_hops{0};
};

/// Access-power multiplier relative to raising one wordline.
int access_multiplier(Cell cell, Configuration config, const CrossbarSpec &spec);

/// Throws NegativeActivity.
EnergyReport energy_report(const Placement &placement, const Activity &activity,
        const TechnologyParams &tech);

struct NeuronIsi
{
    NeuronId neuron{0};
    std::size_t input_spikes{0};
    std::size_t output_spikes{0};
    double isi_in{0.0};
    double isi_out{0.0};
    double distortion{0.0};
};

struct SimulationResult
{
    PlacementLatency latency;
    EnergyReport energy;
    std::vector<NeuronIsi> isi;
    std::vector<SpikeTrain> outputs;
    std::size_t input_spikes{0};
};

/// Full evaluation: propagate, fire every postsynaptic neuron, count spikes
/// and routed hops, and build the energy ledger.
SimulationResult simulate(const Placement &placement,
        std::span<const SpikeTrain> trains, double duration,
        const TechnologyParams &tech, const IFNeuron &neuron);

void to_json(nlohmann::json &j, const LatencyStats &s);
void to_json(nlohmann::json &j, const EnergyReport &e);
nlohmann::json simulation_json(const SimulationResult &result,
        const Placement &placement);

/// Writes latency.csv, energy.csv and isi.csv into `dir`.
void write_csv_reports(const SimulationResult &result,
        const Placement &placement, const std::filesystem::path &dir);

} // namespace nvxbar
