#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nvxbar/crossbar.hpp"
#include "nvxbar/techmodel.hpp"
#include "nvxbar/workload.hpp"

namespace nvxbar {

struct PlacedSynapse
{
    NeuronId pre{0};
    NeuronId post{0};
    StateLabel state{StateLabel::LRS1};
    Cell cell;

    bool operator==(const PlacedSynapse &) const = default;
};

/// One crossbar of a placement. An unused crossbar has no cluster and is
/// fully power-gated.
struct CrossbarPlacement
{
    std::size_t crossbar{0};
    std::optional<int> cluster;
    CrossbarSpec spec;
    Configuration config{Configuration::c11()};
    std::map<NeuronId, std::size_t> row_of_pre;
    std::map<NeuronId, std::size_t> col_of_post;
    std::vector<PlacedSynapse> synapses;

    bool power_gated() const noexcept { return !cluster.has_value(); }
    bool operator==(const CrossbarPlacement &) const = default;
};

struct Placement
{
    CrossbarSpec spec;
    std::vector<CrossbarPlacement> crossbars;
    std::vector<Route> routes;
    std::size_t lrs_synapses{0}; // m
    std::size_t hrs_synapses{0}; // n

    std::size_t config_count(Configuration config) const noexcept;
    bool operator==(const Placement &) const = default;
};

struct Hardware
{
    std::size_t crossbar_count{1};
    CrossbarSpec spec;
    TechnologyParams tech;
};

/// Row of every presynaptic neuron and column of every postsynaptic neuron,
/// indexed like the cluster's neuron lists.
struct Assignment
{
    std::vector<std::size_t> row_of_pre;
    std::vector<std::size_t> col_of_post;

    Cell cell_of(const Synapse &s) const { return {row_of_pre[s.pre], col_of_post[s.post]}; }
};

/// Region-aware greedy placement with bounded swap repair. Throws Infeasible.
Assignment assign_cluster(const Cluster &cluster, const CrossbarSpec &spec);

/// Cells used by the cluster's synapses under an assignment.
std::vector<Cell> used_cells(const Cluster &cluster, const Assignment &assignment);

/// Smallest legal configuration containing every used cell.
Configuration select_configuration(const Cluster &cluster,
        const Assignment &assignment, const CrossbarSpec &spec);

/// Maps clusters one per crossbar, largest first. Throws Infeasible (with
/// the cluster id) or CapacityExceeded.
Placement map_network(const Network &network, const Hardware &hardware);

/// Control mapper: neurons land on seeded random rows/columns with no
/// state awareness. Only meaningful for specs without regions.
Placement map_network_random(const Network &network, const Hardware &hardware,
        std::uint64_t seed);

/// Independent check of every Placement invariant: permitted states,
/// injective cells, consistency with the neuron maps, containment in the
/// configuration, legality under the control mode. Returns one message per
/// violation.
std::vector<std::string> check_placement(const Placement &placement);

/// Configurations with strictly smaller static weight than the chosen one
/// that would still contain the crossbar's cells (empty when minimal).
std::vector<Configuration> smaller_containing_configs(
        const CrossbarPlacement &crossbar);

void to_json(nlohmann::json &j, const Placement &p);
void from_json(const nlohmann::json &j, Placement &p);

Placement load_placement(const std::filesystem::path &path);
void save_placement(const Placement &placement, const std::filesystem::path &path);

} // namespace nvxbar
