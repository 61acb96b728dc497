#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nvxbar/crossbar.hpp"
#include "nvxbar/simulate.hpp"
#include "nvxbar/techmodel.hpp"
#include "nvxbar/workload.hpp"

namespace nvxbar {

struct NamedNetwork
{
    std::string name;
    Network network;
};

struct SweepPoint
{
    std::string network;
    CrossbarSpec spec;
    double norm_energy{1.0};
    double norm_latency{1.0};
    double norm_variation{1.0};
    double expanded_fraction{0.0};
    bool feasible{true};
    std::string note;
};

struct SweepOptions
{
    std::uint64_t seed{0};
    double spike_rate{30.0};
    double duration{1.0};
    IFNeuron neuron;
};

using GridPoint = std::pair<std::size_t, std::size_t>; // (P, Q)

/// Cartesian product of `values` with itself.
std::vector<GridPoint> square_grid(std::span<const std::size_t> values);

/// Maps and simulates every network at every (P, Q), normalized against the
/// same network on the unpartitioned base spec. Points where mapping fails
/// are kept and flagged. Throws InvalidGrid.
std::vector<std::vector<SweepPoint>> sweep_pq(std::span<const NamedNetwork> networks,
        const CrossbarSpec &base_spec, const TechnologyParams &tech,
        std::span<const GridPoint> grid, const SweepOptions &options);

struct NhNlPoint
{
    std::size_t n_h{0};
    std::size_t n_l{0};
    LatencyStats extremes;
    double variation{0.0};
    double norm_variation{1.0};
};

/// Extreme-latency variation of an unpartitioned <n, N_h, N_l> crossbar
/// for every grid combination, normalized to <n, 0, 0>. Rows ordered by
/// N_l then N_h. Throws InvalidGrid.
std::vector<NhNlPoint> sweep_nhnl(std::size_t n, const TechnologyParams &tech,
        std::span<const std::size_t> nh_grid, std::span<const std::size_t> nl_grid);

/// Knee per network: the smallest P*Q whose norm_latency stays within
/// 1 + tolerance (larger P wins ties); result is the elementwise maximum
/// of the knees. Throws NoFeasibleKnee.
GridPoint select_tradeoff(std::span<const std::vector<SweepPoint>> sweeps,
        double latency_tolerance = 0.0);

void write_sweep_csv(std::ostream &os,
        std::span<const std::vector<SweepPoint>> sweeps);
void write_nhnl_csv(std::ostream &os, std::span<const NhNlPoint> rows);

} // namespace nvxbar
