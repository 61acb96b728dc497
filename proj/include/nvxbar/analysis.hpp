#pragma once

#include <cstddef>
#include <ostream>
#include <span>

namespace nvxbar {

/// Area composition of a crossbar PE, in units of one RRAM cell.
struct AreaModel
{
    std::size_t transistors_per_neuron{20};
    std::size_t capacitors_per_neuron{1};
    double sense_amp_height_ratio{384.0};
    double iso_height_ratio{9.6};
    double iso_width_ratio{1.3};
    std::size_t bits_per_cell{2};
};

/// F^2 (27 + 2n) / n, in nm^2 per bit.
double cost_per_bit(std::size_t n, double feature_size_nm);

/// bits_per_cell * n^2 (2n^2 by default).
std::size_t total_bits(std::size_t n, const AreaModel &model = {});

struct DieAreaOverhead
{
    double height_fraction{0.0};
    double width_fraction{0.0};
};

/// Isolation-transistor overhead along the crossbar height and width.
DieAreaOverhead die_area_overhead(std::size_t n, const AreaModel &model = {});

struct AnalysisRow
{
    std::size_t n{0};
    double feature_size_nm{0.0};
    double cost_per_bit{0.0};
    std::size_t total_bits{0};
    double height_pct{0.0};
    double width_pct{0.0};
    std::size_t iso_count_fine{0};
    std::size_t iso_count_coarse{0};
};

AnalysisRow analyze(std::size_t n, double feature_size_nm,
        const AreaModel &model = {});

void write_analysis_csv(std::ostream &os, std::span<const AnalysisRow> rows);

} // namespace nvxbar
