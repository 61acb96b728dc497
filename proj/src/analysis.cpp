#include "nvxbar/analysis.hpp"

#include <fmt/format.h>

#include "nvxbar/crossbar.hpp"
#include "nvxbar/error.hpp"

namespace nvxbar {

double cost_per_bit(std::size_t n, double feature_size_nm)
{
    if (n < 1)
    {
        throw DimensionTooSmall("crossbar dimension must be at least 1");
    }
    const auto dim = static_cast<double>(n);
    return feature_size_nm * feature_size_nm * (27.0 + 2.0 * dim) / dim;
}

std::size_t total_bits(std::size_t n, const AreaModel &model)
{
    return model.bits_per_cell * n * n;
}

DieAreaOverhead die_area_overhead(std::size_t n, const AreaModel &model)
{
    if (n < 1)
    {
        throw DimensionTooSmall("crossbar dimension must be at least 1");
    }
    const auto dim = static_cast<double>(n);
    return {model.iso_height_ratio / (model.sense_amp_height_ratio + dim),
            model.iso_width_ratio / dim};
}

AnalysisRow analyze(std::size_t n, double feature_size_nm, const AreaModel &model)
{
    AnalysisRow row;
    row.n = n;
    row.feature_size_nm = feature_size_nm;
    row.cost_per_bit = cost_per_bit(n, feature_size_nm);
    row.total_bits = total_bits(n, model);
    const auto overhead = die_area_overhead(n, model);
    row.height_pct = overhead.height_fraction * 100.0;
    row.width_pct = overhead.width_fraction * 100.0;
    if (n >= 2)
    {
        row.iso_count_fine = isolation_transistor_count(n, Granularity::Fine);
        row.iso_count_coarse = isolation_transistor_count(n, Granularity::Coarse);
    }
    return row;
}

void write_analysis_csv(std::ostream &os, std::span<const AnalysisRow> rows)
{
    os << "n,F,cost_per_bit,total_bits,height_pct,width_pct,iso_count_fine,"
          "iso_count_coarse\n";
    for (const auto &r : rows)
    {
        os << fmt::format("{},{},{},{},{},{},{},{}\n", r.n, r.feature_size_nm,
                r.cost_per_bit, r.total_bits, r.height_pct, r.width_pct,
                r.iso_count_fine, r.iso_count_coarse);
    }
}

} // namespace nvxbar
