#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nvxbar/states.hpp"

namespace nvxbar {

/// A crosspoint: wordline `row`, bitline `col`, both 0-based.
struct Cell
{
    std::size_t row{0};
    std::size_t col{0};

    auto operator<=>(const Cell &) const = default;
};

struct Dimensions
{
    std::size_t rows{0};
    std::size_t cols{0};

    std::size_t cells() const noexcept { return rows * cols; }
    bool contains(Cell c) const noexcept { return c.row < rows && c.col < cols; }
    bool operator==(const Dimensions &) const = default;
};

enum class Control
{
    Double,
    Single,
};

std::string_view to_string(Control c) noexcept;
Control parse_control(std::string_view text);

/// Partitioned crossbar <N, N_h, N_l, P, Q> plus the isolation control mode.
///
/// Region A is the N_h x N_h top-left block (HRS only), region B the
/// N_l x N_l bottom-right block (LRS1 only), region C everything else.
/// Isolation transistors sit on every bitline between rows P-1 and P and on
/// every wordline between columns Q-1 and Q (0-based), so P and Q are the
/// row/column counts of the collapsed region. P = Q = N means no isolation
/// transistors at all.
struct CrossbarSpec
{
    std::size_t n{128};
    std::size_t n_h{0};
    std::size_t n_l{0};
    std::size_t p{128};
    std::size_t q{128};
    Control control{Control::Double};

    static CrossbarSpec baseline(std::size_t n);

    /// Throws InvalidSpec.
    void validate() const;

    bool has_row_partition() const noexcept { return p < n; }
    bool has_col_partition() const noexcept { return q < n; }

    /// Same geometry and regions with the partition removed (P = Q = N).
    CrossbarSpec unpartitioned() const;

    bool operator==(const CrossbarSpec &) const = default;
};

/// One of the four settings of the two isolation control signals.
/// `wl_iso_ctrl` closes the wordline transistors (columns expand to N);
/// `bl_iso_ctrl` closes the bitline transistors (rows expand to N).
struct Configuration
{
    bool wl_iso_ctrl{false};
    bool bl_iso_ctrl{false};

    static constexpr Configuration c00() { return {false, false}; }
    static constexpr Configuration c01() { return {false, true}; }
    static constexpr Configuration c10() { return {true, false}; }
    static constexpr Configuration c11() { return {true, true}; }

    /// Two-character name, wordline bit first: "00", "01", "10", "11".
    std::string name() const;
    static Configuration from_name(std::string_view name);

    constexpr int code() const noexcept
    {
        return (wl_iso_ctrl ? 2 : 0) + (bl_iso_ctrl ? 1 : 0);
    }
    bool operator==(const Configuration &) const = default;
};

inline constexpr std::array<Configuration, 4> kAllConfigurations{
        Configuration::c00(), Configuration::c01(), Configuration::c10(),
        Configuration::c11()};

bool is_legal(Configuration config, Control control) noexcept;

enum class RegionKind
{
    A,
    B,
    C,
};

std::string_view to_string(RegionKind k) noexcept;

struct Region
{
    RegionKind kind{RegionKind::C};
    StateSet permitted_states{StateSet::all()};

    static Region of_kind(RegionKind kind) noexcept;
};

enum class Granularity
{
    Fine,
    Coarse,
};

/// Region containing (row, col). Throws IndexOutOfRange.
Region region_of(std::size_t row, std::size_t col, const CrossbarSpec &spec);

/// Active array shape of a configuration. Throws IllegalConfig for
/// '01'/'10' under single control.
Dimensions config_dimensions(Configuration config, const CrossbarSpec &spec);

/// Number of powered cells in the configuration (rows x cols).
std::size_t static_energy_weight(Configuration config, const CrossbarSpec &spec);

/// Fine: a transistor between every pair of neighbouring cells on every
/// line, 2n(n-1). Coarse: one per line, 2n. Throws DimensionTooSmall for n < 2.
std::size_t isolation_transistor_count(std::size_t n, Granularity granularity);

/// Fraction of the n x n cells holding a synapse. Throws CountExceedsCapacity.
double synapse_utilization(std::size_t used_cells, std::size_t n);

bool permits(std::size_t row, std::size_t col, StateLabel state,
        const CrossbarSpec &spec);

/// Smallest legal configuration (by static_energy_weight) whose active
/// array contains every cell. Equal weights only occur for degenerate
/// partitions (P or Q equal to N), where the configuration with more
/// closed transistors wins so that an unpartitioned crossbar reports '11'.
Configuration smallest_containing(std::span<const Cell> cells,
        const CrossbarSpec &spec);

void to_json(nlohmann::json &j, const CrossbarSpec &spec);
void from_json(const nlohmann::json &j, CrossbarSpec &spec);

/// Parses "N,N_h,N_l,P,Q" (control defaults to double).
CrossbarSpec parse_spec_tuple(std::string_view text);

} // namespace nvxbar
