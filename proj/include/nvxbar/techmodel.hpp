#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nvxbar/crossbar.hpp"
#include "nvxbar/states.hpp"

namespace nvxbar {

struct ResistanceState
{
    StateLabel label{StateLabel::LRS1};
    double ohms{0.0};
};

/// 1.5k / 5.78k / 13.6k / 73k ohm, indexed by StateLabel.
std::array<ResistanceState, 4> default_states();

/// Technology-level constants for one process node. Per-cell-pitch line
/// parasitics, sense load, isolation-transistor delay and energy constants.
struct TechnologyParams
{
    std::string node_label{"45nm"};
    double feature_size_nm{45.0};
    double r_wordline_unit{2.5};    // ohm per cell pitch
    double r_bitline_unit{1.0};     // ohm per cell pitch
    double c_wordline_unit{4e-13};  // farad per cell pitch
    double c_bitline_unit{1e-12};   // farad per cell pitch
    double c_sense{4e-13};          // farad
    double t_iso_on{1e-10};         // second
    double leakage_per_cell{1e-8};  // watt
    double e_spike{23.6e-12};       // joule per spike
    double e_route_hop{3e-12};      // joule per spike per hop
    double p_wordline_raise{1e-5};  // watt
    std::array<ResistanceState, 4> states{default_states()};

    double resistance(StateLabel s) const noexcept
    {
        return states[index_of(s)].ohms;
    }

    /// Throws InvalidParams when a constant is out of its domain or the
    /// resistance states are not strictly increasing.
    void validate() const;
};

/// Bundled presets: "45nm", "32nm", "22nm", "16nm".
TechnologyParams tech_preset(std::string_view node);
std::vector<std::string> tech_preset_names();

void to_json(nlohmann::json &j, const TechnologyParams &tech);
void from_json(const nlohmann::json &j, TechnologyParams &tech);

/// Reads a technology JSON document. Throws ParseError / InvalidParams.
TechnologyParams load_tech(const std::filesystem::path &path);

/// Resolves a preset label or a path to a JSON document. Labels are first
/// looked up as `<label>.json` in `preset_dir` (when non-empty), then among
/// the built-in presets.
TechnologyParams resolve_tech(std::string_view label_or_path,
        const std::filesystem::path &preset_dir = {});

struct PathLatency
{
    double parasitic_component{0.0};
    double sense_component{0.0};
    double iso_component{0.0};
    double total{0.0};
};

/// Single-pole sensing delay R_state * c_sense.
double sense_latency(const ResistanceState &state, const TechnologyParams &tech);
double sense_latency(StateLabel state, const TechnologyParams &tech);

/// Elmore delay at the far end of a uniform RC ladder of `segments` stages:
/// r*c*segments*(segments+1)/2.
double ladder_delay(std::size_t segments, double r_unit, double c_unit);

/// Elmore delay seen at stage `target` (1-based) of a uniform ladder of
/// `length` stages driven from stage 0. Every stage downstream of the target,
/// up to the end of the line, loads the path. Equals ladder_delay(target)
/// when target == length.
double line_delay(std::size_t target, std::size_t length, double r_unit,
        double c_unit);

/// Read latency of a synapse at `cell` under `config`.
///
/// The wordline of the cell is active up to column N when the wordline
/// transistors are closed (or absent) and up to column Q otherwise; the
/// bitline likewise with P. Each isolation transistor on the current path
/// adds t_iso_on. Throws OutOfActiveRegion and StateForbidden.
PathLatency path_latency(Cell cell, StateLabel state, Configuration config,
        const CrossbarSpec &spec, const TechnologyParams &tech);

/// path_latency without the region check; used for the geometric sweeps
/// that enumerate every (cell, state) pair themselves.
PathLatency path_latency_unchecked(Cell cell, StateLabel state,
        Configuration config, const CrossbarSpec &spec,
        const TechnologyParams &tech);

} // namespace nvxbar
