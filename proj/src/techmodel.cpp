#include "nvxbar/techmodel.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "nvxbar/error.hpp"

namespace nvxbar {

namespace {

struct NodeResistance
{
    const char *label;
    double feature_size_nm;
    double r_wl;
    double r_bl;
};

// Unit line resistance per node; capacitances are derived so that the unit
// wordline and bitline RC products are 1 ps at 45nm and scale with 45/F.
// The sense load is taken as one wordline pitch of capacitance.
constexpr NodeResistance kNodes[] = {
        {"45nm", 45.0, 2.5, 1.0},
        {"32nm", 32.0, 4.0, 1.6},
        {"22nm", 22.0, 6.3, 2.5},
        {"16nm", 16.0, 10.0, 3.8},
};

constexpr double kUnitRcAt45nm = 1e-12;

TechnologyParams make_preset(const NodeResistance &node)
{
    TechnologyParams t;
    t.node_label = node.label;
    t.feature_size_nm = node.feature_size_nm;
    t.r_wordline_unit = node.r_wl;
    t.r_bitline_unit = node.r_bl;
    const double scale = 45.0 / node.feature_size_nm;
    t.c_wordline_unit = kUnitRcAt45nm / 2.5 * scale;
    t.c_bitline_unit = kUnitRcAt45nm / 1.0 * scale;
    t.c_sense = t.c_wordline_unit;
    return t;
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

std::array<ResistanceState, 4> default_states()
{
    return {ResistanceState{StateLabel::LRS1, 1500.0},
            ResistanceState{StateLabel::LRS2, 5780.0},
            ResistanceState{StateLabel::LRS3, 13600.0},
            ResistanceState{StateLabel::HRS, 73000.0}};
}

void TechnologyParams::validate() const
{
    const std::pair<const char *, double> strictly_positive[] = {
            {"feature_size_nm", feature_size_nm},
            {"r_wl", r_wordline_unit},
            {"r_bl", r_bitline_unit},
            {"c_wl", c_wordline_unit},
            {"c_bl", c_bitline_unit},
            {"c_sense", c_sense},
            {"leakage_per_cell", leakage_per_cell},
            {"e_spike", e_spike},
            {"e_route_hop", e_route_hop},
            {"p_wordline_raise", p_wordline_raise},
    };
    for (const auto &[name, value] : strictly_positive)
    {
        if (!positive(value))
        {
            throw InvalidParams(fmt::format(
                    "technology '{}': {} must be positive (got {})", node_label,
                    name, value));
        }
    }
    if (!std::isfinite(t_iso_on) || t_iso_on < 0.0)
    {
        throw InvalidParams(fmt::format(
                "technology '{}': t_iso_on must be >= 0", node_label));
    }
    for (std::size_t i = 0; i < states.size(); ++i)
    {
        if (states[i].label != kAllStates[i])
        {
            throw InvalidParams("resistance states must be listed LRS1, LRS2, LRS3, HRS");
        }
        if (!positive(states[i].ohms))
        {
            throw InvalidParams(fmt::format("{} resistance must be positive",
                    to_string(states[i].label)));
        }
        if (i > 0 && !(states[i].ohms > states[i - 1].ohms))
        {
            throw InvalidParams("resistance states must strictly increase");
        }
    }
}

TechnologyParams tech_preset(std::string_view node)
{
    for (const auto &n : kNodes)
    {
        if (node == n.label)
        {
            return make_preset(n);
        }
    }
    throw InvalidParams(fmt::format("no technology preset named '{}'", node));
}

std::vector<std::string> tech_preset_names()
{
    std::vector<std::string> names;
    for (const auto &n : kNodes)
    {
        names.emplace_back(n.label);
    }
    return names;
}

void to_json(nlohmann::json &j, const TechnologyParams &t)
{
    auto states = nlohmann::json::array();
    for (const auto &s : t.states)
    {
        states.push_back({{"label", std::string(to_string(s.label))},
                {"ohms", s.ohms}});
    }
    j = nlohmann::json{{"node", t.node_label},
            {"feature_size_nm", t.feature_size_nm}, {"r_wl", t.r_wordline_unit},
            {"r_bl", t.r_bitline_unit}, {"c_wl", t.c_wordline_unit},
            {"c_bl", t.c_bitline_unit}, {"c_sense", t.c_sense},
            {"t_iso_on", t.t_iso_on}, {"leakage_per_cell", t.leakage_per_cell},
            {"e_spike", t.e_spike}, {"e_route_hop", t.e_route_hop},
            {"p_wordline_raise", t.p_wordline_raise}, {"states", states}};
}

void from_json(const nlohmann::json &j, TechnologyParams &t)
{
    t.node_label = j.at("node").get<std::string>();
    t.feature_size_nm = j.at("feature_size_nm").get<double>();
    t.r_wordline_unit = j.at("r_wl").get<double>();
    t.r_bitline_unit = j.at("r_bl").get<double>();
    t.c_wordline_unit = j.at("c_wl").get<double>();
    t.c_bitline_unit = j.at("c_bl").get<double>();
    t.c_sense = j.at("c_sense").get<double>();
    t.t_iso_on = j.at("t_iso_on").get<double>();
    t.leakage_per_cell = j.at("leakage_per_cell").get<double>();
    t.e_spike = j.at("e_spike").get<double>();
    t.e_route_hop = j.at("e_route_hop").get<double>();
    t.p_wordline_raise = j.at("p_wordline_raise").get<double>();
    const auto &states = j.at("states");
    if (!states.is_array() || states.size() != 4)
    {
        throw InvalidParams("technology 'states' must list exactly four states");
    }
    for (std::size_t i = 0; i < 4; ++i)
    {
        t.states[i].label = parse_state(states[i].at("label").get<std::string>());
        t.states[i].ohms = states[i].at("ohms").get<double>();
    }
    t.validate();
}

TechnologyParams load_tech(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ParseError(fmt::format("cannot open technology file {}", path.string()));
    }
    try
    {
        return nlohmann::json::parse(in).get<TechnologyParams>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

TechnologyParams resolve_tech(std::string_view label_or_path,
        const std::filesystem::path &preset_dir)
{
    const std::filesystem::path as_path{label_or_path};
    if (as_path.has_extension() && std::filesystem::exists(as_path))
    {
        return load_tech(as_path);
    }
    if (!preset_dir.empty())
    {
        const auto candidate = preset_dir / (std::string(label_or_path) + ".json");
        if (std::filesystem::exists(candidate))
        {
            return load_tech(candidate);
        }
    }
    return tech_preset(label_or_path);
}

double sense_latency(const ResistanceState &state, const TechnologyParams &tech)
{
    return state.ohms * tech.c_sense;
}

double sense_latency(StateLabel state, const TechnologyParams &tech)
{
    return tech.resistance(state) * tech.c_sense;
}

double ladder_delay(std::size_t segments, double r_unit, double c_unit)
{
    const auto k = static_cast<double>(segments);
    return r_unit * c_unit * k * (k + 1.0) / 2.0;
}

double line_delay(std::size_t target, std::size_t length, double r_unit,
        double c_unit)
{
    // sum_{i=1..k} r * c * (L - i + 1)
    const auto k = static_cast<double>(target);
    const auto len = static_cast<double>(length);
    return r_unit * c_unit * (k * len - k * (k - 1.0) / 2.0);
}

PathLatency path_latency_unchecked(Cell cell, StateLabel state,
        Configuration config, const CrossbarSpec &spec,
        const TechnologyParams &tech)
{
    const std::size_t wordline_len = config.wl_iso_ctrl ? spec.n : spec.q;
    const std::size_t bitline_len = config.bl_iso_ctrl ? spec.n : spec.p;

    PathLatency out;
    out.parasitic_component =
            line_delay(cell.col + 1, wordline_len, tech.r_wordline_unit,
                    tech.c_wordline_unit) +
            line_delay(cell.row + 1, bitline_len, tech.r_bitline_unit,
                    tech.c_bitline_unit);
    out.sense_component = sense_latency(state, tech);

    int crossings = 0;
    if (config.bl_iso_ctrl && spec.has_row_partition() && cell.row >= spec.p)
    {
        ++crossings;
    }
    if (config.wl_iso_ctrl && spec.has_col_partition() && cell.col >= spec.q)
    {
        ++crossings;
    }
    out.iso_component = crossings * tech.t_iso_on;
    out.total = out.parasitic_component + out.sense_component + out.iso_component;
    return out;
}

PathLatency path_latency(Cell cell, StateLabel state, Configuration config,
        const CrossbarSpec &spec, const TechnologyParams &tech)
{
    const auto dims = config_dimensions(config, spec);
    if (!dims.contains(cell))
    {
        throw OutOfActiveRegion(fmt::format(
                "cell ({},{}) outside the {}x{} array of configuration '{}'",
                cell.row, cell.col, dims.rows, dims.cols, config.name()));
    }
    if (!permits(cell.row, cell.col, state, spec))
    {
        throw StateForbidden(fmt::format("{} not permitted at ({},{}) in region {}",
                to_string(state), cell.row, cell.col,
                to_string(region_of(cell.row, cell.col, spec).kind)));
    }
    return path_latency_unchecked(cell, state, config, spec, tech);
}

} // namespace nvxbar
