#include "nvxbar/crossbar.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nvxbar/error.hpp"

namespace nvxbar {

Infeasible::Infeasible(int cluster_id, std::vector<std::string> violations)
        : Error(fmt::format("cluster {} is infeasible ({} violation{})",
                  cluster_id, violations.size(),
                  violations.size() == 1 ? "" : "s"))
        , cluster_id_(cluster_id)
        , violations_(std::move(violations))
{
}

std::string_view to_string(StateLabel s) noexcept
{
    switch (s)
    {
    case StateLabel::LRS1:
        return "LRS1";
    case StateLabel::LRS2:
        return "LRS2";
    case StateLabel::LRS3:
        return "LRS3";
    case StateLabel::HRS:
        return "HRS";
    }
    return "?";
}

StateLabel parse_state(std::string_view text)
{
    for (auto s : kAllStates)
    {
        if (to_string(s) == text)
        {
            return s;
        }
    }
    throw ParseError(fmt::format("unknown resistance state '{}'", text));
}

std::string_view to_string(Control c) noexcept
{
    return c == Control::Double ? "double" : "single";
}

Control parse_control(std::string_view text)
{
    if (text == "double")
    {
        return Control::Double;
    }
    if (text == "single")
    {
        return Control::Single;
    }
    throw ParseError(fmt::format("unknown control mode '{}'", text));
}

std::string_view to_string(RegionKind k) noexcept
{
    switch (k)
    {
    case RegionKind::A:
        return "A";
    case RegionKind::B:
        return "B";
    case RegionKind::C:
        return "C";
    }
    return "?";
}

CrossbarSpec CrossbarSpec::baseline(std::size_t n)
{
    return CrossbarSpec{n, 0, 0, n, n, Control::Double};
}

void CrossbarSpec::validate() const
{
    if (n < 1)
    {
        throw InvalidSpec("crossbar dimension must be at least 1");
    }
    if (p < 1 || p > n || q < 1 || q > n)
    {
        throw InvalidSpec(fmt::format(
                "partition points must satisfy 1 <= P,Q <= N (N={}, P={}, Q={})",
                n, p, q));
    }
    if (n_h + n_l > n)
    {
        throw InvalidSpec(fmt::format(
                "N_h + N_l must not exceed N (N={}, N_h={}, N_l={})", n, n_h, n_l));
    }
}

CrossbarSpec CrossbarSpec::unpartitioned() const
{
    CrossbarSpec out = *this;
    out.p = n;
    out.q = n;
    return out;
}

std::string Configuration::name() const
{
    std::string s(2, '0');
    s[0] = wl_iso_ctrl ? '1' : '0';
    s[1] = bl_iso_ctrl ? '1' : '0';
    return s;
}

Configuration Configuration::from_name(std::string_view name)
{
    if (name.size() != 2 || (name[0] != '0' && name[0] != '1') ||
            (name[1] != '0' && name[1] != '1'))
    {
        throw ParseError(fmt::format("unknown configuration '{}'", name));
    }
    return Configuration{name[0] == '1', name[1] == '1'};
}

bool is_legal(Configuration config, Control control) noexcept
{
    return control == Control::Double || config.wl_iso_ctrl == config.bl_iso_ctrl;
}

Region Region::of_kind(RegionKind kind) noexcept
{
    switch (kind)
    {
    case RegionKind::A:
        return {kind, StateSet{StateLabel::HRS}};
    case RegionKind::B:
        return {kind, StateSet{StateLabel::LRS1}};
    case RegionKind::C:
        break;
    }
    return {RegionKind::C, StateSet::all()};
}

Region region_of(std::size_t row, std::size_t col, const CrossbarSpec &spec)
{
    if (row >= spec.n || col >= spec.n)
    {
        throw IndexOutOfRange(fmt::format(
                "cell ({},{}) outside {}x{} crossbar", row, col, spec.n, spec.n));
    }
    if (row < spec.n_h && col < spec.n_h)
    {
        return Region::of_kind(RegionKind::A);
    }
    const std::size_t b_start = spec.n - spec.n_l;
    if (spec.n_l > 0 && row >= b_start && col >= b_start)
    {
        return Region::of_kind(RegionKind::B);
    }
    return Region::of_kind(RegionKind::C);
}

Dimensions config_dimensions(Configuration config, const CrossbarSpec &spec)
{
    if (!is_legal(config, spec.control))
    {
        throw IllegalConfig(fmt::format(
                "configuration '{}' is not available under single control",
                config.name()));
    }
    return Dimensions{config.bl_iso_ctrl ? spec.n : spec.p,
            config.wl_iso_ctrl ? spec.n : spec.q};
}

std::size_t static_energy_weight(Configuration config, const CrossbarSpec &spec)
{
    return config_dimensions(config, spec).cells();
}

std::size_t isolation_transistor_count(std::size_t n, Granularity granularity)
{
    if (n < 2)
    {
        throw DimensionTooSmall(
                fmt::format("isolation needs at least a 2x2 crossbar, got {}", n));
    }
    return granularity == Granularity::Fine ? 2 * n * (n - 1) : 2 * n;
}

double synapse_utilization(std::size_t used_cells, std::size_t n)
{
    const std::size_t capacity = n * n;
    if (used_cells > capacity)
    {
        throw CountExceedsCapacity(fmt::format(
                "{} used cells exceed the {}x{} crossbar", used_cells, n, n));
    }
    return static_cast<double>(used_cells) / static_cast<double>(capacity);
}

bool permits(std::size_t row, std::size_t col, StateLabel state,
        const CrossbarSpec &spec)
{
    return region_of(row, col, spec).permitted_states.contains(state);
}

Configuration smallest_containing(std::span<const Cell> cells,
        const CrossbarSpec &spec)
{
    Dimensions extent{0, 0};
    for (const auto &c : cells)
    {
        extent.rows = std::max(extent.rows, c.row + 1);
        extent.cols = std::max(extent.cols, c.col + 1);
    }

    Configuration best = Configuration::c11();
    std::size_t best_weight = spec.n * spec.n;
    // Highest code first so that equal weights resolve to more closed
    // transistors.
    for (auto it = kAllConfigurations.rbegin(); it != kAllConfigurations.rend(); ++it)
    {
        if (!is_legal(*it, spec.control))
        {
            continue;
        }
        const auto dims = config_dimensions(*it, spec);
        if (extent.rows > dims.rows || extent.cols > dims.cols)
        {
            continue;
        }
        if (dims.cells() < best_weight)
        {
            best = *it;
            best_weight = dims.cells();
        }
    }
    return best;
}

void to_json(nlohmann::json &j, const CrossbarSpec &spec)
{
    j = nlohmann::json{{"n", spec.n}, {"n_h", spec.n_h}, {"n_l", spec.n_l},
            {"p", spec.p}, {"q", spec.q},
            {"control", std::string(to_string(spec.control))}};
}

void from_json(const nlohmann::json &j, CrossbarSpec &spec)
{
    spec.n = j.at("n").get<std::size_t>();
    spec.n_h = j.value("n_h", std::size_t{0});
    spec.n_l = j.value("n_l", std::size_t{0});
    spec.p = j.value("p", spec.n);
    spec.q = j.value("q", spec.n);
    spec.control = parse_control(j.value("control", std::string("double")));
    spec.validate();
}

CrossbarSpec parse_spec_tuple(std::string_view text)
{
    std::vector<std::size_t> values;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto end = std::min(text.find(',', start), text.size());
        const auto token = text.substr(start, end - start);
        std::size_t value = 0;
        const auto [ptr, ec] =
                std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
        {
            throw ParseError(fmt::format("bad crossbar tuple '{}'", text));
        }
        values.push_back(value);
        start = end + 1;
    }
    CrossbarSpec spec;
    switch (values.size())
    {
    case 1:
        spec = CrossbarSpec::baseline(values[0]);
        break;
    case 3:
        spec = CrossbarSpec{values[0], values[1], values[2], values[0], values[0],
                Control::Double};
        break;
    case 5:
        spec = CrossbarSpec{values[0], values[1], values[2], values[3], values[4],
                Control::Double};
        break;
    default:
        throw ParseError(fmt::format(
                "crossbar tuple '{}' needs 1, 3 or 5 fields (N[,N_h,N_l[,P,Q]])",
                text));
    }
    spec.validate();
    return spec;
}

} // namespace nvxbar
