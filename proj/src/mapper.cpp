#include "nvxbar/mapper.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include <fmt/format.h>

#include "nvxbar/error.hpp"

namespace nvxbar {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Working state of one cluster placement: positions of both neuron sets,
/// the inverse maps and the synapse adjacency.
class PlacementState
{
public:
    PlacementState(const Cluster &cluster, const CrossbarSpec &spec)
            : cluster_(cluster)
            , spec_(spec)
            , row_of_pre_(cluster.pre_neurons.size(), kNone)
            , col_of_post_(cluster.post_neurons.size(), kNone)
            , row_owner_(spec.n, kNone)
            , col_owner_(spec.n, kNone)
            , syn_of_pre_(cluster.pre_neurons.size())
            , syn_of_post_(cluster.post_neurons.size())
    {
        for (std::size_t i = 0; i < cluster.synapses.size(); ++i)
        {
            syn_of_pre_[cluster.synapses[i].pre].push_back(i);
            syn_of_post_[cluster.synapses[i].post].push_back(i);
        }
    }

    void place_pre(std::size_t pre, std::size_t row)
    {
        if (row_of_pre_[pre] != kNone)
        {
            row_owner_[row_of_pre_[pre]] = kNone;
        }
        row_of_pre_[pre] = row;
        row_owner_[row] = pre;
    }

    void place_post(std::size_t post, std::size_t col)
    {
        if (col_of_post_[post] != kNone)
        {
            col_owner_[col_of_post_[post]] = kNone;
        }
        col_of_post_[post] = col;
        col_owner_[col] = post;
    }

    bool violates(const Synapse &s, std::size_t row, std::size_t col) const
    {
        return !permits(row, col, s.state, spec_);
    }

    bool violates(std::size_t synapse) const
    {
        const auto &s = cluster_.synapses[synapse];
        return violates(s, row_of_pre_[s.pre], col_of_post_[s.post]);
    }

    /// Violations of presynaptic neuron `pre` if it sat on `row`.
    std::size_t pre_cost(std::size_t pre, std::size_t row) const
    {
        std::size_t count = 0;
        for (auto idx : syn_of_pre_[pre])
        {
            const auto &s = cluster_.synapses[idx];
            count += violates(s, row, col_of_post_[s.post]) ? 1 : 0;
        }
        return count;
    }

    std::size_t post_cost(std::size_t post, std::size_t col) const
    {
        std::size_t count = 0;
        for (auto idx : syn_of_post_[post])
        {
            const auto &s = cluster_.synapses[idx];
            count += violates(s, row_of_pre_[s.pre], col) ? 1 : 0;
        }
        return count;
    }

    std::vector<std::size_t> violating_synapses() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cluster_.synapses.size(); ++i)
        {
            if (violates(i))
            {
                out.push_back(i);
            }
        }
        return out;
    }

    /// Best-improvement row swaps, at most `budget` swap evaluations.
    void repair_rows(std::size_t budget)
    {
        repair(budget, true);
    }

    void repair_cols(std::size_t budget)
    {
        repair(budget, false);
    }

    /// First unoccupied index >= from and < until, or kNone.
    std::size_t first_free(bool rows, std::size_t from, std::size_t until) const
    {
        const auto &owner = rows ? row_owner_ : col_owner_;
        for (std::size_t i = from; i < until && i < owner.size(); ++i)
        {
            if (owner[i] == kNone)
            {
                return i;
            }
        }
        return kNone;
    }

    /// Moves neurons behind violating synapses to free indices, preferring
    /// the first clean index >= N_h (region C side). A move is taken only if
    /// it lowers the neuron's violation count, so the total strictly drops.
    void shift_into_region_c()
    {
        bool moved = true;
        while (moved)
        {
            moved = false;
            for (bool rows : {true, false})
            {
                for (auto neuron : violating_neurons(rows))
                {
                    const std::size_t here = rows ? row_of_pre_[neuron] : col_of_post_[neuron];
                    const auto cost_here = cost(rows, neuron, here);
                    const std::size_t target = best_free(rows, neuron, spec_.n_h);
                    if (target != kNone && cost(rows, neuron, target) < cost_here)
                    {
                        place(rows, neuron, target);
                        moved = true;
                    }
                }
            }
        }
    }

    /// Constructive placement: one side sits on consecutive indices from
    /// `start` (wrapping), in `order`; the other side is then placed neuron
    /// by neuron on its lowest clean free index. Returns false when some
    /// neuron has no clean index.
    bool construct(bool rows_fixed, std::size_t start,
            const std::vector<std::size_t> &fixed_order,
            const std::vector<std::size_t> &free_order)
    {
        clear();
        for (std::size_t rank = 0; rank < fixed_order.size(); ++rank)
        {
            place(rows_fixed, fixed_order[rank], (start + rank) % spec_.n);
        }
        bool clean = true;
        for (auto neuron : free_order)
        {
            std::size_t target = kNone;
            for (std::size_t i = 0; i < spec_.n && target == kNone; ++i)
            {
                if (owner(!rows_fixed)[i] == kNone && cost(!rows_fixed, neuron, i) == 0)
                {
                    target = i;
                }
            }
            if (target == kNone)
            {
                clean = false;
                target = best_free(!rows_fixed, neuron, 0);
            }
            place(!rows_fixed, neuron, target);
        }
        return clean;
    }

    std::vector<std::string> describe_violations() const
    {
        std::vector<std::string> out;
        for (auto idx : violating_synapses())
        {
            const auto &s = cluster_.synapses[idx];
            const std::size_t row = row_of_pre_[s.pre];
            const std::size_t col = col_of_post_[s.post];
            out.push_back(fmt::format(
                    "synapse {} ({} -> {}, {}) at ({},{}) in region {}", idx,
                    cluster_.pre_neurons[s.pre], cluster_.post_neurons[s.post],
                    to_string(s.state), row, col,
                    to_string(region_of(row, col, spec_).kind)));
        }
        return out;
    }

    Assignment assignment() const { return {row_of_pre_, col_of_post_}; }

    void restore(const Assignment &a)
    {
        clear();
        for (std::size_t i = 0; i < a.row_of_pre.size(); ++i)
        {
            place_pre(i, a.row_of_pre[i]);
        }
        for (std::size_t j = 0; j < a.col_of_post.size(); ++j)
        {
            place_post(j, a.col_of_post[j]);
        }
    }

    std::size_t cost(bool rows, std::size_t neuron, std::size_t index) const
    {
        return rows ? pre_cost(neuron, index) : post_cost(neuron, index);
    }

    void place(bool rows, std::size_t neuron, std::size_t index)
    {
        if (rows)
        {
            place_pre(neuron, index);
        }
        else
        {
            place_post(neuron, index);
        }
    }

    const std::vector<std::size_t> &owner(bool rows) const
    {
        return rows ? row_owner_ : col_owner_;
    }

    void clear()
    {
        std::fill(row_of_pre_.begin(), row_of_pre_.end(), kNone);
        std::fill(col_of_post_.begin(), col_of_post_.end(), kNone);
        std::fill(row_owner_.begin(), row_owner_.end(), kNone);
        std::fill(col_owner_.begin(), col_owner_.end(), kNone);
    }

    /// Free index with the fewest violations for `neuron`, scanning from
    /// `from` upward and then wrapping; the first minimum wins.
    std::size_t best_free(bool rows, std::size_t neuron, std::size_t from) const
    {
        std::size_t best = kNone;
        std::size_t best_cost = 0;
        for (std::size_t k = 0; k < spec_.n; ++k)
        {
            const std::size_t i = (from + k) % spec_.n;
            if (owner(rows)[i] != kNone)
            {
                continue;
            }
            const auto c = cost(rows, neuron, i);
            if (best == kNone || c < best_cost)
            {
                best = i;
                best_cost = c;
                if (c == 0)
                {
                    break;
                }
            }
        }
        return best;
    }

    std::vector<std::size_t> violating_neurons(bool rows) const
    {
        std::set<std::size_t> out;
        for (auto idx : violating_synapses())
        {
            const auto &s = cluster_.synapses[idx];
            out.insert(rows ? s.pre : s.post);
        }
        return {out.begin(), out.end()};
    }

private:
    void repair(std::size_t budget, bool rows)
    {
        const auto &owner = rows ? row_owner_ : col_owner_;
        const auto &pos = rows ? row_of_pre_ : col_of_post_;
        auto cost = [&](std::size_t neuron, std::size_t index) {
            return rows ? pre_cost(neuron, index) : post_cost(neuron, index);
        };

        std::size_t evaluations = 0;
        while (evaluations < budget)
        {
            std::set<std::size_t> violating;
            for (auto idx : violating_synapses())
            {
                const auto &s = cluster_.synapses[idx];
                violating.insert(rows ? s.pre : s.post);
            }
            if (violating.empty())
            {
                return;
            }

            long best_gain = 0;
            std::size_t best_neuron = kNone;
            std::size_t best_target = kNone;
            for (auto neuron : violating)
            {
                const std::size_t here = pos[neuron];
                const auto cost_here = static_cast<long>(cost(neuron, here));
                for (std::size_t target = 0; target < spec_.n; ++target)
                {
                    if (target == here)
                    {
                        continue;
                    }
                    if (evaluations++ >= budget)
                    {
                        break;
                    }
                    const std::size_t other = owner[target];
                    long gain = cost_here - static_cast<long>(cost(neuron, target));
                    if (other != kNone)
                    {
                        gain += static_cast<long>(cost(other, target)) -
                                static_cast<long>(cost(other, here));
                    }
                    if (gain > best_gain)
                    {
                        best_gain = gain;
                        best_neuron = neuron;
                        best_target = target;
                    }
                }
            }
            if (best_neuron == kNone)
            {
                return;
            }
            swap_to(rows, best_neuron, best_target);
        }
    }

    void swap_to(bool rows, std::size_t neuron, std::size_t target)
    {
        auto &owner = rows ? row_owner_ : col_owner_;
        auto &pos = rows ? row_of_pre_ : col_of_post_;
        const std::size_t here = pos[neuron];
        const std::size_t other = owner[target];
        pos[neuron] = target;
        owner[target] = neuron;
        owner[here] = other;
        if (other != kNone)
        {
            pos[other] = here;
        }
    }

    const Cluster &cluster_;
    const CrossbarSpec &spec_;
    std::vector<std::size_t> row_of_pre_;
    std::vector<std::size_t> col_of_post_;
    std::vector<std::size_t> row_owner_;
    std::vector<std::size_t> col_owner_;
    std::vector<std::vector<std::size_t>> syn_of_pre_;
    std::vector<std::vector<std::size_t>> syn_of_post_;
};

/// Indices 0..count-1 ordered by descending HRS count, lower index first
/// on ties.
std::vector<std::size_t> hrs_order(const std::vector<std::size_t> &hrs_count)
{
    std::vector<std::size_t> order(hrs_count.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return hrs_count[a] > hrs_count[b]; });
    return order;
}

CrossbarPlacement build_crossbar(std::size_t index, const Cluster &cluster,
        const Assignment &assignment, const CrossbarSpec &spec)
{
    CrossbarPlacement xbar;
    xbar.crossbar = index;
    xbar.cluster = cluster.id;
    xbar.spec = spec;
    for (std::size_t i = 0; i < cluster.pre_neurons.size(); ++i)
    {
        xbar.row_of_pre[cluster.pre_neurons[i]] = assignment.row_of_pre[i];
    }
    for (std::size_t j = 0; j < cluster.post_neurons.size(); ++j)
    {
        xbar.col_of_post[cluster.post_neurons[j]] = assignment.col_of_post[j];
    }
    for (const auto &s : cluster.synapses)
    {
        xbar.synapses.push_back(PlacedSynapse{cluster.pre_neurons[s.pre],
                cluster.post_neurons[s.post], s.state, assignment.cell_of(s)});
    }
    xbar.config = select_configuration(cluster, assignment, spec);
    return xbar;
}

std::vector<const Cluster *> largest_first(const Network &network)
{
    std::vector<const Cluster *> order;
    for (const auto &c : network.clusters)
    {
        order.push_back(&c);
    }
    std::stable_sort(order.begin(), order.end(), [](const Cluster *a, const Cluster *b) {
        if (a->synapses.size() != b->synapses.size())
        {
            return a->synapses.size() > b->synapses.size();
        }
        return a->id < b->id;
    });
    return order;
}

void check_capacity(const Network &network, const Hardware &hardware)
{
    if (hardware.crossbar_count < 1)
    {
        throw CapacityExceeded("hardware needs at least one crossbar");
    }
    if (network.clusters.size() > hardware.crossbar_count)
    {
        throw CapacityExceeded(fmt::format("{} clusters but only {} crossbars",
                network.clusters.size(), hardware.crossbar_count));
    }
}

void finish(Placement &placement, const Hardware &hardware)
{
    for (std::size_t i = placement.crossbars.size(); i < hardware.crossbar_count; ++i)
    {
        CrossbarPlacement idle;
        idle.crossbar = i;
        idle.spec = hardware.spec;
        idle.config = Configuration::c00();
        placement.crossbars.push_back(std::move(idle));
    }
    for (const auto &xbar : placement.crossbars)
    {
        for (const auto &s : xbar.synapses)
        {
            (is_lrs(s.state) ? placement.lrs_synapses : placement.hrs_synapses)++;
        }
    }
}

} // namespace

std::size_t Placement::config_count(Configuration config) const noexcept
{
    return static_cast<std::size_t>(std::count_if(crossbars.begin(),
            crossbars.end(), [&](const CrossbarPlacement &x) {
                return !x.power_gated() && x.config == config;
            }));
}

Assignment assign_cluster(const Cluster &cluster, const CrossbarSpec &spec)
{
    if (cluster.pre_neurons.size() > spec.n || cluster.post_neurons.size() > spec.n)
    {
        throw Infeasible(cluster.id,
                {fmt::format("{} pre x {} post neurons do not fit a {}x{} crossbar",
                        cluster.pre_neurons.size(), cluster.post_neurons.size(),
                        spec.n, spec.n)});
    }

    std::vector<std::size_t> pre_hrs(cluster.pre_neurons.size(), 0);
    std::vector<std::size_t> post_hrs(cluster.post_neurons.size(), 0);
    for (const auto &s : cluster.synapses)
    {
        if (s.state == StateLabel::HRS)
        {
            ++pre_hrs[s.pre];
            ++post_hrs[s.post];
        }
    }

    // HRS-heavy neurons take the lowest indices: the short current paths.
    PlacementState state(cluster, spec);
    const auto pre_order = hrs_order(pre_hrs);
    for (std::size_t rank = 0; rank < pre_order.size(); ++rank)
    {
        state.place_pre(pre_order[rank], rank);
    }
    const auto post_order = hrs_order(post_hrs);
    for (std::size_t rank = 0; rank < post_order.size(); ++rank)
    {
        state.place_post(post_order[rank], rank);
    }

    if (!state.violating_synapses().empty())
    {
        const std::size_t budget = 2 * spec.n * spec.n;
        state.repair_rows(budget);
        state.repair_cols(budget);
        state.shift_into_region_c();
    }

    // Constructive fallbacks: fix one side compactly (from index 0, then
    // from the first index past region A) and fit the other side around it.
    if (!state.violating_synapses().empty())
    {
        const auto saved = state.assignment();
        bool done = false;
        for (std::size_t start : {std::size_t{0}, spec.n_h})
        {
            for (bool rows_fixed : {false, true})
            {
                if (done)
                {
                    break;
                }
                done = rows_fixed ? state.construct(true, start, pre_order, post_order)
                                  : state.construct(false, start, post_order, pre_order);
            }
        }
        if (!done)
        {
            state.restore(saved);
        }
    }

    auto violations = state.describe_violations();
    if (!violations.empty())
    {
        throw Infeasible(cluster.id, std::move(violations));
    }
    return state.assignment();
}

std::vector<Cell> used_cells(const Cluster &cluster, const Assignment &assignment)
{
    std::vector<Cell> cells;
    cells.reserve(cluster.synapses.size());
    for (const auto &s : cluster.synapses)
    {
        cells.push_back(assignment.cell_of(s));
    }
    return cells;
}

Configuration select_configuration(const Cluster &cluster,
        const Assignment &assignment, const CrossbarSpec &spec)
{
    const auto cells = used_cells(cluster, assignment);
    return smallest_containing(cells, spec);
}

Placement map_network(const Network &network, const Hardware &hardware)
{
    network.validate();
    hardware.spec.validate();
    check_capacity(network, hardware);

    Placement placement;
    placement.spec = hardware.spec;
    placement.routes = network.routes;
    std::size_t index = 0;
    for (const auto *cluster : largest_first(network))
    {
        const auto assignment = assign_cluster(*cluster, hardware.spec);
        placement.crossbars.push_back(
                build_crossbar(index++, *cluster, assignment, hardware.spec));
    }
    finish(placement, hardware);
    return placement;
}

Placement map_network_random(const Network &network, const Hardware &hardware,
        std::uint64_t seed)
{
    network.validate();
    hardware.spec.validate();
    if (hardware.spec.n_h != 0 || hardware.spec.n_l != 0)
    {
        throw InvalidSpec("the random control mapper ignores regions; use N_h = N_l = 0");
    }
    check_capacity(network, hardware);

    std::mt19937_64 rng(seed);
    Placement placement;
    placement.spec = hardware.spec;
    placement.routes = network.routes;
    std::size_t index = 0;
    for (const auto &cluster : network.clusters)
    {
        if (cluster.pre_neurons.size() > hardware.spec.n ||
                cluster.post_neurons.size() > hardware.spec.n)
        {
            throw Infeasible(cluster.id, {"cluster larger than the crossbar"});
        }
        std::vector<std::size_t> rows(hardware.spec.n);
        std::vector<std::size_t> cols(hardware.spec.n);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        std::iota(cols.begin(), cols.end(), std::size_t{0});
        std::shuffle(rows.begin(), rows.end(), rng);
        std::shuffle(cols.begin(), cols.end(), rng);
        Assignment assignment;
        assignment.row_of_pre.assign(rows.begin(),
                rows.begin() + static_cast<std::ptrdiff_t>(cluster.pre_neurons.size()));
        assignment.col_of_post.assign(cols.begin(),
                cols.begin() + static_cast<std::ptrdiff_t>(cluster.post_neurons.size()));
        placement.crossbars.push_back(
                build_crossbar(index++, cluster, assignment, hardware.spec));
    }
    finish(placement, hardware);
    return placement;
}

std::vector<std::string> check_placement(const Placement &placement)
{
    std::vector<std::string> issues;
    for (const auto &xbar : placement.crossbars)
    {
        const auto where = fmt::format("crossbar {}", xbar.crossbar);
        if (xbar.power_gated())
        {
            if (!xbar.synapses.empty())
            {
                issues.push_back(where + ": power-gated crossbar holds synapses");
            }
            continue;
        }
        if (!is_legal(xbar.config, xbar.spec.control))
        {
            issues.push_back(fmt::format("{}: configuration '{}' illegal under {} control",
                    where, xbar.config.name(), to_string(xbar.spec.control)));
            continue;
        }
        const auto dims = config_dimensions(xbar.config, xbar.spec);

        std::set<std::size_t> rows;
        for (const auto &[neuron, row] : xbar.row_of_pre)
        {
            if (!rows.insert(row).second)
            {
                issues.push_back(fmt::format("{}: row {} used twice", where, row));
            }
        }
        std::set<std::size_t> cols;
        for (const auto &[neuron, col] : xbar.col_of_post)
        {
            if (!cols.insert(col).second)
            {
                issues.push_back(fmt::format("{}: column {} used twice", where, col));
            }
        }

        std::set<Cell> cells;
        for (const auto &s : xbar.synapses)
        {
            const auto row = xbar.row_of_pre.find(s.pre);
            const auto col = xbar.col_of_post.find(s.post);
            if (row == xbar.row_of_pre.end() || col == xbar.col_of_post.end() ||
                    row->second != s.cell.row || col->second != s.cell.col)
            {
                issues.push_back(fmt::format("{}: synapse {}->{} cell ({},{}) "
                                             "disagrees with the neuron maps",
                        where, s.pre, s.post, s.cell.row, s.cell.col));
            }
            if (!cells.insert(s.cell).second)
            {
                issues.push_back(fmt::format("{}: cell ({},{}) holds two synapses",
                        where, s.cell.row, s.cell.col));
            }
            if (s.cell.row >= xbar.spec.n || s.cell.col >= xbar.spec.n)
            {
                issues.push_back(fmt::format("{}: cell ({},{}) outside the crossbar",
                        where, s.cell.row, s.cell.col));
                continue;
            }
            if (!dims.contains(s.cell))
            {
                issues.push_back(fmt::format(
                        "{}: cell ({},{}) outside the {}x{} array of '{}'", where,
                        s.cell.row, s.cell.col, dims.rows, dims.cols,
                        xbar.config.name()));
            }
            if (!permits(s.cell.row, s.cell.col, s.state, xbar.spec))
            {
                issues.push_back(fmt::format("{}: {} not permitted at ({},{})", where,
                        to_string(s.state), s.cell.row, s.cell.col));
            }
        }
    }
    return issues;
}

std::vector<Configuration> smaller_containing_configs(const CrossbarPlacement &xbar)
{
    std::vector<Configuration> out;
    if (xbar.power_gated())
    {
        return out;
    }
    const auto chosen = static_energy_weight(xbar.config, xbar.spec);
    for (auto config : kAllConfigurations)
    {
        if (!is_legal(config, xbar.spec.control) ||
                static_energy_weight(config, xbar.spec) >= chosen)
        {
            continue;
        }
        const auto dims = config_dimensions(config, xbar.spec);
        const bool contains = std::all_of(xbar.synapses.begin(), xbar.synapses.end(),
                [&](const PlacedSynapse &s) { return dims.contains(s.cell); });
        if (contains)
        {
            out.push_back(config);
        }
    }
    return out;
}

void to_json(nlohmann::json &j, const Placement &p)
{
    auto crossbars = nlohmann::json::array();
    for (const auto &x : p.crossbars)
    {
        auto synapses = nlohmann::json::array();
        for (const auto &s : x.synapses)
        {
            synapses.push_back({{"pre", s.pre}, {"post", s.post},
                    {"state", std::string(to_string(s.state))}, {"row", s.cell.row},
                    {"col", s.cell.col}});
        }
        auto rows = nlohmann::json::array();
        for (const auto &[neuron, row] : x.row_of_pre)
        {
            rows.push_back({neuron, row});
        }
        auto cols = nlohmann::json::array();
        for (const auto &[neuron, col] : x.col_of_post)
        {
            cols.push_back({neuron, col});
        }
        nlohmann::json entry{{"id", x.crossbar}, {"spec", x.spec},
                {"power_gated", x.power_gated()}, {"config", x.config.name()},
                {"utilization", synapse_utilization(x.synapses.size(), x.spec.n)},
                {"rows", rows}, {"cols", cols}, {"synapses", synapses}};
        entry["cluster"] = x.cluster ? nlohmann::json(*x.cluster) : nlohmann::json(nullptr);
        crossbars.push_back(std::move(entry));
    }
    j = nlohmann::json{{"spec", p.spec},
            {"stats", {{"m", p.lrs_synapses}, {"n", p.hrs_synapses}}},
            {"routes", p.routes}, {"crossbars", crossbars}};
}

void from_json(const nlohmann::json &j, Placement &p)
{
    p.spec = j.at("spec").get<CrossbarSpec>();
    p.lrs_synapses = j.at("stats").at("m").get<std::size_t>();
    p.hrs_synapses = j.at("stats").at("n").get<std::size_t>();
    p.routes = j.value("routes", std::vector<Route>{});
    p.crossbars.clear();
    for (const auto &x : j.at("crossbars"))
    {
        CrossbarPlacement xbar;
        xbar.crossbar = x.at("id").get<std::size_t>();
        xbar.spec = x.at("spec").get<CrossbarSpec>();
        xbar.config = Configuration::from_name(x.at("config").get<std::string>());
        if (!x.at("cluster").is_null())
        {
            xbar.cluster = x.at("cluster").get<int>();
        }
        for (const auto &r : x.at("rows"))
        {
            xbar.row_of_pre[r.at(0).get<NeuronId>()] = r.at(1).get<std::size_t>();
        }
        for (const auto &c : x.at("cols"))
        {
            xbar.col_of_post[c.at(0).get<NeuronId>()] = c.at(1).get<std::size_t>();
        }
        for (const auto &s : x.at("synapses"))
        {
            xbar.synapses.push_back(PlacedSynapse{s.at("pre").get<NeuronId>(),
                    s.at("post").get<NeuronId>(),
                    parse_state(s.at("state").get<std::string>()),
                    Cell{s.at("row").get<std::size_t>(), s.at("col").get<std::size_t>()}});
        }
        p.crossbars.push_back(std::move(xbar));
    }
}

Placement load_placement(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ParseError(fmt::format("cannot open placement file {}", path.string()));
    }
    Placement placement;
    try
    {
        placement = nlohmann::json::parse(in).get<Placement>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
    auto issues = check_placement(placement);
    if (!issues.empty())
    {
        throw ValidationError(fmt::format("{}: {}", path.string(), issues.front()));
    }
    return placement;
}

void save_placement(const Placement &placement, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw ParseError(fmt::format("cannot write {}", path.string()));
    }
    out << nlohmann::json(placement).dump(1) << '\n';
}

} // namespace nvxbar
