#include "nvxbar/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nvxbar/analysis.hpp"
#include "nvxbar/dse.hpp"
#include "nvxbar/error.hpp"
#include "nvxbar/mapper.hpp"
#include "nvxbar/simulate.hpp"
#include "nvxbar/techmodel.hpp"
#include "nvxbar/workload.hpp"

namespace nvxbar::cli {

namespace {

constexpr const char *kTechDirEnv = "NVXBAR_TECH_DIR";

class UsageError : public Error
{
public:
    using Error::Error;
};

std::filesystem::path tech_dir()
{
    const char *dir = std::getenv(kTechDirEnv);
    return dir == nullptr ? std::filesystem::path{} : std::filesystem::path{dir};
}

TechnologyParams tech_for(const std::string &label)
{
    return resolve_tech(label, tech_dir());
}

std::size_t parse_count(const std::string &text)
{
    std::size_t used = 0;
    unsigned long long value = 0;
    try
    {
        value = std::stoull(text, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used != text.size() || text.empty() || text.front() == '-')
    {
        throw UsageError(fmt::format("'{}' is not a non-negative integer", text));
    }
    return static_cast<std::size_t>(value);
}

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
    {
        parts.push_back(item);
    }
    return parts;
}

/// "a:b:step" -> a, a+step, ... <= b.
std::vector<std::size_t> parse_sweep(const std::string &text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3)
    {
        throw UsageError(fmt::format("sweep '{}' must look like start:stop:step", text));
    }
    const auto start = parse_count(parts[0]);
    const auto stop = parse_count(parts[1]);
    const auto step = parse_count(parts[2]);
    if (step == 0 || start > stop)
    {
        throw UsageError(fmt::format("sweep '{}' is empty", text));
    }
    std::vector<std::size_t> values;
    for (auto v = start; v <= stop; v += step)
    {
        values.push_back(v);
    }
    return values;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string &text)
{
    const auto parts = split(text, ':');
    if (parts.size() == 1)
    {
        const auto v = parse_count(parts[0]);
        return {v, v};
    }
    if (parts.size() != 2)
    {
        throw UsageError(fmt::format("range '{}' must look like min:max", text));
    }
    return {parse_count(parts[0]), parse_count(parts[1])};
}

std::vector<std::size_t> parse_list(const std::string &text)
{
    if (text.find(':') != std::string::npos)
    {
        return parse_sweep(text);
    }
    std::vector<std::size_t> values;
    for (const auto &part : split(text, ','))
    {
        values.push_back(parse_count(part));
    }
    if (values.empty())
    {
        throw UsageError("empty list");
    }
    return values;
}

CrossbarSpec spec_from(const std::string &text, const std::string &control)
{
    CrossbarSpec spec;
    if (std::filesystem::path(text).extension() == ".json")
    {
        std::ifstream in(text);
        if (!in)
        {
            throw ParseError(fmt::format("cannot open spec file {}", text));
        }
        try
        {
            spec = nlohmann::json::parse(in).get<CrossbarSpec>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ParseError(fmt::format("{}: {}", text, e.what()));
        }
    }
    else
    {
        spec = parse_spec_tuple(text);
    }
    if (!control.empty())
    {
        spec.control = parse_control(control);
    }
    return spec;
}

std::ofstream open_out(const std::filesystem::path &path)
{
    if (path.has_parent_path())
    {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out)
    {
        throw ParseError(fmt::format("cannot write {}", path.string()));
    }
    return out;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs
{
    std::size_t n{0};
    std::string node;
    std::string sweep;
    std::string out;
};

int cmd_analyze(const AnalyzeArgs &a, std::ostream &out)
{
    const auto tech = tech_for(a.node);
    std::vector<std::size_t> sizes;
    if (!a.sweep.empty())
    {
        sizes = parse_sweep(a.sweep);
    }
    else if (a.n > 0)
    {
        sizes.push_back(a.n);
    }
    else
    {
        throw UsageError("analyze needs --n or --sweep-n");
    }

    std::vector<AnalysisRow> rows;
    for (auto n : sizes)
    {
        rows.push_back(analyze(n, tech.feature_size_nm));
    }
    if (a.out.empty())
    {
        write_analysis_csv(out, rows);
    }
    else
    {
        auto file = open_out(a.out);
        write_analysis_csv(file, rows);
        out << fmt::format("wrote {} rows to {}\n", rows.size(), a.out);
    }
    return kOk;
}

// -------------------------------------------------------------------- gen

struct GenArgs
{
    std::size_t clusters{4};
    std::string pre{"8:32"};
    std::string post{"8:32"};
    double density{0.25};
    std::string mix{"0.25,0.25,0.25,0.25"};
    double rate{30.0};
    double duration{1.0};
    std::uint64_t seed{0};
    std::string network_out;
    std::string spikes_out;
};

int cmd_gen(const GenArgs &a, std::ostream &out)
{
    SyntheticParams p;
    p.clusters = a.clusters;
    std::tie(p.pre_min, p.pre_max) = parse_range(a.pre);
    std::tie(p.post_min, p.post_max) = parse_range(a.post);
    p.density = a.density;
    const auto mix = split(a.mix, ',');
    if (mix.size() != 4)
    {
        throw UsageError("--mix needs four comma-separated probabilities "
                         "(LRS1,LRS2,LRS3,HRS)");
    }
    for (std::size_t i = 0; i < 4; ++i)
    {
        try
        {
            p.state_mix[i] = std::stod(mix[i]);
        }
        catch (const std::exception &)
        {
            throw UsageError(fmt::format("bad probability '{}'", mix[i]));
        }
    }
    p.spike_rate = a.rate;
    p.duration = a.duration;
    p.seed = a.seed;

    const auto workload = generate_synthetic(p);
    save_network(workload.network, a.network_out);
    std::size_t spikes = 0;
    for (const auto &t : workload.trains)
    {
        spikes += t.times.size();
    }
    if (!a.spikes_out.empty())
    {
        save_spikes(workload.trains, a.spikes_out);
    }
    std::size_t synapses = 0;
    for (const auto &c : workload.network.clusters)
    {
        synapses += c.synapses.size();
    }
    out << fmt::format("generated {} clusters, {} synapses, {} routes, {} spikes\n",
            workload.network.clusters.size(), synapses,
            workload.network.routes.size(), spikes);
    return kOk;
}

// -------------------------------------------------------------------- map

struct MapArgs
{
    std::string network;
    std::string spec{"128,64,64,96,96"};
    std::string control;
    std::string out;
    std::size_t crossbars{0};
    std::string mapper{"optimized"};
    std::uint64_t seed{0};
};

int cmd_map(const MapArgs &a, std::ostream &out)
{
    const auto network = load_network(a.network);
    Hardware hw;
    hw.spec = spec_from(a.spec, a.control);
    hw.crossbar_count = a.crossbars > 0 ? a.crossbars : network.clusters.size();

    Placement placement;
    if (a.mapper == "optimized")
    {
        placement = map_network(network, hw);
    }
    else if (a.mapper == "random")
    {
        placement = map_network_random(network, hw, a.seed);
    }
    else
    {
        throw UsageError(fmt::format("unknown mapper '{}'", a.mapper));
    }
    save_placement(placement, a.out);

    out << "crossbar,cluster,config,synapses,utilization_pct\n";
    std::map<std::string, std::size_t> histogram{{"00", 0}, {"01", 0}, {"10", 0},
            {"11", 0}, {"gated", 0}};
    for (const auto &x : placement.crossbars)
    {
        if (x.power_gated())
        {
            ++histogram["gated"];
            out << fmt::format("{},,gated,0,0\n", x.crossbar);
            continue;
        }
        ++histogram[x.config.name()];
        out << fmt::format("{},{},{},{},{}\n", x.crossbar, *x.cluster,
                x.config.name(), x.synapses.size(),
                100.0 * synapse_utilization(x.synapses.size(), x.spec.n));
    }
    out << fmt::format("configs: 00={} 01={} 10={} 11={} gated={}\n", histogram["00"],
            histogram["01"], histogram["10"], histogram["11"], histogram["gated"]);
    return kOk;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs
{
    std::string placement;
    std::string spikes;
    double duration{1.0};
    std::string out;
    std::string node{"16nm"};
    std::string format{"json"};
    double threshold{1.0};
    double leak{0.0};
    double refractory{0.0};
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out)
{
    if (a.format != "json" && a.format != "csv" && a.format != "both")
    {
        throw UsageError(fmt::format("unknown format '{}'", a.format));
    }
    const auto placement = load_placement(a.placement);
    const auto trains = load_spikes(a.spikes);
    const auto tech = tech_for(a.node);
    auto neuron = IFNeuron::with_default_increments(tech);
    neuron.v_threshold = a.threshold;
    neuron.leak_per_second = a.leak;
    neuron.refractory = a.refractory;

    const auto result = simulate(placement, trains, a.duration, tech, neuron);

    std::filesystem::create_directories(a.out);
    if (a.format == "json" || a.format == "both")
    {
        auto file = open_out(std::filesystem::path(a.out) / "report.json");
        file << simulation_json(result, placement).dump(1) << '\n';
    }
    if (a.format == "csv" || a.format == "both")
    {
        write_csv_reports(result, placement, a.out);
    }
    double max_distortion = 0.0;
    for (const auto &row : result.isi)
    {
        max_distortion = std::max(max_distortion, row.distortion);
    }
    const auto &lat = result.latency.aggregate;
    out << fmt::format("latency: best={} worst={} diff={} ratio={} mean={}\n", lat.best,
            lat.worst, lat.diff, lat.ratio, lat.mean);
    out << fmt::format("energy: total={} static={} spike={} routing={} access={}\n",
            result.energy.total_j, result.energy.static_j, result.energy.spike_j,
            result.energy.routing_j, result.energy.access_overhead_j);
    out << fmt::format("isi: neurons={} max_distortion={}\n", result.isi.size(),
            max_distortion);
    return kOk;
}

// -------------------------------------------------------------------- dse

struct DseArgs
{
    std::vector<std::string> networks;
    std::string spec{"128,64,64"};
    std::string control;
    std::string grid{"64,72,80,96,112,128"};
    std::string out;
    std::string node{"16nm"};
    std::uint64_t seed{0};
    double rate{30.0};
    double duration{1.0};
    double tolerance{0.0};
    std::string nh_grid;
    std::string nl_grid;
    std::string nhnl_out;
};

int cmd_dse(const DseArgs &a, std::ostream &out)
{
    const auto tech = tech_for(a.node);
    const auto base = spec_from(a.spec, a.control);

    if (!a.nh_grid.empty() || !a.nl_grid.empty())
    {
        const auto nh = parse_list(a.nh_grid.empty() ? "0" : a.nh_grid);
        const auto nl = parse_list(a.nl_grid.empty() ? "0" : a.nl_grid);
        const auto rows = sweep_nhnl(base.n, tech, nh, nl);
        if (a.nhnl_out.empty())
        {
            write_nhnl_csv(out, rows);
        }
        else
        {
            auto file = open_out(a.nhnl_out);
            write_nhnl_csv(file, rows);
        }
        if (a.networks.empty())
        {
            return kOk;
        }
    }

    if (a.networks.empty())
    {
        throw UsageError("dse needs --networks (or --nh-grid/--nl-grid)");
    }
    std::vector<NamedNetwork> networks;
    for (const auto &path : a.networks)
    {
        networks.push_back({std::filesystem::path(path).stem().string(),
                load_network(path)});
    }
    const auto values = parse_list(a.grid);
    const auto grid = square_grid(values);

    SweepOptions options;
    options.seed = a.seed;
    options.spike_rate = a.rate;
    options.duration = a.duration;
    options.neuron = IFNeuron::with_default_increments(tech);

    const auto sweeps = sweep_pq(networks, base, tech, grid, options);
    if (a.out.empty())
    {
        write_sweep_csv(out, sweeps);
    }
    else
    {
        auto file = open_out(a.out);
        write_sweep_csv(file, sweeps);
    }
    const auto [p, q] = select_tradeoff(sweeps, a.tolerance);
    out << fmt::format("selected P={} Q={}\n", p, q);
    return kOk;
}

} // namespace

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Partitioned NVM crossbar simulator and mapping toolchain", "nvxbar"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto *analyze = app.add_subcommand("analyze", "cost-per-bit and die-area table");
    analyze->add_option("--n", analyze_args.n, "crossbar dimension");
    analyze->add_option("--node", analyze_args.node, "technology preset or JSON file")
            ->required();
    analyze->add_option("--sweep-n", analyze_args.sweep, "start:stop:step");
    analyze->add_option("--out", analyze_args.out, "CSV output file (default stdout)");

    GenArgs gen_args;
    auto *gen = app.add_subcommand("gen", "synthetic clustered network and spike trains");
    gen->add_option("--clusters", gen_args.clusters);
    gen->add_option("--pre", gen_args.pre, "presynaptic neurons per cluster, min:max");
    gen->add_option("--post", gen_args.post, "postsynaptic neurons per cluster, min:max");
    gen->add_option("--density", gen_args.density);
    gen->add_option("--mix", gen_args.mix, "LRS1,LRS2,LRS3,HRS probabilities");
    gen->add_option("--rate", gen_args.rate, "spike rate in Hz");
    gen->add_option("--duration", gen_args.duration, "seconds");
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--network-out", gen_args.network_out)->required();
    gen->add_option("--spikes-out", gen_args.spikes_out);

    MapArgs map_args;
    auto *map = app.add_subcommand("map", "place a network onto crossbars");
    map->add_option("--network", map_args.network)->required();
    map->add_option("--spec", map_args.spec, "N,N_h,N_l,P,Q or a JSON file");
    map->add_option("--control", map_args.control, "double|single");
    map->add_option("--out", map_args.out, "placement JSON")->required();
    map->add_option("--crossbars", map_args.crossbars, "default: one per cluster");
    map->add_option("--mapper", map_args.mapper, "optimized|random");
    map->add_option("--seed", map_args.seed, "seed of the random mapper");

    SimulateArgs sim_args;
    auto *sim = app.add_subcommand("simulate", "latency, energy and ISI reports");
    sim->add_option("--placement", sim_args.placement)->required();
    sim->add_option("--spikes", sim_args.spikes)->required();
    sim->add_option("--duration", sim_args.duration, "seconds");
    sim->add_option("--out", sim_args.out, "report directory")->required();
    sim->add_option("--node", sim_args.node, "technology preset or JSON file");
    sim->add_option("--format", sim_args.format, "json|csv|both");
    sim->add_option("--threshold", sim_args.threshold);
    sim->add_option("--leak", sim_args.leak, "potential units per second");
    sim->add_option("--refractory", sim_args.refractory, "seconds");

    DseArgs dse_args;
    auto *dse = app.add_subcommand("dse", "P/Q and N_h/N_l design-space sweeps");
    dse->add_option("--networks", dse_args.networks);
    dse->add_option("--spec", dse_args.spec, "base N,N_h,N_l");
    dse->add_option("--control", dse_args.control, "double|single");
    dse->add_option("--grid", dse_args.grid, "P/Q values, comma list or a:b:step");
    dse->add_option("--out", dse_args.out, "sweep CSV (default stdout)");
    dse->add_option("--node", dse_args.node);
    dse->add_option("--seed", dse_args.seed);
    dse->add_option("--rate", dse_args.rate);
    dse->add_option("--duration", dse_args.duration);
    dse->add_option("--tolerance", dse_args.tolerance, "allowed latency regression");
    dse->add_option("--nh-grid", dse_args.nh_grid);
    dse->add_option("--nl-grid", dse_args.nl_grid);
    dse->add_option("--nhnl-out", dse_args.nhnl_out);

    std::vector<std::string> argv_storage{"nvxbar"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_storage)
    {
        argv.push_back(a.c_str());
    }

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return kUsage;
    }

    try
    {
        if (analyze->parsed())
        {
            return cmd_analyze(analyze_args, out);
        }
        if (gen->parsed())
        {
            return cmd_gen(gen_args, out);
        }
        if (map->parsed())
        {
            return cmd_map(map_args, out);
        }
        if (sim->parsed())
        {
            return cmd_simulate(sim_args, out);
        }
        if (dse->parsed())
        {
            return cmd_dse(dse_args, out);
        }
    }
    catch (const Infeasible &e)
    {
        err << "error: " << e.what() << '\n';
        for (const auto &v : e.violations())
        {
            err << "  " << v << '\n';
        }
        return kDomain;
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const ValidationError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const InvalidParams &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const InvalidSpec &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const InvalidGrid &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const Error &e)
    {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace nvxbar::cli
