#include "stochmatch/cli.hpp"

#include "stochmatch/format.hpp"
#include "stochmatch/generator.hpp"
#include "stochmatch/montecarlo.hpp"
#include "stochmatch/proofcheck.hpp"
#include "stochmatch/scan.hpp"
#include "stochmatch/solver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace stochmatch::cli {

namespace {

constexpr double kRatioBound = 2.0 + 1e-9;

/// Raised for unreadable or unwritable files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

SizeLimits limits_for(bool force) { return force ? SizeLimits::unbounded() : SizeLimits{}; }

Policy make_policy(const std::string& name, const Instance& inst, const SizeLimits& limits) {
    if (name == "optimal") return optimal_policy(inst, limits);
    return greedy_policy(inst);
}

struct Options {
    std::string instance;
    std::string policy = "greedy";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::size_t count = 100;
    std::string family = "gnp";
    std::size_t n = 5;
    int tmax = 3;
    double density = 0.5;
    bool pgrid = false;
    bool puniform = false;
    std::string out;
    unsigned threads = 0;
    bool force = false;
};

int cmd_eval(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance);
    const SizeLimits limits = limits_for(o.force);
    out << report_decimal(policy_value(inst, make_policy(o.policy, inst, limits), limits)) << '\n';
    return kExitOk;
}

int cmd_ratio(const Options& o, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(o.instance);
    const SizeLimits limits = limits_for(o.force);
    const double opt = optimal_value(inst, limits).value;
    const double grd = policy_value(inst, greedy_policy(inst), limits);
    const double ratio = grd > 0.0 ? opt / grd : 1.0;
    out << "e_opt " << report_decimal(opt) << '\n'
        << "e_grd " << report_decimal(grd) << '\n'
        << "ratio " << report_decimal(ratio) << '\n';
    if (ratio > kRatioBound) {
        err << "ratio exceeds 2: approximation bound violated\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(o.instance);
    const ChainReport r = check_chain(inst, limits_for(o.force), std::filesystem::path(o.instance).stem().string());
    out << chain_csv_header() << '\n' << chain_csv_row(r) << '\n';
    for (const Relation& rel : r.relations) {
        if (!rel.passed()) err << "FAIL " << rel.name << " slack " << report_decimal(rel.slack) << '\n';
    }
    return r.passed() ? kExitOk : kExitViolation;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    GeneratorSpec spec;
    spec.family = *parse_family(o.family);
    spec.n = o.n;
    spec.tmax = o.tmax;
    spec.density = o.density;
    spec.probabilities = o.puniform ? ProbabilitySource::Uniform : ProbabilitySource::Grid;
    spec.seed = o.seed;
    const std::vector<Instance> instances = generate(spec, o.count);
    const ScanResult result = scan(instances, limits_for(o.force), o.threads);

    std::ofstream csv(o.out, std::ios::binary);
    if (!csv) throw IoError("cannot open '" + o.out + "' for writing");
    write_scan_csv(csv, result.reports);
    csv.close();
    if (!csv) throw IoError("failed writing '" + o.out + "'");

    write_summary(out, result.summary);
    err << "wall_time_s " << std::fixed << std::setprecision(3) << result.summary.wall_seconds << '\n';
    return result.summary.failure_ids.empty() && result.summary.worst_ratio <= kRatioBound ? kExitOk
                                                                                           : kExitViolation;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance);
    const SizeLimits limits = limits_for(o.force);
    check_limits(inst, limits);
    out << simulate(inst, make_policy(o.policy, inst, limits), o.trials, o.seed);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic matching with patience: exact values, proof-chain checks, simulation", "stochmatch"};
    app.require_subcommand(1);
    Options o;

    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--instance", o.instance, "Instance file")->required()->check(CLI::ExistingFile);
    };
    auto add_policy = [&](CLI::App* sub) {
        sub->add_option("--policy", o.policy, "greedy or optimal")
            ->check(CLI::IsMember({"greedy", "optimal"}))
            ->capture_default_str();
    };
    auto add_force = [&](CLI::App* sub) { sub->add_flag("--force", o.force, "Lift the default size caps"); };

    CLI::App* eval = app.add_subcommand("eval", "Exact expected matched-edge count of a policy");
    add_instance(eval);
    add_policy(eval);
    add_force(eval);

    CLI::App* ratio = app.add_subcommand("ratio", "E OPT, E GRD and their ratio");
    add_instance(ratio);
    add_force(ratio);

    CLI::App* check = app.add_subcommand("check", "Verify the 2-approximation proof chain on one instance");
    add_instance(check);
    add_force(check);

    CLI::App* scan_cmd = app.add_subcommand("scan", "Check the proof chain on generated instances");
    scan_cmd->add_option("--count", o.count, "Number of instances")->capture_default_str();
    scan_cmd->add_option("--family", o.family, "gnp, path, star or complete")
        ->check(CLI::IsMember({"gnp", "path", "star", "complete"}))
        ->capture_default_str();
    scan_cmd->add_option("--n", o.n, "Vertex count")->check(CLI::Range(std::size_t{1}, std::size_t{64}))->capture_default_str();
    scan_cmd->add_option("--tmax", o.tmax, "Patience drawn from [1, tmax]")->check(CLI::Range(1, 65535))->capture_default_str();
    scan_cmd->add_option("--density", o.density, "gnp edge density")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    auto* pgrid = scan_cmd->add_flag("--pgrid", o.pgrid, "Probabilities from {0.1, ..., 1.0} (default)");
    auto* puniform = scan_cmd->add_flag("--puniform", o.puniform, "Probabilities uniform on (0, 1]");
    pgrid->excludes(puniform);
    scan_cmd->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
    scan_cmd->add_option("--out", o.out, "CSV output file")->required();
    scan_cmd->add_option("--threads", o.threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
    add_force(scan_cmd);

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo estimate of a policy's value");
    add_instance(sim);
    add_policy(sim);
    sim->add_option("--trials", o.trials, "Number of trajectories")->check(CLI::PositiveNumber)->capture_default_str();
    sim->add_option("--seed", o.seed, "splitmix64 seed")->capture_default_str();
    add_force(sim);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (ratio->parsed()) return cmd_ratio(o, out, err);
        if (check->parsed()) return cmd_check(o, out, err);
        if (scan_cmd->parsed()) return cmd_scan(o, out, err);
        if (sim->parsed()) return cmd_simulate(o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const SemanticError& e) {
        err << "invalid instance: " << e.what() << '\n';
    } catch (const SizeCapExceeded& e) {
        err << "size cap exceeded: " << e.what() << " (use --force to override)\n";
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

}  // namespace stochmatch::cli
