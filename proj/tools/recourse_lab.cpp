// recourse-lab: generate arrival streams, run the online algorithms with
// bound monitors, re-verify saved reports, and sweep instance families.
// Exit codes: 0 all checks passed, 1 a bound check failed, 2 bad
// configuration or input.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <recourse/recourse.hpp>

namespace {

using namespace recourse;

Rat parse_rat_flag(const std::string& s, const std::string& flag) {
    auto r = parse_rational(s);
    if (!r) throw ConfigError(flag + " expects an integer, fraction, or decimal, got '" + s + "'");
    return *r;
}

struct FamilyParams {
    std::string family;
    int rounds = 5;
    int k = 4;
    int switches = 4;
    int n = 12;
    std::string p = "1/2";
    std::uint64_t seed = 1;
    std::string arrival = "vertex";
    std::string t = "2";
};

EventStream build_family_stream(const FamilyParams& fp) {
    if (fp.family == "bipartite-is")
        return play_bipartite_is_adversary(parse_rat_flag(fp.t, "--t"), fp.switches).stream;
    if (fp.family == "path") return gen_matching_path(fp.rounds);
    if (fp.family == "vc-gadget") return gen_vc_repeating_gadget(fp.rounds);
    if (fp.family == "triangle-fan") return gen_vc_triangle_fan(fp.k);
    if (fp.family == "random") {
        Rat p = parse_rat_flag(fp.p, "--p");
        if (p < Rat(0) || p > Rat(1)) throw ConfigError("--p must lie in [0, 1]");
        RandomStreamOptions ro;
        ro.n = fp.n;
        ro.p_num = static_cast<long>(p.numerator());
        ro.p_den = static_cast<long>(p.denominator());
        ro.seed = fp.seed;
        if (fp.arrival == "vertex")
            ro.model = ArrivalModel::vertex;
        else if (fp.arrival == "edge")
            ro.model = ArrivalModel::edge;
        else
            throw ConfigError("--arrival must be vertex or edge");
        return gen_random(ro);
    }
    throw ConfigError("unknown family '" + fp.family + "'");
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

void add_family_options(CLI::App* cmd, FamilyParams& fp, bool required) {
    auto* fam = cmd->add_option("--family", fp.family,
                                "instance family: bipartite-is, path, vc-gadget, "
                                "triangle-fan, random");
    if (required) fam->required();
    cmd->add_option("--rounds", fp.rounds, "rounds for path / vc-gadget");
    cmd->add_option("--k", fp.k, "edge count for triangle-fan");
    cmd->add_option("--switches", fp.switches, "rebuilds to force in bipartite-is");
    cmd->add_option("--n", fp.n, "vertex count for random");
    cmd->add_option("--p", fp.p, "edge probability for random, e.g. 1/3 or 0.25");
    cmd->add_option("--seed", fp.seed, "random seed");
}

int cmd_gen(const FamilyParams& fp, const std::string& out_path) {
    EventStream s = build_family_stream(fp);
    write_text(out_path, stream_to_string(s));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online graph algorithms under the recourse model"};
    app.require_subcommand(1);

    FamilyParams gen_fp;
    std::string gen_out = "-";
    auto* gen = app.add_subcommand("gen", "generate an arrival stream as JSON lines");
    add_family_options(gen, gen_fp, true);
    gen->add_option("--t", gen_fp.t, "target factor for bipartite-is");
    gen->add_option("--arrival", gen_fp.arrival, "arrival model for random: vertex or edge");
    gen->add_option("--out,-o", gen_out, "output file, - for stdout");

    FamilyParams run_fp;
    std::string run_stream, run_out = "-", run_algo = "tas", run_problem, run_arrival;
    std::string run_t = "2", run_yardstick = "exact", run_monitor = "on";
    int run_L = -1, run_cap = 0;
    auto* run = app.add_subcommand("run", "run an algorithm over a stream with monitors");
    run->add_option("--stream", run_stream, "stream file (JSON lines)");
    add_family_options(run, run_fp, false);
    run->add_option("--algo", run_algo, "tas, lgreedy, dh, or greedy-is");
    run->add_option("--problem", run_problem, "is, vc, or matching");
    run->add_option("--t", run_t, "target factor, e.g. 3/2");
    run->add_option("--L", run_L, "matching path budget; derived from --t when omitted");
    run->add_option("--yardstick", run_yardstick, "reference solver: exact, or none to skip");
    run->add_option("--arrival", run_arrival, "vertex or edge");
    run->add_option("--monitor", run_monitor, "on or off");
    run->add_option("--oracle-cap", run_cap,
                    "exact-solver vertex limit; default $RECOURSE_LAB_ORACLE_CAP or 40");
    run->add_option("--out,-o", run_out, "report file, - for stdout");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "recheck every bound in a saved report");
    verify->add_option("--report", verify_path, "report file to verify")->required();

    FamilyParams sweep_fp;
    std::string sweep_out = "-", sweep_algo = "tas", sweep_problem, sweep_arrival;
    std::string sweep_t = "2", sweep_yardstick = "exact";
    std::vector<std::string> sweep_ts;
    int sweep_max_rounds = 10, sweep_max_k = 8, sweep_count = 10, sweep_L = -1, sweep_cap = 0;
    auto* sweep = app.add_subcommand("sweep", "run a family across a parameter range, CSV out");
    add_family_options(sweep, sweep_fp, true);
    sweep->add_option("--algo", sweep_algo, "tas, lgreedy, or dh");
    sweep->add_option("--problem", sweep_problem, "is, vc, or matching (random family)");
    sweep->add_option("--arrival", sweep_arrival, "vertex or edge (random family)");
    sweep->add_option("--t", sweep_t, "target factor");
    sweep->add_option("--t-list", sweep_ts, "target factors for bipartite-is");
    sweep->add_option("--L", sweep_L, "matching path budget override");
    sweep->add_option("--yardstick", sweep_yardstick, "exact or none");
    sweep->add_option("--max-rounds", sweep_max_rounds, "upper end for path / vc-gadget");
    sweep->add_option("--max-k", sweep_max_k, "upper end for triangle-fan");
    sweep->add_option("--count", sweep_count, "streams for random");
    sweep->add_option("--oracle-cap", sweep_cap, "exact-solver vertex limit");
    sweep->add_option("--out,-o", sweep_out, "CSV file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_fp, gen_out);

        if (run->parsed()) {
            if (run_stream.empty() == run_fp.family.empty())
                throw ConfigError("run needs exactly one of --stream or --family");
            run_fp.t = run_t;
            if (!run_arrival.empty()) run_fp.arrival = run_arrival;
            EventStream stream = run_stream.empty() ? build_family_stream(run_fp)
                                                    : read_stream_file(run_stream);
            ExperimentConfig cfg;
            cfg.algo = run_algo;
            if (run_problem.empty()) {
                cfg.problem = run_algo == "dh"        ? Problem::vertex_cover
                              : run_algo == "lgreedy" ? Problem::matching
                                                      : Problem::independent_set;
            } else {
                auto p = problem_from_string(run_problem);
                if (!p) throw ConfigError("--problem must be is, vc, or matching");
                cfg.problem = *p;
            }
            if (run_arrival.empty())
                cfg.arrival = stream.model;
            else if (run_arrival == "vertex")
                cfg.arrival = ArrivalModel::vertex;
            else if (run_arrival == "edge")
                cfg.arrival = ArrivalModel::edge;
            else
                throw ConfigError("--arrival must be vertex or edge");
            cfg.t = parse_rat_flag(run_t, "--t");
            cfg.L = run_L;
            cfg.yardstick = run_yardstick;
            if (run_monitor == "on")
                cfg.monitor = true;
            else if (run_monitor == "off")
                cfg.monitor = false;
            else
                throw ConfigError("--monitor must be on or off");
            cfg.oracle_cap = run_cap;
            if (run_fp.family == "bipartite-is") {
                // The adaptive family outgrows the default solver cap by
                // design; admit the instance it just built.
                int n = static_cast<int>(stream.events.size());
                cfg.oracle_cap = std::max(resolve_oracle_cap(run_cap), n);
            }
            RunReport rep = run_experiment(cfg, stream);
            std::string text = report_to_json(rep).dump(2) + "\n";
            write_text(run_out, text);
            if (run_out != "-") {
                std::cerr << "report: " << run_out << " (" << rep.steps.size() << " events, "
                          << (rep.all_ok ? "all checks passed" : "CHECK FAILED") << ")\n";
            }
            return rep.all_ok ? 0 : 1;
        }

        if (verify->parsed()) {
            RunReport rep = read_report_file(verify_path);
            VerifyResult vr = verify_report(rep);
            for (const auto& c : vr.checks) {
                std::cout << (c.ok ? "ok   " : "FAIL ") << c.name;
                if (!c.detail.empty()) std::cout << ": " << c.detail;
                std::cout << "\n";
            }
            std::cout << (vr.ok ? "report verified" : "report verification failed") << "\n";
            return vr.ok ? 0 : 1;
        }

        if (sweep->parsed()) {
            SweepConfig cfg;
            cfg.family = sweep_fp.family;
            cfg.algo = sweep_algo;
            if (!sweep_problem.empty()) {
                auto p = problem_from_string(sweep_problem);
                if (!p) throw ConfigError("--problem must be is, vc, or matching");
                cfg.problem = *p;
            } else {
                cfg.problem = sweep_algo == "dh"        ? Problem::vertex_cover
                              : sweep_algo == "lgreedy" ? Problem::matching
                                                        : Problem::independent_set;
            }
            if (sweep_arrival.empty())
                cfg.arrival = element_kind(cfg.problem) == ElementKind::vertex
                                  ? ArrivalModel::vertex
                                  : ArrivalModel::edge;
            else if (sweep_arrival == "vertex")
                cfg.arrival = ArrivalModel::vertex;
            else if (sweep_arrival == "edge")
                cfg.arrival = ArrivalModel::edge;
            else
                throw ConfigError("--arrival must be vertex or edge");
            for (const auto& s : sweep_ts) cfg.t_values.push_back(parse_rat_flag(s, "--t-list"));
            cfg.switches = sweep_fp.switches;
            cfg.max_rounds = sweep_max_rounds;
            cfg.max_k = sweep_max_k;
            cfg.count = sweep_count;
            cfg.n = sweep_fp.n;
            Rat p = parse_rat_flag(sweep_fp.p, "--p");
            if (p < Rat(0) || p > Rat(1)) throw ConfigError("--p must lie in [0, 1]");
            cfg.p_num = static_cast<long>(p.numerator());
            cfg.p_den = static_cast<long>(p.denominator());
            cfg.seed = sweep_fp.seed;
            cfg.t = parse_rat_flag(sweep_t, "--t");
            cfg.L = sweep_L;
            cfg.yardstick = sweep_yardstick;
            cfg.oracle_cap = sweep_cap;
            auto rows = run_sweep(cfg);
            std::ostringstream csv;
            write_sweep_csv(csv, rows);
            write_text(sweep_out, csv.str());
            for (const auto& r : rows)
                if (!r.ok) return 1;
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const StreamError& e) {
        std::cerr << "stream error: " << e.what() << "\n";
        return 2;
    } catch (const OracleLimitError& e) {
        std::cerr << "oracle limit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
