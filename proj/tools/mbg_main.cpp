// Command-line front end: board construction, analysis, game play, exact
// solving, criteria reports, and the Monte Carlo experiment drivers.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mbg/criteria.hpp"
#include "mbg/errors.hpp"
#include "mbg/experiments.hpp"
#include "mbg/game.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/pattern.hpp"
#include "mbg/solver.hpp"
#include "mbg/strategies.hpp"

namespace {

using namespace mbg;

struct board_source {
    std::string board_file;
    std::string system_file;
    std::string pattern_file;
    int ap_k = 0;
    std::string mode = "proper";

    std::optional<linear_system> system;
    std::optional<pattern> pat;

    void attach(CLI::App* cmd, bool with_mode = true) {
        cmd->add_option("--board", board_file, "hypergraph file (text format)");
        cmd->add_option("--system", system_file, "linear system file (JSON)");
        cmd->add_option("--pattern", pattern_file, "pattern file");
        cmd->add_option("--ap", ap_k, "k-AP family (k >= 3)");
        if (with_mode)
            cmd->add_option("--mode", mode,
                            "solution mode for system boards: proper|all|nondegenerate");
    }

    void materialize() {
        if (!system_file.empty()) system = linear_system::load(system_file);
        if (ap_k >= 3 && !system) system = ap_system(ap_k);
        if (!pattern_file.empty()) pat = pattern::load(pattern_file);
    }

    solution_mode make_mode() const {
        if (mode == "proper") return solution_mode::proper();
        if (mode == "all") return solution_mode::all_integer();
        if (mode == "nondegenerate") {
            std::vector<set_partition> family;
            for (const auto& p : all_partitions(system->cols()))
                if (classify_partition(*system, p) != partition_class::degenerate)
                    family.push_back(p);
            return solution_mode::family_of(std::move(family));
        }
        throw input_error("unknown mode '" + mode + "'");
    }

    hypergraph build(int64_t n) {
        materialize();
        if (!board_file.empty()) return hypergraph::load(board_file);
        if (ap_k >= 3 && mode == "proper") return ap_hypergraph(ap_k, n);
        if (system) return build_rado_hypergraph(*system, n, make_mode());
        if (pat) return build_building_hypergraph(*pat, static_cast<int>(n));
        throw input_error("no board source given (use --board/--system/--pattern/--ap)");
    }

    bool needs_n() const { return board_file.empty(); }
};

std::string output_dir() {
    if (const char* env = std::getenv("MBG_OUTPUT_DIR")) return env;
    return ".";
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << content;
    std::cout << "wrote " << path << "\n";
}

std::vector<int64_t> parse_grid(const std::string& spec) {
    std::vector<int64_t> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw input_error("empty n grid");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw input_error("n grid must be strictly increasing");
    return out;
}

// estimate-threshold / exponent configuration: JSON file values overridden by
// explicit flags.
struct experiment_setup {
    board_source source;
    std::string n_grid_spec;
    int64_t n = 0;
    int trials = 200;
    double target = 0.5;
    int q_lo = 1;
    int q_hi = 0;
    uint64_t seed = 0;
    std::string maker = "random-maker";
    std::string breaker = "es-breaker";
    std::string out_prefix = "mbg_run";
    std::string config_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "JSON config file (flags override it)");
        source.attach(cmd);
        cmd->add_option("--n", n, "single board size");
        cmd->add_option("--n-grid", n_grid_spec, "comma-separated board sizes");
        cmd->add_option("--trials", trials, "games per bias point");
        cmd->add_option("--target", target, "crossover win-rate target");
        cmd->add_option("--q-lo", q_lo, "bias bracket lower end");
        cmd->add_option("--q-hi", q_hi, "bias bracket upper end (0 = auto)");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--maker", maker, "Maker strategy name");
        cmd->add_option("--breaker", breaker, "Breaker strategy name");
        cmd->add_option("--out-prefix", out_prefix, "output file prefix");
    }

    void load_config(const CLI::App* cmd) {
        if (config_file.empty()) return;
        std::ifstream in(config_file);
        if (!in) throw input_error("cannot open config " + config_file);
        nlohmann::json j;
        in >> j;
        const auto take = [&](const char* key, auto& value, const std::string& flag) {
            if (j.contains(key) && cmd->count(flag) == 0)
                value = j[key].template get<std::decay_t<decltype(value)>>();
        };
        take("trials", trials, "--trials");
        take("target", target, "--target");
        take("q_lo", q_lo, "--q-lo");
        take("q_hi", q_hi, "--q-hi");
        take("seed", seed, "--seed");
        take("maker", maker, "--maker");
        take("breaker", breaker, "--breaker");
        take("out_prefix", out_prefix, "--out-prefix");
        take("n_grid", n_grid_spec, "--n-grid");
        take("n", n, "--n");
        take("ap", source.ap_k, "--ap");
        take("system", source.system_file, "--system");
        take("pattern", source.pattern_file, "--pattern");
        take("board", source.board_file, "--board");
        take("mode", source.mode, "--mode");
    }

    std::vector<int64_t> grid() const {
        if (!n_grid_spec.empty()) return parse_grid(n_grid_spec);
        if (n > 0) return {n};
        throw input_error("no --n or --n-grid given");
    }

    threshold_estimate run_one(int64_t board_n) {
        const hypergraph board = source.build(board_n);
        strategy_context ctx;
        if (source.system) ctx.system = &*source.system;
        const std::string maker_name = maker, breaker_name = breaker;
        const strategy_context ctx_copy = ctx;
        const strategy_factory mk = [maker_name, ctx_copy](const hypergraph& b, int q) {
            return make_strategy(maker_name, b, q, player::maker, ctx_copy);
        };
        const strategy_factory bk = [breaker_name, ctx_copy](const hypergraph& b, int q) {
            return make_strategy(breaker_name, b, q, player::breaker, ctx_copy);
        };
        estimate_options opt;
        opt.trials = trials;
        opt.target = target;
        opt.q_lo = q_lo;
        opt.q_hi = q_hi;
        opt.seed = seed;
        return estimate_threshold(board, board_n, mk, bk, opt);
    }
};

void print_matrix(const int_matrix& a, const std::string& indent) {
    for (const auto& row : a) {
        std::cout << indent << "[";
        for (size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
        std::cout << "]\n";
    }
}

int cmd_analyze_matrix(const std::string& file) {
    const linear_system sys = linear_system::load(file);
    std::cout << "rows: " << sys.rows() << "  cols: " << sys.cols() << "\n";
    std::cout << "rank: " << rank(sys.a) << "\n";
    const bool positive = is_positive(sys.a);
    const bool abundant = is_abundant(sys.a);
    std::cout << "positive: " << (positive ? "yes" : "no") << "\n";
    std::cout << "abundant: " << (abundant ? "yes" : "no") << "\n";
    if (positive && abundant) {
        const auto md = max_one_density(sys.a);
        std::cout << "m1: " << to_string(md.value) << "\n";
        std::cout << "witness Q (0-based):";
        for (int c : md.witness) std::cout << " " << c;
        std::cout << "\n";
        const auto [sub, q] = strictly_balanced_subsystem(sys);
        std::cout << "strictly balanced subsystem B (rank " << sub.r_q << "):\n";
        print_matrix(sub.b_matrix, "  ");
        std::cout << "  c:";
        for (const auto& x : sub.c) std::cout << " " << x;
        std::cout << "\n";
        const auto pred = predicted_exponent(sys);
        std::cout << "predicted exponent: " << to_string(*pred.exponent) << "\n";
    } else if (positive) {
        const auto cert = make_pairing_certificate(sys);
        std::cout << "non-abundant: Breaker wins with bias at most 2 via the pairing\n";
        std::cout << "  " << cert.v1 << "*x" << cert.i1 + 1 << " + " << cert.v2 << "*x"
                  << cert.i2 + 1 << " = " << cert.b_prime << "\n";
    }
    if (sys.cols() <= 5) {
        std::cout << "partition classification:\n";
        for (const auto& p : all_partitions(sys.cols())) {
            std::cout << "  " << p.to_string() << " -> "
                      << to_string(classify_partition(sys, p)) << "\n";
        }
    }
    return 0;
}

int cmd_analyze_pattern(const std::string& file) {
    const pattern g = pattern::load(file);
    const auto rd = r_density(g);
    std::cout << "r: " << g.r << "  v: " << g.vertices << "  e: " << g.edge_count() << "\n";
    std::cout << "m_r: " << to_string(rd.value) << "\n";
    const pattern f = strictly_balanced_sub(g);
    std::cout << "strictly balanced subpattern edges:\n";
    for (const auto& e : f.edges) {
        std::cout << " ";
        for (int v : e) std::cout << " " << v;
        std::cout << "\n";
    }
    const auto pred = predicted_exponent(g);
    if (pred.exponent)
        std::cout << "predicted exponent: " << to_string(*pred.exponent) << "\n";
    if (!pred.note.empty()) std::cout << "note: " << pred.note << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biased Maker-Breaker games on explicit hypergraphs"};
    app.require_subcommand(1);

    // analyze-matrix
    std::string matrix_file;
    auto* am = app.add_subcommand("analyze-matrix", "rank, positivity, abundance, m1, subsystem");
    am->add_option("file", matrix_file, "system JSON file")->required();

    // analyze-pattern
    std::string pattern_file;
    auto* ap = app.add_subcommand("analyze-pattern", "r-density and balanced subpattern");
    ap->add_option("file", pattern_file, "pattern file")->required();

    // build-board
    board_source bb_source;
    int64_t bb_n = 0;
    std::string bb_out;
    auto* bb = app.add_subcommand("build-board", "construct a game hypergraph");
    bb_source.attach(bb);
    bb->add_option("--n", bb_n, "board size");
    bb->add_option("--out", bb_out, "output file (default stdout)");

    // play
    board_source play_source;
    int64_t play_n = 0;
    int play_q = 1;
    std::string play_maker = "random-maker", play_breaker = "es-breaker", play_first = "maker";
    uint64_t play_seed = 0;
    std::string play_out;
    auto* pl = app.add_subcommand("play", "play one game and emit the transcript JSON");
    play_source.attach(pl);
    pl->add_option("--n", play_n, "board size (for family sources)");
    pl->add_option("--q", play_q, "Breaker bias")->required();
    pl->add_option("--maker", play_maker, "Maker strategy");
    pl->add_option("--breaker", play_breaker, "Breaker strategy");
    pl->add_option("--seed", play_seed, "game seed");
    pl->add_option("--first", play_first, "first player: maker|breaker");
    pl->add_option("--out", play_out, "output file (default stdout)");

    // solve
    board_source solve_source;
    int64_t solve_n = 0;
    int solve_q = 1;
    auto* sv = app.add_subcommand("solve", "exact optimal-play winner (small boards)");
    solve_source.attach(sv);
    sv->add_option("--n", solve_n, "board size (for family sources)");
    sv->add_option("--q", solve_q, "Breaker bias")->required();

    // threshold-exact
    board_source th_source;
    int64_t th_n = 0;
    auto* th = app.add_subcommand("threshold-exact", "exact threshold bias (small boards)");
    th_source.attach(th);
    th->add_option("--n", th_n, "board size (for family sources)");

    // criteria
    board_source cr_source;
    int64_t cr_n = 0;
    criteria_options cr_opt;
    double cr_c1 = 0.0;
    int64_t cr_q = -1;
    double cr_p = -1.0;
    auto* cr = app.add_subcommand("criteria", "evaluate every criterion for one board");
    cr_source.attach(cr);
    cr->add_option("--n", cr_n, "board size (for family sources)");
    cr->add_option("--q", cr_q, "bias for Beck's criterion");
    cr->add_option("--t", cr_opt.t, "t for the Breaker bound");
    cr->add_option("--c1", cr_c1, "constant c1 (default k)");
    cr->add_option("--c", cr_opt.c, "constant c");
    cr->add_option("--cbar", cr_opt.cbar, "constant cbar");
    cr->add_option("--p", cr_p, "Janson probability (default 1/f)");

    // estimate-threshold
    experiment_setup est_setup;
    auto* et = app.add_subcommand("estimate-threshold", "Monte Carlo threshold estimation");
    est_setup.attach(et);

    // exponent
    experiment_setup exp_setup;
    std::string exp_from;
    auto* ex = app.add_subcommand("exponent", "log-log slope of threshold estimates");
    exp_setup.attach(ex);
    ex->add_option("--from", exp_from, "read estimates CSV instead of running games");

    // stability
    board_source st_source;
    int64_t st_n = 0;
    int st_m = 0;
    double st_delta = 0.9;
    int64_t st_samples = 1000;
    uint64_t st_seed = 0;
    auto* st = app.add_subcommand("stability", "P(uniform M-set is not delta-stable)");
    st_source.attach(st);
    st->add_option("--n", st_n, "board size (for family sources)");
    st->add_option("--M", st_m, "sample set size")->required();
    st->add_option("--delta", st_delta, "stability fraction in (0,1)");
    st->add_option("--samples", st_samples, "Monte Carlo samples");
    st->add_option("--seed", st_seed, "seed");

    // binuni
    board_source bu_source;
    int64_t bu_n = 0;
    double bu_p = 0.3;
    int64_t bu_samples = 1000;
    uint64_t bu_seed = 0;
    auto* bu = app.add_subcommand("binuni", "binomial vs uniform no-edge probabilities");
    bu_source.attach(bu);
    bu->add_option("--n", bu_n, "board size (for family sources)");
    bu->add_option("--p", bu_p, "inclusion probability");
    bu->add_option("--samples", bu_samples, "Monte Carlo samples");
    bu->add_option("--seed", bu_seed, "seed");

    // count-solutions
    board_source cs_source;
    std::string cs_grid;
    auto* cs = app.add_subcommand("count-solutions", "exact solution counts over an n grid");
    cs_source.attach(cs);
    cs->add_option("--n-grid", cs_grid, "comma-separated sizes")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (am->parsed()) return cmd_analyze_matrix(matrix_file);
        if (ap->parsed()) return cmd_analyze_pattern(pattern_file);

        if (bb->parsed()) {
            const hypergraph board = bb_source.build(bb_n);
            if (bb_out.empty())
                std::cout << board.format();
            else {
                board.save(bb_out);
                std::cout << "wrote " << bb_out << " (v=" << board.vertex_count()
                          << ", e=" << board.edge_count() << ")\n";
            }
            return 0;
        }

        if (pl->parsed()) {
            const hypergraph board = play_source.build(play_n);
            play_source.materialize();
            strategy_context ctx;
            if (play_source.system) ctx.system = &*play_source.system;
            auto maker = make_strategy(play_maker, board, play_q, player::maker, ctx);
            auto breaker = make_strategy(play_breaker, board, play_q, player::breaker, ctx);
            const player first = play_first == "breaker" ? player::breaker : player::maker;
            const transcript t = play(board, play_q, *maker, *breaker, play_seed, first);
            if (play_out.empty())
                std::cout << t.to_json() << "\n";
            else
                write_file(output_dir(), play_out, t.to_json() + "\n");
            return 0;
        }

        if (sv->parsed()) {
            const hypergraph board = solve_source.build(solve_n);
            std::cout << to_string(solve(board, solve_q)) << "\n";
            return 0;
        }

        if (th->parsed()) {
            const hypergraph board = th_source.build(th_n);
            const threshold_result r = threshold_bias_exact(board);
            if (r.finite)
                std::cout << r.bias << "\n";
            else
                std::cout << "infinite\n";
            return 0;
        }

        if (cr->parsed()) {
            const hypergraph board = cr_source.build(cr_n);
            cr_source.materialize();
            cr_opt.c1 = cr_c1;
            if (cr_q >= 1) cr_opt.q = cr_q;
            if (cr_p > 0) cr_opt.p = cr_p;
            const linear_system* sys = cr_source.system ? &*cr_source.system : nullptr;
            const pattern* pat = cr_source.pat ? &*cr_source.pat : nullptr;
            const std::string id = !cr_source.board_file.empty() ? cr_source.board_file
                                   : (cr_source.ap_k >= 3 ? std::to_string(cr_source.ap_k) + "-AP"
                                                          : "board");
            std::cout << build_criteria_report(board, cr_opt, sys, pat, id).to_json() << "\n";
            return 0;
        }

        if (et->parsed()) {
            est_setup.load_config(et);
            std::vector<threshold_estimate> all;
            for (int64_t n : est_setup.grid()) {
                threshold_estimate e = est_setup.run_one(n);
                std::cout << "n=" << n << " q_hat=" << e.q_hat
                          << (e.unbounded ? " (unbounded)" : "")
                          << (e.below_bracket ? " (below bracket)" : "")
                          << (e.warning_nonmonotone ? " [warning: non-monotone curve]" : "")
                          << "\n";
                const std::string base = est_setup.out_prefix + "_n" + std::to_string(n);
                write_file(output_dir(), base + "_curve.csv", to_csv(e));
                write_file(output_dir(), base + "_trials.jsonl", trials_to_jsonl(e));
                all.push_back(std::move(e));
            }
            write_file(output_dir(), est_setup.out_prefix + "_estimates.csv",
                       estimates_to_csv(all));
            return 0;
        }

        if (ex->parsed()) {
            exp_setup.load_config(ex);
            std::vector<std::pair<int64_t, double>> points;
            if (!exp_from.empty()) {
                std::ifstream in(exp_from);
                if (!in) throw input_error("cannot open " + exp_from);
                std::string line;
                std::getline(in, line);  // header
                while (std::getline(in, line)) {
                    std::stringstream ss(line);
                    std::string ncol, qcol;
                    std::getline(ss, ncol, ',');
                    std::getline(ss, qcol, ',');
                    if (!ncol.empty()) points.emplace_back(std::stoll(ncol), std::stod(qcol));
                }
            } else {
                std::vector<threshold_estimate> all;
                for (int64_t n : exp_setup.grid()) {
                    threshold_estimate e = exp_setup.run_one(n);
                    std::cout << "n=" << n << " q_hat=" << e.q_hat << "\n";
                    points.emplace_back(n, static_cast<double>(e.q_hat));
                    all.push_back(std::move(e));
                }
                write_file(output_dir(), exp_setup.out_prefix + "_estimates.csv",
                           estimates_to_csv(all));
            }
            const regression_result r = exponent_regression(points);
            std::cout << "slope " << r.slope << " stderr " << r.stderr_slope << "\n";
            return 0;
        }

        if (st->parsed()) {
            const hypergraph board = st_source.build(st_n);
            const frequency_estimate r =
                stability_experiment(board, st_m, st_delta, st_samples, st_seed);
            std::cout << "P(not " << st_delta << "-stable) = " << r.p_hat << "  [" << r.ci_lo
                      << ", " << r.ci_hi << "]  (" << r.hits << "/" << r.samples << ")\n";
            return 0;
        }

        if (bu->parsed()) {
            const hypergraph board = bu_source.build(bu_n);
            const binuni_result r = binomial_vs_uniform_experiment(board, bu_p, bu_samples, bu_seed);
            std::cout << "uniform M=" << r.uniform_size
                      << " P(no edge) = " << r.uniform_no_edge.p_hat << "  ["
                      << r.uniform_no_edge.ci_lo << ", " << r.uniform_no_edge.ci_hi << "]\n";
            std::cout << "binomial p=" << bu_p << " P(no edge) = " << r.binomial_no_edge.p_hat
                      << "  [" << r.binomial_no_edge.ci_lo << ", " << r.binomial_no_edge.ci_hi
                      << "]\n";
            return 0;
        }

        if (cs->parsed()) {
            cs_source.materialize();
            if (!cs_source.system) throw input_error("count-solutions needs --system or --ap");
            const solution_count_table t = solution_count_experiment(
                *cs_source.system, parse_grid(cs_grid), cs_source.make_mode());
            std::cout << to_csv(t);
            if (t.empty_system) std::cout << "# empty system: no solutions at any n\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
