// Command-line surface: test a configuration for reconstructibility from
// its distance distribution, compare two configurations, print distance
// tables, and run the counting/census experiments.
//
// Exit codes: 0 pass/match, 1 fail/mismatch, 2 error or not applicable.

#include <CLI11.hpp>

#include "distrecon/io.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace distrecon;

struct CommonOpts {
    bool force_exact = false;
    bool force_float = false;
    double epsilon = 1e-9;
    int threads = 0;
    std::string format = "human";
    std::string out_path;
};

NumberMode number_mode(const CommonOpts& c) {
    if (c.force_exact && c.force_float) throw invalid_input("--exact and --float conflict");
    if (c.force_exact) return NumberMode::Exact;
    if (c.force_float) return NumberMode::Float;
    return NumberMode::Auto;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool with_epsilon = true) {
    cmd->add_flag("--exact", c.force_exact, "Force exact rational arithmetic");
    cmd->add_flag("--float", c.force_float, "Force double-precision arithmetic");
    if (with_epsilon) {
        cmd->add_option("--epsilon", c.epsilon,
                        "Float-mode tolerance scale (default 1e-9; ignored in exact mode)");
    }
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--format", c.format, "Output format: human, json or csv")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    cmd->add_option("--out", c.out_path, "Write the report to this file as well");
}

void emit(const CommonOpts& c, const std::string& text) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    if (!c.out_path.empty()) {
        std::ofstream out(c.out_path, std::ios::binary);
        if (!out) throw invalid_input("cannot write '" + c.out_path + "'");
        out << text;
    }
}

int run_distances(const std::string& file, const CommonOpts& c, bool sqrt_values) {
    ConfigVariant cfg = load_point_config(file, number_mode(c));
    std::string text;
    if (is_exact(cfg)) {
        auto ms = distance_distribution(std::get<PointConfig<Rat>>(cfg));
        text = c.format == "json"  ? multiset_to_json(ms)
             : c.format == "csv"   ? multiset_to_csv(ms, sqrt_values)
                                   : multiset_to_human(ms, sqrt_values);
    } else {
        auto& p = std::get<PointConfig<double>>(cfg);
        auto values = sorted_squared_distances(p);
        auto ms = distance_distribution(p, c.epsilon * values.back());
        text = c.format == "json"  ? multiset_to_json(ms)
             : c.format == "csv"   ? multiset_to_csv(ms, sqrt_values)
                                   : multiset_to_human(ms, sqrt_values);
    }
    emit(c, text);
    return 0;
}

int run_test(const std::string& file, const CommonOpts& c, int dim, bool general,
             bool early_exit) {
    ConfigVariant cfg = load_point_config(file, number_mode(c));
    if (dim > 0 && config_dim(cfg) != dim) {
        throw invalid_input("--dim " + std::to_string(dim) + " does not match the file (m = " +
                            std::to_string(config_dim(cfg)) + ")");
    }
    TestOptions opt;
    opt.epsilon = c.epsilon;
    opt.threads = c.threads;
    opt.early_exit_repeated = early_exit;
    const bool use_md = general || config_dim(cfg) != 2;

    ReconReport rep;
    if (is_exact(cfg)) {
        const auto& p = std::get<PointConfig<Rat>>(cfg);
        rep = use_md ? test_reconstructible_md(p, opt) : test_reconstructible_2d(p, opt);
    } else {
        const auto& p = std::get<PointConfig<double>>(cfg);
        rep = use_md ? test_reconstructible_md(p, opt) : test_reconstructible_2d(p, opt);
    }
    emit(c, c.format == "json" ? report_to_json(rep) : report_to_human(rep));
    switch (rep.verdict) {
        case Verdict::PassesTest: return 0;
        case Verdict::FailsTest: return 1;
        default: return 2;
    }
}

int run_compare(const std::string& file_a, const std::string& file_b, const CommonOpts& c,
                const std::string& mode_name) {
    const CompareMode mode = mode_name == "rigid"        ? CompareMode::Rigid
                           : mode_name == "orientation" ? CompareMode::Orientation
                                                         : CompareMode::Similarity;
    const NumberMode nm = number_mode(c);
    ConfigVariant a = load_point_config(file_a, nm);
    ConfigVariant b = load_point_config(file_b, nm);
    // A mixed pair drops to float: one mode per computation.
    if (is_exact(a) != is_exact(b)) {
        if (std::holds_alternative<PointConfig<Rat>>(a))
            a = to_float_config(std::get<PointConfig<Rat>>(a));
        if (std::holds_alternative<PointConfig<Rat>>(b))
            b = to_float_config(std::get<PointConfig<Rat>>(b));
    }
    CompareOptions opt;
    opt.epsilon = c.epsilon;
    opt.test.threads = c.threads;

    CompareVerdict verdict;
    if (is_exact(a)) {
        verdict = compare_configs(std::get<PointConfig<Rat>>(a), std::get<PointConfig<Rat>>(b),
                                  mode, opt);
    } else {
        verdict = compare_configs(std::get<PointConfig<double>>(a),
                                  std::get<PointConfig<double>>(b), mode, opt);
    }
    emit(c, c.format == "json" ? compare_to_json(verdict, mode) : compare_to_human(verdict, mode));
    switch (mode) {
        case CompareMode::Rigid: return verdict.distribution_match ? 0 : 1;
        case CompareMode::Similarity: return verdict.similarity_match.value_or(false) ? 0 : 1;
        default: return verdict.orientation == OrientationVerdict::SameSE2 ? 0 : 1;
    }
}

std::vector<int> parse_n_list(const std::string& arg) {
    std::vector<int> ns;
    size_t start = 0;
    while (start <= arg.size()) {
        const size_t comma = arg.find(',', start);
        const std::string field =
            comma == std::string::npos ? arg.substr(start) : arg.substr(start, comma - start);
        if (!field.empty()) ns.push_back(std::stoi(field));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ns;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point-configuration shape tests via distance distributions"};
    app.require_subcommand(1);

    // --- distances ---
    CommonOpts dist_opts;
    std::string dist_file;
    bool sqrt_values = false;
    auto* cmd_dist = app.add_subcommand("distances", "Print the distance distribution of a file");
    cmd_dist->add_option("file", dist_file, "Input .json or .csv")->required();
    cmd_dist->add_flag("--sqrt", sqrt_values, "Print square roots instead of squared distances");
    add_common(cmd_dist, dist_opts);

    // --- test ---
    CommonOpts test_opts;
    std::string test_file;
    int test_dim = 0;
    bool test_general = false;
    bool test_early = false;
    auto* cmd_test = app.add_subcommand("test", "Run the reconstructibility-from-distances test");
    cmd_test->add_option("file", test_file, "Input .json or .csv")->required();
    cmd_test->add_option("--dim", test_dim,
                         "Expected ambient dimension; also selects the general-m test");
    cmd_test->add_flag("--general", test_general,
                       "Use the general-m determinant test even for planar input");
    cmd_test->add_flag("--early-exit-repeated", test_early,
                       "Fail immediately when distances repeat (skips enumeration)");
    add_common(cmd_test, test_opts);

    // --- compare ---
    CommonOpts cmp_opts;
    std::string cmp_a, cmp_b, cmp_mode = "rigid";
    auto* cmd_cmp = app.add_subcommand("compare", "Compare two configurations");
    cmd_cmp->add_option("fileA", cmp_a)->required();
    cmd_cmp->add_option("fileB", cmp_b)->required();
    cmd_cmp->add_option("--mode", cmp_mode, "rigid, orientation or similarity")
        ->check(CLI::IsMember({"rigid", "orientation", "similarity"}));
    add_common(cmd_cmp, cmp_opts);

    // --- experiment ---
    auto* cmd_exp = app.add_subcommand("experiment", "Counting and census experiments");
    cmd_exp->require_subcommand(1);

    CommonOpts lat_opts;
    int lattice_n = 3;
    auto* cmd_lat = cmd_exp->add_subcommand("lattice", "Exhaustive 4-point census on [0,N]^2");
    cmd_lat->add_option("--N", lattice_n, "Lattice box size")->required();
    add_common(cmd_lat, lat_opts, false);

    CommonOpts rnd_opts;
    std::uint64_t trials = 5000, seed = 42;
    double threshold = 1e-7;
    auto* cmd_rnd = cmd_exp->add_subcommand("random", "Random 4-point small-|g| statistics");
    cmd_rnd->add_option("--trials", trials, "Number of random configurations");
    cmd_rnd->add_option("--threshold", threshold, "Count configurations with min |g| below this");
    cmd_rnd->add_option("--seed", seed, "PRNG seed (mt19937_64)");
    add_common(cmd_rnd, rnd_opts, false);

    CommonOpts cnt_opts;
    std::string n_list = "5,6,7,8";
    bool timed = false;
    auto* cmd_cnt = cmd_exp->add_subcommand("counts", "Combination-count table");
    cmd_cnt->add_option("--n", n_list, "Comma-separated point counts");
    cmd_cnt->add_flag("--time", timed, "Also time a full exact test per n (informational)");
    add_common(cmd_cnt, cnt_opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_dist->parsed()) return run_distances(dist_file, dist_opts, sqrt_values);
        if (cmd_test->parsed())
            return run_test(test_file, test_opts, test_dim, test_general || test_dim > 2,
                            test_early);
        if (cmd_cmp->parsed()) return run_compare(cmp_a, cmp_b, cmp_opts, cmp_mode);
        if (cmd_lat->parsed()) {
            const LatticeReport rep = lattice_experiment(lattice_n, lat_opts.threads);
            std::string text;
            if (lat_opts.format == "json") {
                text = lattice_report_to_json(rep);
            } else if (lat_opts.format == "csv") {
                text = lattice_report_to_csv(rep);
            } else {
                std::ostringstream os;
                os << "N=" << rep.box << ": " << rep.total << " configurations / " << rep.repeated
                   << " with repeated distances / " << rep.failed << " failed\n"
                   << "non-repeated failure rate: "
                   << rational_to_string(rep.nonrepeated_fail_pct) << " = "
                   << 100.0 * to_double(rep.nonrepeated_fail_pct) << "%\n";
                text = os.str();
            }
            emit(lat_opts, text);
            return 0;
        }
        if (cmd_rnd->parsed()) {
            const RandomGReport rep = random_g_statistics(trials, threshold, seed, rnd_opts.threads);
            std::string text;
            if (rnd_opts.format == "json") {
                text = random_report_to_json(rep);
            } else if (rnd_opts.format == "csv") {
                text = random_report_to_csv(rep);
            } else {
                std::ostringstream os;
                os << rep.below_threshold << " of " << rep.trials << " configurations had min |g| < "
                   << rep.threshold << " (seed " << rep.seed << ")\n";
                text = os.str();
            }
            emit(rnd_opts, text);
            return 0;
        }
        if (cmd_cnt->parsed()) {
            const auto rows = count_table(parse_n_list(n_list), timed, cnt_opts.threads);
            std::string text;
            if (cnt_opts.format == "json") {
                text = count_table_to_json(rows);
            } else if (cnt_opts.format == "csv") {
                text = count_table_to_csv(rows);
            } else {
                std::ostringstream os;
                os << "n  combinations";
                if (timed) os << "  seconds";
                os << '\n';
                for (const auto& row : rows) {
                    os << row.n << "  " << row.combinations;
                    if (row.seconds >= 0) os << "  " << row.seconds;
                    os << '\n';
                }
                text = os.str();
            }
            emit(cnt_opts, text);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
