// seeds: survival estimation from doubly-censored data with surrogates.
//
//   seeds simulate --setting s1 --n 250 --N 5000 --reps 500 --grid 50:0.1:0.9 --folds 10 --seed 7 --out results.csv
//   seeds estimate --labeled labeled.csv --unlabeled unlabeled.csv [--process process.csv] --out estimates.csv
//   seeds gen --setting s1 --n 250 --N 5000 --seed 7 --out-prefix data/
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
// failure beyond the failure policy.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "seeds/csv_io.hpp"
#include "seeds/harness.hpp"
#include "seeds/simgen.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_data = 3;
constexpr int exit_numeric = 4;

int exit_code_for(seeds::ErrorCode code)
{
    using seeds::ErrorCode;
    switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonpositiveBandwidth:
        return exit_config;
    case ErrorCode::ParseError:
    case ErrorCode::InvariantViolation:
    case ErrorCode::MissingLabel:
    case ErrorCode::EmptyData:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::DegenerateSample:
    case ErrorCode::IoError:
        return exit_data;
    default:
        return exit_numeric;
    }
}

// Options shared by simulate and estimate. Values stay unset unless given on
// the command line, so they can override a config file.
struct AnalysisFlags {
    std::string grid;
    std::optional<int> folds;
    std::optional<std::uint64_t> seed;
    std::optional<double> kappa;
    std::string basis;
    std::optional<double> ridge_scale, ridge_fixed;
    std::optional<double> h_left, h_right, h_unlabeled_left, h_unlabeled_right;

    void add_to(CLI::App* app)
    {
        app->add_option("--grid", grid, "Grid as points:lo:hi quantiles of the observed times (default 50:0.1:0.9)");
        app->add_option("--folds", folds, "Cross-fitting folds; below 2 disables cross-fitting (default 10)");
        app->add_option("--seed", seed, "Master seed (default 7)");
        app->add_option("--kappa", kappa, "Bandwidth exponent in (0.2, 0.5) (default 0.3)");
        app->add_option("--basis", basis, "Working-model features: all, intercept, or a list of surrogate,status,baseline,process");
        auto* rs = app->add_option("--ridge-scale", ridge_scale, "Ridge = scale * mean(diag V) / sqrt(n) (default 1)");
        auto* rf = app->add_option("--ridge-fixed", ridge_fixed, "Fixed ridge added to V before inversion");
        rs->excludes(rf);
        app->add_option("--h-left", h_left, "Labeled left-label bandwidth");
        app->add_option("--h-right", h_right, "Labeled right-label bandwidth");
        app->add_option("--h-unlabeled-left", h_unlabeled_left, "Unlabeled left-label bandwidth");
        app->add_option("--h-unlabeled-right", h_unlabeled_right, "Unlabeled right-label bandwidth");
    }

    void apply(seeds::AnalysisOptions& opt) const
    {
        if (!grid.empty()) opt.grid = seeds::GridSpec::parse(grid);
        if (folds) opt.folds = *folds;
        if (seed) opt.seed = *seed;
        if (kappa) opt.kappa = *kappa;
        if (!basis.empty()) opt.basis = seeds::BasisChoice::parse(basis);
        if (ridge_scale) opt.ridge = {seeds::RidgePolicy::Kind::ScaledByDiagonal, *ridge_scale};
        if (ridge_fixed) opt.ridge = {seeds::RidgePolicy::Kind::Fixed, *ridge_fixed};
        if (h_left) opt.bandwidth.labeled_left = *h_left;
        if (h_right) opt.bandwidth.labeled_right = *h_right;
        if (h_unlabeled_left) opt.bandwidth.unlabeled_left = *h_unlabeled_left;
        if (h_unlabeled_right) opt.bandwidth.unlabeled_right = *h_unlabeled_right;
    }
};

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    seeds::detail::write_file(path, content);
}

void require_file(const std::string& path, const char* what)
{
    if (!std::filesystem::is_regular_file(path)) {
        throw seeds::Error(seeds::ErrorCode::ConfigError, std::string(what) + " file '" + path + "' does not exist");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Semi-supervised survival estimation from doubly-censored data"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; command-line flags override its values");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Replication study on a built-in setting");
    std::optional<std::string> setting;
    std::optional<std::size_t> n, N, truth_draws;
    std::optional<int> reps;
    std::optional<unsigned> threads;
    std::string out, format;
    AnalysisFlags sim_flags;
    sim->add_option("--setting", setting, "s1, s2, a1.1, a1.2, a2.1, a2.2, a3.1 or a3.2 (default s1)");
    sim->add_option("--n", n, "Labeled records per replication (default 250)");
    sim->add_option("--N", N, "Unlabeled records per replication (default 5000)");
    sim->add_option("--reps", reps, "Replications (default 500)");
    sim->add_option("--truth-draws", truth_draws, "Monte Carlo draws for the true survival (default 1e6)");
    sim->add_option("--threads", threads, "Worker threads; 0 uses every core (default 0)");
    sim->add_option("--out", out, "Output file (default stdout)");
    sim->add_option("--format", format, "csv or json (default csv)");
    sim_flags.add_to(sim);

    // estimate
    auto* est = app.add_subcommand("estimate", "Analyse one dataset");
    std::string labeled, unlabeled, process, filter, est_out;
    AnalysisFlags est_flags;
    est->add_option("--labeled", labeled, "Labeled records CSV");
    est->add_option("--unlabeled", unlabeled, "Unlabeled records CSV");
    est->add_option("--process", process, "Process events CSV (id,event_time)");
    est->add_option("--filter", filter, "Subgroup on a baseline covariate, e.g. Z_1==1");
    est->add_option("--out", est_out, "Output CSV (default stdout)");
    est_flags.add_to(est);

    // gen
    auto* gen = app.add_subcommand("gen", "Write one simulated dataset as CSV files");
    std::string gen_setting = "s1", prefix;
    std::size_t gen_n = 250, gen_N = 5000;
    std::uint64_t gen_seed = 7;
    gen->add_option("--setting", gen_setting, "Setting id (default s1)");
    gen->add_option("--n", gen_n, "Labeled records (default 250)");
    gen->add_option("--N", gen_N, "Unlabeled records (default 5000)");
    gen->add_option("--seed", gen_seed, "Seed (default 7)");
    gen->add_option("--out-prefix", prefix, "Prefix for labeled.csv, unlabeled.csv, process.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        nlohmann::json config = nlohmann::json::object();
        if (!config_path.empty()) config = seeds::read_json_file(config_path);

        if (*sim) {
            seeds::StudyConfig cfg;
            seeds::apply_json(cfg, config);
            sim_flags.apply(cfg.analysis);
            if (setting) cfg.setting = *setting;
            if (n) cfg.n = *n;
            if (N) cfg.N = *N;
            if (reps) cfg.reps = *reps;
            if (truth_draws) cfg.truth_draws = *truth_draws;
            if (threads) cfg.threads = *threads;
            if (!out.empty()) cfg.out = out;
            if (!format.empty()) cfg.format = seeds::parse_format(format);

            const seeds::MetricsTable table = seeds::run_study(cfg);
            write_output(cfg.out, cfg.format == seeds::OutputFormat::Csv ? seeds::results_csv(table)
                                                                          : seeds::results_json(table));
            if (table.any_unreliable()) {
                std::cerr << "seeds: some grid points failed in more than "
                          << static_cast<int>(cfg.unreliable_fraction * 100) << "% of replications\n";
                return exit_numeric;
            }
            return exit_ok;
        }

        if (*est) {
            seeds::AnalysisOptions opt;
            seeds::apply_json(opt, config);
            est_flags.apply(opt);
            auto pick = [&](std::string& value, const char* key) {
                if (value.empty() && config.contains(key)) value = config.at(key).get<std::string>();
            };
            pick(labeled, "labeled");
            pick(unlabeled, "unlabeled");
            pick(process, "process");
            pick(filter, "filter");
            pick(est_out, "out");
            if (labeled.empty() || unlabeled.empty()) {
                throw seeds::Error(seeds::ErrorCode::ConfigError, "estimate needs --labeled and --unlabeled");
            }
            require_file(labeled, "labeled");
            require_file(unlabeled, "unlabeled");
            if (!process.empty()) require_file(process, "process");

            seeds::Dataset data = seeds::load_dataset(
                labeled, unlabeled, process.empty() ? std::nullopt : std::optional<std::filesystem::path>(process));
            if (!filter.empty()) data = seeds::apply_filter(data, seeds::SubgroupFilter::parse(filter));
            const seeds::EstimateReport report = seeds::run_estimate(data, opt);
            write_output(est_out, seeds::estimates_csv(report));
            const bool any_csl = std::any_of(report.rows.begin(), report.rows.end(),
                                             [](const seeds::EstimateRow& r) { return r.csl.has_value(); });
            if (!any_csl) {
                std::cerr << "seeds: no grid point could be estimated\n";
                return exit_numeric;
            }
            return exit_ok;
        }

        if (*gen) {
            const auto spec = seeds::setting(gen_setting);
            const auto data = seeds::generate(spec, gen_n, gen_N, gen_seed);
            const auto files = seeds::write_dataset(data.data, prefix);
            std::cerr << "wrote " << files.labeled.string() << ", " << files.unlabeled.string();
            if (files.process) std::cerr << ", " << files.process->string();
            std::cerr << '\n';
            return exit_ok;
        }
    } catch (const seeds::Error& e) {
        std::cerr << "seeds: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "seeds: config: " << e.what() << '\n';
        return exit_config;
    }
    return exit_ok;
}
