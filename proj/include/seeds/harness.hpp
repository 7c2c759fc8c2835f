#pragma once

// Replication studies, single-dataset analyses and their output files.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "seeds/combiner.hpp"
#include "seeds/core_types.hpp"
#include "seeds/csv_io.hpp"
#include "seeds/error.hpp"
#include "seeds/kernels.hpp"
#include "seeds/simgen.hpp"

namespace seeds {

inline constexpr double z_975 = 1.959964;

struct GridSpec {
    int points = 50;
    double lo = 0.1;
    double hi = 0.9;

    // "points:lo:hi", e.g. "50:0.1:0.9".
    static GridSpec parse(const std::string& text)
    {
        GridSpec g;
        std::istringstream in(text);
        char c1 = 0, c2 = 0;
        if (!(in >> g.points >> c1 >> g.lo >> c2 >> g.hi) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
            throw Error(ErrorCode::ConfigError, "grid must look like 50:0.1:0.9, got '" + text + "'");
        }
        g.validate();
        return g;
    }

    void validate() const
    {
        if (points < 2) throw Error(ErrorCode::ConfigError, "grid needs at least 2 points");
        if (!(0.0 <= lo && lo < hi && hi <= 1.0)) throw Error(ErrorCode::ConfigError, "grid quantiles must satisfy 0 <= lo < hi <= 1");
    }

    std::string to_string() const { return std::to_string(points) + ":" + format_double(lo) + ":" + format_double(hi); }
};

struct BandwidthOverrides {
    std::optional<double> labeled_left, labeled_right, unlabeled_left, unlabeled_right;

    Bandwidths apply(Bandwidths bw) const
    {
        auto set = [](double& h, const std::optional<double>& v) {
            if (!v) return;
            if (!(*v > 0.0) || !std::isfinite(*v)) throw Error(ErrorCode::ConfigError, "bandwidth overrides must be > 0");
            h = *v;
        };
        set(bw.labeled_left, labeled_left);
        set(bw.labeled_right, labeled_right);
        set(bw.unlabeled_left, unlabeled_left);
        set(bw.unlabeled_right, unlabeled_right);
        return bw;
    }
};

// Which feature groups enter the working model; each group is used only when
// the data carry it.
struct BasisChoice {
    bool surrogate_times = true;
    bool surrogate_status = true;
    bool baseline = true;
    bool process = true;

    // Comma-separated subset of surrogate,status,baseline,process; "all" or
    // "intercept".
    static BasisChoice parse(const std::string& text)
    {
        if (text == "all") return {};
        BasisChoice b{false, false, false, false};
        if (text == "intercept") return b;
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item == "surrogate") b.surrogate_times = true;
            else if (item == "status") b.surrogate_status = true;
            else if (item == "baseline") b.baseline = true;
            else if (item == "process") b.process = true;
            else throw Error(ErrorCode::ConfigError, "unknown basis feature '" + item + "'");
        }
        return b;
    }

    BasisSpec for_dataset(const Dataset& data) const
    {
        BasisSpec s = BasisSpec::for_dataset(data);
        s.include_surrogate_times = surrogate_times;
        s.include_surrogate_status_dummies = surrogate_status;
        s.include_baseline = baseline;
        s.include_cumulative_process = process;
        return s;
    }
};

// Settings shared by the study and the single-dataset analysis.
struct AnalysisOptions {
    GridSpec grid;
    BandwidthOverrides bandwidth;
    double kappa = default_undersmoothing_exponent;
    BasisChoice basis;
    int folds = 10;
    RidgePolicy ridge;
    std::uint64_t seed = 7;
};

enum class OutputFormat { Csv, Json };

struct StudyConfig {
    std::string setting = "s1";
    std::size_t n = 250;
    std::size_t N = 5000;
    int reps = 500;
    AnalysisOptions analysis;
    std::size_t truth_draws = 1000000;
    double unreliable_fraction = 0.2;
    unsigned threads = 0;  // 0: all available cores
    std::string out;
    OutputFormat format = OutputFormat::Csv;

    void validate() const
    {
        if (reps < 1) throw Error(ErrorCode::ConfigError, "reps must be >= 1");
        if (n < 1) throw Error(ErrorCode::ConfigError, "n must be >= 1");
        if (truth_draws < 10000) throw Error(ErrorCode::ConfigError, "truth draws must be >= 1e4");
        analysis.grid.validate();
        (void)setting_spec();
    }

    SettingSpec setting_spec() const { return seeds::setting(setting); }
};

struct ReplicationResult {
    int rep = 0;
    std::vector<GridPointResult> points;  // empty when the whole replication failed
    std::string error;
};

inline Bandwidths analysis_bandwidths(const Dataset& data, const AnalysisOptions& opt)
{
    Bandwidths bw{};
    try {
        bw = default_bandwidths(data, opt.kappa);
    } catch (const Error&) {
        // Overrides may still supply every bandwidth.
        if (!(opt.bandwidth.labeled_left && opt.bandwidth.labeled_right)) throw;
    }
    return opt.bandwidth.apply(bw);
}

inline std::vector<GridPointResult> analyse(const Dataset& data, const TimeGrid& grid, const AnalysisOptions& opt,
                                            std::uint64_t fold_seed)
{
    SeedsOptions so;
    so.folds = opt.folds;
    so.fold_seed = fold_seed;
    so.ridge = opt.ridge;
    return seeds_estimate(data.labeled, data.unlabeled, grid, analysis_bandwidths(data, opt),
                          opt.basis.for_dataset(data), so);
}

// Grid shared by every replication: quantiles of the pooled observed times of
// one large pilot draw from the setting.
inline TimeGrid study_grid(const StudyConfig& cfg)
{
    const std::size_t total = cfg.n + cfg.N;
    const std::size_t factor = std::max<std::size_t>(1, (100000 + total - 1) / total);
    const auto pilot = generate(cfg.setting_spec(), cfg.n * factor, cfg.N * factor, derive_seed(cfg.analysis.seed, 0xF11E7));
    return build_time_grid(pilot.data, cfg.analysis.grid.points, cfg.analysis.grid.lo, cfg.analysis.grid.hi);
}

inline std::vector<double> study_truth(const StudyConfig& cfg, const TimeGrid& grid)
{
    const SettingSpec spec = cfg.setting_spec();
    const std::uint64_t seed = derive_seed(cfg.analysis.seed, 0x7A07);
    std::vector<double> truth;
    truth.reserve(grid.size());
    for (double t : grid.points()) truth.push_back(true_survival(spec, t, cfg.truth_draws, seed).value);
    return truth;
}

inline ReplicationResult run_replication(const StudyConfig& cfg, const SettingSpec& spec, const TimeGrid& grid, int rep)
{
    ReplicationResult out;
    out.rep = rep;
    const std::uint64_t rep_seed = derive_seed(cfg.analysis.seed, static_cast<std::uint64_t>(rep));
    try {
        const auto gen = generate(spec, cfg.n, cfg.N, rep_seed);
        out.points = analyse(gen.data, grid, cfg.analysis, derive_seed(rep_seed, 1));
    } catch (const Error& e) {
        out.points.clear();
        out.error = e.what();
    }
    return out;
}

// Runs job(i) for i in [0, count) on `threads` workers; results are written by
// index so the schedule does not affect them.
template <typename Job>
void parallel_for(int count, unsigned threads, Job&& job)
{
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) job(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct MethodMetrics {
    std::optional<double> mean, bias, ese, ase, covp;
    std::optional<double> mse;
    int successes = 0;
    int failures = 0;
};

struct MetricsRow {
    double t = 0.0;
    double truth = 0.0;
    MethodMetrics seeds;
    MethodMetrics csl;
    std::optional<double> re;  // MSE_CSL / MSE_SEEDS
    bool unreliable = false;
};

struct MetricsTable {
    std::string setting;
    int reps = 0;
    std::vector<MetricsRow> rows;

    bool any_unreliable() const
    {
        return std::any_of(rows.begin(), rows.end(), [](const MetricsRow& r) { return r.unreliable; });
    }
};

namespace detail {

struct Accumulator {
    std::vector<double> values, ses;

    MethodMetrics finish(double truth, int reps) const
    {
        MethodMetrics m;
        m.successes = static_cast<int>(values.size());
        m.failures = reps - m.successes;
        if (values.empty()) return m;
        const double k = static_cast<double>(values.size());
        double sum = 0.0, se_sum = 0.0, sq = 0.0, covered = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum += values[i];
            se_sum += ses[i];
            sq += (values[i] - truth) * (values[i] - truth);
            if (std::abs(values[i] - truth) <= z_975 * ses[i]) covered += 1.0;
        }
        const double mean = sum / k;
        m.mean = mean;
        m.bias = mean - truth;
        m.ase = se_sum / k;
        m.covp = covered / k;
        m.mse = sq / k;
        if (values.size() >= 2) {
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            m.ese = std::sqrt(ss / (k - 1.0));
        }
        return m;
    }
};

} // namespace detail

// Per-point metrics. Replications are reduced in rep order, so the input order
// does not matter.
inline MetricsTable summarize(std::vector<ReplicationResult> reps, const TimeGrid& grid,
                              const std::vector<double>& truth, double unreliable_fraction = 0.2)
{
    if (truth.size() != grid.size()) throw Error(ErrorCode::DimensionMismatch, "truth and grid sizes differ");
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.rep < b.rep; });
    const int R = static_cast<int>(reps.size());
    MetricsTable table;
    table.reps = R;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        detail::Accumulator s, c;
        for (const auto& rep : reps) {
            if (rep.points.size() != grid.size()) continue;
            const auto& p = rep.points[k];
            if (p.seeds) {
                s.values.push_back(p.seeds->value);
                s.ses.push_back(p.seeds->standard_error());
            }
            if (p.csl) {
                c.values.push_back(p.csl->value);
                c.ses.push_back(p.csl->standard_error());
            }
        }
        MetricsRow row;
        row.t = grid[k];
        row.truth = truth[k];
        row.seeds = s.finish(truth[k], R);
        row.csl = c.finish(truth[k], R);
        if (row.seeds.mse && row.csl.mse && *row.seeds.mse > 0.0) row.re = *row.csl.mse / *row.seeds.mse;
        const double limit = unreliable_fraction * R;
        row.unreliable = row.seeds.failures > limit || row.csl.failures > limit;
        table.rows.push_back(row);
    }
    return table;
}

inline MetricsTable run_study(const StudyConfig& cfg)
{
    cfg.validate();
    const SettingSpec spec = cfg.setting_spec();
    const TimeGrid grid = study_grid(cfg);
    const std::vector<double> truth = study_truth(cfg, grid);
    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.reps));
    parallel_for(cfg.reps, cfg.threads, [&](int r) {
        results[static_cast<std::size_t>(r)] = run_replication(cfg, spec, grid, r);
    });
    MetricsTable table = summarize(std::move(results), grid, truth, cfg.unreliable_fraction);
    table.setting = spec.name;
    return table;
}

// Output ---------------------------------------------------------------------

namespace detail {

inline std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

inline nlohmann::ordered_json json_value(const std::optional<double>& v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline const char* const metric_names[] = {"mean", "bias", "ese", "ase", "covp"};

inline std::array<std::optional<double>, 5> metric_values(const MethodMetrics& m)
{
    return {m.mean, m.bias, m.ese, m.ase, m.covp};
}

} // namespace detail

inline std::vector<std::string> results_columns()
{
    std::vector<std::string> cols{"t", "truth"};
    for (const char* method : {"seeds", "csl"}) {
        for (const char* m : detail::metric_names) cols.push_back(std::string(method) + "_" + m);
    }
    cols.insert(cols.end(), {"re", "seeds_failures", "csl_failures", "unreliable"});
    return cols;
}

inline std::string results_csv(const MetricsTable& table)
{
    std::ostringstream os;
    const auto cols = results_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << '\n';
    for (const auto& r : table.rows) {
        os << format_double(r.t) << ',' << format_double(r.truth);
        for (const auto* m : {&r.seeds, &r.csl}) {
            for (const auto& v : detail::metric_values(*m)) os << ',' << detail::cell(v);
        }
        os << ',' << detail::cell(r.re) << ',' << r.seeds.failures << ',' << r.csl.failures << ','
           << (r.unreliable ? 1 : 0) << '\n';
    }
    return os.str();
}

inline std::string results_json(const MetricsTable& table)
{
    nlohmann::ordered_json j;
    j["setting"] = table.setting;
    j["reps"] = table.reps;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json p;
        p["t"] = r.t;
        p["truth"] = r.truth;
        nlohmann::ordered_json methods;
        for (const auto& [name, m] : {std::pair{"seeds", &r.seeds}, std::pair{"csl", &r.csl}}) {
            nlohmann::ordered_json mj;
            const auto vals = detail::metric_values(*m);
            for (std::size_t k = 0; k < vals.size(); ++k) mj[detail::metric_names[k]] = detail::json_value(vals[k]);
            mj["failures"] = m->failures;
            methods[name] = mj;
        }
        p["methods"] = methods;
        p["re"] = detail::json_value(r.re);
        p["unreliable"] = r.unreliable;
        j["points"].push_back(p);
    }
    return j.dump(2) + "\n";
}

inline void emit_results(const MetricsTable& table, OutputFormat format, const std::filesystem::path& path)
{
    detail::write_file(path, format == OutputFormat::Csv ? results_csv(table) : results_json(table));
}

// Parses a file written by results_csv.
inline MetricsTable read_results_csv(const std::filesystem::path& path)
{
    const csv::Table t = csv::read(path);
    if (t.header != results_columns()) throw ParseFailure(t.file, 1, 1, "not a results file");
    MetricsTable table;
    auto opt = [&](std::size_t r, std::size_t c) -> std::optional<double> {
        if (t.rows[r][c] == "NA") return std::nullopt;
        return csv::parse_double(t, r, c);
    };
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        MetricsRow row;
        row.t = csv::parse_double(t, r, 0);
        row.truth = csv::parse_double(t, r, 1);
        std::size_t c = 2;
        for (auto* m : {&row.seeds, &row.csl}) {
            m->mean = opt(r, c++);
            m->bias = opt(r, c++);
            m->ese = opt(r, c++);
            m->ase = opt(r, c++);
            m->covp = opt(r, c++);
        }
        row.re = opt(r, c++);
        row.seeds.failures = static_cast<int>(csv::parse_double(t, r, c++));
        row.csl.failures = static_cast<int>(csv::parse_double(t, r, c++));
        row.unreliable = t.rows[r][c] == "1";
        table.rows.push_back(row);
    }
    return table;
}

// Single-dataset analysis -----------------------------------------------------

// "Z_k==v" or "Z_k!=v" on a baseline covariate column.
struct SubgroupFilter {
    std::size_t column = 0;  // 0-based index into baseline
    bool equal = true;
    double value = 0.0;

    static SubgroupFilter parse(const std::string& text)
    {
        SubgroupFilter f;
        std::size_t op = text.find("==");
        if (op == std::string::npos) {
            op = text.find("!=");
            f.equal = false;
        }
        if (op == std::string::npos || text.rfind("Z_", 0) != 0) {
            throw Error(ErrorCode::ConfigError, "filter must look like Z_1==1 or Z_1!=1, got '" + text + "'");
        }
        const std::string col = text.substr(2, op - 2);
        const std::string val = text.substr(op + 2);
        try {
            std::size_t used = 0;
            const long k = std::stol(col, &used);
            if (used != col.size() || k < 1) throw std::invalid_argument("column");
            f.column = static_cast<std::size_t>(k - 1);
            f.value = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument("value");
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigError, "cannot parse filter '" + text + "'");
        }
        return f;
    }

    bool keep(const SubjectRecord& r) const { return (r.baseline.at(column) == value) == equal; }
};

// Keeps the matching records. An equality filter makes its column constant,
// so that column is dropped from the baseline covariates.
inline Dataset apply_filter(const Dataset& data, const SubgroupFilter& f)
{
    if (f.column >= data.p1()) {
        throw Error(ErrorCode::ConfigError, "filter column Z_" + std::to_string(f.column + 1) + " does not exist");
    }
    Dataset out;
    for (const auto* src : {&data.labeled, &data.unlabeled}) {
        auto& dst = src == &data.labeled ? out.labeled : out.unlabeled;
        for (const auto& r : *src) {
            if (!f.keep(r)) continue;
            SubjectRecord c = r;
            if (f.equal) c.baseline.erase(c.baseline.begin() + static_cast<std::ptrdiff_t>(f.column));
            dst.push_back(std::move(c));
        }
    }
    if (out.labeled.empty()) throw Error(ErrorCode::EmptyData, "filter leaves no labeled records");
    return out;
}

struct EstimateRow {
    double t = 0.0;
    std::optional<CombinedEstimate> seeds;
    std::optional<CombinedEstimate> csl;
    std::optional<double> re;  // Var_CSL / Var_SEEDS
    std::optional<long> extra_labels;
    std::string note;
};

struct EstimateReport {
    std::size_t n = 0;
    std::size_t N = 0;
    Bandwidths bandwidths;
    std::vector<EstimateRow> rows;

    bool has_seeds() const noexcept { return N > 0; }
};

inline EstimateReport run_estimate(const Dataset& data, const AnalysisOptions& opt)
{
    opt.grid.validate();
    if (data.N() == 1) throw Error(ErrorCode::DegenerateSample, "need zero or at least two unlabeled records");
    EstimateReport rep;
    rep.n = data.n();
    rep.N = data.N();
    rep.bandwidths = analysis_bandwidths(data, opt);
    const TimeGrid grid = build_time_grid(data, opt.grid.points, opt.grid.lo, opt.grid.hi);
    const auto points = analyse(data, grid, opt, derive_seed(opt.seed, 1));
    for (const auto& p : points) {
        EstimateRow row;
        row.t = p.t;
        row.seeds = p.seeds;
        row.csl = p.csl;
        if (rep.has_seeds() && p.seeds && p.csl && p.seeds->variance > 0.0) {
            row.re = p.csl->variance / p.seeds->variance;
            row.extra_labels = required_additional_labels(p.csl->variance, p.seeds->variance, static_cast<long>(rep.n));
        }
        std::string note;
        if (!p.csl) note += "csl: " + p.csl_absent_reason;
        if (rep.has_seeds() && !p.seeds) note += std::string(note.empty() ? "" : "; ") + "seeds: " + p.seeds_absent_reason;
        std::replace(note.begin(), note.end(), ',', ';');
        row.note = note;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

inline std::string estimates_csv(const EstimateReport& rep)
{
    std::ostringstream os;
    std::vector<std::string> cols{"t"};
    std::vector<std::string> methods;
    if (rep.has_seeds()) methods.emplace_back("seeds");
    methods.emplace_back("csl");
    for (const auto& m : methods) {
        for (const char* s : {"_estimate", "_se", "_ci_lo", "_ci_hi"}) cols.push_back(m + s);
    }
    if (rep.has_seeds()) cols.insert(cols.end(), {"re", "nr"});
    cols.emplace_back("note");
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << '\n';
    auto block = [&](const std::optional<CombinedEstimate>& e) {
        if (!e) {
            os << ",NA,NA,NA,NA";
            return;
        }
        const double se = e->standard_error();
        os << ',' << format_double(e->value) << ',' << format_double(se) << ','
           << format_double(e->value - z_975 * se) << ',' << format_double(e->value + z_975 * se);
    };
    for (const auto& r : rep.rows) {
        os << format_double(r.t);
        if (rep.has_seeds()) block(r.seeds);
        block(r.csl);
        if (rep.has_seeds()) {
            os << ',' << detail::cell(r.re) << ',' << (r.extra_labels ? std::to_string(*r.extra_labels) : "NA");
        }
        os << ',' << r.note << '\n';
    }
    return os.str();
}

// Configuration files ----------------------------------------------------------

namespace detail {

template <typename T>
void read_key(const nlohmann::json& j, const char* key, T& out)
{
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("config key '") + key + "': " + e.what());
    }
}

template <typename T>
void read_key(const nlohmann::json& j, const char* key, std::optional<T>& out)
{
    if (!j.contains(key)) return;
    T v{};
    read_key(j, key, v);
    out = v;
}

} // namespace detail

inline void apply_json(AnalysisOptions& opt, const nlohmann::json& j)
{
    std::string grid;
    detail::read_key(j, "grid", grid);
    if (!grid.empty()) opt.grid = GridSpec::parse(grid);
    detail::read_key(j, "folds", opt.folds);
    detail::read_key(j, "seed", opt.seed);
    detail::read_key(j, "kappa", opt.kappa);
    std::string basis;
    detail::read_key(j, "basis", basis);
    if (!basis.empty()) opt.basis = BasisChoice::parse(basis);
    if (j.contains("ridge_scale")) {
        opt.ridge.kind = RidgePolicy::Kind::ScaledByDiagonal;
        detail::read_key(j, "ridge_scale", opt.ridge.value);
    }
    if (j.contains("ridge_fixed")) {
        opt.ridge.kind = RidgePolicy::Kind::Fixed;
        detail::read_key(j, "ridge_fixed", opt.ridge.value);
    }
    detail::read_key(j, "h_left", opt.bandwidth.labeled_left);
    detail::read_key(j, "h_right", opt.bandwidth.labeled_right);
    detail::read_key(j, "h_unlabeled_left", opt.bandwidth.unlabeled_left);
    detail::read_key(j, "h_unlabeled_right", opt.bandwidth.unlabeled_right);
}

inline OutputFormat parse_format(const std::string& s)
{
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw Error(ErrorCode::ConfigError, "format must be csv or json, got '" + s + "'");
}

inline void apply_json(StudyConfig& cfg, const nlohmann::json& j)
{
    apply_json(cfg.analysis, j);
    detail::read_key(j, "setting", cfg.setting);
    detail::read_key(j, "n", cfg.n);
    detail::read_key(j, "N", cfg.N);
    detail::read_key(j, "reps", cfg.reps);
    detail::read_key(j, "truth_draws", cfg.truth_draws);
    detail::read_key(j, "threads", cfg.threads);
    detail::read_key(j, "out", cfg.out);
    std::string format;
    detail::read_key(j, "format", format);
    if (!format.empty()) cfg.format = parse_format(format);
}

inline nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config '" + path.string() + "'");
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
        return j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, "config '" + path.string() + "': " + e.what());
    }
}

} // namespace seeds
