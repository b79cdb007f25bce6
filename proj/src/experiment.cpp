#include "jumpsift/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "jumpsift/csv_io.hpp"
#include "jumpsift/mdpde.hpp"
#include "jumpsift/parallel.hpp"
#include "jumpsift/path_sim.hpp"
#include "jumpsift/regress.hpp"
#include "jumpsift/rng.hpp"

namespace jumpsift {

using nlohmann::json;

void ExperimentConfig::validate() const {
    const DiffusionParams p(diffusion);
    if (!(initial_state() > 0.0)) throw DomainError("x0 must be positive");
    if (!(sigma_J >= 0.0) || !std::isfinite(sigma_J)) throw DomainError("sigma_J must be nonnegative");
    if (grid_n.empty()) throw DomainError("grid_n must not be empty");
    if (grid_lambda.empty()) throw DomainError("grid_lambda must not be empty");
    if (grid_mu_J.empty()) throw DomainError("grid_mu_J must not be empty");
    if (grid_alpha.empty()) throw DomainError("grid_alpha must not be empty");
    if (replications < 1) throw DomainError("replications must be at least 1");
    for (std::size_t n : grid_n) {
        if (n < 3) throw DomainError("grid_n values must be at least 3");
    }
    for (double l : grid_lambda) JumpParams(l, 0.0, sigma_J);
    for (double m : grid_mu_J) JumpParams(0.0, m, sigma_J);
    for (double a : grid_alpha) {
        if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("grid_alpha values must be nonnegative");
    }
    for (std::size_t n : grid_n) detection_threshold(n, threshold);
}

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("invalid config JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    static const char* kKnown[] = {"beta1",  "beta2",       "sigma",        "gamma",        "x0",
                                   "sigma_J", "grid_n",     "grid_lambda",  "grid_mu_J",    "grid_alpha",
                                   "replications", "threshold", "master_seed", "output_dir"};
    for (const auto& item : j.items()) {
        if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return item.key() == k; }) ==
            std::end(kKnown)) {
            throw DomainError("unknown config key: " + item.key());
        }
    }

    ExperimentConfig cfg;
    try {
        read_opt(j, "beta1", cfg.diffusion.beta1);
        read_opt(j, "beta2", cfg.diffusion.beta2);
        read_opt(j, "sigma", cfg.diffusion.sigma);
        read_opt(j, "gamma", cfg.diffusion.gamma);
        if (j.contains("x0") && !j.at("x0").is_null()) cfg.x0 = j.at("x0").get<double>();
        read_opt(j, "sigma_J", cfg.sigma_J);
        read_opt(j, "grid_n", cfg.grid_n);
        read_opt(j, "grid_lambda", cfg.grid_lambda);
        read_opt(j, "grid_mu_J", cfg.grid_mu_J);
        read_opt(j, "grid_alpha", cfg.grid_alpha);
        read_opt(j, "replications", cfg.replications);
        if (j.contains("threshold")) cfg.threshold = ThresholdMode::parse(j.at("threshold").get<std::string>());
        read_opt(j, "master_seed", cfg.master_seed);
        read_opt(j, "output_dir", cfg.output_dir);
    } catch (const json::exception& e) {
        throw DomainError(std::string("invalid config value: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["beta1"] = cfg.diffusion.beta1;
    j["beta2"] = cfg.diffusion.beta2;
    j["sigma"] = cfg.diffusion.sigma;
    j["gamma"] = cfg.diffusion.gamma;
    j["x0"] = cfg.initial_state();
    j["sigma_J"] = cfg.sigma_J;
    j["grid_n"] = cfg.grid_n;
    j["grid_lambda"] = cfg.grid_lambda;
    j["grid_mu_J"] = cfg.grid_mu_J;
    j["grid_alpha"] = cfg.grid_alpha;
    j["replications"] = cfg.replications;
    j["threshold"] = cfg.threshold.to_string();
    j["master_seed"] = cfg.master_seed;
    j["output_dir"] = cfg.output_dir;
    return j;
}

}  // namespace

std::string experiment_config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
    std::vector<GridPoint> out;
    out.reserve(cfg.grid_n.size() * cfg.grid_lambda.size() * cfg.grid_mu_J.size() * cfg.grid_alpha.size());
    for (std::size_t n : cfg.grid_n)
        for (double l : cfg.grid_lambda)
            for (double m : cfg.grid_mu_J)
                for (double a : cfg.grid_alpha) out.push_back({n, l, m, a});
    return out;
}

std::uint64_t replication_seed(std::uint64_t master, const GridPoint& p, std::size_t rep) {
    return derive_stream_seed(master, {static_cast<std::uint64_t>(p.n), double_key(p.lambda), double_key(p.mu_J),
                                       static_cast<std::uint64_t>(rep)});
}

const char* status_name(RowStatus s) {
    switch (s) {
        case RowStatus::Ok: return "ok";
        case RowStatus::NotConverged: return "not_converged";
        case RowStatus::Failed: return "failed";
    }
    return "unknown";
}

GridResultRow run_single(const GridPoint& point, const ExperimentConfig& cfg, std::size_t rep) {
    const auto t0 = std::chrono::steady_clock::now();
    const DiffusionParams params(cfg.diffusion);
    const JumpParams jumps(point.lambda, point.mu_J, cfg.sigma_J);
    const SamplingScheme scheme = SamplingScheme::with_default_mesh(point.n, cfg.initial_state());

    GridResultRow row;
    row.point = point;
    row.delta_n = scheme.delta_n();
    row.sigma_J = cfg.sigma_J;
    row.rep = rep;
    row.seed = replication_seed(cfg.master_seed, point, rep);

    const SamplePath path = simulate({params, jumps, scheme, row.seed});
    row.realized = realized_jump_stats(path);
    const auto truth = jump_index_set(path);
    try {
        const RegressionDesign design = build_design(path, params.gamma());
        row.theta = fit(design, point.alpha);
        const DetectionReport report = run_detection(path, row.theta, params.gamma(), cfg.threshold);
        row.counts = classification_counts(truth, report.detected_set, point.n);
        row.precision = precision(row.counts);
        row.recall = recall(row.counts);
        row.f1 = f1_score(row.counts);
        row.estimated = estimated_jump_stats(report, point.n);
        row.d_M = d_metric(row.realized, row.estimated);
        row.status = row.theta.converged ? RowStatus::Ok : RowStatus::NotConverged;
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.status = RowStatus::Failed;
        row.message = e.what();
        row.counts = {0, 0, truth.size()};
        row.precision = row.recall = row.f1 = nan;
        row.estimated = {};
        row.d_M.reset();
    }
    row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

namespace {

bool same_point(const GridPoint& a, const GridPoint& b) {
    return a.n == b.n && a.lambda == b.lambda && a.mu_J == b.mu_J && a.alpha == b.alpha;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<GridResultRow>& rows) {
    std::vector<SummaryRow> out;
    std::size_t begin = 0;
    while (begin < rows.size()) {
        std::size_t end = begin;
        while (end < rows.size() && same_point(rows[end].point, rows[begin].point)) ++end;

        SummaryRow s;
        s.point = rows[begin].point;
        s.delta_n = rows[begin].delta_n;
        s.replications = end - begin;
        std::vector<double> f1, dm, b1, b2, sg;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& r = rows[i];
            if (r.status == RowStatus::Failed) {
                ++s.failed;
                ++s.d_M_undefined;
                continue;
            }
            if (r.status == RowStatus::NotConverged) ++s.not_converged;
            f1.push_back(r.f1);
            b1.push_back(r.theta.beta1_hat);
            b2.push_back(r.theta.beta2_hat);
            sg.push_back(r.theta.sigma_hat);
            if (r.d_M) {
                dm.push_back(*r.d_M);
                ++s.d_M_defined;
            } else {
                ++s.d_M_undefined;
            }
        }
        s.mean_f1 = mean_of(f1);
        s.median_f1 = median_of(f1);
        s.mean_d_M = mean_of(dm);
        s.mean_beta1_hat = mean_of(b1);
        s.mean_beta2_hat = mean_of(b2);
        s.mean_sigma_hat = mean_of(sg);
        out.push_back(s);
        begin = end;
    }
    return out;
}

GridResult run_grid(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const auto points = expand_grid(cfg);
    const std::size_t reps = cfg.replications;

    GridResult result;
    result.threads = std::max(1u, threads);
    result.rows.resize(points.size() * reps);
    parallel_for(result.rows.size(), result.threads, [&](std::size_t k) {
        result.rows[k] = run_single(points[k / reps], cfg, k % reps);
    });
    result.summary = summarize(result.rows);
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

namespace {

std::string opt_str(const std::optional<double>& v) {
    return format_double(v ? *v : std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

void write_rows_csv(std::ostream& out, const std::vector<GridResultRow>& rows) {
    out << "n,delta_n,lambda,mu_J,sigma_J,alpha,seed,tp,fp,fn,precision,recall,f1,mu_real,lam_real,mu_hat,"
           "lam_hat,d_M,d_M_defined,rep,beta1_hat,beta2_hat,sigma_hat,converged,status\n";
    for (const auto& r : rows) {
        const bool failed = r.status == RowStatus::Failed;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out << r.point.n << ',' << format_double(r.delta_n) << ',' << format_double(r.point.lambda) << ','
            << format_double(r.point.mu_J) << ',' << format_double(r.sigma_J) << ',' << format_double(r.point.alpha)
            << ',' << r.seed << ',' << r.counts.tp << ',' << r.counts.fp << ',' << r.counts.fn << ','
            << format_double(r.precision) << ',' << format_double(r.recall) << ',' << format_double(r.f1) << ','
            << opt_str(r.realized.mean) << ',' << format_double(r.realized.intensity) << ','
            << opt_str(r.estimated.mean) << ',' << format_double(failed ? nan : r.estimated.intensity) << ','
            << opt_str(r.d_M) << ',' << (r.d_M ? 1 : 0) << ',' << r.rep << ','
            << format_double(failed ? nan : r.theta.beta1_hat) << ','
            << format_double(failed ? nan : r.theta.beta2_hat) << ','
            << format_double(failed ? nan : r.theta.sigma_hat) << ',' << (r.theta.converged ? 1 : 0) << ','
            << status_name(r.status) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
    out << "n,delta_n,lambda,mu_J,alpha,replications,mean_f1,median_f1,mean_d_M,d_M_defined,d_M_undefined,"
           "mean_beta1_hat,mean_beta2_hat,mean_sigma_hat,not_converged,failed\n";
    for (const auto& s : summary) {
        out << s.point.n << ',' << format_double(s.delta_n) << ',' << format_double(s.point.lambda) << ','
            << format_double(s.point.mu_J) << ',' << format_double(s.point.alpha) << ',' << s.replications << ','
            << format_double(s.mean_f1) << ',' << format_double(s.median_f1) << ',' << format_double(s.mean_d_M)
            << ',' << s.d_M_defined << ',' << s.d_M_undefined << ',' << format_double(s.mean_beta1_hat) << ','
            << format_double(s.mean_beta2_hat) << ',' << format_double(s.mean_sigma_hat) << ','
            << s.not_converged << ',' << s.failed << '\n';
    }
}

void write_timing_csv(std::ostream& out, const std::vector<GridResultRow>& rows) {
    out << "n,lambda,mu_J,alpha,rep,elapsed_ms\n";
    for (const auto& r : rows) {
        out << r.point.n << ',' << format_double(r.point.lambda) << ',' << format_double(r.point.mu_J) << ','
            << format_double(r.point.alpha) << ',' << r.rep << ',' << format_double(r.elapsed_ms) << '\n';
    }
}

std::string manifest_json(const ExperimentConfig& cfg, const GridResult& result) {
    nlohmann::ordered_json j;
    j["tool"] = "jumpsift";
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    j["grid_points"] = result.summary.size();
    j["rows"] = result.rows.size();
    j["threads"] = result.threads;
    j["wall_seconds"] = result.wall_seconds;
    std::size_t failed = 0;
    for (const auto& s : result.summary) failed += s.failed;
    j["failed_rows"] = failed;
    j["files"] = {"rows.csv", "summary.csv", "timing.csv"};
    return j.dump(2);
}

namespace {

template <class Writer>
void write_file(const std::filesystem::path& file, Writer&& writer) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file.string());
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace

void write_grid_outputs(const ExperimentConfig& cfg, const GridResult& result) {
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "rows.csv", [&](std::ostream& o) { write_rows_csv(o, result.rows); });
    write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, result.summary); });
    write_file(dir / "timing.csv", [&](std::ostream& o) { write_timing_csv(o, result.rows); });
    write_file(dir / "manifest.json", [&](std::ostream& o) { o << manifest_json(cfg, result) << '\n'; });
}

}  // namespace jumpsift
