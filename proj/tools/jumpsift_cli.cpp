// jumpsift command-line front end: simulation, estimation, jump detection,
// Monte Carlo grids and Gumbel diagnostics.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jumpsift/csv_io.hpp"
#include "jumpsift/experiment.hpp"
#include "jumpsift/jump_detect.hpp"
#include "jumpsift/mdpde.hpp"
#include "jumpsift/parallel.hpp"
#include "jumpsift/path_sim.hpp"
#include "jumpsift/regress.hpp"

using namespace jumpsift;

namespace {

struct SimulateArgs {
    std::string config;
    std::optional<std::size_t> n;
    std::optional<double> delta, x0, beta1, beta2, sigma, gamma, lambda, mu_J, sigma_J;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct FitArgs {
    std::string in;
    double gamma = 0.7;
    double alpha = 0.0;
    std::string threshold = "quantile:0.05";
    std::string out;
};

struct GridArgs {
    std::string config;
    std::optional<std::string> output_dir, threshold;
    std::optional<std::size_t> replications;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

struct GumbelArgs {
    std::size_t n = 1000;
    std::size_t reps = 2000;
    std::uint64_t seed = 1;
    std::optional<unsigned> threads;
};

struct InfluenceArgs {
    std::string in;
    double gamma = 0.7;
    std::vector<double> alphas{0.0, 0.1, 0.25};
    std::string out_dir = ".";
};

template <class Fn>
void with_output(const std::string& file, Fn&& fn) {
    if (file.empty() || file == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file);
    fn(out);
    if (!out) throw IoError("write failed: " + file);
}

nlohmann::ordered_json estimate_json(const EstimateTheta& t, const SamplePath& path) {
    nlohmann::ordered_json j;
    j["beta1_hat"] = t.beta1_hat;
    j["beta2_hat"] = t.beta2_hat;
    j["sigma_hat"] = t.sigma_hat;
    j["alpha"] = t.alpha;
    j["converged"] = t.converged;
    j["objective_value"] = t.objective_value;
    j["iterations"] = t.iterations;
    j["n"] = path.n();
    j["delta_n"] = path.scheme.delta_n();
    return j;
}

int run_simulate(const SimulateArgs& a) {
    ExperimentConfig base;
    if (!a.config.empty()) base = load_experiment_config(a.config);
    DiffusionInput d = base.diffusion;
    if (a.beta1) d.beta1 = *a.beta1;
    if (a.beta2) d.beta2 = *a.beta2;
    if (a.sigma) d.sigma = *a.sigma;
    if (a.gamma) d.gamma = *a.gamma;
    JumpInput j{base.grid_lambda.empty() ? 0.0 : base.grid_lambda.front(),
                base.grid_mu_J.empty() ? 0.0 : base.grid_mu_J.front(), base.sigma_J};
    if (a.lambda) j.lambda = *a.lambda;
    if (a.mu_J) j.mu_J = *a.mu_J;
    if (a.sigma_J) j.sigma_J = *a.sigma_J;
    const auto [params, jumps] = validate_params(d, j);

    const std::size_t n = a.n.value_or(base.grid_n.empty() ? 1000 : base.grid_n.front());
    const double x0 = a.x0.value_or(base.x0.value_or(params.beta1() / params.beta2()));
    const SamplingScheme scheme = a.delta ? SamplingScheme(n, *a.delta, x0) : SamplingScheme::with_default_mesh(n, x0);
    const SamplePath path = simulate({params, jumps, scheme, a.seed.value_or(base.master_seed)});
    with_output(a.out, [&](std::ostream& o) { write_path_csv(o, path); });
    return 0;
}

int run_estimate(const FitArgs& a) {
    const SamplePath path = load_path_csv(a.in);
    const EstimateTheta t = fit(build_design(path, a.gamma), a.alpha);
    std::cout << estimate_json(t, path).dump(2) << '\n';
    return 0;
}

int run_detect(const FitArgs& a) {
    const SamplePath path = load_path_csv(a.in);
    const ThresholdMode mode = ThresholdMode::parse(a.threshold);
    const EstimateTheta t = fit(build_design(path, a.gamma), a.alpha);
    const DetectionReport rep = run_detection(path, t, a.gamma, mode);
    with_output(a.out, [&](std::ostream& o) { write_detection_csv(o, rep); });
    if (!a.out.empty() && a.out != "-") {
        std::cerr << "detected " << rep.detected_set.size() << " of " << path.n() << " increments (xi = "
                  << rep.threshold.resolved_xi << ")\n";
    }
    return 0;
}

int run_grid_cmd(const GridArgs& a) {
    ExperimentConfig cfg = load_experiment_config(a.config);
    if (a.output_dir) cfg.output_dir = *a.output_dir;
    if (a.threshold) cfg.threshold = ThresholdMode::parse(*a.threshold);
    if (a.replications) cfg.replications = *a.replications;
    if (a.seed) cfg.master_seed = *a.seed;
    const unsigned threads = a.threads.value_or(default_thread_count());
    const GridResult result = run_grid(cfg, threads);
    write_grid_outputs(cfg, result);
    std::cerr << "wrote " << result.rows.size() << " rows over " << result.summary.size() << " grid points to "
              << cfg.output_dir << " in " << result.wall_seconds << " s\n";
    return 0;
}

int run_gumbel(const GumbelArgs& a) {
    const auto s = gumbel_max_check(a.n, a.reps, a.seed, a.threads.value_or(default_thread_count()));
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["replications"] = s.replications;
    j["a_n"] = s.a_n;
    j["b_n"] = s.b_n;
    j["ks_distance"] = s.ks_distance;
    j["median"] = s.median;
    j["gumbel_median"] = -std::log(std::log(2.0));
    j["ecdf_at_zero"] = s.ecdf_at_zero;
    j["gumbel_cdf_at_zero"] = std::exp(-1.0);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_influence(const InfluenceArgs& a) {
    const SamplePath path = load_path_csv(a.in);
    const RegressionDesign d = build_design(path, a.gamma);
    std::filesystem::create_directories(a.out_dir);
    for (double alpha : a.alphas) {
        const EstimateTheta t = fit(d, alpha);
        const InfluenceProfile prof = influence_profile(t, d, alpha);
        char name[64];
        std::snprintf(name, sizeof name, "influence_alpha_%g.csv", alpha);
        const auto file = (std::filesystem::path(a.out_dir) / name).string();
        with_output(file, [&](std::ostream& o) { write_influence_csv(o, prof); });
        std::cerr << "wrote " << file << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jumpsift: robust jump detection for CKLS jump-diffusions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Simulate one path and write it as CSV");
    s->add_option("--config", sim.config, "Experiment JSON supplying defaults")->check(CLI::ExistingFile);
    s->add_option("--n", sim.n, "Number of increments");
    s->add_option("--delta", sim.delta, "Grid mesh (default n^-0.55)");
    s->add_option("--x0", sim.x0, "Initial state (default beta1/beta2)");
    s->add_option("--beta1", sim.beta1);
    s->add_option("--beta2", sim.beta2);
    s->add_option("--sigma", sim.sigma);
    s->add_option("--gamma", sim.gamma);
    s->add_option("--lambda", sim.lambda, "Jump intensity per unit time");
    s->add_option("--mu-j", sim.mu_J, "Jump size mean");
    s->add_option("--sigma-j", sim.sigma_J, "Jump size s.d.");
    s->add_option("--seed", sim.seed);
    s->add_option("--out", sim.out, "Output file (default stdout)");

    FitArgs est;
    auto* e = app.add_subcommand("estimate", "Fit OLS or MDPDE to a path CSV and print JSON");
    e->add_option("--in", est.in)->required()->check(CLI::ExistingFile);
    e->add_option("--gamma", est.gamma, "Known diffusion elasticity")->capture_default_str();
    e->add_option("--alpha", est.alpha, "Robustness parameter (0 = OLS)")->capture_default_str();

    FitArgs det;
    auto* d = app.add_subcommand("detect", "Detect jumps in a path CSV and write the report CSV");
    d->add_option("--in", det.in)->required()->check(CLI::ExistingFile);
    d->add_option("--gamma", det.gamma)->capture_default_str();
    d->add_option("--alpha", det.alpha)->capture_default_str();
    d->add_option("--threshold", det.threshold, "quantile:Q | additive:C | fixed:XI")->capture_default_str();
    d->add_option("--out", det.out, "Output file (default stdout)");

    GridArgs grid;
    auto* g = app.add_subcommand("grid", "Run a Monte Carlo grid from a JSON config");
    g->add_option("--config", grid.config)->required()->check(CLI::ExistingFile);
    g->add_option("--output-dir", grid.output_dir);
    g->add_option("--threshold", grid.threshold);
    g->add_option("--replications", grid.replications);
    g->add_option("--seed", grid.seed, "Master seed");
    g->add_option("--threads", grid.threads, "Worker threads (default JUMPSIFT_THREADS or all cores)");

    GumbelArgs gum;
    auto* gc = app.add_subcommand("gumbel-check", "Compare normalized Gaussian maxima with the Gumbel law");
    gc->add_option("--n", gum.n)->capture_default_str();
    gc->add_option("--reps", gum.reps)->capture_default_str();
    gc->add_option("--seed", gum.seed)->capture_default_str();
    gc->add_option("--threads", gum.threads);

    InfluenceArgs infl;
    auto* in = app.add_subcommand("influence", "Write per-observation influence CSVs for a list of alphas");
    in->add_option("--in", infl.in)->required()->check(CLI::ExistingFile);
    in->add_option("--gamma", infl.gamma)->capture_default_str();
    in->add_option("--alpha", infl.alphas, "Comma-separated alphas")->delimiter(',');
    in->add_option("--out-dir", infl.out_dir)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*s) return run_simulate(sim);
        if (*e) return run_estimate(est);
        if (*d) return run_detect(det);
        if (*g) return run_grid_cmd(grid);
        if (*gc) return run_gumbel(gum);
        if (*in) return run_influence(infl);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 1;
}
