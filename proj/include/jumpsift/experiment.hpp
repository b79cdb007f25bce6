#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jumpsift/jump_detect.hpp"
#include "jumpsift/metrics.hpp"
#include "jumpsift/model.hpp"

namespace jumpsift {

inline constexpr const char* kVersion = "0.1.0";

/// Monte Carlo study over (n, lambda, mu_J, alpha). Defaults reproduce the
/// reference simulation design.
struct ExperimentConfig {
    DiffusionInput diffusion{1.0, 0.8, 0.3, 0.7};
    std::optional<double> x0;  // defaults to beta1 / beta2
    double sigma_J = 0.1;
    std::vector<std::size_t> grid_n{200, 500, 1000, 1500, 2000};
    std::vector<double> grid_lambda{1.0, 2.0, 3.0, 5.0};
    std::vector<double> grid_mu_J{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> grid_alpha{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    std::size_t replications = 100;
    ThresholdMode threshold = ThresholdMode::quantile(0.05);
    std::uint64_t master_seed = 20240611;
    std::string output_dir = "results";

    /// Throws DomainError naming the first invalid field.
    void validate() const;
    double initial_state() const { return x0.value_or(diffusion.beta1 / diffusion.beta2); }
};

/// Parses the JSON schema documented in the README; absent keys keep defaults.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& file);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

struct GridPoint {
    std::size_t n = 0;
    double lambda = 0.0;
    double mu_J = 0.0;
    double alpha = 0.0;
};

/// Grid points ordered by n, then lambda, then mu_J, then alpha.
std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg);

/// Path seed for replication `rep` at the data-generating coordinates
/// (n, lambda, mu_J). alpha does not enter: every alpha on the grid is
/// evaluated on the same simulated paths.
std::uint64_t replication_seed(std::uint64_t master, const GridPoint& p, std::size_t rep);

enum class RowStatus { Ok, NotConverged, Failed };
const char* status_name(RowStatus s);

struct GridResultRow {
    GridPoint point;
    double delta_n = 0.0;
    double sigma_J = 0.0;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    ClassificationCounts counts;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    JumpStats realized;
    JumpStats estimated;
    std::optional<double> d_M;
    EstimateTheta theta;
    RowStatus status = RowStatus::Ok;
    std::string message;  // set when status == Failed
    double elapsed_ms = 0.0;
};

/// simulate -> build_design -> fit -> detect -> metrics for one replication.
/// Estimation or detection errors are reported through the row status.
GridResultRow run_single(const GridPoint& point, const ExperimentConfig& cfg, std::size_t rep);

struct SummaryRow {
    GridPoint point;
    double delta_n = 0.0;
    std::size_t replications = 0;
    double mean_f1 = 0.0;
    double median_f1 = 0.0;
    double mean_d_M = 0.0;  // NaN when no replication has a defined d_M
    std::size_t d_M_defined = 0;
    std::size_t d_M_undefined = 0;
    double mean_beta1_hat = 0.0;
    double mean_beta2_hat = 0.0;
    double mean_sigma_hat = 0.0;
    std::size_t not_converged = 0;
    std::size_t failed = 0;
};

/// Aggregates consecutive rows sharing a grid point. Failed rows are
/// excluded from the means and counted separately.
std::vector<SummaryRow> summarize(const std::vector<GridResultRow>& rows);

struct GridResult {
    std::vector<GridResultRow> rows;  // sorted by grid point, then rep
    std::vector<SummaryRow> summary;
    double wall_seconds = 0.0;
    unsigned threads = 1;
};

GridResult run_grid(const ExperimentConfig& cfg, unsigned threads);

void write_rows_csv(std::ostream& out, const std::vector<GridResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
void write_timing_csv(std::ostream& out, const std::vector<GridResultRow>& rows);
std::string manifest_json(const ExperimentConfig& cfg, const GridResult& result);

/// Writes rows.csv, summary.csv, timing.csv and manifest.json into
/// cfg.output_dir (created if missing). Throws IoError naming the path.
void write_grid_outputs(const ExperimentConfig& cfg, const GridResult& result);

}  // namespace jumpsift
