#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nhsvd/diagnostics.hpp"
#include "nhsvd/models.hpp"

namespace nhsvd {

enum class ModelKind { XxzLoss, HatanoNelson };

std::string model_name(ModelKind model);
ModelKind parse_model_name(const std::string& name);

// Which indicators to evaluate per realization. Vector-based toggles force
// the full decompositions; value-only runs stay on the fast paths.
struct DiagnosticsToggles {
    bool sff = true;
    bool ratios = true;
    bool complex_ratios = false;
    bool ipr = false;
    bool entropy = false;
    bool eig_ipr = false;
    bool eig_entropy = false;

    bool needs_singular_vectors() const noexcept { return ipr || entropy; }
    bool needs_eigenvectors() const noexcept { return eig_ipr || eig_entropy; }
    bool needs_eigenvalues() const noexcept {
        return complex_ratios || needs_eigenvectors();
    }
};

// sigma-form-factor grid: logarithmic from t_min to t_max_per_dim * D in
// units of 1/J, so the plateau time scales with the sector dimension.
struct TimeGridSpec {
    double t_min = 0.1;
    double t_max_per_dim = 100.0;
    int points = 400;
};

struct SweepPlan {
    ModelKind model = ModelKind::XxzLoss;
    std::vector<int> sizes;          // even N, each <= kMaxSites
    std::vector<double> strengths;   // gamma/J or h/J grid, >= 0
    int realizations = 200;
    std::uint64_t master_seed = 1;
    double coupling = 1.0;
    double anisotropy = 1.0;
    double asymmetry = 0.1;          // Hatano-Nelson hopping asymmetry g
    WindowPolicy value_window{WindowPolicy::Kind::SmallestFraction, 0.1, 20};
    WindowPolicy vector_window{WindowPolicy::Kind::MiddleFraction, 0.1, 20};
    TimeGridSpec time_grid;
    DiagnosticsToggles toggles;
    int threads = 0;                 // 0 = OpenMP default

    void validate() const;           // throws std::invalid_argument
};

struct ScalarAggregate {
    double mean = 0.0;
    double std_error = 0.0;  // sample stddev / sqrt(count); 0 when count <= 1
    std::size_t count = 0;
};

// Streaming (Welford) mean/variance; fed in realization-index order so the
// result is independent of the worker schedule.
struct ScalarAccumulator {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    double variance() const {
        return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    }
    ScalarAggregate finish() const;
};

struct CurveAggregate {
    Eigen::VectorXd times;
    Eigen::VectorXd mean;
    Eigen::VectorXd std_error;
    std::size_t count = 0;
};

// Per-(N, strength) ensemble aggregates. Scalars are means over the window
// (per realization) averaged over realizations.
struct AggregateRecord {
    ModelKind model = ModelKind::XxzLoss;
    int n_sites = 0;
    double strength = 0.0;
    std::size_t realizations = 0;
    std::size_t exclusions = 0;          // exceptional-point / failed realizations
    std::size_t degenerate_ratios = 0;   // tallied skips inside ratio windows
    std::size_t duplicate_pairs = 0;     // tallied skips in complex-ratio search

    std::optional<ScalarAggregate> ratio;
    std::optional<ScalarAggregate> complex_r;
    std::optional<ScalarAggregate> complex_cos;
    std::optional<ScalarAggregate> ipr;
    std::optional<ScalarAggregate> entropy;
    std::optional<ScalarAggregate> eig_ipr;
    std::optional<ScalarAggregate> eig_entropy;
    std::optional<CurveAggregate> sff;
};

// Progress callback: (n_sites, strength, completed realizations, total).
using ProgressFn = std::function<void(int, double, int, int)>;

// Runs every realization of one parameter point and folds the configured
// diagnostics into aggregates. Aggregation order is fixed by realization
// index, so results are identical for any worker count.
AggregateRecord run_point(const SweepPlan& plan, int n_sites, double strength,
                          const ProgressFn& progress = {});

// Checkpoint hook implemented by the I/O layer; run_sweep reuses completed
// points verbatim and stores each point as it finishes.
class CheckpointStore {
public:
    virtual ~CheckpointStore() = default;
    virtual std::optional<AggregateRecord> load(ModelKind model, int n_sites,
                                                double strength) const = 0;
    virtual void save(const AggregateRecord& record) = 0;
};

struct PointFailure {
    int n_sites = 0;
    double strength = 0.0;
    std::string message;
};

struct SweepResult {
    std::vector<AggregateRecord> records;
    std::vector<PointFailure> failures;  // failed points do not abort the sweep
};

SweepResult run_sweep(const SweepPlan& plan, CheckpointStore* store = nullptr,
                      const ProgressFn& progress = {});

}  // namespace nhsvd
