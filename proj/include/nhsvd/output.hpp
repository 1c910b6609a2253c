#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nhsvd/ensemble.hpp"
#include "nhsvd/run_config.hpp"

namespace nhsvd {

// All files are CSV ('.' decimal, LF endings, header row, 17 significant
// digits so every double round-trips) or JSON for provenance/checkpoints.

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_full(double value);  // %.17g

// Provenance sidecar: full config, version and master seed; enough to
// bit-reproduce the run.
void write_run_sidecar(const std::filesystem::path& dir, const RunConfig& config);
RunConfig read_run_sidecar(const std::filesystem::path& dir);
bool has_run_outputs(const std::filesystem::path& dir);

// Per-point JSON checkpoints; resume reuses the files byte-for-byte.
std::filesystem::path checkpoint_path(const std::filesystem::path& dir, ModelKind model,
                                      int n_sites, double strength);
void save_checkpoint(const std::filesystem::path& dir, const AggregateRecord& record);
std::optional<AggregateRecord> load_checkpoint(const std::filesystem::path& dir, ModelKind model,
                                               int n_sites, double strength);
std::vector<AggregateRecord> load_all_checkpoints(const std::filesystem::path& dir);

class DirectoryCheckpointStore final : public CheckpointStore {
public:
    explicit DirectoryCheckpointStore(std::filesystem::path dir) : dir_(std::move(dir)) {}
    std::optional<AggregateRecord> load(ModelKind model, int n_sites,
                                        double strength) const override;
    void save(const AggregateRecord& record) override;

private:
    std::filesystem::path dir_;
};

// One CSV per diagnostic per model with rows (N, strength, mean, stderr,
// count, exclusions), plus one sigma-FF curve file (t, mean, stderr) per
// parameter point. Entropy values are in nats (natural log). The overload
// taking the model and toggles writes headers-only tables for every enabled
// diagnostic even when no records exist yet.
void write_aggregate_tables(const std::filesystem::path& dir,
                            const std::vector<AggregateRecord>& records);
void write_aggregate_tables(const std::filesystem::path& dir,
                            const std::vector<AggregateRecord>& records, ModelKind model,
                            const DiagnosticsToggles& toggles);

struct AggregateRow {
    int n_sites = 0;
    double strength = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
    std::size_t exclusions = 0;

    bool operator==(const AggregateRow&) const = default;
};

std::vector<AggregateRow> read_aggregate_table(const std::filesystem::path& file);

// Post-processing: maps completed checkpoints onto per-figure CSV files.
void write_figures(const std::filesystem::path& run_dir, const std::filesystem::path& fig_dir);

// Reference-ensemble values (complex-ratio table) and the folded
// spacing-ratio densities on a grid.
void write_reference_files(const std::filesystem::path& dir);

}  // namespace nhsvd
