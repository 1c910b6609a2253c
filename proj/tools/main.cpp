// Command-line front end: disorder-ensemble sweeps, single-realization dumps,
// reference-ensemble tables and per-figure CSV post-processing.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhsvd/diagnostics.hpp"
#include "nhsvd/ensemble.hpp"
#include "nhsvd/models.hpp"
#include "nhsvd/output.hpp"
#include "nhsvd/run_config.hpp"
#include "nhsvd/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<int> env_threads() {
    const char* raw = std::getenv(nhsvd::kThreadsEnvVar);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        return std::stoi(raw);
    } catch (const std::exception&) {
        std::cerr << "warning: ignoring non-numeric " << nhsvd::kThreadsEnvVar << "='" << raw
                  << "'\n";
        return std::nullopt;
    }
}

void progress_to_stderr(int n_sites, double strength, int done, int total) {
    std::cerr << "  N=" << n_sites << " strength=" << strength << ": " << done << "/" << total
              << " realizations\r";
    if (done == total) std::cerr << "\n";
}

int cmd_run(const fs::path& config_path, std::optional<std::uint64_t> seed_override,
            std::optional<fs::path> out_override, bool resume_flag,
            std::optional<int> threads_override) {
    nhsvd::RunConfig config = nhsvd::RunConfig::parse_file(config_path);
    if (seed_override) config.plan.master_seed = *seed_override;
    if (out_override) config.out_dir = *out_override;
    if (resume_flag) config.resume = true;
    if (threads_override) {
        config.plan.threads = *threads_override;
    } else if (const auto env = env_threads()) {
        config.plan.threads = *env;
    }
    config.validate();

    if (nhsvd::has_run_outputs(config.out_dir) && !config.resume) {
        std::cerr << "error: '" << config.out_dir.string()
                  << "' already holds run outputs; pass --resume to continue it\n";
        return 1;
    }
    if (config.resume && fs::exists(config.out_dir / "run_config.json")) {
        const nhsvd::RunConfig previous = nhsvd::read_run_sidecar(config.out_dir);
        // Threads and the resume flag may differ between attempts; the
        // physics-defining fields must not.
        nhsvd::RunConfig a = config, b = previous;
        a.plan.threads = b.plan.threads = 0;
        a.resume = b.resume = false;
        if (a.to_text() != b.to_text()) {
            std::cerr << "error: config does not match the sidecar of the run in '"
                      << config.out_dir.string() << "'; refusing to mix runs\n";
            return 1;
        }
    }

    nhsvd::write_run_sidecar(config.out_dir, config);
    nhsvd::DirectoryCheckpointStore store(config.out_dir);
    const nhsvd::SweepResult result =
        nhsvd::run_sweep(config.plan, &store, progress_to_stderr);
    nhsvd::write_aggregate_tables(config.out_dir, result.records, config.plan.model,
                                  config.plan.toggles);

    for (const auto& failure : result.failures) {
        std::cerr << "point N=" << failure.n_sites << " strength=" << failure.strength
                  << " failed: " << failure.message << "\n";
    }
    std::cerr << "completed " << result.records.size() << " parameter points -> "
              << config.out_dir.string() << "\n";
    return result.failures.empty() ? 0 : 1;
}

int cmd_single(const std::string& model_name, int n_sites, double strength,
               std::uint64_t master_seed, std::uint64_t index, const fs::path& out_dir) {
    const nhsvd::ModelKind model = nhsvd::parse_model_name(model_name);
    const nhsvd::SectorBasis basis(n_sites);
    const auto bmap = nhsvd::bipartition_shape(basis);

    nhsvd::DisorderRealization realization;
    nhsvd::ComplexMatrix h;
    if (model == nhsvd::ModelKind::XxzLoss) {
        nhsvd::XxzLossSpec spec{n_sites, 1.0, 1.0, strength};
        realization = nhsvd::sample_disorder(spec, master_seed, index);
        h = nhsvd::build_nh_xxz(spec, realization, basis);
    } else {
        nhsvd::HatanoNelsonSpec spec{n_sites, 1.0, 1.0, 0.1, strength};
        realization = nhsvd::sample_disorder(spec, master_seed, index);
        h = nhsvd::build_hatano_nelson(spec, realization, basis);
    }

    const nhsvd::SvdResult decomposition = nhsvd::svd(h);
    const nhsvd::EigResult eig = nhsvd::eig_biorthogonal(h);

    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "single_sigma.csv", std::ios::binary);
        out << "n,sigma\n";
        for (Eigen::Index i = 0; i < decomposition.sigma.size(); ++i) {
            out << i << "," << nhsvd::format_full(decomposition.sigma(i)) << "\n";
        }
    }
    {
        std::ofstream out(out_dir / "single_eigenvalues.csv", std::ios::binary);
        out << "n,re,im\n";
        for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
            out << i << "," << nhsvd::format_full(eig.eigenvalues(i).real()) << ","
                << nhsvd::format_full(eig.eigenvalues(i).imag()) << "\n";
        }
    }
    {
        std::ofstream out(out_dir / "single_disorder.csv", std::ios::binary);
        out << "site,value\n";
        for (std::size_t i = 0; i < realization.values.size(); ++i) {
            out << (i + 1) << "," << nhsvd::format_full(realization.values[i]) << "\n";
        }
    }

    const auto dim = static_cast<std::size_t>(basis.dimension());
    const Eigen::VectorXd sigma_asc = decomposition.sigma.reverse();
    nhsvd::WindowPolicy value_window{nhsvd::WindowPolicy::Kind::SmallestFraction, 0.1, 20};
    nhsvd::WindowPolicy vector_window{nhsvd::WindowPolicy::Kind::MiddleFraction, 0.1, 20};

    const auto ratios = nhsvd::ratio_statistics(
        std::vector<double>(sigma_asc.data(), sigma_asc.data() + sigma_asc.size()), value_window);

    const auto window = nhsvd::select_window(dim, vector_window);
    double ipr_sum = 0.0, entropy_sum = 0.0;
    for (std::size_t a = window.begin; a < window.end; ++a) {
        const auto col = static_cast<Eigen::Index>(dim - 1 - a);
        ipr_sum += nhsvd::ipr(decomposition.right.col(col));
        entropy_sum += nhsvd::entanglement_entropy(decomposition.right.col(col), bmap);
    }

    const auto complex_sample = nhsvd::complex_gap_ratios(std::span<const std::complex<double>>(
        eig.eigenvalues.data(), static_cast<std::size_t>(eig.eigenvalues.size())));

    json j{{"version", nhsvd::kVersion},
           {"model", model_name},
           {"n_sites", n_sites},
           {"dimension", dim},
           {"strength", strength},
           {"master_seed", master_seed},
           {"realization_index", index},
           {"stream_seed", realization.stream_seed},
           {"mean_ratio_smallest_window", ratios.mean_r},
           {"degenerate_ratios", ratios.degenerate_skipped},
           {"mean_ipr_middle_window", ipr_sum / static_cast<double>(window.size())},
           {"mean_entropy_middle_window", entropy_sum / static_cast<double>(window.size())},
           {"complex_mean_r", complex_sample.mean_r},
           {"complex_mean_cos_theta", complex_sample.mean_cos_theta},
           {"exceptional_point_flagged", eig.flagged()},
           {"min_biorthogonal_overlap", eig.min_overlap}};
    std::ofstream out(out_dir / "single_diagnostics.json", std::ios::binary);
    out << j.dump(2) << "\n";

    std::cerr << "single realization written to " << out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disordered non-Hermitian spin chains: SVD-based chaos and "
                 "localization diagnostics over disorder ensembles"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Execute a sweep described by a config file");
    std::string config_path;
    run->add_option("--config", config_path, "Path to the key = value run config")
        ->required()
        ->check(CLI::ExistingFile);
    std::optional<std::uint64_t> seed_override;
    run->add_option("--seed", seed_override, "Override the master seed");
    std::optional<std::string> out_override;
    run->add_option("--out", out_override, "Override the output directory");
    bool resume = false;
    run->add_flag("--resume", resume, "Reuse completed parameter points in the output directory");
    std::optional<int> threads_override;
    run->add_option("--threads", threads_override,
                    "Worker threads across realizations (also via " +
                        std::string(nhsvd::kThreadsEnvVar) + ")");

    // single
    auto* single = app.add_subcommand(
        "single", "Dump one realization's decomposition and diagnostics");
    std::string single_model = "xxz_loss";
    single->add_option("--model", single_model, "xxz_loss or hatano_nelson");
    int single_n = 8;
    single->add_option("--n", single_n, "Chain length (even)");
    double single_strength = 1.0;
    single->add_option("--strength", single_strength, "Disorder strength (gamma/J or h/J)");
    std::uint64_t single_seed = 1;
    single->add_option("--seed", single_seed, "Master seed");
    std::uint64_t single_index = 0;
    single->add_option("--index", single_index, "Realization index");
    std::string single_out = "single_out";
    single->add_option("--out", single_out, "Output directory");

    // reference
    auto* reference =
        app.add_subcommand("reference", "Emit reference-ensemble values and ratio densities");
    std::string reference_out = "reference_out";
    reference->add_option("--out", reference_out, "Output directory");

    // figures
    auto* figures =
        app.add_subcommand("figures", "Post-process run checkpoints into per-figure CSV files");
    std::string figures_in;
    figures->add_option("--in", figures_in, "Run output directory")->required();
    std::optional<std::string> figures_out;
    figures->add_option("--out", figures_out, "Figure directory (default <in>/figures)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, seed_override,
                           out_override ? std::optional<fs::path>(*out_override) : std::nullopt,
                           resume, threads_override);
        }
        if (single->parsed()) {
            return cmd_single(single_model, single_n, single_strength, single_seed, single_index,
                              single_out);
        }
        if (reference->parsed()) {
            nhsvd::write_reference_files(reference_out);
            std::cerr << "reference tables written to " << reference_out << "\n";
            return 0;
        }
        if (figures->parsed()) {
            const fs::path in_dir = figures_in;
            const fs::path out_dir = figures_out ? fs::path(*figures_out) : in_dir / "figures";
            nhsvd::write_figures(in_dir, out_dir);
            std::cerr << "figure CSVs written to " << out_dir.string() << "\n";
            return 0;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
