#include "nhsvd/output.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace nhsvd {

namespace {

using nlohmann::json;

std::string format_short(double value) {
    // Shortest representation that round-trips; used in file names.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) {
        throw OutputError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

json scalar_to_json(const ScalarAggregate& agg) {
    return json{{"mean", agg.mean}, {"std_error", agg.std_error}, {"count", agg.count}};
}

ScalarAggregate scalar_from_json(const json& j) {
    ScalarAggregate agg;
    agg.mean = j.at("mean").get<double>();
    agg.std_error = j.at("std_error").get<double>();
    agg.count = j.at("count").get<std::size_t>();
    return agg;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json array = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) array.push_back(v(i));
    return array;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = j[static_cast<std::size_t>(i)].get<double>();
    }
    return v;
}

json record_to_json(const AggregateRecord& record) {
    json j{{"model", model_name(record.model)},
           {"n_sites", record.n_sites},
           {"strength", record.strength},
           {"realizations", record.realizations},
           {"exclusions", record.exclusions},
           {"degenerate_ratios", record.degenerate_ratios},
           {"duplicate_pairs", record.duplicate_pairs}};
    if (record.ratio) j["ratio"] = scalar_to_json(*record.ratio);
    if (record.complex_r) j["complex_r"] = scalar_to_json(*record.complex_r);
    if (record.complex_cos) j["complex_cos"] = scalar_to_json(*record.complex_cos);
    if (record.ipr) j["ipr"] = scalar_to_json(*record.ipr);
    if (record.entropy) j["entropy"] = scalar_to_json(*record.entropy);
    if (record.eig_ipr) j["eig_ipr"] = scalar_to_json(*record.eig_ipr);
    if (record.eig_entropy) j["eig_entropy"] = scalar_to_json(*record.eig_entropy);
    if (record.sff) {
        j["sff"] = json{{"times", vector_to_json(record.sff->times)},
                        {"mean", vector_to_json(record.sff->mean)},
                        {"std_error", vector_to_json(record.sff->std_error)},
                        {"count", record.sff->count}};
    }
    return j;
}

AggregateRecord record_from_json(const json& j) {
    AggregateRecord record;
    record.model = parse_model_name(j.at("model").get<std::string>());
    record.n_sites = j.at("n_sites").get<int>();
    record.strength = j.at("strength").get<double>();
    record.realizations = j.at("realizations").get<std::size_t>();
    record.exclusions = j.at("exclusions").get<std::size_t>();
    record.degenerate_ratios = j.at("degenerate_ratios").get<std::size_t>();
    record.duplicate_pairs = j.at("duplicate_pairs").get<std::size_t>();
    if (j.contains("ratio")) record.ratio = scalar_from_json(j["ratio"]);
    if (j.contains("complex_r")) record.complex_r = scalar_from_json(j["complex_r"]);
    if (j.contains("complex_cos")) record.complex_cos = scalar_from_json(j["complex_cos"]);
    if (j.contains("ipr")) record.ipr = scalar_from_json(j["ipr"]);
    if (j.contains("entropy")) record.entropy = scalar_from_json(j["entropy"]);
    if (j.contains("eig_ipr")) record.eig_ipr = scalar_from_json(j["eig_ipr"]);
    if (j.contains("eig_entropy")) record.eig_entropy = scalar_from_json(j["eig_entropy"]);
    if (j.contains("sff")) {
        CurveAggregate curve;
        curve.times = vector_from_json(j["sff"].at("times"));
        curve.mean = vector_from_json(j["sff"].at("mean"));
        curve.std_error = vector_from_json(j["sff"].at("std_error"));
        curve.count = j["sff"].at("count").get<std::size_t>();
        record.sff = std::move(curve);
    }
    return record;
}

void write_curve_csv(const std::filesystem::path& path, const CurveAggregate& curve) {
    auto out = open_out(path);
    out << "t,mean,stderr\n";
    for (Eigen::Index i = 0; i < curve.times.size(); ++i) {
        out << format_full(curve.times(i)) << "," << format_full(curve.mean(i)) << ","
            << format_full(curve.std_error(i)) << "\n";
    }
}

using ScalarField = std::optional<ScalarAggregate> AggregateRecord::*;

struct DiagnosticColumn {
    const char* name;
    ScalarField field;
    bool DiagnosticsToggles::* toggle;
};

constexpr DiagnosticColumn kDiagnosticColumns[] = {
    {"ratio", &AggregateRecord::ratio, &DiagnosticsToggles::ratios},
    {"complex_r", &AggregateRecord::complex_r, &DiagnosticsToggles::complex_ratios},
    {"complex_cos", &AggregateRecord::complex_cos, &DiagnosticsToggles::complex_ratios},
    {"ipr", &AggregateRecord::ipr, &DiagnosticsToggles::ipr},
    {"entropy", &AggregateRecord::entropy, &DiagnosticsToggles::entropy},
    {"eig_ipr", &AggregateRecord::eig_ipr, &DiagnosticsToggles::eig_ipr},
    {"eig_entropy", &AggregateRecord::eig_entropy, &DiagnosticsToggles::eig_entropy},
};

void write_scalar_table(const std::filesystem::path& path,
                        const std::vector<AggregateRecord>& records, ScalarField field) {
    auto out = open_out(path);
    out << "N,strength,mean,stderr,count,exclusions\n";
    for (const auto& record : records) {
        const auto& agg = record.*field;
        if (!agg) continue;
        out << record.n_sites << "," << format_full(record.strength) << ","
            << format_full(agg->mean) << "," << format_full(agg->std_error) << "," << agg->count
            << "," << record.exclusions << "\n";
    }
}

}  // namespace

std::string format_full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_run_sidecar(const std::filesystem::path& dir, const RunConfig& config) {
    std::filesystem::create_directories(dir);
    json j{{"version", kVersion},
           {"master_seed", config.plan.master_seed},
           {"config", config.to_text()}};
    auto out = open_out(dir / "run_config.json");
    out << j.dump(2) << "\n";
}

RunConfig read_run_sidecar(const std::filesystem::path& dir) {
    std::ifstream in(dir / "run_config.json");
    if (!in) {
        throw OutputError("no run sidecar in '" + dir.string() + "'");
    }
    json j;
    in >> j;
    return RunConfig::parse_string(j.at("config").get<std::string>(),
                                   (dir / "run_config.json").string());
}

bool has_run_outputs(const std::filesystem::path& dir) {
    if (!std::filesystem::exists(dir)) return false;
    if (std::filesystem::exists(dir / "run_config.json")) return true;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("checkpoint_", 0) == 0) return true;
    }
    return false;
}

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, ModelKind model,
                                      int n_sites, double strength) {
    return dir / ("checkpoint_" + model_name(model) + "_N" + std::to_string(n_sites) + "_s" +
                  format_short(strength) + ".json");
}

void save_checkpoint(const std::filesystem::path& dir, const AggregateRecord& record) {
    std::filesystem::create_directories(dir);
    auto out = open_out(checkpoint_path(dir, record.model, record.n_sites, record.strength));
    out << record_to_json(record).dump(2) << "\n";
}

std::optional<AggregateRecord> load_checkpoint(const std::filesystem::path& dir, ModelKind model,
                                               int n_sites, double strength) {
    const auto path = checkpoint_path(dir, model, n_sites, strength);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        return record_from_json(j);
    } catch (const std::exception& err) {
        throw OutputError("corrupt checkpoint '" + path.string() + "': " + err.what());
    }
}

std::vector<AggregateRecord> load_all_checkpoints(const std::filesystem::path& dir) {
    std::vector<AggregateRecord> records;
    if (!std::filesystem::exists(dir)) {
        throw OutputError("run directory '" + dir.string() + "' does not exist");
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("checkpoint_", 0) != 0 || entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        json j;
        try {
            in >> j;
            records.push_back(record_from_json(j));
        } catch (const std::exception& err) {
            throw OutputError("corrupt checkpoint '" + entry.path().string() + "': " +
                              err.what());
        }
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.model != b.model) return model_name(a.model) < model_name(b.model);
        if (a.n_sites != b.n_sites) return a.n_sites < b.n_sites;
        return a.strength < b.strength;
    });
    return records;
}

std::optional<AggregateRecord> DirectoryCheckpointStore::load(ModelKind model, int n_sites,
                                                              double strength) const {
    return load_checkpoint(dir_, model, n_sites, strength);
}

void DirectoryCheckpointStore::save(const AggregateRecord& record) {
    save_checkpoint(dir_, record);
}

void write_aggregate_tables(const std::filesystem::path& dir,
                            const std::vector<AggregateRecord>& records) {
    std::filesystem::create_directories(dir);

    // Group rows by model so mixed-record lists produce one table set each.
    std::map<std::string, std::vector<AggregateRecord>> by_model;
    for (const auto& record : records) by_model[model_name(record.model)].push_back(record);

    for (auto& [model, group] : by_model) {
        std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
            if (a.n_sites != b.n_sites) return a.n_sites < b.n_sites;
            return a.strength < b.strength;
        });
        for (const auto& column : kDiagnosticColumns) {
            const bool any = std::any_of(group.begin(), group.end(), [&](const auto& r) {
                return (r.*(column.field)).has_value();
            });
            if (!any) continue;
            write_scalar_table(dir / (model + "_" + column.name + ".csv"), group, column.field);
        }
        for (const auto& record : group) {
            if (!record.sff) continue;
            write_curve_csv(dir / (model + "_sff_N" + std::to_string(record.n_sites) + "_s" +
                                   format_short(record.strength) + ".csv"),
                            *record.sff);
        }
    }
}

void write_aggregate_tables(const std::filesystem::path& dir,
                            const std::vector<AggregateRecord>& records, ModelKind model,
                            const DiagnosticsToggles& toggles) {
    std::filesystem::create_directories(dir);
    std::vector<AggregateRecord> group;
    for (const auto& record : records) {
        if (record.model == model) group.push_back(record);
    }
    std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
        if (a.n_sites != b.n_sites) return a.n_sites < b.n_sites;
        return a.strength < b.strength;
    });
    for (const auto& column : kDiagnosticColumns) {
        if (!(toggles.*(column.toggle))) continue;
        write_scalar_table(dir / (model_name(model) + "_" + column.name + ".csv"), group,
                           column.field);
    }
    for (const auto& record : group) {
        if (!record.sff) continue;
        write_curve_csv(dir / (model_name(model) + "_sff_N" + std::to_string(record.n_sites) +
                               "_s" + format_short(record.strength) + ".csv"),
                        *record.sff);
    }
}

std::vector<AggregateRow> read_aggregate_table(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw OutputError("cannot open '" + file.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw OutputError("'" + file.string() + "' is empty (missing header)");
    }
    std::vector<AggregateRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream stream(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) {
            throw OutputError(file.string() + ":" + std::to_string(line_no) +
                              ": expected 6 columns, got " + std::to_string(cells.size()));
        }
        AggregateRow row;
        row.n_sites = std::stoi(cells[0]);
        row.strength = std::stod(cells[1]);
        row.mean = std::stod(cells[2]);
        row.std_error = std::stod(cells[3]);
        row.count = static_cast<std::size_t>(std::stoull(cells[4]));
        row.exclusions = static_cast<std::size_t>(std::stoull(cells[5]));
        rows.push_back(row);
    }
    return rows;
}

void write_figures(const std::filesystem::path& run_dir, const std::filesystem::path& fig_dir) {
    const auto records = load_all_checkpoints(run_dir);
    std::filesystem::create_directories(fig_dir);

    std::map<std::string, std::vector<AggregateRecord>> by_model;
    for (const auto& record : records) by_model[model_name(record.model)].push_back(record);

    for (auto& [model, group] : by_model) {
        std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
            if (a.n_sites != b.n_sites) return a.n_sites < b.n_sites;
            return a.strength < b.strength;
        });

        const std::pair<const char*, ScalarField> panels[] = {
            {"ratio_vs_strength", &AggregateRecord::ratio},
            {"ipr_vs_strength", &AggregateRecord::ipr},
            {"entropy_vs_strength", &AggregateRecord::entropy},
            {"complex_r_vs_strength", &AggregateRecord::complex_r},
            {"complex_cos_vs_strength", &AggregateRecord::complex_cos},
            {"eig_ipr_vs_strength", &AggregateRecord::eig_ipr},
            {"eig_entropy_vs_strength", &AggregateRecord::eig_entropy},
        };
        for (const auto& [name, field] : panels) {
            const bool any = std::any_of(group.begin(), group.end(), [&, f = field](const auto& r) {
                return (r.*f).has_value();
            });
            if (!any) continue;
            auto out = open_out(fig_dir / (model + "_" + name + ".csv"));
            out << "N,strength,mean,stderr\n";
            for (const auto& record : group) {
                const auto& agg = record.*field;
                if (!agg) continue;
                out << record.n_sites << "," << format_full(record.strength) << ","
                    << format_full(agg->mean) << "," << format_full(agg->std_error) << "\n";
            }
        }

        // Entropy against system size, one block per strength (volume- vs
        // area-law comparison).
        if (std::any_of(group.begin(), group.end(),
                        [](const auto& r) { return r.entropy.has_value(); })) {
            auto sorted = group;
            std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
                if (a.strength != b.strength) return a.strength < b.strength;
                return a.n_sites < b.n_sites;
            });
            auto out = open_out(fig_dir / (model + "_entropy_vs_size.csv"));
            out << "strength,N,mean,stderr\n";
            for (const auto& record : sorted) {
                if (!record.entropy) continue;
                out << format_full(record.strength) << "," << record.n_sites << ","
                    << format_full(record.entropy->mean) << ","
                    << format_full(record.entropy->std_error) << "\n";
            }
        }

        for (const auto& record : group) {
            if (!record.sff) continue;
            write_curve_csv(fig_dir / (model + "_sff_N" + std::to_string(record.n_sites) + "_s" +
                                       format_short(record.strength) + ".csv"),
                            *record.sff);
        }
    }
}

void write_reference_files(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "reference_values.csv");
        out << "ensemble,statistic,value\n";
        out << "poisson_2d,mean_r," << format_full(kPoisson2dMeanR) << "\n";
        out << "poisson_2d,mean_cos_theta," << format_full(kPoisson2dMeanCos) << "\n";
        out << "ginue,mean_r," << format_full(kGinueMeanR) << "\n";
        out << "ginue,minus_mean_cos_theta," << format_full(kGinueMinusMeanCos) << "\n";
        out << "poisson,mean_spacing_ratio," << format_full(kPoissonMeanRatio) << "\n";
        out << "goe_surmise,mean_spacing_ratio," << format_full(kGoeSurmiseMeanRatio) << "\n";
        out << "goe,mean_spacing_ratio," << format_full(kGoeMeanRatio) << "\n";
    }
    {
        auto out = open_out(dir / "reference_ratio_pdf.csv");
        out << "r,poisson,goe\n";
        const int points = 201;
        for (int i = 0; i < points; ++i) {
            const double r = static_cast<double>(i) / (points - 1);
            out << format_full(r) << ","
                << format_full(reference_ratio_pdf(ReferenceEnsemble::Poisson, r)) << ","
                << format_full(reference_ratio_pdf(ReferenceEnsemble::Goe, r)) << "\n";
        }
    }
}

}  // namespace nhsvd
