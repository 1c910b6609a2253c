#include "nhsvd/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "nhsvd/spectral.hpp"

namespace nhsvd {

std::string model_name(ModelKind model) {
    switch (model) {
        case ModelKind::XxzLoss: return "xxz_loss";
        case ModelKind::HatanoNelson: return "hatano_nelson";
    }
    return "unknown";
}

ModelKind parse_model_name(const std::string& name) {
    if (name == "xxz_loss") return ModelKind::XxzLoss;
    if (name == "hatano_nelson") return ModelKind::HatanoNelson;
    throw std::invalid_argument("unknown model '" + name +
                                "' (expected xxz_loss or hatano_nelson)");
}

void SweepPlan::validate() const {
    if (sizes.empty() || strengths.empty()) {
        throw std::invalid_argument("sweep plan: size and strength grids must be nonempty");
    }
    for (int n : sizes) {
        if (n < 2 || n % 2 != 0 || n > kMaxSites) {
            throw std::invalid_argument("sweep plan: invalid chain size " + std::to_string(n));
        }
    }
    for (double s : strengths) {
        if (!(s >= 0.0)) {
            throw std::invalid_argument("sweep plan: disorder strengths must be nonnegative");
        }
    }
    if (realizations < 1) {
        throw std::invalid_argument("sweep plan: realizations must be >= 1");
    }
    if (!(coupling > 0.0)) {
        throw std::invalid_argument("sweep plan: coupling must be positive");
    }
    if (!(value_window.fraction > 0.0) || value_window.fraction > 1.0 ||
        !(vector_window.fraction > 0.0) || vector_window.fraction > 1.0) {
        throw std::invalid_argument("sweep plan: window fractions must be in (0, 1]");
    }
    if (time_grid.points < 2 || !(time_grid.t_min > 0.0) || !(time_grid.t_max_per_dim > 0.0)) {
        throw std::invalid_argument("sweep plan: invalid time grid");
    }
}

ScalarAggregate ScalarAccumulator::finish() const {
    ScalarAggregate agg;
    agg.count = n;
    agg.mean = n > 0 ? mean : 0.0;
    agg.std_error =
        n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return agg;
}

namespace {

struct CurveStat {
    std::size_t n = 0;
    Eigen::VectorXd mean;
    Eigen::VectorXd m2;

    void init(Eigen::Index points) {
        mean = Eigen::VectorXd::Zero(points);
        m2 = Eigen::VectorXd::Zero(points);
    }
    void add(const Eigen::VectorXd& values) {
        ++n;
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const double delta = values(i) - mean(i);
            mean(i) += delta / static_cast<double>(n);
            m2(i) += delta * (values(i) - mean(i));
        }
    }
};

struct RealizationOutcome {
    bool excluded = false;
    std::size_t degenerate = 0;
    std::size_t duplicates = 0;
    std::optional<double> ratio;
    std::optional<double> complex_r;
    std::optional<double> complex_cos;
    std::optional<double> ipr_value;
    std::optional<double> entropy_value;
    std::optional<double> eig_ipr_value;
    std::optional<double> eig_entropy_value;
    std::optional<Eigen::VectorXd> sff_values;

    bool all_finite() const {
        for (const auto& v : {ratio, complex_r, complex_cos, ipr_value, entropy_value,
                              eig_ipr_value, eig_entropy_value}) {
            if (v && !std::isfinite(*v)) return false;
        }
        if (sff_values && !sff_values->allFinite()) return false;
        return true;
    }
};

// "Middle of the complex spectrum": the window-many eigenvalues closest to
// the spectral centroid, ties broken by index.
std::vector<std::size_t> centroid_window(const Eigen::VectorXcd& eigenvalues,
                                         const WindowPolicy& policy) {
    const auto count = static_cast<std::size_t>(eigenvalues.size());
    const std::size_t size = select_window(count, policy).size();
    const std::complex<double> centroid = eigenvalues.mean();
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(eigenvalues(static_cast<Eigen::Index>(a)) - centroid) <
               std::abs(eigenvalues(static_cast<Eigen::Index>(b)) - centroid);
    });
    order.resize(size);
    std::sort(order.begin(), order.end());
    return order;
}

ComplexMatrix build_point_matrix(const SweepPlan& plan, int n_sites, double strength,
                                 const SectorBasis& basis, std::uint64_t realization_index) {
    if (plan.model == ModelKind::XxzLoss) {
        XxzLossSpec spec{n_sites, plan.coupling, plan.anisotropy, strength * plan.coupling};
        const auto realization = sample_disorder(spec, plan.master_seed, realization_index);
        return build_nh_xxz(spec, realization, basis);
    }
    HatanoNelsonSpec spec{n_sites, plan.coupling, plan.anisotropy, plan.asymmetry,
                          strength * plan.coupling};
    const auto realization = sample_disorder(spec, plan.master_seed, realization_index);
    return build_hatano_nelson(spec, realization, basis);
}

RealizationOutcome evaluate_realization(const SweepPlan& plan, int n_sites, double strength,
                                        const SectorBasis& basis, const BipartitionMap* bmap,
                                        const Eigen::VectorXd* time_grid,
                                        std::uint64_t realization_index) {
    const DiagnosticsToggles& tg = plan.toggles;
    RealizationOutcome out;
    const ComplexMatrix h = build_point_matrix(plan, n_sites, strength, basis, realization_index);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());

    Eigen::VectorXd sigma_desc;
    std::optional<SvdResult> full_svd;
    if (tg.needs_singular_vectors()) {
        full_svd = svd(h);
        sigma_desc = full_svd->sigma;
    } else {
        sigma_desc = singular_values(h);
    }
    const Eigen::VectorXd sigma_asc = sigma_desc.reverse();

    if (tg.ratios) {
        auto sample = ratio_statistics(
            std::vector<double>(sigma_asc.data(), sigma_asc.data() + sigma_asc.size()),
            plan.value_window);
        out.ratio = sample.mean_r;
        out.degenerate += sample.degenerate_skipped;
    }
    if (tg.sff && time_grid != nullptr) {
        // Dimensionless spectrum sigma/J against times in units of 1/J.
        out.sff_values =
            singular_form_factor(sigma_asc / plan.coupling, *time_grid).values;
    }
    if (tg.needs_singular_vectors()) {
        const IndexRange window = select_window(static_cast<std::size_t>(dim),
                                                plan.vector_window);
        double ipr_sum = 0.0, ent_sum = 0.0;
        for (std::size_t a = window.begin; a < window.end; ++a) {
            // Column order is descending in sigma; window indices are ascending.
            const Eigen::Index col = dim - 1 - static_cast<Eigen::Index>(a);
            const Eigen::VectorXcd v = full_svd->right.col(col);
            if (tg.ipr) ipr_sum += ipr(v);
            if (tg.entropy) ent_sum += entanglement_entropy(v, *bmap);
        }
        const auto wsize = static_cast<double>(window.size());
        if (tg.ipr) out.ipr_value = ipr_sum / wsize;
        if (tg.entropy) out.entropy_value = ent_sum / wsize;
    }

    if (tg.needs_eigenvalues()) {
        Eigen::VectorXcd evals;
        std::optional<EigResult> eig;
        if (tg.needs_eigenvectors()) {
            eig = eig_biorthogonal(h);
            if (eig->flagged()) {
                out.excluded = true;  // exceptional point: drop the realization
                return out;
            }
            evals = eig->eigenvalues;
        } else {
            evals = eigenvalues(h);
        }

        if (tg.complex_ratios) {
            const auto sample = complex_gap_ratios(
                std::span<const std::complex<double>>(evals.data(),
                                                      static_cast<std::size_t>(evals.size())));
            const auto window = centroid_window(evals, plan.vector_window);
            double sum_r = 0.0, sum_cos = 0.0;
            std::size_t kept = 0;
            for (std::size_t idx : window) {
                const auto& z = sample.z[idx];
                if (!std::isfinite(z.real())) continue;
                const double r = std::abs(z);
                sum_r += r;
                sum_cos += z.real() / r;
                ++kept;
            }
            out.duplicates += sample.duplicates_skipped;
            out.complex_r = kept > 0 ? sum_r / static_cast<double>(kept)
                                     : std::numeric_limits<double>::quiet_NaN();
            out.complex_cos = kept > 0 ? sum_cos / static_cast<double>(kept)
                                       : std::numeric_limits<double>::quiet_NaN();
        }
        if (tg.needs_eigenvectors()) {
            const auto window = centroid_window(evals, plan.vector_window);
            double ipr_sum = 0.0, ent_sum = 0.0;
            for (std::size_t idx : window) {
                const Eigen::VectorXcd v = eig->right.col(static_cast<Eigen::Index>(idx));
                if (tg.eig_ipr) ipr_sum += ipr(v);
                if (tg.eig_entropy) ent_sum += entanglement_entropy(v, *bmap);
            }
            const auto wsize = static_cast<double>(window.size());
            if (tg.eig_ipr) out.eig_ipr_value = ipr_sum / wsize;
            if (tg.eig_entropy) out.eig_entropy_value = ent_sum / wsize;
        }
    }

    if (!out.all_finite()) out.excluded = true;
    return out;
}

}  // namespace

AggregateRecord run_point(const SweepPlan& plan, int n_sites, double strength,
                          const ProgressFn& progress) {
    if (n_sites < 2 || n_sites % 2 != 0 || n_sites > kMaxSites) {
        throw std::invalid_argument("run_point: invalid chain size " + std::to_string(n_sites));
    }
    if (!(strength >= 0.0)) {
        throw std::invalid_argument("run_point: disorder strength must be nonnegative");
    }
    if (plan.realizations < 1) {
        throw std::invalid_argument("run_point: realizations must be >= 1");
    }

    const SectorBasis basis(n_sites);
    std::optional<BipartitionMap> bmap;
    if (plan.toggles.entropy || plan.toggles.eig_entropy) {
        bmap = bipartition_shape(basis);
    }
    std::optional<Eigen::VectorXd> grid;
    if (plan.toggles.sff) {
        grid = log_time_grid(plan.time_grid.t_min,
                             plan.time_grid.t_max_per_dim * static_cast<double>(basis.dimension()),
                             plan.time_grid.points);
    }

    const int total = plan.realizations;
    std::vector<RealizationOutcome> slots(static_cast<std::size_t>(total));
    std::atomic<int> done{0};
    const int workers = plan.threads > 0 ? plan.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int r = 0; r < total; ++r) {
        RealizationOutcome out;
        try {
            out = evaluate_realization(plan, n_sites, strength, basis,
                                       bmap ? &*bmap : nullptr, grid ? &*grid : nullptr,
                                       static_cast<std::uint64_t>(r));
        } catch (const DecompositionError&) {
            out.excluded = true;  // tallied below; measure-zero under continuous disorder
        }
        slots[static_cast<std::size_t>(r)] = std::move(out);
        const int completed = ++done;
        if (progress && (completed % 32 == 0 || completed == total)) {
#pragma omp critical(nhsvd_progress)
            progress(n_sites, strength, completed, total);
        }
    }

    AggregateRecord record;
    record.model = plan.model;
    record.n_sites = n_sites;
    record.strength = strength;
    record.realizations = static_cast<std::size_t>(total);

    ScalarAccumulator ratio, complex_r, complex_cos, ipr_stat, entropy_stat, eig_ipr_stat,
        eig_entropy_stat;
    CurveStat sff;
    if (grid) sff.init(grid->size());

    for (const auto& out : slots) {
        if (out.excluded) {
            ++record.exclusions;
            continue;
        }
        record.degenerate_ratios += out.degenerate;
        record.duplicate_pairs += out.duplicates;
        if (out.ratio) ratio.add(*out.ratio);
        if (out.complex_r) complex_r.add(*out.complex_r);
        if (out.complex_cos) complex_cos.add(*out.complex_cos);
        if (out.ipr_value) ipr_stat.add(*out.ipr_value);
        if (out.entropy_value) entropy_stat.add(*out.entropy_value);
        if (out.eig_ipr_value) eig_ipr_stat.add(*out.eig_ipr_value);
        if (out.eig_entropy_value) eig_entropy_stat.add(*out.eig_entropy_value);
        if (out.sff_values) sff.add(*out.sff_values);
    }

    const DiagnosticsToggles& tg = plan.toggles;
    if (tg.ratios) record.ratio = ratio.finish();
    if (tg.complex_ratios) {
        record.complex_r = complex_r.finish();
        record.complex_cos = complex_cos.finish();
    }
    if (tg.ipr) record.ipr = ipr_stat.finish();
    if (tg.entropy) record.entropy = entropy_stat.finish();
    if (tg.eig_ipr) record.eig_ipr = eig_ipr_stat.finish();
    if (tg.eig_entropy) record.eig_entropy = eig_entropy_stat.finish();
    if (tg.sff && grid) {
        CurveAggregate curve;
        curve.times = *grid;
        curve.count = sff.n;
        curve.mean = sff.mean;
        curve.std_error = Eigen::VectorXd::Zero(grid->size());
        if (sff.n > 1) {
            curve.std_error = (sff.m2 / static_cast<double>(sff.n - 1) /
                               static_cast<double>(sff.n)).cwiseSqrt();
        }
        record.sff = std::move(curve);
    }
    return record;
}

SweepResult run_sweep(const SweepPlan& plan, CheckpointStore* store, const ProgressFn& progress) {
    plan.validate();
    SweepResult result;
    for (int n : plan.sizes) {
        for (double strength : plan.strengths) {
            if (store) {
                if (auto cached = store->load(plan.model, n, strength)) {
                    result.records.push_back(std::move(*cached));
                    continue;
                }
            }
            try {
                AggregateRecord record = run_point(plan, n, strength, progress);
                if (store) store->save(record);
                result.records.push_back(std::move(record));
            } catch (const std::exception& err) {
                result.failures.push_back({n, strength, err.what()});
            }
        }
    }
    return result;
}

}  // namespace nhsvd
