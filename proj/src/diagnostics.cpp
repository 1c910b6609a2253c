#include "nhsvd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nhsvd/spectral.hpp"

namespace nhsvd {

Eigen::VectorXd log_time_grid(double t_min, double t_max, int points) {
    if (!(t_min > 0.0) || !(t_max > t_min) || points < 2) {
        throw std::invalid_argument("log_time_grid: need 0 < t_min < t_max and points >= 2");
    }
    Eigen::VectorXd grid(points);
    const double ratio = std::log(t_max / t_min) / (points - 1);
    for (int i = 0; i < points; ++i) grid(i) = t_min * std::exp(ratio * i);
    grid(points - 1) = t_max;
    return grid;
}

FormFactorCurve singular_form_factor(const Eigen::VectorXd& sigma, const Eigen::VectorXd& times) {
    if (times.size() == 0) {
        throw std::invalid_argument("singular_form_factor: empty time grid");
    }
    if (!sigma.allFinite()) {
        throw std::invalid_argument("singular_form_factor: non-finite singular values");
    }
    const auto dim = static_cast<double>(sigma.size());
    FormFactorCurve curve;
    curve.times = times;
    curve.values.resize(times.size());
    for (Eigen::Index ti = 0; ti < times.size(); ++ti) {
        const double t = times(ti);
        double re = 0.0, im = 0.0;
        for (Eigen::Index n = 0; n < sigma.size(); ++n) {
            const double phase = sigma(n) * t;
            re += std::cos(phase);
            im -= std::sin(phase);
        }
        // |mean of unit phases|^2 <= 1; clip rounding overshoot.
        curve.values(ti) = std::min((re * re + im * im) / (dim * dim), 1.0);
    }
    return curve;
}

DipMetrics dip_metrics(const FormFactorCurve& curve, double plateau_begin, double plateau_end,
                       int smooth_radius) {
    if (!(plateau_end > plateau_begin)) {
        throw std::invalid_argument("dip_metrics: empty plateau window");
    }
    const Eigen::Index n = curve.times.size();
    double plateau_sum = 0.0;
    Eigen::Index plateau_count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (curve.times(i) >= plateau_begin && curve.times(i) <= plateau_end) {
            plateau_sum += curve.values(i);
            ++plateau_count;
        }
    }
    if (plateau_count == 0) {
        throw std::invalid_argument("dip_metrics: curve has no points in the plateau window");
    }
    DipMetrics metrics;
    metrics.plateau = plateau_sum / static_cast<double>(plateau_count);

    double dip = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n && curve.times(i) <= plateau_begin; ++i) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, i - smooth_radius);
        const Eigen::Index hi = std::min(n - 1, i + smooth_radius);
        const double smoothed =
            curve.values.segment(lo, hi - lo + 1).mean();
        dip = std::min(dip, smoothed);
    }
    metrics.dip_depth = std::isfinite(dip) ? dip / metrics.plateau : 1.0;
    return metrics;
}

IndexRange select_window(std::size_t count, const WindowPolicy& policy) {
    if (!(policy.fraction > 0.0) || policy.fraction > 1.0) {
        throw std::invalid_argument("select_window: fraction must be in (0, 1]");
    }
    if (count == 0) {
        throw std::invalid_argument("select_window: empty value set");
    }
    std::size_t size = static_cast<std::size_t>(
        std::ceil(policy.fraction * static_cast<double>(count)));
    size = std::max(size, std::min(policy.min_count, count));
    size = std::min(size, count);
    IndexRange range;
    switch (policy.kind) {
        case WindowPolicy::Kind::SmallestFraction:
            range.begin = 0;
            range.end = size;
            break;
        case WindowPolicy::Kind::MiddleFraction:
            range.begin = (count - size) / 2;
            range.end = range.begin + size;
            break;
    }
    return range;
}

RatioSample ratio_statistics(std::vector<double> values, const WindowPolicy& policy) {
    std::sort(values.begin(), values.end());
    RatioSample sample;
    sample.window = select_window(values.size(), policy);
    if (sample.window.size() < 3) {
        throw std::invalid_argument("ratio_statistics: need at least 3 values in the window");
    }
    const std::size_t begin = sample.window.begin;
    const std::size_t m = sample.window.size();
    sample.ratios.reserve(m - 2);
    double sum = 0.0;
    for (std::size_t i = 0; i + 2 < m; ++i) {
        const double s0 = values[begin + i + 1] - values[begin + i];
        const double s1 = values[begin + i + 2] - values[begin + i + 1];
        if (s0 == 0.0 && s1 == 0.0) {
            ++sample.degenerate_skipped;
            continue;
        }
        const double r = std::min(s0, s1) / std::max(s0, s1);
        sample.ratios.push_back(r);
        sum += r;
    }
    sample.mean_r = sample.ratios.empty() ? std::numeric_limits<double>::quiet_NaN()
                                          : sum / static_cast<double>(sample.ratios.size());
    return sample;
}

ComplexRatioSample complex_gap_ratios(std::span<const std::complex<double>> values) {
    const std::size_t count = values.size();
    if (count < 3) {
        throw std::invalid_argument("complex_gap_ratios: need at least 3 eigenvalues");
    }
    ComplexRatioSample sample;
    sample.z.assign(count, std::complex<double>(std::numeric_limits<double>::quiet_NaN(),
                                                std::numeric_limits<double>::quiet_NaN()));
    std::vector<std::uint8_t> skipped(count, 0);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ni = 0; ni < static_cast<std::ptrdiff_t>(count); ++ni) {
        const auto n = static_cast<std::size_t>(ni);
        const std::complex<double> center = values[n];
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = std::numeric_limits<double>::infinity();
        std::size_t i1 = count, i2 = count;
        for (std::size_t m = 0; m < count; ++m) {
            if (m == n) continue;
            const double d = std::abs(values[m] - center);
            if (d < d1 || (d == d1 && m < i1)) {
                d2 = d1; i2 = i1;
                d1 = d;  i1 = m;
            } else if (d < d2 || (d == d2 && m < i2)) {
                d2 = d;  i2 = m;
            }
        }
        if (d1 == 0.0 || d2 == 0.0) {
            skipped[n] = 1;
            continue;
        }
        sample.z[n] = (values[i1] - center) / (values[i2] - center);
    }

    double sum_r = 0.0, sum_cos = 0.0;
    std::size_t kept = 0;
    for (std::size_t n = 0; n < count; ++n) {
        if (skipped[n]) {
            ++sample.duplicates_skipped;
            continue;
        }
        const double r = std::abs(sample.z[n]);
        sum_r += r;
        sum_cos += sample.z[n].real() / r;
        ++kept;
    }
    if (kept == 0) {
        sample.mean_r = std::numeric_limits<double>::quiet_NaN();
        sample.mean_cos_theta = std::numeric_limits<double>::quiet_NaN();
    } else {
        sample.mean_r = sum_r / static_cast<double>(kept);
        sample.mean_cos_theta = sum_cos / static_cast<double>(kept);
    }
    return sample;
}

namespace {

void require_normalized(const Eigen::VectorXcd& v, const char* op) {
    if (std::abs(v.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument(std::string(op) + ": vector is not normalized (norm = " +
                                    std::to_string(v.norm()) + ")");
    }
}

}  // namespace

double ipr(const Eigen::VectorXcd& vector) {
    require_normalized(vector, "ipr");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < vector.size(); ++k) {
        const double p = std::norm(vector(k));
        sum += p * p;
    }
    return sum;
}

double entanglement_entropy(const Eigen::VectorXcd& vector, const BipartitionMap& map) {
    require_normalized(vector, "entanglement_entropy");
    if (static_cast<std::size_t>(vector.size()) != map.row_of.size()) {
        throw std::invalid_argument("entanglement_entropy: vector length does not match map");
    }
    ComplexMatrix amplitudes = ComplexMatrix::Zero(static_cast<Eigen::Index>(map.rows),
                                                   static_cast<Eigen::Index>(map.cols));
    for (Eigen::Index k = 0; k < vector.size(); ++k) {
        amplitudes(map.row_of[static_cast<std::size_t>(k)],
                   map.col_of[static_cast<std::size_t>(k)]) = vector(k);
    }
    const Eigen::VectorXd schmidt = rectangular_singular_values(amplitudes);
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < schmidt.size(); ++k) {
        const double lambda = schmidt(k) * schmidt(k);
        if (lambda > 0.0 && lambda < 1.0) entropy -= lambda * std::log(lambda);
    }
    return std::max(entropy, 0.0);
}

double reference_ratio_pdf(ReferenceEnsemble ensemble, double r) {
    if (r < 0.0 || r > 1.0) {
        throw std::invalid_argument("reference_ratio_pdf: r must lie in [0, 1]");
    }
    switch (ensemble) {
        case ReferenceEnsemble::Poisson:
            return 2.0 / ((1.0 + r) * (1.0 + r));
        case ReferenceEnsemble::Goe: {
            const double q = 1.0 + r + r * r;
            return 6.75 * (r + r * r) / (q * q * std::sqrt(q));
        }
    }
    return 0.0;  // unreachable
}

}  // namespace nhsvd
