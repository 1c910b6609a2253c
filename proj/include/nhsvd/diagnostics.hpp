#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nhsvd/sector_basis.hpp"

namespace nhsvd {

// ---------------------------------------------------------------------------
// Singular form factor
// ---------------------------------------------------------------------------

struct FormFactorCurve {
    Eigen::VectorXd times;   // units of 1/J
    Eigen::VectorXd values;  // in [0, 1]; exactly 1 at t = 0
};

// Logarithmic grid, endpoints included.
Eigen::VectorXd log_time_grid(double t_min, double t_max, int points);

// |(1/D) sum_n exp(-i sigma_n t)|^2 evaluated pointwise on the grid. No
// unfolding is applied.
FormFactorCurve singular_form_factor(const Eigen::VectorXd& sigma, const Eigen::VectorXd& times);

struct DipMetrics {
    double dip_depth = 1.0;  // min(smoothed curve)/plateau over t <= plateau start
    double plateau = 0.0;    // mean value over the plateau window
};

// Quantifies the correlation hole. The plateau is the curve mean over
// [plateau_begin, plateau_end]; the dip is searched at times up to
// plateau_begin on a moving-average smoothing of half-width `smooth_radius`
// grid points (the smoothing keeps finite-ensemble plateau noise from
// masquerading as a hole). A constant curve has dip_depth = 1.
DipMetrics dip_metrics(const FormFactorCurve& curve, double plateau_begin, double plateau_end,
                       int smooth_radius = 3);

// ---------------------------------------------------------------------------
// Spacing-ratio statistics of real spectra
// ---------------------------------------------------------------------------

struct WindowPolicy {
    enum class Kind { SmallestFraction, MiddleFraction };
    Kind kind = Kind::SmallestFraction;
    double fraction = 0.1;
    // Windows are widened to at least this many values whenever the spectrum
    // is large enough; small spectra are taken whole.
    std::size_t min_count = 20;
};

struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;  // half-open
    std::size_t size() const noexcept { return end - begin; }
};

// Index range into an ascending-sorted array of `count` values.
IndexRange select_window(std::size_t count, const WindowPolicy& policy);

struct RatioSample {
    std::vector<double> ratios;          // each in [0, 1]
    double mean_r = 0.0;                 // NaN when no ratio survived
    std::size_t degenerate_skipped = 0;  // adjacent spacing pairs that were both zero
    IndexRange window;
};

// r_n = min(s_n, s_{n+1})/max(s_n, s_{n+1}) over consecutive spacings of the
// windowed, ascending-sorted values. Exact double degeneracies are skipped
// and tallied rather than perturbed.
RatioSample ratio_statistics(std::vector<double> values, const WindowPolicy& policy);

// ---------------------------------------------------------------------------
// Complex spectral gap ratios
// ---------------------------------------------------------------------------

struct ComplexRatioSample {
    // z_n aligned with the input order; NaN entries mark skipped duplicates.
    std::vector<std::complex<double>> z;
    double mean_r = 0.0;          // <|z_n|>
    double mean_cos_theta = 0.0;  // <cos arg z_n>
    std::size_t duplicates_skipped = 0;
};

// z_n = (E_nn - E_n)/(E_nnn - E_n) with nearest/next-nearest neighbors by
// Euclidean distance in the complex plane. Exact O(D^2) pairwise search.
ComplexRatioSample complex_gap_ratios(std::span<const std::complex<double>> values);

// Reference values for the complex-ratio statistics of standard ensembles.
inline constexpr double kPoisson2dMeanR = 2.0 / 3.0;
inline constexpr double kPoisson2dMeanCos = 0.0;
inline constexpr double kGinueMeanR = 0.73810;
inline constexpr double kGinueMinusMeanCos = 0.24051;

// ---------------------------------------------------------------------------
// Localization indicators
// ---------------------------------------------------------------------------

// Sum |c_k|^4 of a unit vector; 1/D for uniform spreading, 1 for a basis
// state. Throws std::invalid_argument when the norm is off by > 1e-10.
double ipr(const Eigen::VectorXcd& vector);

// Half-chain von Neumann entropy (natural log) of a normalized sector state:
// amplitudes are scattered into the (A, B) matrix of the bipartition map and
// S_E = -sum lambda ln lambda over its squared singular values.
double entanglement_entropy(const Eigen::VectorXcd& vector, const BipartitionMap& map);

// ---------------------------------------------------------------------------
// Reference spacing-ratio densities (normalized on [0, 1])
// ---------------------------------------------------------------------------

enum class ReferenceEnsemble { Goe, Poisson };

// Density of the folded ratio min(s_n, s_{n+1})/max(s_n, s_{n+1}):
// Poisson 2/(1+r)^2, GOE surmise (27/4)(r + r^2)/(1 + r + r^2)^{5/2}.
double reference_ratio_pdf(ReferenceEnsemble ensemble, double r);

// Closed forms / large-size values for the mean folded ratio.
inline const double kPoissonMeanRatio = 0.3862943611198906;  // 2 ln 2 - 1
inline const double kGoeSurmiseMeanRatio = 0.5358983848622454;  // 4 - 2 sqrt(3)
inline constexpr double kGoeMeanRatio = 0.5307;  // large-matrix GOE value
inline constexpr double kRatioCrossoverMidpoint = 0.4585;  // (GOE + Poisson)/2

}  // namespace nhsvd
