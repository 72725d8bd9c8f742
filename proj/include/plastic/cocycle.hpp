#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "plastic/algebra.hpp"

namespace plastic {

using Matrix3cd = Eigen::Matrix3cd;
using Vector3cd = Eigen::Vector3cd;

/// Internal contraction R = Q^T, where Q is multiplication by alpha on
/// R^2. det(R) = 1/beta, spectral radius |alpha| = beta^{-1/2}.
Eigen::Matrix2d internal_contraction();

/// Internal Fourier matrix
///   B(y) = [[0,0,1],[1,0,e^{2 pi i y1}],[0,1,0]],
/// the entrywise inverse Fourier transform of the star image of the
/// displacement digits. B(0) = M.
Matrix3cd fourier_matrix(const Eigen::Vector2d& y);

/// n-step cocycle product B(y) B(Ry) ... B(R^{n-1} y). Requires n >= 1.
Matrix3cd cocycle_product(const Eigen::Vector2d& y, int n);

/// Result of the truncated infinite product for C(y) = lim b^{-n} B^(n)(y).
struct CocycleLimit {
    Vector3cd c;        // c(y) = C(y) v
    Matrix3cd C;        // full limit matrix (rank 1: |c><u|)
    int steps = 0;      // factors used
    double residual = 0.0;  // last successive-iterate difference, max-norm
    bool converged = false;
};

inline constexpr int kCocycleMinSteps = 30;
inline constexpr int kCocycleMaxSteps = 200;

/// Evaluate the limit by accumulating normalized factors b^{-1} B(R^j y)
/// into a running 3x3 product; stops once two successive iterates of
/// C_n v differ by less than tol in max-norm (and at least 30 factors
/// are in, so an early plateau cannot fake convergence). Caps at 200.
CocycleLimit c_vector(const Eigen::Vector2d& y, double tol = 1e-12);

/// Window Fourier transform vector f(y) = dens(Lambda)/dens(L) * c(y);
/// f_i is the inverse FT of the indicator of window W_i.
Vector3cd window_ft(const Eigen::Vector2d& y, double tol = 1e-12);

/// Bragg amplitudes A_i(k) = dens(Lambda) * c_i(k*). Throws
/// std::runtime_error on non-convergence.
Vector3cd amplitudes(const BetaInt& miller, double tol = 1e-12);

/// I(k) = |sum_i h_i A_i(k)|^2.
double intensity(const BetaInt& miller, const Vector3cd& h, double tol = 1e-12);

struct PeakRecord {
    BetaInt miller;
    double k = 0.0;
    Eigen::Vector2d kstar{0.0, 0.0};
    Vector3cd amplitudes{0.0, 0.0, 0.0};
    double intensity = 0.0;
    int steps = 0;
    bool converged = true;
};

/// All Bragg peaks with 0 <= k <= kmax, |kstar| <= kstar_max and
/// intensity >= imin, sorted by k (ties by Miller triple). Enumeration
/// inverts the (k, kstar) embedding on the corners of the search box, so
/// no module point in the region can be missed. Evaluation of distinct
/// triples runs on `threads` threads; output order is deterministic.
std::vector<PeakRecord> peak_list(double kmax, double kstar_max, double imin,
                                  const Vector3cd& h, double tol = 1e-12,
                                  unsigned threads = 0);

}  // namespace plastic
