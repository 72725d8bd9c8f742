#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "plastic/inflation.hpp"

namespace plastic {

/// Weighted exponential sum S(k) = sum_x h_{letter(x)} e^{-2 pi i k x}
/// over a flattened patch. Summation uses fixed 4096-point blocks
/// combined in index order, so the result is identical for any thread
/// count. Positions carry the documented ulp(beta^m) flattening error.
std::complex<double> exponential_sum(std::span<const double> positions,
                                     std::span<const Letter> letters, double k,
                                     const Eigen::Vector3cd& h, unsigned threads = 0);

std::complex<double> exponential_sum(const FlatPatch& patch, double k,
                                     const Eigen::Vector3cd& h, unsigned threads = 0);

/// Physical length of the depth-m patch: beta^m * (seed tile length).
double patch_length(int m, Letter seed);

/// S_m(k)/L_m for k = k(miller); converges to sum_i h_i A_i(k) in the
/// Bombieri-Taylor sense (slowly; see the peak-compare command).
std::complex<double> amplitude_estimate(const FlatPatch& patch, const BetaInt& miller,
                                        const Eigen::Vector3cd& h, unsigned threads = 0);

std::complex<double> amplitude_estimate(int m, Letter seed, const BetaInt& miller,
                                        const Eigen::Vector3cd& h, unsigned threads = 0);

/// Finite-system intensity curve I_m(k) = |S_m(k)|^2 / L_m on a k-grid.
struct FiniteScan {
    int depth = 0;
    Letter seed = Letter::a;
    Eigen::Vector3cd weights{1.0, 1.0, 1.0};
    std::vector<double> k_values;
    std::vector<double> intensities;
};

/// Scan [k_from, k_to] with `samples` evenly spaced wave numbers against
/// one shared patch; samples parallelize over threads deterministically.
FiniteScan intensity_scan(int m, Letter seed, double k_from, double k_to, int samples,
                          const Eigen::Vector3cd& h, unsigned threads = 0);

}  // namespace plastic
