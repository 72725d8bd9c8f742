#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "plastic/inflation.hpp"

namespace plastic {

/// Finite IFS approximation of one Rauzy-fractal window: the depth-d
/// image of {0} under W_a = aW_c, W_b = aW_a u (aW_c + 1), W_c = aW_b.
struct WindowCloud {
    Letter letter = Letter::a;
    int depth = 0;
    Eigen::Matrix2Xd points;  // one column per point

    Eigen::Index size() const { return points.cols(); }
};

enum class Dedup {
    none,    // keep union multiplicity; counts follow the M recursion exactly
    binary,  // drop bitwise-equal duplicates (default)
};

/// Apply the window IFS `depth` times to the singleton triple {0}.
/// Multiplication by alpha is the 2x2 matrix Q. Throws std::length_error
/// if the projected point count exceeds max_points.
std::array<WindowCloud, 3> iterate_ifs(int depth, Dedup dedup = Dedup::binary,
                                       std::size_t max_points = 200'000'000);

/// Window areas Im(alpha) * (beta^2 - 1, beta, 1).
Eigen::Vector3d exact_volumes();

struct VolumeEstimate {
    Eigen::Vector3d volumes;            // occupied cells * cell^2, per window
    Eigen::Vector3d points_per_cell;    // mean occupancy, per window
    bool sparse = false;                // any window below 2 points per occupied cell
};

/// Box-counting area estimate on a square grid of the given cell size.
/// sparse flags an unreliable estimate (mean occupancy below 2).
VolumeEstimate estimate_volumes(const std::array<WindowCloud, 3>& clouds, double cell);

/// Quadrature of the inverse FT of the window indicator, using the cloud
/// as equal-mass sample points: (vol_i / N) * sum_p e^{2 pi i <p, y>}.
std::complex<double> window_ft_oracle(const WindowCloud& cloud, const Eigen::Vector2d& y);

/// f_letter sampled on a regular grid over an axis-aligned box via the
/// cocycle route. Row-major from the minimum corner; y runs fastest in x.
struct FtGrid {
    Letter letter = Letter::a;
    Eigen::Vector2d lo{0, 0}, hi{0, 0};
    int samples = 0;                       // per axis
    Eigen::MatrixXcd values;               // samples x samples, (row, col) = (iy, ix)
    std::vector<std::uint8_t> converged;   // per node, row-major
    int failed_nodes = 0;
};

/// Evaluate f_letter on samples^2 grid nodes (endpoints included).
/// Nodes are independent; evaluation runs on `threads` threads with
/// deterministic assembly. Non-convergence at a node is recorded.
FtGrid ft_grid(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int samples,
               Letter letter, double tol = 1e-12, unsigned threads = 0);

}  // namespace plastic
