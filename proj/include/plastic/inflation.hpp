#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plastic/algebra.hpp"

namespace plastic {

enum class Letter : std::uint8_t { a = 0, b = 1, c = 2 };

char to_char(Letter l);
Letter letter_from_char(char c);  // throws std::invalid_argument

/// Natural tile length of a letter as an exact element: 1, beta, beta^2.
BetaInt tile_length(Letter l);

/// Left endpoint of a tile, with its type.
struct ControlPoint {
    BetaInt position;
    Letter letter;
};

/// Perron-Frobenius data of the substitution matrix M.
struct PFData {
    Eigen::Matrix3d matrix;  // M = [[0,0,1],[1,0,1],[0,1,0]]
    Eigen::Vector3d u;       // left eigenvector, <u|v> = 1
    Eigen::Vector3d v;       // right eigenvector (letter frequencies), <1|v> = 1
    double beta;
};

/// One step of a -> b -> c -> ab, applied letterwise.
std::string substitute(const std::string& word);

/// Length of the m-fold substitution image of a seed letter.
/// Computed by the count recursion; no word is materialized.
std::int64_t word_length(int m, Letter seed);

/// Letter counts (a, b, c) of the m-fold image of a seed letter.
Eigen::Vector3<std::int64_t> letter_counts(int m, Letter seed);

/// Control points of the depth-m inflation patch grown from a seed tile
/// with left endpoint 0, via the exact point-set iteration
/// La' = b*Lc, Lb' = b*La u (b*Lc+1), Lc' = b*Lb.
/// Result is sorted left to right; positions are exact.
std::vector<ControlPoint> inflate_points(int m, Letter seed);

PFData pf_data();

/// (dens(Lambda), dens(Lambda_a), dens(Lambda_b), dens(Lambda_c)).
Eigen::Vector4d densities();

/// Patch flattened for large-scale summation: positions as doubles
/// (evaluated from exact letter-count coordinates) plus letter tags.
/// Position error is below one ulp of the patch length beta^m.
struct FlatPatch {
    int depth = 0;
    Letter seed = Letter::a;
    std::vector<double> positions;
    std::vector<Letter> letters;

    std::size_t size() const { return positions.size(); }
};

/// Streaming generation of the depth-m patch; memory is one double and
/// one byte per point. Throws std::length_error if the patch would
/// exceed max_points.
FlatPatch flat_patch(int m, Letter seed, std::size_t max_points = std::size_t(1) << 31);

}  // namespace plastic
