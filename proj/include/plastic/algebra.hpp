#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

namespace plastic {

/// Element n0 + n1*beta + n2*beta^2 of Z[beta], beta the real root of
/// x^3 - x - 1 (the plastic number). Coordinates are 64-bit and all
/// arithmetic is overflow-checked; reduction uses beta^3 = beta + 1.
struct BetaInt {
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;

    constexpr BetaInt() = default;
    constexpr BetaInt(std::int64_t a, std::int64_t b, std::int64_t c) : n0(a), n1(b), n2(c) {}

    static constexpr BetaInt one() { return {1, 0, 0}; }
    static constexpr BetaInt beta() { return {0, 1, 0}; }
    static constexpr BetaInt beta_sq() { return {0, 0, 1}; }

    friend bool operator==(const BetaInt&, const BetaInt&) = default;
};

BetaInt operator+(const BetaInt& x, const BetaInt& y);
BetaInt operator-(const BetaInt& x, const BetaInt& y);
BetaInt operator-(const BetaInt& x);
BetaInt operator*(const BetaInt& x, const BetaInt& y);
BetaInt operator*(std::int64_t s, const BetaInt& x);
std::ostream& operator<<(std::ostream& os, const BetaInt& x);

/// Product in Z[beta]; throws std::overflow_error if a coordinate leaves
/// the 64-bit range.
BetaInt beta_mul(const BetaInt& x, const BetaInt& y);

/// The three roots of x^3 - x - 1 in double precision: the real root beta
/// and the complex pair alpha, conj(alpha) with Im(alpha) > 0. All derived
/// irrational scalars in the library come from this one record.
struct Embeddings {
    double beta;       // real root, ~1.32472
    double alpha_re;   // = -beta/2
    double alpha_im;   // = (4+9b-6b^2)/(2*sqrt(23)), > 0
    double alpha2_re;  // Re(alpha^2) = 1 - beta^2/2
    double alpha2_im;  // Im(alpha^2) = (6+2b-9b^2)/(2*sqrt(23))

    std::complex<double> alpha() const { return {alpha_re, alpha_im}; }
    std::complex<double> alpha_sq() const { return {alpha2_re, alpha2_im}; }
};

/// Shared embedding data (computed once; Newton-refined root).
const Embeddings& embeddings();

/// n0 + n1*beta + n2*beta^2 evaluated at the refined real root.
double real_embed(const BetaInt& x);

/// Galois conjugation beta -> alpha followed by C ~ R^2 splitting:
/// x -> (Re sigma(x), Im sigma(x)).
Eigen::Vector2d star_map(const BetaInt& x);

/// sigma(x) as a complex number (same data as star_map).
std::complex<double> sigma_embed(const BetaInt& x);

/// A Bragg peak index and its physical/internal coordinates.
struct WaveNumber {
    BetaInt miller;
    double k = 0.0;            // (5-6b+4b^2)/23 * real_embed(miller)
    Eigen::Vector2d kstar{0.0, 0.0};
};

/// Wave number of a Miller triple. k and kstar are both evaluated from
/// the explicit closed-form component formulas.
WaveNumber wave_number(const BetaInt& miller);

/// Exact route for k: (5-6b+4b^2)*(n0+n1 b+n2 b^2) reduced in Z[beta];
/// the wave number is real_embed of this over 23, and kstar is
/// star_map of it over 23. Used as the cross-check against wave_number.
BetaInt wave_number_numerator(const BetaInt& miller);

/// Derived scalar constants of the tiling.
struct Constants {
    double s_bar;             // mean point spacing 4+2b-3b^2
    double dens_points;       // dens(Lambda) = (3+b+7b^2)/23
    double dens_lattice;      // dens(L) = 2/sqrt(23)
    double im_alpha;          // Im(alpha)
    double module_generator;  // (5-6b+4b^2)/23
    Eigen::Vector3d window_volumes;  // Im(alpha)*(b^2-1, b, 1)
};

const Constants& constants();

/// Basis matrix of the Minkowski embedding lattice: columns are the
/// embeddings of 1, beta, beta^2 into R x C ~ R^3.
Eigen::Matrix3d basis_matrix();

/// Canonical dual basis matrix; satisfies basis_matrix() * dual^T = I.
Eigen::Matrix3d dual_basis_matrix();

}  // namespace plastic
