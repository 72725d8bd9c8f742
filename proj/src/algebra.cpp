#include "plastic/algebra.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>

namespace plastic {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("BetaInt coordinate overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("BetaInt coordinate overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("BetaInt coordinate overflow in multiplication");
    return r;
}

}  // namespace

BetaInt operator+(const BetaInt& x, const BetaInt& y) {
    return {checked_add(x.n0, y.n0), checked_add(x.n1, y.n1), checked_add(x.n2, y.n2)};
}

BetaInt operator-(const BetaInt& x, const BetaInt& y) {
    return {checked_sub(x.n0, y.n0), checked_sub(x.n1, y.n1), checked_sub(x.n2, y.n2)};
}

BetaInt operator-(const BetaInt& x) {
    return {checked_sub(0, x.n0), checked_sub(0, x.n1), checked_sub(0, x.n2)};
}

BetaInt beta_mul(const BetaInt& x, const BetaInt& y) {
    // (a0+a1 b+a2 b^2)(c0+c1 b+c2 b^2) with b^3 = b+1, b^4 = b+b^2.
    const std::int64_t cross = checked_add(checked_mul(x.n1, y.n2), checked_mul(x.n2, y.n1));
    const std::int64_t sq = checked_mul(x.n2, y.n2);
    std::int64_t r0 = checked_add(checked_mul(x.n0, y.n0), cross);
    std::int64_t r1 = checked_add(checked_mul(x.n0, y.n1), checked_mul(x.n1, y.n0));
    r1 = checked_add(r1, checked_add(cross, sq));
    std::int64_t r2 = checked_add(checked_mul(x.n0, y.n2), checked_mul(x.n1, y.n1));
    r2 = checked_add(r2, checked_add(checked_mul(x.n2, y.n0), sq));
    return {r0, r1, r2};
}

BetaInt operator*(const BetaInt& x, const BetaInt& y) { return beta_mul(x, y); }

BetaInt operator*(std::int64_t s, const BetaInt& x) {
    return {checked_mul(s, x.n0), checked_mul(s, x.n1), checked_mul(s, x.n2)};
}

std::ostream& operator<<(std::ostream& os, const BetaInt& x) {
    return os << "(" << x.n0 << "," << x.n1 << "," << x.n2 << ")";
}

namespace {

Embeddings compute_embeddings() {
    // Radical formula for the real root, then Newton to full precision.
    const double s69 = std::sqrt(69.0);
    double b = (std::cbrt(9.0 + s69) + std::cbrt(9.0 - s69)) / std::cbrt(18.0);
    for (int i = 0; i < 8; ++i) b -= (b * b * b - b - 1.0) / (3.0 * b * b - 1.0);

    const double s23 = std::sqrt(23.0);
    Embeddings e;
    e.beta = b;
    e.alpha_re = -b / 2.0;
    e.alpha_im = (4.0 + 9.0 * b - 6.0 * b * b) / (2.0 * s23);
    e.alpha2_re = 1.0 - b * b / 2.0;
    e.alpha2_im = (6.0 + 2.0 * b - 9.0 * b * b) / (2.0 * s23);
    return e;
}

}  // namespace

const Embeddings& embeddings() {
    static const Embeddings e = compute_embeddings();
    return e;
}

double real_embed(const BetaInt& x) {
    const Embeddings& e = embeddings();
    // long double keeps the evaluation well below one ulp of the result
    // even for the letter-count coordinates of deep inflation patches.
    const long double b = e.beta;
    return static_cast<double>(static_cast<long double>(x.n0) + x.n1 * b + x.n2 * (b * b));
}

Eigen::Vector2d star_map(const BetaInt& x) {
    const Embeddings& e = embeddings();
    return {static_cast<double>(x.n0) + x.n1 * e.alpha_re + x.n2 * e.alpha2_re,
            x.n1 * e.alpha_im + x.n2 * e.alpha2_im};
}

std::complex<double> sigma_embed(const BetaInt& x) {
    const Eigen::Vector2d s = star_map(x);
    return {s.x(), s.y()};
}

BetaInt wave_number_numerator(const BetaInt& miller) {
    return beta_mul(BetaInt{5, -6, 4}, miller);
}

WaveNumber wave_number(const BetaInt& miller) {
    const Embeddings& e = embeddings();
    const double b = e.beta;
    const double b2 = b * b;
    const auto [n0, n1, n2] = miller;

    WaveNumber w;
    w.miller = miller;
    w.k = (5.0 - 6.0 * b + 4.0 * b2) / 23.0 * real_embed(miller);
    w.kstar.x() = ((18.0 * n0 - 4.0 * n1 + 6.0 * n2) + (6.0 * n0 - 9.0 * n1 + 2.0 * n2) * b -
                   (4.0 * n0 - 6.0 * n1 + 9.0 * n2) * b2) /
                  46.0;
    w.kstar.y() = (2.0 * n2 + (3.0 * n1 - 2.0 * n0) * b - 3.0 * n2 * b2) / (2.0 * std::sqrt(23.0));
    return w;
}

const Constants& constants() {
    static const Constants c = [] {
        const Embeddings& e = embeddings();
        const double b = e.beta;
        const double b2 = b * b;
        Constants k;
        k.s_bar = 4.0 + 2.0 * b - 3.0 * b2;
        k.dens_points = (3.0 + b + 7.0 * b2) / 23.0;
        k.dens_lattice = 2.0 / std::sqrt(23.0);
        k.im_alpha = e.alpha_im;
        k.module_generator = (5.0 - 6.0 * b + 4.0 * b2) / 23.0;
        k.window_volumes = e.alpha_im * Eigen::Vector3d(b2 - 1.0, b, 1.0);
        return k;
    }();
    return c;
}

Eigen::Matrix3d basis_matrix() {
    const Embeddings& e = embeddings();
    Eigen::Matrix3d B;
    B << 1.0, e.beta, e.beta * e.beta,  //
        1.0, e.alpha_re, e.alpha2_re,   //
        0.0, e.alpha_im, e.alpha2_im;
    return B;
}

Eigen::Matrix3d dual_basis_matrix() {
    const Embeddings& e = embeddings();
    const double b = e.beta;
    const double f = 2.0 / std::sqrt(23.0);
    Eigen::Matrix3d D;
    D << e.alpha_im / b, e.alpha_im * b, e.alpha_im,          //
        2.0 * e.alpha_im * b * b, -e.alpha_im * b, -e.alpha_im,  //
        b, -1.0 + 1.5 * b * b, -1.5 * b;
    return f * D;
}

}  // namespace plastic
