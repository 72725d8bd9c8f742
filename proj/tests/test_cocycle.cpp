#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "plastic/cocycle.hpp"
#include "plastic/inflation.hpp"

using namespace plastic;
using std::complex;

namespace {

std::mt19937 rng(77031);

Eigen::Vector2d random_y(double r) {
    std::uniform_real_distribution<double> d(-r, r);
    return {d(rng), d(rng)};
}

Eigen::Matrix3d int_matrix_power(int n) {
    Eigen::Matrix3d M;
    M << 0, 0, 1, 1, 0, 1, 0, 1, 0;
    Eigen::Matrix3d P = Eigen::Matrix3d::Identity();
    for (int i = 0; i < n; ++i) P = P * M;
    return P;
}

// Explicit limit matrix P = |v><u|.
Eigen::Matrix3d projector() {
    const double b = embeddings().beta;
    Eigen::Matrix3d P;
    P << 2.0 - b * b, b - 1.0, b * b - b,        //
        b * b - b, 1.0 + b - b * b, b * b - 1.0,  //
        b - 1.0, b * b - b, 1.0 + b - b * b;
    return (3.0 + b + 7.0 * b * b) / 23.0 * P;
}

}  // namespace

TEST_CASE("internal contraction") {
    const Eigen::Matrix2d R = internal_contraction();
    const double b = embeddings().beta;
    CHECK(R.determinant() == doctest::Approx(1.0 / b).epsilon(1e-12));
    // spectral radius |alpha| = beta^{-1/2} < 1: R is a scaled rotation
    const Eigen::Vector2d y(0.3, -1.7);
    CHECK((R * y).norm() == doctest::Approx(std::pow(b, -0.5) * y.norm()).epsilon(1e-12));
    // R = Q^T with Q the alpha multiplication
    CHECK(R(0, 1) == embeddings().alpha_im);
}

TEST_CASE("fourier_matrix displayed entries") {
    const Matrix3cd B0 = fourier_matrix({0.0, 0.0});
    Eigen::Matrix3d M;
    M << 0, 0, 1, 1, 0, 1, 0, 1, 0;
    CHECK((B0 - M.cast<complex<double>>()).cwiseAbs().maxCoeff() == 0.0);

    // period 1 in the first coordinate; second coordinate ignored
    const Matrix3cd Bp = fourier_matrix({1.0, 7.3});
    CHECK((Bp - B0).cwiseAbs().maxCoeff() < 1e-14);

    const Matrix3cd Bh = fourier_matrix({0.5, 0.0});
    CHECK(std::abs(Bh(1, 2) - complex<double>(-1.0, 0.0)) < 1e-14);
    Matrix3cd rest = Bh;
    rest(1, 2) = 0.0;
    Matrix3cd mrest = B0;
    mrest(1, 2) = 0.0;
    CHECK((rest - mrest).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("entry moduli bounded by M") {
    Eigen::Matrix3d M;
    M << 0, 0, 1, 1, 0, 1, 0, 1, 0;
    for (int i = 0; i < 20; ++i) {
        const Matrix3cd B = fourier_matrix(random_y(5.0));
        CHECK(((B.cwiseAbs() - M).array() <= 1e-14).all());
    }
}

TEST_CASE("cocycle at zero is a matrix power") {
    const Matrix3cd P5 = cocycle_product({0.0, 0.0}, 5);
    CHECK((P5 - int_matrix_power(5).cast<complex<double>>()).cwiseAbs().maxCoeff() < 1e-9);
    const Matrix3cd P1 = cocycle_product({0.3, 0.4}, 1);
    CHECK((P1 - fourier_matrix({0.3, 0.4})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cocycle identity B^(m+n)(y) = B^(m)(y) B^(n)(R^m y)") {
    const Eigen::Matrix2d R = internal_contraction();
    for (int i = 0; i < 10; ++i) {
        const Eigen::Vector2d y = random_y(3.0);
        Eigen::Vector2d z = y;
        for (int j = 0; j < 3; ++j) z = R * z;
        const Matrix3cd lhs = cocycle_product(y, 7);
        const Matrix3cd rhs = cocycle_product(y, 3) * cocycle_product(z, 4);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("c(0) = v and C(0) = P") {
    const CocycleLimit lim = c_vector({0.0, 0.0}, 1e-12);
    CHECK(lim.converged);
    const Eigen::Vector3d v = pf_data().v;
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(lim.c[i].real() - v[i]) < 1e-12);
        CHECK(std::abs(lim.c[i].imag()) < 1e-12);
    }
    CHECK((lim.C - projector().cast<complex<double>>()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("beta^-n B^(n)(0) reaches P at 1e-10 within n in [50,100]") {
    const double b = embeddings().beta;
    const Eigen::Matrix3d P = projector();
    bool reached = false;
    for (int n = 50; n <= 100 && !reached; ++n) {
        const Matrix3cd scaled = cocycle_product({0.0, 0.0}, n) / std::pow(b, n);
        const double rel = (scaled - P.cast<complex<double>>()).cwiseAbs().maxCoeff() /
                           P.cwiseAbs().maxCoeff();
        if (rel < 1e-10) reached = true;
    }
    CHECK(reached);
}

TEST_CASE("functional equation f(y) = b^-1 B(y) f(R y)") {
    const Eigen::Matrix2d R = internal_contraction();
    const double inv_b = 1.0 / embeddings().beta;
    double sup = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector2d y = random_y(3.0);
        const Vector3cd lhs = window_ft(y, 1e-12);
        const Vector3cd rhs = inv_b * (fourier_matrix(y) * window_ft(R * y, 1e-12));
        sup = std::max(sup, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    CHECK(sup < 1e-9);
}

TEST_CASE("rank-1 limit: 2x2 minors of C(y) vanish") {
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector2d y = random_y(3.0);
        const CocycleLimit lim = c_vector(y, 1e-12);
        REQUIRE(lim.converged);
        const double scale = lim.C.cwiseAbs().maxCoeff();
        double worst = 0.0;
        for (int r0 = 0; r0 < 3; ++r0)
            for (int r1 = r0 + 1; r1 < 3; ++r1)
                for (int c0 = 0; c0 < 3; ++c0)
                    for (int c1 = c0 + 1; c1 < 3; ++c1) {
                        const complex<double> det =
                            lim.C(r0, c0) * lim.C(r1, c1) - lim.C(r0, c1) * lim.C(r1, c0);
                        worst = std::max(worst, std::abs(det));
                    }
        CHECK(worst / scale < 1e-8);
    }
}

TEST_CASE("convergence step counts at tol 1e-12") {
    // rate is |alpha| per factor, so 1e-12 needs ~130-180 factors;
    // the run must converge under the cap for every probed y
    int lo_steps = kCocycleMaxSteps, hi_steps = 0;
    for (int i = 0; i < 40; ++i) {
        const Eigen::Vector2d y = random_y(10.0 / std::numbers::sqrt2);
        const CocycleLimit lim = c_vector(y, 1e-12);
        CHECK(lim.converged);
        lo_steps = std::min(lo_steps, lim.steps);
        hi_steps = std::max(hi_steps, lim.steps);
    }
    CHECK(lo_steps >= kCocycleMinSteps);
    CHECK(hi_steps <= kCocycleMaxSteps);
}

TEST_CASE("amplitudes at zero are the densities") {
    const Vector3cd A = amplitudes({0, 0, 0});
    const Eigen::Vector4d d = densities();
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(A[i].real() - d[i + 1]) < 1e-12);
        CHECK(std::abs(A[i].imag()) < 1e-12);
    }
}

TEST_CASE("amplitude bound |A_i| <= dens(Lambda_i)") {
    const Eigen::Vector4d d = densities();
    for (const BetaInt m : {BetaInt{1, 2, 2}, BetaInt{0, 0, 1}, BetaInt{3, -1, 2}}) {
        const Vector3cd A = amplitudes(m);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(A[i]) <= d[i + 1] + 1e-9);
    }
}

TEST_CASE("intensity basics") {
    const Vector3cd ones(1.0, 1.0, 1.0);
    const double dens = constants().dens_points;
    CHECK(intensity({0, 0, 0}, ones) == doctest::Approx(dens * dens).epsilon(1e-12));
    CHECK(intensity({0, 0, 0}, ones) == doctest::Approx(0.521464).epsilon(1e-5));
    CHECK(intensity({5, -2, 3}, Vector3cd::Zero()) == 0.0);
    CHECK(intensity({1, 2, 2}, ones) > 0.0);

    // intensity stays under the triangle-inequality cap
    const Eigen::Vector4d d = densities();
    const double cap = (d[1] + d[2] + d[3]) * (d[1] + d[2] + d[3]);
    for (const BetaInt m : {BetaInt{1, 2, 2}, BetaInt{2, 0, -1}})
        CHECK(intensity(m, ones) <= cap + 1e-9);
}

TEST_CASE("intensity symmetry I(-k) = I(k) for real weights") {
    const Vector3cd h(0.7, 1.0, 1.3);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<std::int64_t> d(-6, 6);
        const BetaInt m{d(rng), d(rng), d(rng)};
        const BetaInt neg = -m;
        CHECK(intensity(m, h) == doctest::Approx(intensity(neg, h)).epsilon(1e-9));
    }
}

TEST_CASE("peak_list smallest region holds only the origin") {
    const auto peaks = peak_list(0.0, 1.0, 0.0, Vector3cd(1.0, 1.0, 1.0));
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].miller == BetaInt{0, 0, 0});
    CHECK(peaks[0].k == 0.0);
}

TEST_CASE("peak_list finds (1,2,2) and reconstructs k from its Miller triple") {
    const auto peaks = peak_list(1.3, 15.0, 0.0, Vector3cd(1.0, 1.0, 1.0), 1e-12, 2);
    bool found = false;
    for (const PeakRecord& p : peaks) {
        // every listed k must reconstruct from its Miller triple
        CHECK(p.k == doctest::Approx(wave_number(p.miller).k).epsilon(1e-12));
        CHECK(p.k >= 0.0);
        CHECK(p.k <= 1.3);
        if (p.miller == BetaInt{1, 2, 2}) {
            found = true;
            CHECK(p.k == doctest::Approx(1.267240014).epsilon(1e-9));
        }
    }
    CHECK(found);
    // sorted ascending
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) CHECK(peaks[i].k <= peaks[i + 1].k);
}

TEST_CASE("peak_list is deterministic across thread counts") {
    const Vector3cd h(1.0, 1.0, 1.0);
    const auto p1 = peak_list(1.0, 10.0, 1e-8, h, 1e-12, 1);
    const auto p2 = peak_list(1.0, 10.0, 1e-8, h, 1e-12, 2);
    REQUIRE(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].miller == p2[i].miller);
        CHECK(p1[i].intensity == p2[i].intensity);
        CHECK((p1[i].amplitudes - p2[i].amplitudes).cwiseAbs().maxCoeff() == 0.0);
    }
}
