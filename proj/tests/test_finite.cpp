#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "plastic/cocycle.hpp"
#include "plastic/finite.hpp"

using namespace plastic;
using std::complex;

namespace {
const Eigen::Vector3cd kOnes(1.0, 1.0, 1.0);
}

TEST_CASE("exponential sum at k = 0 counts points") {
    const FlatPatch p = flat_patch(18, Letter::a);
    const complex<double> s = exponential_sum(p, 0.0, kOnes);
    CHECK(s.real() == doctest::Approx(114.0).epsilon(1e-12));
    CHECK(s.imag() == 0.0);
}

TEST_CASE("single point at the origin") {
    const FlatPatch p = flat_patch(0, Letter::b);
    const Eigen::Vector3cd h(0.25, complex<double>(0.5, -1.0), 2.0);
    for (double k : {0.0, 0.37, 2.5}) {
        const complex<double> s = exponential_sum(p, k, h);
        CHECK(std::abs(s - h[1]) < 1e-15);
    }
}

TEST_CASE("naive oracle on a small patch") {
    const FlatPatch p = flat_patch(10, Letter::a);
    const double k = 0.8311;
    const Eigen::Vector3cd h(1.0, complex<double>(0.0, 1.0), -0.5);
    complex<double> naive = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double phase = -2.0 * std::numbers::pi * k * p.positions[i];
        naive += h[static_cast<int>(p.letters[i])] *
                 complex<double>(std::cos(phase), std::sin(phase));
    }
    CHECK(std::abs(exponential_sum(p, k, h) - naive) < 1e-12);
}

TEST_CASE("deterministic across thread counts") {
    const FlatPatch p = flat_patch(24, Letter::a);
    const double k = wave_number({1, 2, 2}).k;
    const complex<double> s1 = exponential_sum(p, k, kOnes, 1);
    const complex<double> s2 = exponential_sum(p, k, kOnes, 2);
    const complex<double> s5 = exponential_sum(p, k, kOnes, 5);
    CHECK(s1 == s2);
    CHECK(s1 == s5);
}

TEST_CASE("amplitude estimate at depth zero") {
    CHECK(std::abs(amplitude_estimate(0, Letter::a, {0, 0, 0}, kOnes) - 1.0) < 1e-15);
}

TEST_CASE("amplitude estimate at k=0 approaches dens(Lambda)") {
    const complex<double> est = amplitude_estimate(30, Letter::a, {0, 0, 0}, kOnes);
    CHECK(std::abs(est - constants().dens_points) < 1e-3);
}

TEST_CASE("patch length normalization uses the seed tile") {
    const double b = embeddings().beta;
    CHECK(patch_length(5, Letter::a) == doctest::Approx(std::pow(b, 5)).epsilon(1e-14));
    CHECK(patch_length(5, Letter::c) == doctest::Approx(std::pow(b, 7)).epsilon(1e-12));
    // seed-b patch of depth m has the same points as seed-a of depth m+1
    const complex<double> ea = amplitude_estimate(13, Letter::a, {1, 2, 2}, kOnes);
    const complex<double> eb = amplitude_estimate(12, Letter::b, {1, 2, 2}, kOnes);
    CHECK(std::abs(ea - eb) < 1e-12);
}

TEST_CASE("Bombieri-Taylor distances against the cocycle value") {
    const BetaInt miller{1, 2, 2};
    const complex<double> exact = amplitudes(miller).sum();
    double first = 0.0, last = 0.0;
    for (int m : {18, 24, 30, 36, 42}) {
        const double dist = std::abs(amplitude_estimate(m, Letter::a, miller, kOnes) - exact);
        if (m == 18) first = dist;
        last = dist;
    }
    CHECK(last < first);
}

TEST_CASE("intensity scan basics") {
    // depth 0, seed a: a single unit tile, I identically 1
    const FiniteScan flat = intensity_scan(0, Letter::a, 0.3, 0.9, 7, kOnes);
    REQUIRE(flat.k_values.size() == 7);
    CHECK(flat.k_values.front() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(flat.k_values.back() == doctest::Approx(0.9).epsilon(1e-15));
    for (double v : flat.intensities) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)intensity_scan(3, Letter::a, 1.0, 0.5, 10, kOnes),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)intensity_scan(3, Letter::a, 0.0, 1.0, 1, kOnes),
                    std::invalid_argument);
}

TEST_CASE("scan has a local maximum near the (1,2,2) Bragg position") {
    const double kb = wave_number({1, 2, 2}).k;
    const FiniteScan scan = intensity_scan(42, Letter::a, 1.2672395, 1.2672405, 41, kOnes, 2);
    std::size_t best = 0;
    for (std::size_t i = 0; i < scan.intensities.size(); ++i)
        if (scan.intensities[i] > scan.intensities[best]) best = i;
    CHECK(std::abs(scan.k_values[best] - kb) < 2.5e-7);  // one grid spacing
    for (double v : scan.intensities) CHECK(v >= 0.0);
}

TEST_CASE("normalization: I_m(0)/L_m tends to dens^2") {
    const int m = 30;
    const FlatPatch p = flat_patch(m, Letter::a);
    const double L = patch_length(m, Letter::a);
    const double I0 = std::norm(exponential_sum(p, 0.0, kOnes)) / L;
    const double dens = constants().dens_points;
    CHECK(std::abs(I0 / L - dens * dens) < 2e-3);
}

TEST_CASE("scan determinism across thread counts") {
    const FiniteScan s1 = intensity_scan(18, Letter::a, 0.2, 1.4, 25, kOnes, 1);
    const FiniteScan s2 = intensity_scan(18, Letter::a, 0.2, 1.4, 25, kOnes, 2);
    for (std::size_t i = 0; i < s1.intensities.size(); ++i) {
        CHECK(s1.intensities[i] == s2.intensities[i]);
        CHECK(s1.k_values[i] == s2.k_values[i]);
    }
}
