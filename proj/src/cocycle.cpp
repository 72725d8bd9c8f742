#include "plastic/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "plastic/inflation.hpp"

namespace plastic {

Eigen::Matrix2d internal_contraction() {
    const Embeddings& e = embeddings();
    Eigen::Matrix2d q;
    q << e.alpha_re, -e.alpha_im, e.alpha_im, e.alpha_re;
    return q.transpose();
}

Matrix3cd fourier_matrix(const Eigen::Vector2d& y) {
    // The only nonzero displacement is 1 in T_bc, with 1* = (1,0).
    const std::complex<double> phase = std::polar(1.0, 2.0 * std::numbers::pi * y.x());
    Matrix3cd B = Matrix3cd::Zero();
    B(0, 2) = 1.0;
    B(1, 0) = 1.0;
    B(1, 2) = phase;
    B(2, 1) = 1.0;
    return B;
}

Matrix3cd cocycle_product(const Eigen::Vector2d& y, int n) {
    if (n < 1) throw std::invalid_argument("cocycle_product requires n >= 1");
    const Eigen::Matrix2d R = internal_contraction();
    Eigen::Vector2d z = y;
    Matrix3cd P = fourier_matrix(z);
    for (int j = 1; j < n; ++j) {
        z = R * z;
        P = P * fourier_matrix(z);
    }
    return P;
}

CocycleLimit c_vector(const Eigen::Vector2d& y, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const Eigen::Matrix2d R = internal_contraction();
    const double inv_beta = 1.0 / embeddings().beta;
    const Eigen::Vector3d v = pf_data().v;

    CocycleLimit lim;
    Matrix3cd N = Matrix3cd::Identity();
    Matrix3cd N_prev = N;
    Eigen::Vector2d z = y;
    Vector3cd w_prev = v.cast<std::complex<double>>();
    for (int n = 1; n <= kCocycleMaxSteps; ++n) {
        N = (N * fourier_matrix(z)) * inv_beta;
        z = R * z;
        const Vector3cd w = N * v;
        // both the vector iterate and the full matrix must have settled,
        // so the returned C(y) is as converged as c(y)
        const double diff = std::max((w - w_prev).cwiseAbs().maxCoeff(),
                                     (N - N_prev).cwiseAbs().maxCoeff());
        lim.steps = n;
        lim.residual = diff;
        if (n >= kCocycleMinSteps && diff < tol) {
            lim.c = w;
            lim.C = N;
            lim.converged = true;
            return lim;
        }
        w_prev = w;
        N_prev = N;
    }
    lim.c = w_prev;
    lim.C = N;
    lim.converged = false;
    return lim;
}

Vector3cd window_ft(const Eigen::Vector2d& y, double tol) {
    const Constants& k = constants();
    const CocycleLimit lim = c_vector(y, tol);
    if (!lim.converged)
        throw std::runtime_error("cocycle product did not converge within the step cap");
    return (k.dens_points / k.dens_lattice) * lim.c;
}

Vector3cd amplitudes(const BetaInt& miller, double tol) {
    const CocycleLimit lim = c_vector(wave_number(miller).kstar, tol);
    if (!lim.converged)
        throw std::runtime_error("cocycle product did not converge within the step cap");
    return constants().dens_points * lim.c;
}

double intensity(const BetaInt& miller, const Vector3cd& h, double tol) {
    return std::norm(h.cwiseProduct(amplitudes(miller, tol)).sum());
}

namespace {

bool miller_less(const BetaInt& p, const BetaInt& q) {
    return std::tie(p.n0, p.n1, p.n2) < std::tie(q.n0, q.n1, q.n2);
}

}  // namespace

std::vector<PeakRecord> peak_list(double kmax, double kstar_max, double imin,
                                  const Vector3cd& h, double tol, unsigned threads) {
    if (!(kmax >= 0.0) || !(kstar_max > 0.0))
        throw std::invalid_argument("peak_list requires kmax >= 0 and kstar_max > 0");

    // Columns of A map Miller steps to (k, kstar); candidates come from
    // the integer hull of A^{-1} applied to the search box corners.
    Eigen::Matrix3d A;
    for (int j = 0; j < 3; ++j) {
        BetaInt e{j == 0, j == 1, j == 2};
        const WaveNumber w = wave_number(e);
        A.col(j) = Eigen::Vector3d(w.k, w.kstar.x(), w.kstar.y());
    }
    const Eigen::Matrix3d Ainv = A.inverse();

    Eigen::Vector3<std::int64_t> lo, hi;
    lo.setConstant(std::numeric_limits<std::int64_t>::max());
    hi.setConstant(std::numeric_limits<std::int64_t>::min());
    for (double x : {0.0, kmax})
        for (double s : {-kstar_max, kstar_max})
            for (double t : {-kstar_max, kstar_max}) {
                const Eigen::Vector3d n = Ainv * Eigen::Vector3d(x, s, t);
                for (int i = 0; i < 3; ++i) {
                    lo[i] = std::min(lo[i], static_cast<std::int64_t>(std::floor(n[i])) - 1);
                    hi[i] = std::max(hi[i], static_cast<std::int64_t>(std::ceil(n[i])) + 1);
                }
            }

    std::vector<BetaInt> candidates;
    for (std::int64_t n0 = lo[0]; n0 <= hi[0]; ++n0)
        for (std::int64_t n1 = lo[1]; n1 <= hi[1]; ++n1)
            for (std::int64_t n2 = lo[2]; n2 <= hi[2]; ++n2) {
                const WaveNumber w = wave_number(BetaInt{n0, n1, n2});
                if (w.k >= 0.0 && w.k <= kmax && w.kstar.norm() <= kstar_max)
                    candidates.push_back(w.miller);
            }

    const Constants& cns = constants();
    std::vector<PeakRecord> records(candidates.size());
    const auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const WaveNumber w = wave_number(candidates[i]);
            const CocycleLimit lim = c_vector(w.kstar, tol);
            PeakRecord& r = records[i];
            r.miller = w.miller;
            r.k = w.k;
            r.kstar = w.kstar;
            r.amplitudes = cns.dens_points * lim.c;
            r.intensity = std::norm(h.cwiseProduct(r.amplitudes).sum());
            r.steps = lim.steps;
            r.converged = lim.converged;
        }
    };

    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<std::size_t>(nthreads, std::max<std::size_t>(1, candidates.size()));
    if (nthreads <= 1) {
        eval_range(0, candidates.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (candidates.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(candidates.size(), begin + chunk);
            if (begin < end) pool.emplace_back(eval_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<PeakRecord> out;
    out.reserve(records.size());
    for (PeakRecord& r : records)
        if (r.intensity >= imin) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), [](const PeakRecord& p, const PeakRecord& q) {
        if (p.k != q.k) return p.k < q.k;
        return miller_less(p.miller, q.miller);
    });
    return out;
}

}  // namespace plastic
