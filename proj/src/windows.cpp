#include "plastic/windows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "plastic/cocycle.hpp"

namespace plastic {

namespace {

Eigen::Matrix2d alpha_matrix() {
    const Embeddings& e = embeddings();
    Eigen::Matrix2d q;
    q << e.alpha_re, -e.alpha_im, e.alpha_im, e.alpha_re;
    return q;
}

void dedup_binary(Eigen::Matrix2Xd& pts) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.cols()));
    for (Eigen::Index i = 0; i < pts.cols(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        if (pts(0, i) != pts(0, j)) return pts(0, i) < pts(0, j);
        return pts(1, i) < pts(1, j);
    });
    Eigen::Matrix2Xd out(2, pts.cols());
    Eigen::Index n = 0;
    for (Eigen::Index idx : order) {
        if (n == 0 || pts(0, idx) != out(0, n - 1) || pts(1, idx) != out(1, n - 1))
            out.col(n++) = pts.col(idx);
    }
    pts = out.leftCols(n);
}

}  // namespace

std::array<WindowCloud, 3> iterate_ifs(int depth, Dedup dedup, std::size_t max_points) {
    if (depth < 0) throw std::invalid_argument("IFS depth must be >= 0");
    // Counts grow like the letter counts under M; refuse hopeless requests
    // before allocating.
    Eigen::Vector3<std::int64_t> n{1, 1, 1};
    for (int i = 0; i < depth; ++i) {
        n = {n[2], n[0] + n[2], n[1]};
        if (n.sum() > static_cast<std::int64_t>(max_points))
            throw std::length_error("window cloud exceeds the configured point budget");
    }

    const Eigen::Matrix2d Q = alpha_matrix();
    std::array<Eigen::Matrix2Xd, 3> w;
    for (auto& m : w) m = Eigen::Matrix2Xd::Zero(2, 1);

    for (int step = 0; step < depth; ++step) {
        Eigen::Matrix2Xd na = Q * w[2];
        Eigen::Matrix2Xd nb(2, w[0].cols() + w[2].cols());
        nb.leftCols(w[0].cols()) = Q * w[0];
        nb.rightCols(w[2].cols()) = (Q * w[2]).colwise() + Eigen::Vector2d(1.0, 0.0);
        if (dedup == Dedup::binary) dedup_binary(nb);
        Eigen::Matrix2Xd nc = Q * w[1];
        w = {std::move(na), std::move(nb), std::move(nc)};
    }

    std::array<WindowCloud, 3> out;
    for (int i = 0; i < 3; ++i) {
        out[i].letter = static_cast<Letter>(i);
        out[i].depth = depth;
        out[i].points = std::move(w[i]);
    }
    return out;
}

Eigen::Vector3d exact_volumes() { return constants().window_volumes; }

VolumeEstimate estimate_volumes(const std::array<WindowCloud, 3>& clouds, double cell) {
    if (!(cell > 0.0)) throw std::invalid_argument("cell size must be positive");
    VolumeEstimate est;
    est.sparse = false;
    for (int i = 0; i < 3; ++i) {
        const Eigen::Matrix2Xd& pts = clouds[static_cast<std::size_t>(i)].points;
        std::unordered_set<std::uint64_t> occupied;
        occupied.reserve(static_cast<std::size_t>(pts.cols()));
        for (Eigen::Index j = 0; j < pts.cols(); ++j) {
            const auto ix = static_cast<std::int64_t>(std::floor(pts(0, j) / cell));
            const auto iy = static_cast<std::int64_t>(std::floor(pts(1, j) / cell));
            occupied.insert((static_cast<std::uint64_t>(ix) << 32) ^
                            static_cast<std::uint32_t>(iy));
        }
        est.volumes[i] = static_cast<double>(occupied.size()) * cell * cell;
        est.points_per_cell[i] =
            static_cast<double>(pts.cols()) / static_cast<double>(occupied.size());
        if (est.points_per_cell[i] < 2.0) est.sparse = true;
    }
    return est;
}

std::complex<double> window_ft_oracle(const WindowCloud& cloud, const Eigen::Vector2d& y) {
    const Eigen::Matrix2Xd& pts = cloud.points;
    const double vol = exact_volumes()[static_cast<int>(cloud.letter)];
    std::complex<double> sum = 0.0;
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
        const double phase = 2.0 * std::numbers::pi * (pts(0, j) * y.x() + pts(1, j) * y.y());
        sum += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return (vol / static_cast<double>(pts.cols())) * sum;
}

FtGrid ft_grid(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int samples,
               Letter letter, double tol, unsigned threads) {
    if (samples < 2) throw std::invalid_argument("ft_grid requires samples >= 2");
    if (!(lo.x() < hi.x()) || !(lo.y() < hi.y()))
        throw std::invalid_argument("ft_grid box must have positive extent");

    FtGrid grid;
    grid.letter = letter;
    grid.lo = lo;
    grid.hi = hi;
    grid.samples = samples;
    grid.values.resize(samples, samples);
    grid.converged.assign(static_cast<std::size_t>(samples) * samples, 1);

    const double dx = (hi.x() - lo.x()) / (samples - 1);
    const double dy = (hi.y() - lo.y()) / (samples - 1);
    const int component = static_cast<int>(letter);

    const auto eval_rows = [&](int row_begin, int row_end) {
        for (int iy = row_begin; iy < row_end; ++iy)
            for (int ix = 0; ix < samples; ++ix) {
                const Eigen::Vector2d y(lo.x() + ix * dx, lo.y() + iy * dy);
                const CocycleLimit lim = c_vector(y, tol);
                grid.values(iy, ix) =
                    constants().dens_points / constants().dens_lattice * lim.c[component];
                if (!lim.converged)
                    grid.converged[static_cast<std::size_t>(iy) * samples + ix] = 0;
            }
    };

    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(samples));
    if (nthreads <= 1) {
        eval_rows(0, samples);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (samples + static_cast<int>(nthreads) - 1) / static_cast<int>(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            const int begin = static_cast<int>(t) * chunk;
            const int end = std::min(samples, begin + chunk);
            if (begin < end) pool.emplace_back(eval_rows, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    grid.failed_nodes = 0;
    for (std::uint8_t ok : grid.converged)
        if (!ok) ++grid.failed_nodes;
    return grid;
}

}  // namespace plastic
