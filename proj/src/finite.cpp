#include "plastic/finite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace plastic {

namespace {

constexpr std::size_t kBlock = 4096;

std::complex<double> block_sum(std::span<const double> positions,
                               std::span<const Letter> letters, std::size_t begin,
                               std::size_t end, double k, const Eigen::Vector3cd& h) {
    const double omega = -2.0 * std::numbers::pi * k;
    std::complex<double> acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double phase = omega * positions[i];
        acc += h[static_cast<int>(letters[i])] *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

}  // namespace

std::complex<double> exponential_sum(std::span<const double> positions,
                                     std::span<const Letter> letters, double k,
                                     const Eigen::Vector3cd& h, unsigned threads) {
    if (positions.size() != letters.size())
        throw std::invalid_argument("positions and letters must have equal length");
    const std::size_t n = positions.size();
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;

    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(
        std::min<std::size_t>(nthreads, std::max<std::size_t>(1, nblocks)));

    std::vector<std::complex<double>> partial(nblocks);
    const auto run_blocks = [&](std::size_t block_begin, std::size_t block_end) {
        for (std::size_t b = block_begin; b < block_end; ++b) {
            const std::size_t lo = b * kBlock;
            const std::size_t hi = std::min(n, lo + kBlock);
            partial[b] = block_sum(positions, letters, lo, hi, k, h);
        }
    };

    if (nthreads <= 1) {
        run_blocks(0, nblocks);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (nblocks + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(nblocks, begin + chunk);
            if (begin < end) pool.emplace_back(run_blocks, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // fixed-shape pairwise tree over block sums: the reduction order is a
    // function of the block count alone, never of the thread count
    std::size_t width = nblocks;
    while (width > 1) {
        const std::size_t half = (width + 1) / 2;
        for (std::size_t i = 0; i + half < width; ++i) partial[i] += partial[i + half];
        width = half;
    }
    return nblocks ? partial[0] : std::complex<double>(0.0);
}

std::complex<double> exponential_sum(const FlatPatch& patch, double k,
                                     const Eigen::Vector3cd& h, unsigned threads) {
    return exponential_sum(std::span<const double>(patch.positions),
                           std::span<const Letter>(patch.letters), k, h, threads);
}

double patch_length(int m, Letter seed) {
    return std::pow(embeddings().beta, m) * real_embed(tile_length(seed));
}

std::complex<double> amplitude_estimate(const FlatPatch& patch, const BetaInt& miller,
                                        const Eigen::Vector3cd& h, unsigned threads) {
    const double k = wave_number(miller).k;
    return exponential_sum(patch, k, h, threads) / patch_length(patch.depth, patch.seed);
}

std::complex<double> amplitude_estimate(int m, Letter seed, const BetaInt& miller,
                                        const Eigen::Vector3cd& h, unsigned threads) {
    return amplitude_estimate(flat_patch(m, seed), miller, h, threads);
}

FiniteScan intensity_scan(int m, Letter seed, double k_from, double k_to, int samples,
                          const Eigen::Vector3cd& h, unsigned threads) {
    if (!(k_from < k_to)) throw std::invalid_argument("intensity_scan requires k_from < k_to");
    if (samples < 2) throw std::invalid_argument("intensity_scan requires samples >= 2");

    const FlatPatch patch = flat_patch(m, seed);
    const double length = patch_length(m, seed);

    FiniteScan scan;
    scan.depth = m;
    scan.seed = seed;
    scan.weights = h;
    scan.k_values.resize(static_cast<std::size_t>(samples));
    scan.intensities.resize(static_cast<std::size_t>(samples));
    const double dk = (k_to - k_from) / (samples - 1);

    const auto eval_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double k = k_from + i * dk;
            // per-sample sums run single-threaded; parallelism is across k
            const std::complex<double> s =
                exponential_sum(std::span<const double>(patch.positions),
                                std::span<const Letter>(patch.letters), k, h, 1);
            scan.k_values[static_cast<std::size_t>(i)] = k;
            scan.intensities[static_cast<std::size_t>(i)] = std::norm(s) / length;
        }
    };

    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(samples));
    if (nthreads <= 1) {
        eval_range(0, samples);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (samples + static_cast<int>(nthreads) - 1) / static_cast<int>(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            const int begin = static_cast<int>(t) * chunk;
            const int end = std::min(samples, begin + chunk);
            if (begin < end) pool.emplace_back(eval_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return scan;
}

}  // namespace plastic
