#include "plastic/inflation.hpp"

#include <algorithm>
#include <stdexcept>

namespace plastic {

char to_char(Letter l) { return static_cast<char>('a' + static_cast<int>(l)); }

Letter letter_from_char(char c) {
    switch (c) {
        case 'a': return Letter::a;
        case 'b': return Letter::b;
        case 'c': return Letter::c;
    }
    throw std::invalid_argument(std::string("not a letter of {a,b,c}: '") + c + "'");
}

BetaInt tile_length(Letter l) {
    switch (l) {
        case Letter::a: return BetaInt::one();
        case Letter::b: return BetaInt::beta();
        default: return BetaInt::beta_sq();
    }
}

std::string substitute(const std::string& word) {
    std::string out;
    out.reserve(2 * word.size());
    for (char c : word) {
        switch (c) {
            case 'a': out += 'b'; break;
            case 'b': out += 'c'; break;
            case 'c': out += "ab"; break;
            default: throw std::invalid_argument("word contains a symbol outside {a,b,c}");
        }
    }
    return out;
}

Eigen::Vector3<std::int64_t> letter_counts(int m, Letter seed) {
    if (m < 0) throw std::invalid_argument("inflation depth must be >= 0");
    Eigen::Vector3<std::int64_t> n{0, 0, 0};
    n[static_cast<int>(seed)] = 1;
    for (int i = 0; i < m; ++i) {
        // counts transform by M: a' = c, b' = a + c, c' = b
        const auto a = n[0], b = n[1], c = n[2];
        n = {c, a + c, b};
    }
    return n;
}

std::int64_t word_length(int m, Letter seed) { return letter_counts(m, seed).sum(); }

std::vector<ControlPoint> inflate_points(int m, Letter seed) {
    if (m < 0) throw std::invalid_argument("inflation depth must be >= 0");
    std::vector<BetaInt> cur[3];
    cur[static_cast<int>(seed)].push_back(BetaInt{0, 0, 0});
    const BetaInt b = BetaInt::beta();
    for (int step = 0; step < m; ++step) {
        std::vector<BetaInt> nxt[3];
        nxt[0].reserve(cur[2].size());
        nxt[1].reserve(cur[0].size() + cur[2].size());
        nxt[2].reserve(cur[1].size());
        for (const BetaInt& x : cur[2]) nxt[0].push_back(beta_mul(b, x));
        for (const BetaInt& x : cur[0]) nxt[1].push_back(beta_mul(b, x));
        for (const BetaInt& x : cur[2]) nxt[1].push_back(beta_mul(b, x) + BetaInt::one());
        for (const BetaInt& x : cur[1]) nxt[2].push_back(beta_mul(b, x));
        for (int i = 0; i < 3; ++i) cur[i] = std::move(nxt[i]);
    }
    std::vector<ControlPoint> points;
    points.reserve(cur[0].size() + cur[1].size() + cur[2].size());
    for (int i = 0; i < 3; ++i)
        for (const BetaInt& x : cur[i])
            points.push_back({x, static_cast<Letter>(i)});
    std::vector<double> keys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) keys[i] = real_embed(points[i].position);
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&keys](std::size_t p, std::size_t q) { return keys[p] < keys[q]; });
    std::vector<ControlPoint> sorted;
    sorted.reserve(points.size());
    for (std::size_t i : order) sorted.push_back(points[i]);
    return sorted;
}

PFData pf_data() {
    const Embeddings& e = embeddings();
    const double b = e.beta;
    PFData d;
    d.matrix << 0, 0, 1, 1, 0, 1, 0, 1, 0;
    d.v = Eigen::Vector3d(2.0 - b * b, b * b - b, b - 1.0);
    d.u = constants().dens_points * Eigen::Vector3d(1.0, b, b * b);
    d.beta = b;
    return d;
}

Eigen::Vector4d densities() {
    const double dens = constants().dens_points;
    const Eigen::Vector3d v = pf_data().v;
    return {dens, v[0] * dens, v[1] * dens, v[2] * dens};
}

namespace {

struct PatchBuilder {
    FlatPatch out;
    BetaInt pos{0, 0, 0};  // running left endpoint: exact letter counts
    std::size_t cap;

    void emit(Letter l) {
        if (out.positions.size() >= cap)
            throw std::length_error("inflation patch exceeds the configured point budget");
        out.positions.push_back(real_embed(pos));
        out.letters.push_back(l);
        pos = pos + tile_length(l);
    }

    // expand the depth-m image of one letter, left to right
    void expand(int m, Letter l) {
        while (m > 0) {
            switch (l) {
                case Letter::a: l = Letter::b; --m; continue;
                case Letter::b: l = Letter::c; --m; continue;
                case Letter::c:
                    expand(m - 1, Letter::a);
                    l = Letter::b;
                    --m;
                    continue;
            }
        }
        emit(l);
    }
};

}  // namespace

FlatPatch flat_patch(int m, Letter seed, std::size_t max_points) {
    if (m < 0) throw std::invalid_argument("inflation depth must be >= 0");
    const std::int64_t n = word_length(m, seed);
    if (n > static_cast<std::int64_t>(max_points))
        throw std::length_error("inflation patch exceeds the configured point budget");
    PatchBuilder builder;
    builder.cap = max_points;
    builder.out.depth = m;
    builder.out.seed = seed;
    builder.out.positions.reserve(static_cast<std::size_t>(n));
    builder.out.letters.reserve(static_cast<std::size_t>(n));
    builder.expand(m, seed);
    return builder.out;
}

}  // namespace plastic
