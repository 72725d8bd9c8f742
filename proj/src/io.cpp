#include "plastic/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace plastic::io {

std::string format_double(double x) {
    if (x == 0.0) return "0";  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string patch_csv(const std::vector<ControlPoint>& points) {
    std::string out = "n0,n1,n2,letter,position_real\n";
    for (const ControlPoint& p : points) {
        out += std::to_string(p.position.n0) + ',' + std::to_string(p.position.n1) + ',' +
               std::to_string(p.position.n2) + ',' + to_char(p.letter) + ',' +
               format_double(real_embed(p.position)) + '\n';
    }
    return out;
}

std::string peaks_csv(const std::vector<PeakRecord>& peaks) {
    std::string out = "n0,n1,n2,k,ReA_a,ImA_a,ReA_b,ImA_b,ReA_c,ImA_c,intensity\n";
    for (const PeakRecord& p : peaks) {
        out += std::to_string(p.miller.n0) + ',' + std::to_string(p.miller.n1) + ',' +
               std::to_string(p.miller.n2) + ',' + format_double(p.k);
        for (int i = 0; i < 3; ++i) {
            out += ',' + format_double(p.amplitudes[i].real());
            out += ',' + format_double(p.amplitudes[i].imag());
        }
        out += ',' + format_double(p.intensity) + '\n';
    }
    return out;
}

nlohmann::json peaks_json(const std::vector<PeakRecord>& peaks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const PeakRecord& p : peaks) {
        arr.push_back({{"n0", p.miller.n0},
                       {"n1", p.miller.n1},
                       {"n2", p.miller.n2},
                       {"k", p.k},
                       {"ReA_a", p.amplitudes[0].real()},
                       {"ImA_a", p.amplitudes[0].imag()},
                       {"ReA_b", p.amplitudes[1].real()},
                       {"ImA_b", p.amplitudes[1].imag()},
                       {"ReA_c", p.amplitudes[2].real()},
                       {"ImA_c", p.amplitudes[2].imag()},
                       {"intensity", p.intensity}});
    }
    return arr;
}

std::string cloud_csv(const std::array<WindowCloud, 3>& clouds, bool only_letter, Letter letter) {
    std::string out = "x,y,letter\n";
    for (const WindowCloud& c : clouds) {
        if (only_letter && c.letter != letter) continue;
        for (Eigen::Index j = 0; j < c.points.cols(); ++j) {
            out += format_double(c.points(0, j)) + ',' + format_double(c.points(1, j)) + ',';
            out += to_char(c.letter);
            out += '\n';
        }
    }
    return out;
}

std::string scan_csv(const FiniteScan& scan) {
    std::string out = "k,intensity,log10_intensity\n";
    for (std::size_t i = 0; i < scan.k_values.size(); ++i) {
        const double in = scan.intensities[i];
        out += format_double(scan.k_values[i]) + ',' + format_double(in) + ',' +
               format_double(std::log10(in)) + '\n';
    }
    return out;
}

std::string grid_csv(const FtGrid& grid) {
    std::string out = "yx,yy,re,im,abs,arg\n";
    const double dx = (grid.hi.x() - grid.lo.x()) / (grid.samples - 1);
    const double dy = (grid.hi.y() - grid.lo.y()) / (grid.samples - 1);
    for (int iy = 0; iy < grid.samples; ++iy)
        for (int ix = 0; ix < grid.samples; ++ix) {
            const std::complex<double> z = grid.values(iy, ix);
            out += format_double(grid.lo.x() + ix * dx) + ',' +
                   format_double(grid.lo.y() + iy * dy) + ',' + format_double(z.real()) + ',' +
                   format_double(z.imag()) + ',' + format_double(std::abs(z)) + ',' +
                   format_double(std::arg(z)) + '\n';
        }
    return out;
}

std::string grid_pgm(const Eigen::MatrixXd& layer, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("grid_pgm requires hi > lo");
    std::string out = "P5\n" + std::to_string(layer.cols()) + " " + std::to_string(layer.rows()) +
                      "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(layer.size()));
    for (Eigen::Index r = 0; r < layer.rows(); ++r)
        for (Eigen::Index c = 0; c < layer.cols(); ++c) {
            const double t = std::clamp((layer(r, c) - lo) / (hi - lo), 0.0, 1.0);
            out += static_cast<char>(static_cast<unsigned char>(std::lround(t * 255.0)));
        }
    return out;
}

Eigen::MatrixXd grid_magnitude(const FtGrid& grid) { return grid.values.cwiseAbs(); }

Eigen::MatrixXd grid_argument(const FtGrid& grid) {
    return grid.values.unaryExpr([](const std::complex<double>& z) { return std::arg(z); });
}

nlohmann::json constants_json() {
    const Constants& c = constants();
    const Embeddings& e = embeddings();
    return {{"beta", e.beta},
            {"alpha_re", e.alpha_re},
            {"alpha_im", e.alpha_im},
            {"s_bar", c.s_bar},
            {"dens_points", c.dens_points},
            {"dens_lattice", c.dens_lattice},
            {"module_generator", c.module_generator},
            {"window_volumes", {c.window_volumes[0], c.window_volumes[1], c.window_volumes[2]}}};
}

nlohmann::json metadata(const std::string& command, const nlohmann::json& parameters) {
    return {{"command", command},
            {"parameters", parameters},
            {"constants", constants_json()},
            {"version", PLASTICDIFF_VERSION}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace plastic::io
