// plasticdiff: diffraction of the plastic-number inflation tiling.
//
// Subcommands expose the library as reproducible runs with plain data
// files. Every command writes a <out>.meta.json sidecar with the full
// parameter set and the constants in effect; outputs are byte-identical
// across reruns for fixed flags and any thread budget.

#include <complex>
#include <cstdio>
#include <exception>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "plastic/io.hpp"

using namespace plastic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitResources = 3;

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad number: " + item);
    }
    return out;
}

// Weights: three reals "1,1,1" or three re,im pairs "1,0,1,0,1,0".
Vector3cd parse_weights(const std::string& text) {
    const std::vector<double> vals = parse_number_list(text);
    if (vals.size() == 3) return {vals[0], vals[1], vals[2]};
    if (vals.size() == 6)
        return Vector3cd(std::complex<double>(vals[0], vals[1]),
                         std::complex<double>(vals[2], vals[3]),
                         std::complex<double>(vals[4], vals[5]));
    throw std::invalid_argument("weights need 3 reals or 3 re,im pairs");
}

BetaInt parse_miller(const std::string& text) {
    const std::vector<double> vals = parse_number_list(text);
    if (vals.size() != 3) throw std::invalid_argument("miller needs 3 integers");
    return {static_cast<std::int64_t>(vals[0]), static_cast<std::int64_t>(vals[1]),
            static_cast<std::int64_t>(vals[2])};
}

nlohmann::json weights_json(const Vector3cd& h) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) j.push_back({h[i].real(), h[i].imag()});
    return j;
}

void write_with_sidecar(const std::string& path, const std::string& contents,
                        const std::string& command, const nlohmann::json& params) {
    io::write_file(path, contents);
    io::write_file(path + ".meta.json", io::metadata(command, params).dump(2) + "\n");
}

int cmd_info() {
    const Embeddings& e = embeddings();
    const Constants& c = constants();
    const PFData pf = pf_data();
    const Eigen::Vector4d dens = densities();
    const Eigen::Vector3d vol = exact_volumes();
    std::printf("plastic number tiling constants\n");
    std::printf("  beta                  = %.15f   (root of x^3 - x - 1)\n", e.beta);
    std::printf("  alpha                 = %.15f + %.15f i\n", e.alpha_re, e.alpha_im);
    std::printf("  |alpha|^2             = %.15f   (= 1/beta = beta^2 - 1)\n",
                e.alpha_re * e.alpha_re + e.alpha_im * e.alpha_im);
    std::printf("  s_bar                 = %.15f   (mean point spacing)\n", c.s_bar);
    std::printf("  dens(Lambda)          = %.15f   (= (3+b+7b^2)/23)\n", c.dens_points);
    std::printf("  dens(L) = 2/sqrt(23)  = %.15f\n", c.dens_lattice);
    std::printf("  module generator      = %.15f   (= (5-6b+4b^2)/23)\n", c.module_generator);
    std::printf("  v (letter freqs)      = (%.7f, %.7f, %.7f)\n", pf.v[0], pf.v[1], pf.v[2]);
    std::printf("  u (left eigenvector)  = (%.7f, %.7f, %.7f)\n", pf.u[0], pf.u[1], pf.u[2]);
    std::printf("  dens(Lambda_i)        = (%.7f, %.7f, %.7f)\n", dens[1], dens[2], dens[3]);
    std::printf("  vol(W_a, W_b, W_c)    = (%.7f, %.7f, %.7f)\n", vol[0], vol[1], vol[2]);
    std::printf("  vol sum               = %.15f   (= dens(Lambda)/dens(L))\n", vol.sum());
    return kExitOk;
}

int cmd_peaks(double kmax, double kstar_max, double imin, const Vector3cd& h, double tol,
              const std::string& out, const std::string& format, unsigned threads) {
    const auto peaks = peak_list(kmax, kstar_max, imin, h, tol, threads);
    int bad = 0;
    for (const PeakRecord& p : peaks)
        if (!p.converged) ++bad;
    const nlohmann::json params = {{"kmax", kmax},       {"kstar_max", kstar_max},
                                   {"imin", imin},       {"h", weights_json(h)},
                                   {"tol", tol},         {"format", format},
                                   {"peaks", peaks.size()}};
    if (format == "json")
        write_with_sidecar(out, io::peaks_json(peaks).dump(2) + "\n", "peaks", params);
    else
        write_with_sidecar(out, io::peaks_csv(peaks), "peaks", params);
    std::fprintf(stderr, "peaks: %zu records -> %s\n", peaks.size(), out.c_str());
    if (bad) {
        std::fprintf(stderr, "peaks: %d records did not converge\n", bad);
        return kExitNoConvergence;
    }
    return kExitOk;
}

int cmd_finite_scan(int m, char seed, double k_from, double k_to, int samples,
                    const Vector3cd& h, const std::string& out, unsigned threads) {
    const Letter s = letter_from_char(seed);
    const FiniteScan scan = intensity_scan(m, s, k_from, k_to, samples, h, threads);
    std::fprintf(stderr, "finite-scan: %lld-point patch (m=%d, seed %c)\n",
                 static_cast<long long>(word_length(m, s)), m, seed);
    const nlohmann::json params = {{"m", m},       {"seed", std::string(1, seed)},
                                   {"k_from", k_from}, {"k_to", k_to},
                                   {"samples", samples}, {"h", weights_json(h)},
                                   {"patch_points", word_length(m, s)}};
    write_with_sidecar(out, io::scan_csv(scan), "finite-scan", params);
    return kExitOk;
}

int cmd_peak_compare(const BetaInt& miller, const std::vector<int>& m_list, const Vector3cd& h,
                     double tol, const std::string& out, unsigned threads) {
    const Vector3cd A = amplitudes(miller, tol);
    const std::complex<double> exact = h.cwiseProduct(A).sum();
    std::string csv = "m,re_estimate,im_estimate,abs_error\n";
    for (int m : m_list) {
        const std::complex<double> est = amplitude_estimate(m, Letter::a, miller, h, threads);
        csv += std::to_string(m) + ',' + io::format_double(est.real()) + ',' +
               io::format_double(est.imag()) + ',' + io::format_double(std::abs(est - exact)) +
               '\n';
    }
    const nlohmann::json params = {{"miller", {miller.n0, miller.n1, miller.n2}},
                                   {"m_list", m_list},
                                   {"h", weights_json(h)},
                                   {"tol", tol},
                                   {"exact", {exact.real(), exact.imag()}}};
    write_with_sidecar(out, csv, "peak-compare", params);
    std::fprintf(stderr, "peak-compare: exact sum_i h_i A_i = %.12g + %.12g i\n", exact.real(),
                 exact.imag());
    return kExitOk;
}

int cmd_patch(int m, char seed, const std::string& out) {
    const Letter s = letter_from_char(seed);
    const auto points = inflate_points(m, s);
    const nlohmann::json params = {
        {"m", m}, {"seed", std::string(1, seed)}, {"points", points.size()}};
    write_with_sidecar(out, io::patch_csv(points), "patch", params);
    std::fprintf(stderr, "patch: %zu control points -> %s\n", points.size(), out.c_str());
    return kExitOk;
}

int cmd_window(int depth, const std::string& letter, double cell, const std::string& out) {
    const auto clouds = iterate_ifs(depth);
    const VolumeEstimate est = estimate_volumes(clouds, cell);
    const Eigen::Vector3d vol = exact_volumes();
    for (int i = 0; i < 3; ++i)
        std::fprintf(stderr,
                     "window %c: %lld points, box-count(cell=%g) = %.6f, exact = %.6f%s\n",
                     'a' + i, static_cast<long long>(clouds[i].size()), cell, est.volumes[i],
                     vol[i], est.points_per_cell[i] < 2.0 ? "  [sparse, unreliable]" : "");
    const bool all = (letter == "all");
    const nlohmann::json params = {
        {"depth", depth},
        {"letter", letter},
        {"cell", cell},
        {"box_count", {est.volumes[0], est.volumes[1], est.volumes[2]}},
        {"exact_volumes", {vol[0], vol[1], vol[2]}},
        {"sparse", est.sparse}};
    write_with_sidecar(out, io::cloud_csv(clouds, !all, all ? Letter::a : letter_from_char(letter[0])),
                       "window", params);
    return kExitOk;
}

int cmd_ft_grid(const std::string& letter, const std::vector<double>& box, int samples,
                double tol, const std::string& out_prefix, unsigned threads) {
    Eigen::Vector2d lo, hi;
    if (box.size() == 2) {
        lo = {box[0], box[0]};
        hi = {box[1], box[1]};
    } else if (box.size() == 4) {
        lo = {box[0], box[2]};
        hi = {box[1], box[3]};
    } else {
        throw CLI::ValidationError("--box needs lo,hi or x0,x1,y0,y1");
    }
    if (!(lo.x() < hi.x()) || !(lo.y() < hi.y()))
        throw CLI::ValidationError("--box must have min < max on both axes");

    const Letter l = letter_from_char(letter.at(0));
    const FtGrid grid = ft_grid(lo, hi, samples, l, tol, threads);
    const double vol = exact_volumes()[static_cast<int>(l)];
    const nlohmann::json params = {{"letter", letter},
                                   {"box", {lo.x(), hi.x(), lo.y(), hi.y()}},
                                   {"samples", samples},
                                   {"tol", tol},
                                   {"failed_nodes", grid.failed_nodes},
                                   {"volume_scale", vol}};
    write_with_sidecar(out_prefix + ".csv", io::grid_csv(grid), "ft-grid", params);
    io::write_file(out_prefix + "_abs.pgm", io::grid_pgm(io::grid_magnitude(grid), 0.0, vol));
    io::write_file(out_prefix + "_arg.pgm",
                   io::grid_pgm(io::grid_argument(grid), -std::numbers::pi, std::numbers::pi));
    if (grid.failed_nodes)
        std::fprintf(stderr, "ft-grid: %d nodes did not converge (recorded in csv)\n",
                     grid.failed_nodes);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pure-point diffraction of the plastic-number inflation tiling"};
    // subcommands take --h as a weights flag, so help is --help only
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    app.fallthrough();  // --threads may follow the subcommand
    unsigned threads = 0;
    app.add_option("--threads", threads, "thread budget (0 = hardware)");

    auto* info = app.add_subcommand("info", "print the derived constants");

    auto* peaks = app.add_subcommand("peaks", "enumerate Bragg peaks in a (k, k*) region");
    // 1e-10 keeps the product under the 200-factor cap out to |k*| = 15
    double kmax = 2.5, kstar_max = 15.0, imin = 1e-6, tol = 1e-10;
    std::string h_text = "1,1,1", out = "peaks.csv", format = "csv";
    peaks->add_option("--kmax", kmax, "largest wave number")->capture_default_str();
    peaks->add_option("--kstar_max", kstar_max, "internal-space radius")->capture_default_str();
    peaks->add_option("--imin", imin, "intensity threshold")->capture_default_str();
    peaks->add_option("--h", h_text, "weights: 3 reals or 3 re,im pairs")->capture_default_str();
    peaks->add_option("--tol", tol, "cocycle tolerance")->capture_default_str();
    peaks->add_option("--out", out, "output path")->capture_default_str();
    peaks->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* fscan = app.add_subcommand("finite-scan", "finite-patch intensity curve I_m(k)");
    int m = 18, samples = 5000;
    double k_from = 0.0, k_to = 2.5;
    std::string seed = "a", scan_out = "scan.csv", scan_h = "1,1,1";
    fscan->add_option("--m", m, "inflation depth")->capture_default_str();
    fscan->add_option("--seed", seed, "seed letter a|b|c")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->capture_default_str();
    fscan->add_option("--k_from", k_from, "scan start")->capture_default_str();
    fscan->add_option("--k_to", k_to, "scan end")->capture_default_str();
    fscan->add_option("--samples", samples, "number of k samples")->capture_default_str();
    fscan->add_option("--h", scan_h, "weights")->capture_default_str();
    fscan->add_option("--out", scan_out, "output path")->capture_default_str();

    auto* pcomp = app.add_subcommand("peak-compare",
                                     "finite-size amplitude estimates against the cocycle value");
    std::string miller_text = "1,2,2", mlist_text, pcomp_out = "compare.csv", pcomp_h = "1,1,1";
    double pcomp_tol = 1e-12;
    pcomp->add_option("--miller", miller_text, "Miller triple n0,n1,n2")->capture_default_str();
    pcomp->add_option("--m_list", mlist_text, "comma-separated inflation depths")->required();
    pcomp->add_option("--h", pcomp_h, "weights")->capture_default_str();
    pcomp->add_option("--tol", pcomp_tol, "cocycle tolerance")->capture_default_str();
    pcomp->add_option("--out", pcomp_out, "output path")->capture_default_str();

    auto* patch = app.add_subcommand("patch", "exact control points of an inflation patch");
    int patch_m = 18;
    std::string patch_seed = "a", patch_out = "patch.csv";
    patch->add_option("--m", patch_m, "inflation depth")->capture_default_str();
    patch->add_option("--seed", patch_seed, "seed letter a|b|c")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->capture_default_str();
    patch->add_option("--out", patch_out, "output path")->capture_default_str();

    auto* window = app.add_subcommand("window", "IFS window clouds and box-count volumes");
    int depth = 30;
    double cell = 0.01;
    std::string letter = "all", window_out = "window.csv";
    window->add_option("--depth", depth, "IFS depth")->capture_default_str();
    window->add_option("--letter", letter, "a|b|c|all")
        ->check(CLI::IsMember({"a", "b", "c", "all"}))
        ->capture_default_str();
    window->add_option("--cell", cell, "box-count cell size")->capture_default_str();
    window->add_option("--out", window_out, "output path")->capture_default_str();

    auto* ftg = app.add_subcommand("ft-grid", "window Fourier transform on a grid");
    std::string ftg_letter = "b", box_text = "-4,4", prefix = "ftgrid";
    int ftg_samples = 256;
    double ftg_tol = 1e-10;
    ftg->add_option("--letter", ftg_letter, "a|b|c")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->capture_default_str();
    ftg->add_option("--box", box_text, "lo,hi (square) or x0,x1,y0,y1")->capture_default_str();
    ftg->add_option("--samples", ftg_samples, "grid nodes per axis")->capture_default_str();
    ftg->add_option("--tol", ftg_tol, "cocycle tolerance")->capture_default_str();
    ftg->add_option("--out_prefix", prefix, "output path prefix")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info();
        if (peaks->parsed())
            return cmd_peaks(kmax, kstar_max, imin, parse_weights(h_text), tol, out, format,
                             threads);
        if (fscan->parsed())
            return cmd_finite_scan(m, seed.at(0), k_from, k_to, samples, parse_weights(scan_h),
                                   scan_out, threads);
        if (pcomp->parsed()) {
            std::vector<int> m_list;
            for (double x : parse_number_list(mlist_text)) m_list.push_back(static_cast<int>(x));
            if (m_list.empty()) {
                std::fprintf(stderr, "peak-compare: --m_list must not be empty\n");
                return kExitUsage;
            }
            return cmd_peak_compare(parse_miller(miller_text), m_list, parse_weights(pcomp_h),
                                    pcomp_tol, pcomp_out, threads);
        }
        if (patch->parsed()) return cmd_patch(patch_m, patch_seed.at(0), patch_out);
        if (window->parsed()) return cmd_window(depth, letter, cell, window_out);
        if (ftg->parsed())
            return cmd_ft_grid(ftg_letter, parse_number_list(box_text), ftg_samples, ftg_tol,
                               prefix, threads);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResources;
    } catch (const std::bad_alloc&) {
        std::fprintf(stderr, "error: out of memory\n");
        return kExitResources;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
