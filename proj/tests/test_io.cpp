#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plastic/io.hpp"

using namespace plastic;

TEST_CASE("double formatting round-trips") {
    for (double x : {0.0, 1.0, 1.2672400139315176, -3.5e-11, 1e300}) {
        const std::string s = io::format_double(x);
        CHECK(std::stod(s) == x);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("patch csv") {
    const auto pts = inflate_points(3, Letter::a);
    const std::string csv = io::patch_csv(pts);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n0,n1,n2,letter,position_real");
    std::getline(in, line);
    CHECK(line == "0,0,0,a,0");
    std::getline(in, line);
    CHECK(line == "1,0,0,b,1");
    CHECK(!std::getline(in, line));
}

TEST_CASE("peaks csv header and row shape") {
    const auto peaks = peak_list(0.0, 1.0, 0.0, Vector3cd(1.0, 1.0, 1.0));
    const std::string csv = io::peaks_csv(peaks);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n0,n1,n2,k,ReA_a,ImA_a,ReA_b,ImA_b,ReA_c,ImA_c,intensity");
    std::getline(in, line);
    CHECK(line.starts_with("0,0,0,0,"));
    // 11 columns
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
}

TEST_CASE("peaks json mirrors the csv fields") {
    const auto peaks = peak_list(0.3, 6.0, 1e-9, Vector3cd(1.0, 1.0, 1.0));
    const nlohmann::json j = io::peaks_json(peaks);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        CHECK(j[i]["n0"].get<std::int64_t>() == peaks[i].miller.n0);
        CHECK(j[i]["k"].get<double>() == peaks[i].k);
        CHECK(j[i]["intensity"].get<double>() == peaks[i].intensity);
    }
}

TEST_CASE("cloud csv") {
    const auto clouds = iterate_ifs(1);
    const std::string all = io::cloud_csv(clouds);
    CHECK(all == "x,y,letter\n0,0,a\n0,0,b\n1,0,b\n0,0,c\n");
    const std::string only_b = io::cloud_csv(clouds, true, Letter::b);
    CHECK(only_b == "x,y,letter\n0,0,b\n1,0,b\n");
}

TEST_CASE("scan csv") {
    FiniteScan scan;
    scan.k_values = {0.5, 1.0};
    scan.intensities = {4.0, 0.0};
    const std::string csv = io::scan_csv(scan);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,intensity,log10_intensity");
    std::getline(in, line);
    CHECK(line == "0.5,4," + io::format_double(std::log10(4.0)));
    std::getline(in, line);
    CHECK(line == "1,0,-inf");
}

TEST_CASE("pgm layer") {
    Eigen::MatrixXd layer(2, 3);
    layer << 0.0, 0.5, 1.0, 1.0, 0.25, 2.0;
    const std::string pgm = io::grid_pgm(layer, 0.0, 1.0);
    CHECK(pgm.starts_with("P5\n3 2\n255\n"));
    const std::string body = pgm.substr(pgm.find("255\n") + 4);
    REQUIRE(body.size() == 6);
    CHECK(static_cast<unsigned char>(body[0]) == 0);
    CHECK(static_cast<unsigned char>(body[1]) == 128);
    CHECK(static_cast<unsigned char>(body[2]) == 255);
    CHECK(static_cast<unsigned char>(body[3]) == 255);
    CHECK(static_cast<unsigned char>(body[4]) == 64);
    CHECK(static_cast<unsigned char>(body[5]) == 255);  // clamped
}

TEST_CASE("grid csv corners") {
    const FtGrid grid = ft_grid({-1.0, -1.0}, {1.0, 1.0}, 2, Letter::c, 1e-10, 1);
    const std::string csv = io::grid_csv(grid);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "yx,yy,re,im,abs,arg");
    std::getline(in, line);
    CHECK(line.starts_with("-1,-1,"));
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("metadata carries constants and version") {
    const nlohmann::json meta = io::metadata("info", {{"x", 1}});
    CHECK(meta["command"] == "info");
    CHECK(meta["parameters"]["x"] == 1);
    CHECK(meta["constants"]["beta"].get<double>() ==
          doctest::Approx(1.3247180).epsilon(1e-6));
    CHECK(meta.contains("version"));
}
