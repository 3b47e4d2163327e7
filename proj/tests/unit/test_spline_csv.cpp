#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tfp/csv.hpp"
#include "tfp/spline.hpp"

using namespace tfp;

TEST_CASE("spline interpolates nodes and reproduces straight lines") {
    const auto g = Grid1D::uniform(0.0, 2.0, 9);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = 3.0 * g[i] - 1.0;
    const CubicSpline s(g, v);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(s(g[i]) == doctest::Approx(v[i]).epsilon(1e-14));
    CHECK(s(0.33) == doctest::Approx(3.0 * 0.33 - 1.0).epsilon(1e-13));
    CHECK(s.derivative(1.21) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s(2.5) == doctest::Approx(6.5).epsilon(1e-12));
}

TEST_CASE("spline error on a smooth function shrinks at fourth order in the interior") {
    auto err = [](std::size_t n) {
        const auto g = Grid1D::uniform(0.0, 3.0, n);
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::sin(g[i]);
        const CubicSpline s(g, v);
        double e = 0.0;
        for (double x = 1.0; x <= 2.0; x += 0.0137) e = std::max(e, std::abs(s(x) - std::sin(x)));
        return e;
    };
    CHECK(std::log2(err(41) / err(81)) > 3.5);
}

TEST_CASE("csv header, width check and full precision") {
    CsvTable t({"a", "b"});
    CHECK_THROWS(t.add_row({1.0}));
    t.add_row({0.1, -1.0 / 3.0});
    const std::string s = t.to_string();
    std::istringstream in(s);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "a,b");
    const auto comma = row.find(',');
    CHECK(std::strtod(row.substr(0, comma).c_str(), nullptr) == 0.1);
    CHECK(std::strtod(row.substr(comma + 1).c_str(), nullptr) == -1.0 / 3.0);
    CHECK(format_number(1.0) == "1.0000000000000000e+00");
}

TEST_CASE("csv write produces the same bytes as to_string") {
    CsvTable t({"x"});
    t.add_row({2.5});
    const auto path = std::filesystem::temp_directory_path() / "tfp_csv_test.csv";
    t.write(path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == t.to_string());
    std::filesystem::remove(path);
}
