#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tfp::cli {

/// Minimal SVG line plot: axes, ticks at the data range ends, one polyline
/// per series.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel, bool logx = false, bool logy = false);

    void add_series(std::string name, std::vector<double> x, std::vector<double> y);
    std::string render() const;
    void write(const std::filesystem::path& path) const;

private:
    struct Series {
        std::string name;
        std::vector<double> x;
        std::vector<double> y;
    };

    std::string title_;
    std::string xlabel_;
    std::string ylabel_;
    bool logx_;
    bool logy_;
    std::vector<Series> series_;
};

}  // namespace tfp::cli
