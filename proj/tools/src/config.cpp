#include "tfp_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tfp::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("value for '" + key + "' is not a number: " + v);
    }
    if (used != v.size() || !std::isfinite(x)) throw ConfigError("value for '" + key + "' is not a number: " + v);
    return x;
}

long parse_int(const std::string& key, const std::string& v) {
    long x = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end) throw ConfigError("value for '" + key + "' is not an integer: " + v);
    return x;
}

}  // namespace

std::vector<double> StudyConfig::eps_list() const {
    return eps.value_or(std::vector<double>{0.1, 0.05, 0.025});
}

std::vector<std::string> StudyConfig::keys() {
    return {"d", "eps", "N", "y_min", "y_max", "nodes", "tol", "r_max", "radial_nodes", "gs_tol", "n_pairs",
            "bs_levels", "out"};
}

void StudyConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("empty value for '" + key + "'");
    if (key == "d") {
        d = static_cast<int>(parse_int(key, v));
    } else if (key == "eps") {
        std::vector<double> list;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) list.push_back(parse_double(key, trim(item)));
        eps = std::move(list);
    } else if (key == "N") {
        N = static_cast<int>(parse_int(key, v));
    } else if (key == "y_min") {
        y_min = parse_double(key, v);
    } else if (key == "y_max") {
        y_max = parse_double(key, v);
    } else if (key == "nodes") {
        const long n = parse_int(key, v);
        if (n < 0) throw ConfigError("nodes must be positive");
        nodes = static_cast<std::size_t>(n);
    } else if (key == "tol") {
        tol = parse_double(key, v);
    } else if (key == "r_max") {
        r_max = parse_double(key, v);
    } else if (key == "radial_nodes") {
        const long n = parse_int(key, v);
        if (n < 0) throw ConfigError("radial_nodes must be positive");
        radial_nodes = static_cast<std::size_t>(n);
    } else if (key == "gs_tol") {
        gs_tol = parse_double(key, v);
    } else if (key == "n_pairs") {
        n_pairs = static_cast<int>(parse_int(key, v));
    } else if (key == "bs_levels") {
        bs_levels = static_cast<int>(parse_int(key, v));
    } else if (key == "out") {
        out = v;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void StudyConfig::apply(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void StudyConfig::validate() const {
    if (d && (*d < 1 || *d > 3)) throw ConfigError("d must be 1, 2 or 3");
    const auto list = eps_list();
    if (list.empty()) throw ConfigError("eps list is empty");
    if (N < 0 || N > 4) throw ConfigError("N must lie in 0..4");
    if (!(y_min <= -15.0)) throw ConfigError("y_min must be <= -15");
    if (!(y_max >= 30.0)) throw ConfigError("y_max must be >= 30");
    if (nodes < 2000) throw ConfigError("nodes must be >= 2000");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (!(gs_tol > 0.0)) throw ConfigError("gs_tol must be positive");
    if (radial_nodes < 3) throw ConfigError("radial_nodes must be >= 3");
    if (n_pairs < 1) throw ConfigError("n_pairs must be >= 1");
    if (bs_levels < 1) throw ConfigError("bs_levels must be >= 1");
    const double h = r_max / static_cast<double>(radial_nodes - 1);
    for (double e : list) {
        if (!(e > 0.0 && e <= 0.5)) throw ConfigError("every eps must lie in (0, 0.5]");
        const double e23 = std::cbrt(e * e);
        if (r_max < std::max(2.0, 1.0 + 6.0 * e23))
            throw ConfigError("r_max too small for eps=" + std::to_string(e) + " (need >= max(2, 1 + 6 eps^{2/3}))");
        if (h > e23 / 20.0)
            throw ConfigError("radial grid does not resolve the layer at eps=" + std::to_string(e) +
                              " (need 20 nodes per eps^{2/3})");
        // the composite seed is evaluated on the Painleve grid
        if (1.0 / e23 > y_max) throw ConfigError("y_max must cover y = eps^{-2/3} for eps=" + std::to_string(e));
    }
    std::vector<double> sorted = list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ConfigError("eps list has duplicates");
}

StudyConfig parse_config(const std::string& text, StudyConfig base) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        try {
            base.apply(t);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

StudyConfig load_config(const std::filesystem::path& path, StudyConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

}  // namespace tfp::cli
