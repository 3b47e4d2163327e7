#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfp::cli {

/// Rejected configuration (unknown key, malformed or out-of-range value).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// key=value study configuration. `d` and `eps` stay unset unless given so
/// that `study` can insist on them.
struct StudyConfig {
    std::optional<int> d;
    std::optional<std::vector<double>> eps;
    int N = 2;

    // Painleve grid
    double y_min = -20.0;
    double y_max = 40.0;
    std::size_t nodes = 6001;
    double tol = 1e-10;

    // radial grid
    double r_max = 2.5;
    std::size_t radial_nodes = 20001;
    double gs_tol = 1e-9;

    int n_pairs = 3;
    int bs_levels = 8;

    std::filesystem::path out = "tfp_out";

    int dimension() const { return d.value_or(1); }
    std::vector<double> eps_list() const;

    /// Applies one key=value pair; throws ConfigError on unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    /// Applies a whole "key=value" token.
    void apply(const std::string& assignment);

    /// Checks every value against the solver preconditions.
    void validate() const;

    static std::vector<std::string> keys();
};

/// Parses key=value lines; blank lines and lines starting with '#' are skipped.
StudyConfig parse_config(const std::string& text, StudyConfig base = {});
StudyConfig load_config(const std::filesystem::path& path, StudyConfig base = {});

}  // namespace tfp::cli
