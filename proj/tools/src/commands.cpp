#include "tfp_cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "tfp/corrections.hpp"
#include "tfp/csv.hpp"
#include "tfp/groundstate.hpp"
#include "tfp/painleve.hpp"
#include "tfp/semiclassics.hpp"
#include "tfp/spectrum.hpp"
#include "tfp_cli/svg.hpp"

namespace fs = std::filesystem;

namespace tfp::cli {

namespace {

struct StageFailure : std::runtime_error {
    StageFailure(std::string stage_, const std::string& what)
        : std::runtime_error(what), stage(std::move(stage_)) {}
    std::string stage;
};

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw StageFailure(name, e.what());
    }
}

class Summary {
public:
    void add(const std::string& key, double v) { lines_.push_back(key + " = " + format_number(v)); }
    void add(const std::string& key, const std::string& v) { lines_.push_back(key + " = " + v); }
    void write(const fs::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        for (const auto& l : lines_) out << l << '\n';
    }

private:
    std::vector<std::string> lines_;
};

std::string eps_tag(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", eps);
    return buf;
}

std::vector<double> column(const CsvTable& t, std::size_t c) {
    std::vector<double> v;
    for (std::size_t i = 0; i < t.rows(); ++i) v.push_back(t.row(i)[c]);
    return v;
}

PainleveSolution painleve_stage(const StudyConfig& c) {
    return stage("painleve", [&] {
        PainleveOptions o;
        o.y_min = c.y_min;
        o.y_max = c.y_max;
        o.n_nodes = c.nodes;
        o.tol = c.tol;
        return solve_hastings_mcleod(o);
    });
}

CorrectionSet corrections_stage(const PainleveSolution& sol, const StudyConfig& c) {
    return stage("corrections", [&] { return build_corrections(sol, c.dimension(), c.N); });
}

StudyGrid study_grid(const RunOptions& opts) {
    StudyGrid g;
    g.r_max = opts.config.r_max;
    g.n_nodes = opts.config.radial_nodes;
    g.tol = opts.config.gs_tol;
    g.workers = opts.workers;
    return g;
}

void painleve_outputs(const PainleveSolution& sol, const RunOptions& opts, Summary& summary) {
    const auto table = painleve_table(sol);
    table.write(opts.config.out / "painleve.csv");
    const auto wm = stage("painleve", [&] { return w0_min(sol); });
    summary.add("nu0_at_0", sol.nu0_at(0.0));
    summary.add("w_min", wm.value);
    summary.add("w_min_location", wm.location);
    summary.add("painleve_residual", sol.residual_max());
    summary.add("painleve_iterations", static_cast<double>(sol.iterations()));
    if (opts.plots) {
        SvgPlot p("Hastings-McLeod solution", "y", "value");
        p.add_series("nu0", column(table, 0), column(table, 1));
        p.add_series("W0", column(table, 0), column(table, 3));
        p.write(opts.config.out / "painleve.svg");
    }
}

std::vector<GroundState> groundstate_outputs(const PainleveSolution& sol, const CorrectionSet& set,
                                             const RunOptions& opts, Summary& summary, bool write_profiles) {
    const auto& c = opts.config;
    const auto eps = c.eps_list();
    auto states = stage("groundstate", [&] { return solve_ground_states(eps, c.dimension(), sol, set, study_grid(opts)); });
    std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) { return a.eps > b.eps; });

    const auto study = stage("remainder", [&] { return remainder_study(states, sol, set, c.N); });
    remainder_table(study).write(c.out / "remainder.csv");
    summary.add("predicted_order", study.predicted_order);

    std::optional<SvgPlot> profiles;
    if (opts.plots) profiles.emplace("Ground-state profiles", "r", "eta");
    for (const auto& gs : states) {
        const std::string tag = eps_tag(gs.eps);
        summary.add("energy[eps=" + tag + "]", gs.energy);
        summary.add("residual[eps=" + tag + "]", gs.residual_max);
        summary.add("continuation[eps=" + tag + "]", gs.via_continuation ? "yes" : "no");
        if (write_profiles) {
            const auto t = profile_table(gs, sol, set);
            t.write(c.out / ("profile_eps" + tag + ".csv"));
        }
        if (profiles) {
            const auto r = gs.grid.nodes();
            profiles->add_series("eps=" + tag, std::vector<double>(r.begin(), r.end()), gs.eta);
        }
    }
    for (const auto& r : study.rows) summary.add("order[eps=" + eps_tag(r.eps) + "]", r.order);
    if (opts.plots) {
        profiles->write(c.out / "profiles.svg");
        SvgPlot p("Remainder sup-norm", "eps", "err", true, true);
        std::vector<double> xs, ys;
        for (const auto& r : study.rows) xs.push_back(r.eps), ys.push_back(r.err);
        p.add_series("N=" + std::to_string(c.N), xs, ys);
        p.write(c.out / "remainder.svg");
    }
    return states;
}

void spectrum_outputs(const PainleveSolution& sol, std::span<const GroundState> states, const RunOptions& opts,
                      Summary& summary) {
    const auto& c = opts.config;
    const auto m0 = stage("spectrum", [&] { return m0_spectrum(sol, static_cast<std::size_t>(std::max(c.n_pairs, 8)), true); });
    {
        CsvTable t({"n", "mu"});
        for (std::size_t i = 0; i < m0.eigenvalues.size(); ++i)
            t.add_row({static_cast<double>(i + 1), m0.eigenvalues[i]});
        t.write(c.out / "m0.csv");
    }
    const auto decay = stage("spectrum", [&] { return decay_check(m0, sol); });
    {
        CsvTable t({"m", "c_value", "c_derivative"});
        for (const auto& d : decay) t.add_row({static_cast<double>(d.m), d.c_value, d.c_derivative});
        t.write(c.out / "decay.csv");
    }
    std::vector<double> mu(m0.eigenvalues.begin(), m0.eigenvalues.begin() + c.n_pairs);
    const auto rows = stage("spectrum", [&] { return scaling_study(states, mu, opts.workers); });
    scaling_table(rows).write(c.out / "scaling.csv");
    for (const auto& r : rows)
        if (r.n == 1) summary.add("scaled_odd_n1[eps=" + eps_tag(r.eps) + "]", r.scaled_odd);
    summary.add("mu_1", mu.front());
    if (opts.plots) {
        SvgPlot p("Scaled L+ eigenvalues", "eps", "lambda / eps^(2/3)", true, false);
        for (int n = 1; n <= c.n_pairs; ++n) {
            std::vector<double> xs, odd, even, lim;
            for (const auto& r : rows)
                if (r.n == n) xs.push_back(r.eps), odd.push_back(r.scaled_odd), even.push_back(r.scaled_even),
                              lim.push_back(r.mu_n);
            p.add_series("odd n=" + std::to_string(n), xs, odd);
            p.add_series("even n=" + std::to_string(n), xs, even);
            p.add_series("mu_" + std::to_string(n), xs, lim);
        }
        p.write(c.out / "scaling.svg");
    }
}

void bs_outputs(const PainleveSolution& sol, const RunOptions& opts, Summary& summary) {
    const auto& c = opts.config;
    const auto rows = stage("bs", [&] {
        const auto mu = m0_spectrum(sol, static_cast<std::size_t>(c.bs_levels)).eigenvalues;
        return bs_comparison(PotentialProfile::from_painleve(sol), mu);
    });
    bs_table(rows).write(c.out / "bs.csv");
    summary.add("bs_rel_err_last", rows.back().rel_err);
    if (opts.plots) {
        SvgPlot p("Bohr-Sommerfeld vs M0", "n", "relative error", false, true);
        std::vector<double> xs, ys;
        for (const auto& r : rows) xs.push_back(r.n), ys.push_back(r.rel_err);
        p.add_series("rel_err", xs, ys);
        p.write(c.out / "bs.svg");
    }
}

void prepare(const RunOptions& opts) {
    opts.config.validate();
    fs::create_directories(opts.config.out);
}

template <typename Body>
int guarded(const RunOptions& opts, std::ostream& err, Body&& body) {
    try {
        prepare(opts);
    } catch (const ConfigError& e) {
        err << "tfp: configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const fs::filesystem_error& e) {
        err << "tfp: cannot create output directory: " << e.what() << '\n';
        return exit_config;
    }
    try {
        Summary summary;
        body(summary);
        summary.write(opts.config.out / "summary.txt");
    } catch (const StageFailure& e) {
        err << "tfp: stage '" << e.stage << "' failed: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::exception& e) {
        err << "tfp: stage 'output' failed: " << e.what() << '\n';
        return exit_solver;
    }
    return exit_ok;
}

}  // namespace

std::size_t workers_from_env() {
    if (const char* s = std::getenv("TFP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_painleve(const RunOptions& opts, std::ostream& err) {
    return guarded(opts, err, [&](Summary& s) { painleve_outputs(painleve_stage(opts.config), opts, s); });
}

int cmd_groundstate(const RunOptions& opts, std::ostream& err) {
    return guarded(opts, err, [&](Summary& s) {
        const auto sol = painleve_stage(opts.config);
        const auto set = corrections_stage(sol, opts.config);
        corrections_table(set, sol).write(opts.config.out / "corrections.csv");
        groundstate_outputs(sol, set, opts, s, true);
    });
}

int cmd_spectrum(const RunOptions& opts, std::ostream& err) {
    if (opts.config.dimension() != 1) {
        err << "tfp: configuration error: spectrum needs d=1\n";
        return exit_config;
    }
    return guarded(opts, err, [&](Summary& s) {
        const auto sol = painleve_stage(opts.config);
        const auto set = corrections_stage(sol, opts.config);
        const auto states = stage("groundstate", [&] {
            return solve_ground_states(opts.config.eps_list(), 1, sol, set, study_grid(opts));
        });
        spectrum_outputs(sol, states, opts, s);
    });
}

int cmd_bs(const RunOptions& opts, std::ostream& err) {
    return guarded(opts, err, [&](Summary& s) { bs_outputs(painleve_stage(opts.config), opts, s); });
}

int cmd_study(const RunOptions& opts, std::ostream& err) {
    if (!opts.config.d || !opts.config.eps) {
        err << "tfp: configuration error: study requires d and eps\n";
        return exit_config;
    }
    return guarded(opts, err, [&](Summary& s) {
        const auto sol = painleve_stage(opts.config);
        painleve_outputs(sol, opts, s);
        const auto set = corrections_stage(sol, opts.config);
        corrections_table(set, sol).write(opts.config.out / "corrections.csv");
        const auto states = groundstate_outputs(sol, set, opts, s, false);
        if (opts.config.dimension() == 1)
            spectrum_outputs(sol, states, opts, s);
        else
            s.add("scaling", "skipped (d != 1)");
        bs_outputs(sol, opts, s);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thomas-Fermi boundary-layer and Painleve-II studies", "tfp"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool plots = false;
    std::vector<std::string> overrides;

    const std::map<std::string, int (*)(const RunOptions&, std::ostream&)> commands = {
        {"painleve", cmd_painleve}, {"groundstate", cmd_groundstate}, {"spectrum", cmd_spectrum},
        {"bs", cmd_bs},             {"study", cmd_study}};
    const std::map<std::string, std::string> help = {
        {"painleve", "Hastings-McLeod solution, W0 minimum"},
        {"groundstate", "radial ground states and remainder table"},
        {"spectrum", "L+ scaling study against M0 (d=1)"},
        {"bs", "Bohr-Sommerfeld eigenvalues of W0"},
        {"study", "full chain: painleve, corrections, ground states, scaling, BS"}};
    for (const auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", config_path, "key=value configuration file");
        sub->add_option("--out", out_dir, "output directory (overrides out=)");
        sub->add_flag("--plots", plots, "also write SVG plots");
        sub->add_option("overrides", overrides, "key=value settings");
    }

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "tfp: " << e.what() << '\n';
        return exit_config;
    }

    RunOptions opts;
    opts.plots = plots;
    opts.workers = workers_from_env();
    try {
        if (!config_path.empty()) opts.config = load_config(config_path);
        for (const auto& o : overrides) opts.config.apply(o);
        if (!out_dir.empty()) opts.config.out = out_dir;
    } catch (const ConfigError& e) {
        err << "tfp: configuration error: " << e.what() << '\n';
        return exit_config;
    }
    const auto* sub = app.get_subcommands().front();
    return commands.at(sub->get_name())(opts, err);
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace tfp::cli
