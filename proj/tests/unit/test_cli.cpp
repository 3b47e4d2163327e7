#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tfp_cli/commands.hpp"
#include "tfp_cli/config.hpp"

namespace fs = std::filesystem;
using tfp::cli::run;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("tfp_test_" + name)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> summary(const fs::path& p) {
    std::map<std::string, std::string> kv;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return kv;
}

std::string first_line(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::string line;
    std::getline(in, line);
    return line;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto c = tfp::cli::parse_config("# comment\n\nd=2\neps=0.1,0.05\nN=1\n");
    CHECK(c.d == 2);
    CHECK(c.eps_list() == std::vector<double>{0.1, 0.05});
    CHECK(c.N == 1);
    try {
        tfp::cli::parse_config("d=1\n\nbogus=3\n");
        FAIL("expected ConfigError");
    } catch (const tfp::cli::ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    tfp::cli::StudyConfig bad;
    bad.apply("eps=0.7");
    CHECK_THROWS_AS(bad.validate(), tfp::cli::ConfigError);
    CHECK_THROWS_AS(bad.apply("N=x"), tfp::cli::ConfigError);
}

TEST_CASE("configuration errors exit with 1 and write nothing") {
    TempDir dir("badkey");
    const auto r = invoke({"painleve", "foo=1", "out=" + dir.path.string()});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(dir.path));
    CHECK(invoke({"study", "eps=0.1", "out=" + dir.path.string()}).code == 1);
    CHECK(invoke({"spectrum", "d=2", "out=" + dir.path.string()}).code == 1);
    CHECK(invoke({"groundstate", "d=1", "eps=0.7", "out=" + dir.path.string()}).code == 1);
    CHECK(invoke({"nosuch"}).code == 1);
}

TEST_CASE("solver failures exit with 2 and name the stage") {
    TempDir dir("solverfail");
    const auto r = invoke({"painleve", "tol=1e-30", "out=" + dir.path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("painleve") != std::string::npos);
}

TEST_CASE("painleve command summary") {
    TempDir dir("painleve");
    REQUIRE(invoke({"painleve", "--plots", "--out", dir.path.string()}).code == 0);
    const auto kv = summary(dir.path / "summary.txt");
    CHECK(std::stod(kv.at("w_min")) > 0.0);
    CHECK(std::stod(kv.at("painleve_residual")) <= 1e-10);
    CHECK(slurp(dir.path / "painleve.svg").rfind("<svg", 0) == 0);
    CHECK(first_line(dir.path / "painleve.csv").rfind("y,", 0) == 0);
}

TEST_CASE("config file and overrides") {
    TempDir dir("cfgfile");
    fs::create_directories(dir.path);
    const auto cfg = dir.path / "run.cfg";
    std::ofstream(cfg) << "# bs run\nbs_levels = 4\n";
    REQUIRE(invoke({"bs", "--config", cfg.string(), "out=" + (dir.path / "o").string()}).code == 0);
    CHECK(first_line(dir.path / "o" / "bs.csv") == "n,mu_bs,mu_m0,rel_err");
    std::ofstream(cfg) << "bs_levels = 4\nwhat = 1\n";
    const auto r = invoke({"bs", "--config", cfg.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("study output is independent of the thread count") {
    TempDir a("threads1"), b("threads4");
    setenv("TFP_THREADS", "1", 1);
    REQUIRE(invoke({"study", "d=1", "eps=0.1,0.05,0.025", "N=2", "--plots", "out=" + a.path.string()}).code == 0);
    setenv("TFP_THREADS", "4", 1);
    REQUIRE(invoke({"study", "d=1", "eps=0.1,0.05,0.025", "N=2", "out=" + b.path.string()}).code == 0);
    unsetenv("TFP_THREADS");
    for (const char* f : {"painleve.csv", "corrections.csv", "remainder.csv", "scaling.csv", "m0.csv", "decay.csv",
                          "bs.csv"}) {
        CAPTURE(f);
        CHECK(slurp(a.path / f) == slurp(b.path / f));
    }
    CHECK(first_line(a.path / "remainder.csv") == "eps,err,order");
    CHECK(first_line(a.path / "scaling.csv") ==
          "eps,n,lambda_odd,lambda_even,scaled_odd,scaled_even,mu_n,pair_gap");
    CHECK(first_line(a.path / "m0.csv") == "n,mu");
    CHECK(first_line(a.path / "decay.csv") == "m,c_value,c_derivative");
    for (const char* f : {"profiles.svg", "remainder.svg", "scaling.svg", "bs.svg"})
        CHECK(slurp(a.path / f).rfind("<svg", 0) == 0);

    const auto kv = summary(a.path / "summary.txt");
    CHECK(std::stod(kv.at("order[eps=0.025]")) == doctest::Approx(7.0 / 3.0).epsilon(0.3 / (7.0 / 3.0)));
}
