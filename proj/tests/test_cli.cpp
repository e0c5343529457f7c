#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pduforge/cli.hpp"

namespace fs = std::filesystem;
using pduforge::cli::run;

namespace {

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

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(PDUFORGE_TEST_TMP) / "cli";
    fs::create_directories(dir);
    const auto p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

const std::string kCalibration = PDUFORGE_CONFIG_DIR "/calibration.cfg";

}  // namespace

TEST_CASE("design summary") {
    const auto r = invoke({"design", "--config", kCalibration, "--summary"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Q_SLM: 2.7e+04") != std::string::npos);
    CHECK(r.out.find("Q_DPDC: 4.11e+07") != std::string::npos);
    CHECK(r.out.find("P_DPUC_SFG1: 8 mW") != std::string::npos);
    const auto raw = invoke({"design", "--config", kCalibration, "--summary", "--raw"});
    CHECK(raw.out.find("Q_SLM: 2.7e+04") == std::string::npos);
}

TEST_CASE("design sweeps") {
    auto r = invoke({"design", "--config", kCalibration, "--sweep", "eta_pdc", "--qmin", "1e5", "--qmax", "2e8",
                     "--points", "500"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 501);

    const auto path = scratch("puc.csv");
    r = invoke({"design", "--config", kCalibration, "--sweep", "eta_puc", "--points", "7", "--lpoints", "9", "--out",
                path.string()});
    REQUIRE(r.code == 0);
    const auto csv = slurp(path);
    CHECK(csv.starts_with("power_w,length_m,eta\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 64);

    r = invoke({"design", "--config", kCalibration, "--sweep", "eta_puc", "--out", path.string()});
    CHECK(r.code == 2);
    r = invoke({"design", "--config", kCalibration, "--sweep", "eta_puc", "--out", path.string(), "--force"});
    CHECK(r.code == 0);
}

TEST_CASE("design input errors exit 2") {
    const auto empty = scratch("empty.cfg");
    write(empty, "");
    auto r = invoke({"design", "--config", empty.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing keys") != std::string::npos);
    r = invoke({"design", "--config", (fs::path(PDUFORGE_TEST_TMP) / "nope.cfg").string()});
    CHECK(r.code == 2);
    r = invoke({"design"});
    CHECK(r.code == 2);
    r = invoke({"frobnicate"});
    CHECK(r.code == 2);
    r = invoke({"design", "--config", kCalibration, "--sweep", "bogus"});
    CHECK(r.code == 2);
}

TEST_CASE("generate and simulate") {
    auto r = invoke({"generate", "fock", "--stages", "2"});
    REQUIRE(r.code == 0);
    std::size_t pdus = 0;
    for (std::size_t pos = 0; (pos = r.out.find("\npdu ", pos)) != std::string::npos; ++pos) ++pdus;
    CHECK(pdus == 3);

    const auto fock1 = scratch("fock1.net");
    REQUIRE(invoke({"generate", "fock", "--stages", "1", "--out", fock1.string()}).code == 0);
    r = invoke({"simulate", fock1.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("photons: {2: 1.000000}") != std::string::npos);
    CHECK(r.out.find("success_probability: 1.000000") != std::string::npos);

    const auto ghz = scratch("ghz.net");
    REQUIRE(invoke({"generate", "ghz", "--stages", "2", "--phi", "0", "--out", ghz.string()}).code == 0);
    r = invoke({"simulate", ghz.string(), "--target", "ghz:4:0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("fidelity: 1.000000") != std::string::npos);
    CHECK(invoke({"simulate", ghz.string(), "--target", "ghz:4:0"}).out == r.out);
    CHECK(invoke({"simulate", ghz.string(), "--target", "ghz:3:0"}).code == 2);

    const auto cluster = scratch("cluster.net");
    REQUIRE(invoke({"generate", "cluster4", "--out", cluster.string()}).code == 0);
    r = invoke({"simulate", cluster.string(), "--target", "cluster4", "--postselect"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("fidelity: 1.000000") != std::string::npos);
    CHECK(r.out.find("leakage: 0.000000") != std::string::npos);

    CHECK(invoke({"generate", "fock", "--stages", "0"}).code == 2);
    CHECK(invoke({"generate", "ghz", "--eta-pdc", "1.5"}).code == 2);
    CHECK(invoke({"generate", "teleporter"}).code == 2);
    CHECK(invoke({"generate", "fock", "--out", fock1.string()}).code == 2);
}

TEST_CASE("simulate error surfaces") {
    const auto doubled = scratch("double.net");
    write(doubled, "mode 0 p pump\nmode 1 s pump\nmode 2 i pump\nsource 0\nsource 0\npdu 0 1 2 1 1 1\n");
    auto r = invoke({"simulate", doubled.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("pdu") != std::string::npos);
    CHECK(r.err.find("line 6") != std::string::npos);

    const auto broken = scratch("broken.net");
    write(broken, "mode 0 p pump\nwat\n");
    r = invoke({"simulate", broken.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);

    const auto reused = scratch("reused.net");
    write(reused, "mode 0 p pump\nmode 1 s pump\nmode 2 i pump\nsource 0\npdu 0 1 2 1 1 1\nphase 0 1\n");
    CHECK(invoke({"simulate", reused.string()}).code == 2);
    CHECK(invoke({"simulate", (fs::path(PDUFORGE_TEST_TMP) / "missing.net").string()}).code == 2);
}

TEST_CASE("terms CSV") {
    const auto net = scratch("terms.net");
    REQUIRE(invoke({"generate", "ghz", "--stages", "1", "--out", net.string()}).code == 0);
    const auto csv = scratch("terms.csv");
    REQUIRE(invoke({"simulate", net.string(), "--terms-csv", csv.string()}).code == 0);
    const auto text = slurp(csv);
    CHECK(text.starts_with("occupation,re,im,probability\n"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
