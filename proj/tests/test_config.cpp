#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pduforge/config.hpp"
#include "pduforge/device.hpp"

using namespace pduforge::device;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> problems_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.problems();
    }
    return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
    for (const auto& p : problems)
        if (p.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("shipped configs load cleanly") {
    for (const char* name : {"/calibration.cfg", "/first_principles.cfg"}) {
        const auto loaded = load_config_file(std::string(PDUFORGE_CONFIG_DIR) + name);
        CHECK(loaded.config.radius == doctest::Approx(30e-6));
        CHECK(loaded.config.lambda_i == doctest::Approx(1311.29e-9));
        CHECK(check_config(loaded.config).size() == loaded.warnings.size());
    }
}

TEST_CASE("empty config names the missing keys") {
    const auto p = problems_of("");
    REQUIRE_FALSE(p.empty());
    CHECK(mentions(p, "missing keys"));
    CHECK(mentions(p, "radius"));
    CHECK(mentions(p, "chi2"));
}

TEST_CASE("bad lines are reported with their line number") {
    const auto base = slurp(PDUFORGE_CONFIG_DIR "/calibration.cfg");
    auto p = problems_of(base + "colour = blue\n");
    CHECK(mentions(p, "colour"));
    p = problems_of(base + "radius = 1e-6\n");
    CHECK(mentions(p, "radius"));
    p = problems_of(base + "justtext\n");
    CHECK(p.size() == 1);
    p = problems_of(base + "a_p = 1e-12x\n");
    CHECK(p.size() >= 1);
    CHECK(problems_of(base).empty());
}

TEST_CASE("hard range checks") {
    auto cfg = load_config_file(PDUFORGE_CONFIG_DIR "/calibration.cfg").config;
    cfg.radius = -1;
    CHECK_THROWS_AS(check_config(cfg), ConfigError);
    cfg = load_config_file(PDUFORGE_CONFIG_DIR "/calibration.cfg").config;
    cfg.n_s0 = 0.9;
    CHECK_THROWS_AS(check_config(cfg), ConfigError);
}

TEST_CASE("energy conservation is a warning") {
    auto cfg = load_config_file(PDUFORGE_CONFIG_DIR "/calibration.cfg").config;
    CHECK(check_config(cfg).empty());
    cfg.lambda_s = 1200e-9;
    const auto w = check_config(cfg);
    CHECK(w.size() == 1);
}

TEST_CASE("explicit indices win over the Sellmeier model") {
    const auto fp_text = slurp(PDUFORGE_CONFIG_DIR "/first_principles.cfg");
    const auto fp = parse_config(fp_text).config;
    REQUIRE(fp.sellmeier.has_value());
    CHECK(fp.n_sfg1 == doctest::Approx(sellmeier_index(*fp.sellmeier, fp.lambda_sfg1)));
    const auto overridden = parse_config(fp_text + "n_sfg1 = 2.5\n").config;
    CHECK(overridden.n_sfg1 == 2.5);
}

TEST_CASE("reference wavelengths default to the idler") {
    std::string text = slurp(PDUFORGE_CONFIG_DIR "/calibration.cfg");
    for (const char* key : {"lambda_q_ref", "lambda_slm_ref"}) {
        const auto pos = text.find(key);
        REQUIRE(pos != std::string::npos);
        text.erase(pos, text.find('\n', pos) - pos);
    }
    const auto cfg = parse_config(text).config;
    CHECK(cfg.lambda_q_ref == cfg.lambda_i);
    CHECK(cfg.lambda_slm_ref == cfg.lambda_i);
}
