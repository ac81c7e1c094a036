#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "corput/campaign.hpp"

using namespace corput;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json small_envelope_config() {
    return nlohmann::json{
        {"campaign", "vdc_envelope"},
        {"amplitude", {{"name", "power_band_amplitude"}, {"params", {{"mu", 0.5}}}}},
        {"phase", {{"name", "quadratic_phase"}, {"params", {{"p0", 0.5}}}}},
        {"grid", {{"min", 1.0}, {"max", 100.0}, {"points", 8}}},
        {"output", {{"csv", "env.csv"}, {"verdict", "env.json"}}}};
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config validation errors") {
    auto cfg = small_envelope_config();
    cfg["grid"]["min"] = 0.0;
    CHECK_THROWS_WITH_AS(CampaignConfig::parse(cfg), "grid: invalid grid", ConfigError);

    cfg = small_envelope_config();
    cfg["grid"]["points"] = 4;
    CHECK_THROWS_AS(CampaignConfig::parse(cfg), ConfigError);

    cfg = small_envelope_config();
    cfg["amplitude"]["name"] = "no_such_amplitude";
    CHECK_THROWS_AS(CampaignConfig::parse(cfg), ConfigError);

    cfg = small_envelope_config();
    cfg.erase("phase");
    CHECK_THROWS_AS(CampaignConfig::parse(cfg), ConfigError);

    cfg = small_envelope_config();
    cfg["campaign"] = "unknown_kind";
    CHECK_THROWS_AS(CampaignConfig::parse(cfg), ConfigError);
}

TEST_CASE("vdc_envelope campaign: deterministic CSV, zero violations, exit 0") {
    const auto cfg = CampaignConfig::parse(small_envelope_config());
    const auto dir = fresh_dir("corput_campaign_det");
    RunOptions options;
    options.out_dir = dir.string();

    const auto first = run_campaign(cfg, options);
    CHECK(first.violations == 0);
    CHECK(first.flagged == 0);
    CHECK(first.exit_code() == 0);
    REQUIRE(first.constants.size() >= 1);
    CHECK(first.constants[0].value == doctest::Approx(10.0).epsilon(1e-12));
    const std::string csv_once = slurp(dir / "env.csv");

    const auto second = run_campaign(cfg, options);
    CHECK(second.violations == 0);
    CHECK(slurp(dir / "env.csv") == csv_once);

    CHECK(csv_once.rfind("omega,magnitude,quad_err,bound,ratio\n", 0) == 0);
    CHECK(std::count(csv_once.begin(), csv_once.end(), '\n') == 9);  // header + 8 samples

    const auto verdict = nlohmann::json::parse(slurp(dir / "env.json"));
    CHECK(verdict.at("violations").get<long>() == 0);
    CHECK(verdict.at("flagged").get<long>() == 0);
    CHECK(verdict.at("constants").size() >= 1);
    CHECK(verdict.contains("wall_ms"));
    CHECK(verdict.at("campaign").is_object());
}

TEST_CASE("vdc_envelope campaign: multi-threaded run matches single-threaded bytes") {
    const auto cfg = CampaignConfig::parse(small_envelope_config());
    const auto dir1 = fresh_dir("corput_campaign_t1");
    const auto dir2 = fresh_dir("corput_campaign_t2");
    RunOptions serial{dir1.string(), 1, 0};
    RunOptions parallel{dir2.string(), 2, 0};
    run_campaign(cfg, serial);
    run_campaign(cfg, parallel);
    CHECK(slurp(dir1 / "env.csv") == slurp(dir2 / "env.csv"));
}

TEST_CASE("decay_fit campaign: slope lands in the configured band") {
    nlohmann::json j{
        {"campaign", "decay_fit"},
        {"amplitude", {{"name", "power_band_amplitude"}, {"params", {{"mu", 1.0}}}}},
        {"phase", {{"name", "quadratic_phase"}, {"params", {{"p0", 0.0}}}}},
        {"grid", {{"min", 100.0}, {"max", 10000.0}, {"points", 24}}},
        {"fit", {{"expected_slope", -0.5}, {"slope_tol", 0.05}}},
        {"output", {{"csv", "fit.csv"}, {"verdict", "fit.json"}}}};
    const auto dir = fresh_dir("corput_campaign_fit");
    const auto verdict = run_campaign(CampaignConfig::parse(j), RunOptions{dir.string(), 2, 0});
    CHECK(verdict.exit_code() == 0);
    REQUIRE(verdict.fits.size() == 1);
    CHECK(std::abs(verdict.fits[0].slope + 0.5) < 0.05);

    j["fit"]["expected_slope"] = -2.0;  // out-of-band fit must fail the run
    const auto failing = run_campaign(CampaignConfig::parse(j), RunOptions{dir.string(), 2, 0});
    CHECK(failing.exit_code() == 1);
}

TEST_CASE("p0_sweep campaign: one constant bounds every sweep") {
    nlohmann::json j{
        {"campaign", "p0_sweep"},
        {"amplitude", {{"name", "power_band_amplitude"}, {"params", {{"mu", 0.5}}}}},
        {"phase", {{"name", "quadratic_phase"}}},
        {"grid", {{"min", 1.0}, {"max", 100.0}, {"points", 8}}},
        {"p0_grid", {{"min", -1.0}, {"max", 2.0}, {"points", 5}}},
        {"output", {{"csv", "sweep.csv"}, {"verdict", "sweep.json"}}}};
    const auto dir = fresh_dir("corput_campaign_sweep");
    const auto verdict = run_campaign(CampaignConfig::parse(j), RunOptions{dir.string(), 2, 0});
    CHECK(verdict.violations == 0);
    CHECK(verdict.exit_code() == 0);
    const std::string csv = slurp(dir / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5 * 8);
}

TEST_CASE("exit-code contract") {
    VerdictReport verdict;
    CHECK(verdict.exit_code() == 0);
    verdict.flagged = 2;
    CHECK(verdict.exit_code() == 3);  // numerical non-convergence only
    verdict.violations = 1;
    CHECK(verdict.exit_code() == 1);  // violations take precedence
    verdict.violations = 0;
    verdict.flagged = 0;
    verdict.fits_in_band = false;
    CHECK(verdict.exit_code() == 1);
}

TEST_CASE("CORPUT_OUT_DIR provides the default output root") {
    const auto dir = fresh_dir("corput_campaign_env");
    setenv("CORPUT_OUT_DIR", dir.string().c_str(), 1);
    run_campaign(CampaignConfig::parse(small_envelope_config()), RunOptions{});
    unsetenv("CORPUT_OUT_DIR");
    CHECK(std::filesystem::exists(dir / "env.csv"));
    CHECK(std::filesystem::exists(dir / "env.json"));
}

TEST_CASE("CSV numbers carry full precision") {
    const auto dir = fresh_dir("corput_campaign_fmt");
    run_campaign(CampaignConfig::parse(small_envelope_config()), RunOptions{dir.string(), 1, 0});
    const std::string csv = slurp(dir / "env.csv");
    std::istringstream lines(csv);
    std::string header, first_row;
    std::getline(lines, header);
    std::getline(lines, first_row);
    CHECK(header == "omega,magnitude,quad_err,bound,ratio");

    std::vector<std::string> fields;
    std::istringstream row(first_row);
    for (std::string field; std::getline(row, field, ',');) fields.push_back(field);
    REQUIRE(fields.size() == 5);
    CHECK(fields[0] == "1");  // shortest exact representation, '.' decimal
    CHECK(std::stod(fields[3]) == doctest::Approx(10.0).epsilon(1e-11));
    CHECK(fields[1].size() >= 16);  // 17 significant digits survive
    CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("dispersive_cone campaign: no violations on the parabolic band case") {
    nlohmann::json j{
        {"campaign", "dispersive_cone"},
        {"datum", {{"name", "band_datum"}, {"params", {{"mu", 0.5}}}}},
        {"symbol", {{"name", "schrodinger_symbol"}}},
        {"band_cone", {{"q1", -1.0}, {"q2", 2.0}}},
        {"grid", {{"min", 1.0}, {"max", 10.0}, {"points", 8}}},
        {"rays", {{"inside", 17}, {"outside", 8}}},
        {"output", {{"csv", "cone.csv"}, {"verdict", "cone.json"}}}};
    const auto dir = fresh_dir("corput_campaign_cone");
    const auto verdict = run_campaign(CampaignConfig::parse(j), RunOptions{dir.string(), 2, 0});
    CHECK(verdict.violations == 0);
    CHECK(verdict.flagged == 0);
    const std::string csv = slurp(dir / "cone.csv");
    CHECK(csv.rfind("t,velocity,magnitude,bound,inside_cone\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8 * (17 + 8));
}
