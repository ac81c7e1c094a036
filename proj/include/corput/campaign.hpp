#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "corput/catalog.hpp"
#include "corput/certificates.hpp"
#include "corput/decay_fit.hpp"
#include "corput/dispersive.hpp"

namespace corput {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CampaignKind {
    vdc_envelope,
    p0_sweep,
    decay_fit,
    dispersive_cone,
    linfty_global,
    concentration,
    optimality,
};

inline std::string to_string(CampaignKind kind) {
    switch (kind) {
        case CampaignKind::vdc_envelope: return "vdc_envelope";
        case CampaignKind::p0_sweep: return "p0_sweep";
        case CampaignKind::decay_fit: return "decay_fit";
        case CampaignKind::dispersive_cone: return "dispersive_cone";
        case CampaignKind::linfty_global: return "linfty_global";
        case CampaignKind::concentration: return "concentration";
        case CampaignKind::optimality: return "optimality";
    }
    return "unknown";
}

struct GridSpec {
    double min = 1.0;
    double max = 10.0;
    int points = 8;
};

struct CatalogRef {
    std::string name;
    CatalogParams params;
};

struct CampaignConfig {
    CampaignKind kind = CampaignKind::vdc_envelope;
    std::optional<CatalogRef> amplitude;
    std::optional<CatalogRef> phase;
    std::optional<CatalogRef> datum;
    std::optional<CatalogRef> symbol;
    GridSpec grid;
    GridSpec p0_grid{-1.0, 2.0, 21};
    double q1 = -1.0, q2 = 2.0;
    int inside_rays = 33;
    int outside_rays = 16;
    double window_pad = 5.0;
    double offcone_margin = 0.1;
    std::pair<double, double> velocity_window{-6.0, 6.0};
    double expected_slope = -0.5;
    double slope_tol = 0.05;
    std::optional<double> tol;
    std::string csv_path;
    std::string verdict_path;
    nlohmann::json echo;

    static CampaignConfig parse(const nlohmann::json& j);
    static CampaignConfig parse_file(const std::string& path);
};

struct FitRecord {
    std::string name;
    double slope = 0.0;
    double stderr_slope = 0.0;
};

struct ConstantRecord {
    std::string name;
    double value = 0.0;
    std::string theorem;
};

struct VerdictReport {
    std::string campaign;
    long violations = 0;
    long flagged = 0;
    std::vector<FitRecord> fits;
    std::vector<ConstantRecord> constants;
    long long wall_ms = 0;
    bool fits_in_band = true;

    int exit_code() const {
        if (violations > 0 || !fits_in_band) return 1;
        if (flagged > 0) return 3;
        return 0;
    }
};

struct RunOptions {
    std::string out_dir;  // empty: CORPUT_OUT_DIR env var, then the working directory
    int threads = 1;
    long long seed = 0;  // reserved; campaigns are deterministic
};

namespace detail {

inline std::string format_sig17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

template <class Fn>
void parallel_for(size_t n, int threads, const Fn& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(threads, static_cast<int>(n));
    pool.reserve(static_cast<size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::filesystem::path resolve_out_dir(const RunOptions& options) {
    if (!options.out_dir.empty()) return options.out_dir;
    if (const char* env = std::getenv("CORPUT_OUT_DIR"); env && *env) return env;
    return std::filesystem::current_path();
}

inline GridSpec parse_grid(const nlohmann::json& j, const char* where) {
    if (!j.is_object() || !j.contains("min") || !j.contains("max") || !j.contains("points"))
        throw ConfigError(std::string(where) + ": grid needs min, max, points");
    GridSpec g{j.at("min").get<double>(), j.at("max").get<double>(), j.at("points").get<int>()};
    if (!(g.min > 0.0) || !(g.max > g.min) || g.points < 8)
        throw ConfigError(std::string(where) + ": invalid grid");
    return g;
}

inline CatalogRef parse_catalog_ref(const nlohmann::json& j, const char* where) {
    if (!j.is_object() || !j.contains("name"))
        throw ConfigError(std::string(where) + ": needs a catalog name");
    CatalogRef ref;
    ref.name = j.at("name").get<std::string>();
    try {
        catalog_entry(ref.name);  // unknown names are config errors
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("params"))
        for (const auto& [key, value] : j.at("params").items()) ref.params[key] = value.get<double>();
    return ref;
}

struct CsvTable {
    std::string header;
    std::vector<std::string> rows;

    std::string render() const {
        std::string out = header;
        out.push_back('\n');
        for (const auto& row : rows) {
            out += row;
            out.push_back('\n');
        }
        return out;
    }
};

}  // namespace detail

inline CampaignConfig CampaignConfig::parse(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("campaign")) throw ConfigError("config: missing campaign kind");
    CampaignConfig cfg;
    cfg.echo = j;
    const std::string kind = j.at("campaign").get<std::string>();
    if (kind == "vdc_envelope") cfg.kind = CampaignKind::vdc_envelope;
    else if (kind == "p0_sweep") cfg.kind = CampaignKind::p0_sweep;
    else if (kind == "decay_fit") cfg.kind = CampaignKind::decay_fit;
    else if (kind == "dispersive_cone") cfg.kind = CampaignKind::dispersive_cone;
    else if (kind == "linfty_global") cfg.kind = CampaignKind::linfty_global;
    else if (kind == "concentration") cfg.kind = CampaignKind::concentration;
    else if (kind == "optimality") cfg.kind = CampaignKind::optimality;
    else throw ConfigError("config: unknown campaign kind '" + kind + "'");

    if (j.contains("amplitude")) cfg.amplitude = detail::parse_catalog_ref(j.at("amplitude"), "amplitude");
    if (j.contains("phase")) cfg.phase = detail::parse_catalog_ref(j.at("phase"), "phase");
    if (j.contains("datum")) cfg.datum = detail::parse_catalog_ref(j.at("datum"), "datum");
    if (j.contains("symbol")) cfg.symbol = detail::parse_catalog_ref(j.at("symbol"), "symbol");
    if (j.contains("grid")) cfg.grid = detail::parse_grid(j.at("grid"), "grid");
    else throw ConfigError("config: missing grid");
    if (j.contains("p0_grid")) {
        const auto& g = j.at("p0_grid");
        if (!g.contains("min") || !g.contains("max") || !g.contains("points"))
            throw ConfigError("p0_grid: needs min, max, points");
        cfg.p0_grid = GridSpec{g.at("min").get<double>(), g.at("max").get<double>(),
                               g.at("points").get<int>()};
        if (!(cfg.p0_grid.max > cfg.p0_grid.min) || cfg.p0_grid.points < 2)
            throw ConfigError("p0_grid: invalid grid");
    }
    if (j.contains("band_cone")) {
        cfg.q1 = j.at("band_cone").at("q1").get<double>();
        cfg.q2 = j.at("band_cone").at("q2").get<double>();
        if (!(cfg.q1 < cfg.q2)) throw ConfigError("band_cone: requires q1 < q2");
    }
    if (j.contains("rays")) {
        const auto& r = j.at("rays");
        if (r.contains("inside")) cfg.inside_rays = r.at("inside").get<int>();
        if (r.contains("outside")) cfg.outside_rays = r.at("outside").get<int>();
        if (cfg.inside_rays < 16 || cfg.outside_rays < 2) throw ConfigError("rays: too few rays");
    }
    if (j.contains("velocity_window")) {
        cfg.velocity_window = {j.at("velocity_window").at("min").get<double>(),
                               j.at("velocity_window").at("max").get<double>()};
        if (!(cfg.velocity_window.first < cfg.velocity_window.second))
            throw ConfigError("velocity_window: requires min < max");
    }
    if (j.contains("window_pad")) cfg.window_pad = j.at("window_pad").get<double>();
    if (j.contains("offcone_margin")) cfg.offcone_margin = j.at("offcone_margin").get<double>();
    if (j.contains("fit")) {
        cfg.expected_slope = j.at("fit").at("expected_slope").get<double>();
        cfg.slope_tol = j.at("fit").at("slope_tol").get<double>();
        if (!(cfg.slope_tol > 0.0)) throw ConfigError("fit: slope_tol must be positive");
    }
    if (j.contains("tol")) {
        cfg.tol = j.at("tol").get<double>();
        if (!(*cfg.tol > 0.0)) throw ConfigError("config: tol must be positive");
    }
    const std::string stem = to_string(cfg.kind);
    cfg.csv_path = stem + ".csv";
    cfg.verdict_path = stem + ".json";
    if (j.contains("output")) {
        if (j.at("output").contains("csv")) cfg.csv_path = j.at("output").at("csv").get<std::string>();
        if (j.at("output").contains("verdict"))
            cfg.verdict_path = j.at("output").at("verdict").get<std::string>();
    }

    auto require = [&](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("config: campaign '") + kind + "' needs " + what);
    };
    switch (cfg.kind) {
        case CampaignKind::vdc_envelope:
        case CampaignKind::decay_fit:
            require(cfg.amplitude.has_value(), "an amplitude");
            require(cfg.phase.has_value(), "a phase");
            break;
        case CampaignKind::p0_sweep:
            require(cfg.amplitude.has_value(), "an amplitude");
            require(cfg.phase.has_value(), "a phase family");
            break;
        case CampaignKind::dispersive_cone:
        case CampaignKind::linfty_global:
        case CampaignKind::concentration:
        case CampaignKind::optimality:
            require(cfg.datum.has_value(), "a datum");
            require(cfg.symbol.has_value(), "a symbol");
            break;
    }
    return cfg;
}

inline CampaignConfig CampaignConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse(j);
}

namespace detail {

struct SampleRow {
    double magnitude = 0.0;
    double error = 0.0;
    bool converged = true;
};

inline void run_envelope_block(const SingularAmplitude& amp, const PhaseDescriptor& ph,
                               const BoundCertificate& cert, const std::vector<double>& omegas,
                               double tol, int threads, CsvTable& table, VerdictReport& verdict) {
    std::vector<SampleRow> rows(omegas.size());
    parallel_for(omegas.size(), threads, [&](size_t i) {
        const QuadratureResult q = oscillatory_integral(amp, ph, omegas[i], tol);
        rows[i] = SampleRow{std::abs(q.value), q.abs_error_estimate, q.converged};
    });
    for (size_t i = 0; i < omegas.size(); ++i) {
        const double measured = rows[i].magnitude + rows[i].error;
        const double bound = cert.bound_at(omegas[i]);
        const double ratio = bound > 0.0 ? measured / bound
                                         : (measured > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (ratio > 1.0) ++verdict.violations;
        if (!rows[i].converged) ++verdict.flagged;
        table.rows.push_back(format_sig17(omegas[i]) + "," + format_sig17(rows[i].magnitude) + "," +
                             format_sig17(rows[i].error) + "," + format_sig17(bound) + "," +
                             format_sig17(ratio));
    }
}

inline void push_cone_rows(const std::vector<RaySample>& samples, double t, double bound,
                           bool inside, CsvTable& table, VerdictReport& verdict) {
    for (const auto& s : samples) {
        if (s.magnitude + s.error > bound) ++verdict.violations;
        if (!s.converged) ++verdict.flagged;
        table.rows.push_back(format_sig17(t) + "," + format_sig17(s.velocity) + "," +
                             format_sig17(s.magnitude) + "," + format_sig17(bound) + "," +
                             (inside ? "1" : "0"));
    }
}

/// Rays strictly outside [lo, hi]: half-step insets on both flanking windows.
inline std::vector<double> outside_velocities(double lo, double hi, double pad, int count) {
    std::vector<double> v;
    const int n_left = count / 2;
    const int n_right = count - n_left;
    for (int k = 0; k < n_left; ++k)
        v.push_back(lo - pad + (k + 0.5) * pad / n_left);
    for (int k = 0; k < n_right; ++k)
        v.push_back(hi + (k + 0.5) * pad / n_right);
    return v;
}

}  // namespace detail

inline VerdictReport run_campaign(const CampaignConfig& cfg, const RunOptions& options = {}) {
    const auto start = std::chrono::steady_clock::now();
    VerdictReport verdict;
    verdict.campaign = to_string(cfg.kind);
    detail::CsvTable table;

    switch (cfg.kind) {
        case CampaignKind::vdc_envelope: {
            const auto amp = instantiate_amplitude(cfg.amplitude->name, cfg.amplitude->params);
            const auto ph = instantiate_phase(cfg.phase->name, cfg.phase->params);
            const auto certs = certify(amp, ph);
            for (const auto& c : certs)
                verdict.constants.push_back({"decay_constant", c.constant, to_string(c.theorem)});
            table.header = "omega,magnitude,quad_err,bound,ratio";
            const auto omegas = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            detail::run_envelope_block(amp, ph, certs.front(), omegas,
                                       cfg.tol.value_or(kDefaultCompactTol), options.threads, table,
                                       verdict);
            break;
        }
        case CampaignKind::p0_sweep: {
            const auto amp = instantiate_amplitude(cfg.amplitude->name, cfg.amplitude->params);
            table.header = "omega,magnitude,quad_err,bound,ratio";
            const auto omegas = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            const auto p0s = linear_grid(cfg.p0_grid.min, cfg.p0_grid.max, cfg.p0_grid.points);
            std::optional<BoundCertificate> uniform;
            for (double p0 : p0s) {
                CatalogParams params = cfg.phase->params;
                params["p0"] = p0;
                const auto ph = instantiate_phase(cfg.phase->name, params);
                const auto certs = certify(amp, ph);
                const BoundCertificate& slow = certs.front();  // interior or uniform branch
                if (!uniform) {
                    uniform = slow;
                    verdict.constants.push_back(
                        {"position_uniform_constant", slow.constant, to_string(TheoremId::uniform)});
                } else if (slow.constant != uniform->constant) {
                    ++verdict.violations;  // the position-uniform constant must not read p0
                }
                detail::run_envelope_block(amp, ph, *uniform, omegas,
                                           cfg.tol.value_or(kDefaultCompactTol), options.threads,
                                           table, verdict);
            }
            break;
        }
        case CampaignKind::decay_fit: {
            const auto amp = instantiate_amplitude(cfg.amplitude->name, cfg.amplitude->params);
            const auto ph = instantiate_phase(cfg.phase->name, cfg.phase->params);
            table.header = "grid_value,magnitude";
            const auto omegas = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            std::vector<double> mags(omegas.size());
            detail::parallel_for(omegas.size(), options.threads, [&](size_t i) {
                const QuadratureResult q =
                    oscillatory_integral(amp, ph, omegas[i], cfg.tol.value_or(kDefaultCompactTol));
                mags[i] = std::abs(q.value);
            });
            std::vector<std::pair<double, double>> samples;
            for (size_t i = 0; i < omegas.size(); ++i) {
                samples.emplace_back(omegas[i], mags[i]);
                table.rows.push_back(detail::format_sig17(omegas[i]) + "," +
                                     detail::format_sig17(mags[i]));
            }
            const DecayFit fit = fit_decay(samples);
            verdict.fits.push_back({"magnitude_decay", fit.slope, fit.stderr_slope});
            if (std::abs(fit.slope - cfg.expected_slope) > cfg.slope_tol) verdict.fits_in_band = false;
            break;
        }
        case CampaignKind::dispersive_cone: {
            const auto datum = instantiate_datum(cfg.datum->name, cfg.datum->params);
            const auto* band = std::get_if<BandDatum>(&datum);
            if (!band) throw ConfigError("dispersive_cone: datum must be a band datum");
            const auto symbol = instantiate_symbol(cfg.symbol->name, cfg.symbol->params);
            const auto set = band_constants(*band, symbol, cfg.q1, cfg.q2);
            for (const auto& [name, value] : set.constants)
                verdict.constants.push_back({name, value, to_string(set.id)});
            table.header = "t,velocity,magnitude,bound,inside_cone";
            const auto ts = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            const double lo = *set.cone.lo, hi = *set.cone.hi;
            const auto inside_v = ray_velocities(lo, hi, cfg.inside_rays);
            const auto outside_v = detail::outside_velocities(lo, hi, cfg.window_pad, cfg.outside_rays);
            for (double t : ts) {
                detail::push_cone_rows(sample_rays(datum, symbol, t, inside_v, cfg.tol), t,
                                       set.bound("c_inside", t), true, table, verdict);
                detail::push_cone_rows(sample_rays(datum, symbol, t, outside_v, cfg.tol), t,
                                       set.bound("c_outside", t), false, table, verdict);
            }
            break;
        }
        case CampaignKind::linfty_global: {
            const auto datum = instantiate_datum(cfg.datum->name, cfg.datum->params);
            const auto* weighted = std::get_if<WeightedDatum>(&datum);
            if (!weighted) throw ConfigError("linfty_global: datum must be a weighted datum");
            const auto symbol = instantiate_symbol(cfg.symbol->name, cfg.symbol->params);
            const auto set = global_linfty_bound(*weighted, symbol);
            for (const auto& [name, value] : set.constants)
                verdict.constants.push_back({name, value, to_string(set.id) + " (" + set.note + ")"});
            table.header = "t,velocity,magnitude,bound,inside_cone";
            const auto ts = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            double lo = cfg.velocity_window.first, hi = cfg.velocity_window.second;
            if (symbol.asymptotic_velocities) {
                lo = symbol.asymptotic_velocities->first - cfg.window_pad;
                hi = symbol.asymptotic_velocities->second + cfg.window_pad;
            }
            const auto rays = ray_velocities(lo, hi, cfg.inside_rays);
            for (double t : ts)
                detail::push_cone_rows(sample_rays(datum, symbol, t, rays, cfg.tol), t,
                                       set.total_bound(t), true, table, verdict);
            break;
        }
        case CampaignKind::concentration: {
            const auto datum = instantiate_datum(cfg.datum->name, cfg.datum->params);
            const auto* weighted = std::get_if<WeightedDatum>(&datum);
            if (!weighted) throw ConfigError("concentration: datum must be a weighted datum");
            const auto symbol = instantiate_symbol(cfg.symbol->name, cfg.symbol->params);
            const auto set = concentration_constants(*weighted, symbol);
            for (const auto& [name, value] : set.constants)
                verdict.constants.push_back({name, value, to_string(set.id)});
            table.header = "t,velocity,magnitude,bound,inside_cone";
            const auto ts = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            const double a = *set.cone.lo, b = *set.cone.hi;
            std::vector<double> rays;
            {
                const int n_left = cfg.outside_rays / 2;
                const int n_right = cfg.outside_rays - n_left;
                const double usable_left = cfg.window_pad - cfg.offcone_margin;
                for (int k = 0; k < n_left; ++k)
                    rays.push_back(a - cfg.offcone_margin - (k + 0.5) * usable_left / n_left);
                for (int k = 0; k < n_right; ++k)
                    rays.push_back(b + cfg.offcone_margin + (k + 0.5) * usable_left / n_right);
                std::sort(rays.begin(), rays.end());
            }
            for (double t : ts)
                detail::push_cone_rows(sample_rays(datum, symbol, t, rays, cfg.tol), t,
                                       set.total_bound(t), false, table, verdict);
            break;
        }
        case CampaignKind::optimality: {
            const auto datum = instantiate_datum(cfg.datum->name, cfg.datum->params);
            const auto* band = std::get_if<BandDatum>(&datum);
            if (!band) throw ConfigError("optimality: datum must be a band datum");
            const auto symbol = instantiate_symbol(cfg.symbol->name, cfg.symbol->params);
            table.header = "grid_value,magnitude";
            const auto ts = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);
            const double direction = 2.0 * band->amplitude.p1;
            std::vector<double> mags(ts.size());
            detail::parallel_for(ts.size(), options.threads, [&](size_t i) {
                mags[i] = std::abs(solution_value(datum, symbol, ts[i], direction * ts[i], cfg.tol).value);
            });
            std::vector<std::pair<double, double>> samples;
            for (size_t i = 0; i < ts.size(); ++i) {
                samples.emplace_back(ts[i], mags[i]);
                table.rows.push_back(detail::format_sig17(ts[i]) + "," + detail::format_sig17(mags[i]));
            }
            const DecayFit fit = fit_decay(samples);
            verdict.fits.push_back({"critical_direction_decay", fit.slope, fit.stderr_slope});
            if (std::abs(fit.slope - cfg.expected_slope) > cfg.slope_tol) verdict.fits_in_band = false;
            break;
        }
    }

    verdict.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

    const std::filesystem::path out_dir = detail::resolve_out_dir(options);
    auto resolve = [&out_dir](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : out_dir / path;
    };
    detail::atomic_write(resolve(cfg.csv_path), table.render());

    nlohmann::json jverdict;
    jverdict["campaign"] = cfg.echo.is_null() ? nlohmann::json(verdict.campaign) : cfg.echo;
    jverdict["violations"] = verdict.violations;
    jverdict["flagged"] = verdict.flagged;
    jverdict["fits"] = nlohmann::json::array();
    for (const auto& f : verdict.fits)
        jverdict["fits"].push_back({{"name", f.name}, {"slope", f.slope}, {"stderr", f.stderr_slope}});
    jverdict["constants"] = nlohmann::json::array();
    for (const auto& c : verdict.constants)
        jverdict["constants"].push_back({{"name", c.name}, {"value", c.value}, {"theorem", c.theorem}});
    jverdict["wall_ms"] = verdict.wall_ms;
    detail::atomic_write(resolve(cfg.verdict_path), jverdict.dump(2) + "\n");

    return verdict;
}

}  // namespace corput
