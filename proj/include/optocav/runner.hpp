// runner.hpp — executes configured runs and parameter sweeps, writing CSV output

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "optocav/analytic.hpp"
#include "optocav/config.hpp"
#include "optocav/csv.hpp"
#include "optocav/errors.hpp"
#include "optocav/lindblad.hpp"

namespace optocav::runner {

namespace fs = std::filesystem;

class IoError : public Error {
public:
    IoError(const fs::path& path, const std::string& what)
        : Error(path.string() + ": " + what), path_(path) {}

    const fs::path& path() const noexcept { return path_; }

private:
    fs::path path_;
};

/// One CSV row per sample, with the analytic columns alongside the numeric result.
inline void write_csv(std::ostream& os, const config::RunConfig& cfg, const lindblad::TimeSeries& series) {
    const auto& p = cfg.params;
    const bool eq8 = cfg.emit_eq8 && p.g_cm > 0.0;
    const bool eq9 = cfg.emit_eq9;
    os << csv::kTimeSeriesHeader << '\n';
    for (const auto& r : series.rows) {
        std::optional<double> a8;
        std::optional<double> a9;
        if (eq8) a8 = analytic::delta_p_general(r.t, p);
        if (eq9) a9 = analytic::delta_p_resonant(r.t, p);
        os << csv::format_number(r.t) << ',' << csv::format_number(r.delta_p) << ',' << csv::format_cell(a8)
           << ',' << csv::format_cell(a9) << ',' << csv::format_number(r.n_b) << ','
           << csv::format_number(r.n_c) << ',' << csv::format_number(r.trace_error) << ','
           << csv::format_number(r.min_eig) << '\n';
    }
}

inline std::string render_csv(const config::RunConfig& cfg, const lindblad::TimeSeries& series) {
    std::ostringstream os;
    write_csv(os, cfg, series);
    return os.str();
}

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

inline std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError(dir, "cannot create directory");
}

/// Config text with a header comment recording the atom-cavity detuning.
inline std::string annotated_config(const config::RunConfig& cfg) {
    std::ostringstream os;
    os << "# optocav run configuration\n"
       << "# omega_a - omega_c = " << config::format_exact(cfg.params.omega_a - cfg.params.omega_c)
       << " (edit omega_a to change the atom-cavity detuning)\n"
       << config::print_config(cfg);
    return os.str();
}

struct RunOutput {
    fs::path csv_path;
    lindblad::TimeSeries series;
};

/// Integrates `cfg` and writes <name>.csv and <name>.cfg into out_dir. On
/// instability the partial series is still written before the error propagates.
inline RunOutput run(const config::RunConfig& cfg, const fs::path& out_dir) {
    config::validate(cfg);
    ensure_directory(out_dir);
    const fs::path csv_path = out_dir / (cfg.name + ".csv");
    write_text(out_dir / (cfg.name + ".cfg"), annotated_config(cfg));
    try {
        auto series = lindblad::integrate(initial_state(cfg.params), cfg.evolution());
        write_text(csv_path, render_csv(cfg, series));
        return RunOutput{csv_path, std::move(series)};
    } catch (const lindblad::UnstableIntegration& e) {
        write_text(csv_path, render_csv(cfg, e.partial()));
        throw;
    }
}

struct SweepRow {
    double value;
    std::optional<double> max_dev_eq8;  // max_t |ΔP_num − general closed form|
    std::optional<double> max_n_b;
    std::string status;                 // "ok" or a failure description

    bool ok() const noexcept { return status == "ok"; }
};

inline constexpr std::string_view kSweepHeader = "value,max_abs_dev_eq8,max_n_b,status";

inline SweepRow summarize(double value, const config::RunConfig& cfg, const lindblad::TimeSeries& series) {
    SweepRow row{value, std::nullopt, std::nullopt, "ok"};
    double max_nb = 0.0;
    double max_dev = 0.0;
    for (const auto& r : series.rows) {
        max_nb = std::max(max_nb, r.n_b);
        if (cfg.params.g_cm > 0.0)
            max_dev = std::max(max_dev, std::abs(r.delta_p - analytic::delta_p_general(r.t, cfg.params)));
    }
    row.max_n_b = max_nb;
    if (cfg.params.g_cm > 0.0) row.max_dev_eq8 = max_dev;
    return row;
}

inline std::string render_summary(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << kSweepHeader << '\n';
    for (const auto& r : rows) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        os << csv::format_number(r.value) << ',' << csv::format_cell(r.max_dev_eq8) << ','
           << csv::format_cell(r.max_n_b) << ',' << status << '\n';
    }
    return os.str();
}

/// One independent run per value of `key`; runs execute concurrently and the
/// summary is written once all have finished.
inline std::vector<SweepRow> sweep(const config::RunConfig& base, const std::string& key,
                                   const std::vector<double>& values, const fs::path& out_dir) {
    if (!config::is_param_key(key)) throw config::UnknownKey(key);
    if (values.empty()) throw config::ValidationError("values", "sweep needs at least one value");

    std::vector<config::RunConfig> configs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        config::RunConfig cfg = base;
        config::set_value(cfg, key, config::format_exact(values[i]));
        config::validate(cfg);
        cfg.name = base.name + "_" + key + "_" + std::to_string(i);
        configs.push_back(std::move(cfg));
    }
    ensure_directory(out_dir);

    auto one = [&out_dir](const config::RunConfig& cfg, double value) -> SweepRow {
        try {
            const auto out = run(cfg, out_dir);
            return summarize(value, cfg, out.series);
        } catch (const std::exception& e) {
            return SweepRow{value, std::nullopt, std::nullopt, std::string("failed: ") + e.what()};
        }
    };

    std::vector<SweepRow> rows(values.size());
    const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < configs.size(); start += workers) {
        std::vector<std::future<SweepRow>> batch;
        const std::size_t stop = std::min(configs.size(), start + workers);
        for (std::size_t i = start; i < stop; ++i)
            batch.push_back(std::async(std::launch::async, one, std::cref(configs[i]), values[i]));
        for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
    }
    write_text(out_dir / "summary.csv", render_summary(rows));
    return rows;
}

} // namespace optocav::runner
