// optocav_cli.cpp — command-line front end: run, preset, plot, sweep, converge

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "optocav/config.hpp"
#include "optocav/csv.hpp"
#include "optocav/lindblad.hpp"
#include "optocav/runner.hpp"
#include "optocav/svg.hpp"

namespace fs = std::filesystem;
using namespace optocav;

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 2, kUnstable = 3, kIoError = 4 };

config::RunConfig load_config(const std::string& path) {
    return config::parse_config(runner::read_text(path));
}

void plot(const fs::path& csv_path, const std::vector<std::string>& cols, const fs::path& out) {
    const auto text = runner::read_text(csv_path);
    const auto table = csv::read_table(text);
    runner::write_text(out, svg::render_svg(table, cols));
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = load_config(config_path);
    const auto result = runner::run(cfg, out_dir);
    std::cout << "wrote " << result.csv_path.string() << " (" << result.series.rows.size() << " samples)\n";
    return kOk;
}

int cmd_preset(const std::string& name, const std::string& out_dir) {
    const auto cfg = config::preset(name);
    const auto result = runner::run(cfg, out_dir);
    std::vector<std::string> dp_cols{"delta_p_num"};
    if (name != "fig4") dp_cols = {"delta_p_num", "delta_p_eq8", "delta_p_eq9"};
    const fs::path dir(out_dir);
    plot(result.csv_path, dp_cols, dir / (name + "_delta_p.svg"));
    plot(result.csv_path, {"n_b"}, dir / (name + "_n_b.svg"));
    std::cout << "wrote " << result.csv_path.string() << ", " << (dir / (name + "_delta_p.svg")).string()
              << ", " << (dir / (name + "_n_b.svg")).string() << '\n';
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& key, const std::vector<double>& values,
              const std::string& out_dir) {
    const auto cfg = load_config(config_path);
    const auto rows = runner::sweep(cfg, key, values, out_dir);
    std::cout << runner::render_summary(rows);
    for (const auto& r : rows)
        if (!r.ok()) return kUnstable;
    return kOk;
}

int cmd_converge(const std::string& config_path, std::size_t step) {
    const auto cfg = load_config(config_path);
    const auto report = lindblad::convergence_check(cfg.params, cfg.evolution(), step);
    std::cout << "d_m,max_delta_p_dev,max_n_b_dev\n"
              << report.d_m_low << "->" << report.d_m_high << ',' << csv::format_number(report.max_delta_p_dev)
              << ',' << csv::format_number(report.max_n_b_dev) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level atom in an optomechanical cavity: master-equation and analytic-model runs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";

    auto* run = app.add_subcommand("run", "Integrate a configured system and write CSV output");
    run->add_option("--config", config_path, "Config file (key = value lines)")->required();
    run->add_option("--out", out_dir, "Output directory");

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Regenerate a figure data set (CSV + SVG plots)");
    preset->add_option("name", preset_name, "fig2, fig3 or fig4")->required();
    preset->add_option("--out", out_dir, "Output directory");

    std::string csv_path;
    std::vector<std::string> cols;
    std::string svg_out;
    auto* plot_cmd = app.add_subcommand("plot", "Render CSV columns as an SVG line chart");
    plot_cmd->add_option("--csv", csv_path, "Input CSV")->required();
    plot_cmd->add_option("--cols", cols, "Columns to plot")->required()->delimiter(',');
    plot_cmd->add_option("--out", svg_out, "Output SVG path")->required();

    std::string key;
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "Run one simulation per parameter value");
    sweep->add_option("--config", config_path, "Base config file")->required();
    sweep->add_option("--key", key, "Parameter to vary")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
    sweep->add_option("--out", out_dir, "Output directory")->required();

    std::size_t dm_step = 0;
    auto* converge = app.add_subcommand("converge", "Compare observables at d_m and d_m + step");
    converge->add_option("--config", config_path, "Config file")->required();
    converge->add_option("--dm-step", dm_step, "Mechanical truncation increment")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*preset) return cmd_preset(preset_name, out_dir);
        if (*plot_cmd) {
            plot(csv_path, cols, svg_out);
            return kOk;
        }
        if (*sweep) return cmd_sweep(config_path, key, values, out_dir);
        if (*converge) return cmd_converge(config_path, dm_step);
    } catch (const lindblad::UnstableIntegration& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnstable;
    } catch (const runner::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const csv::MalformedCSV& e) {
        std::cerr << "error: malformed CSV: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
