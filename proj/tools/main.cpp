#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinweave/couplings.hpp"
#include "spinweave/errors.hpp"
#include "spinweave/network.hpp"
#include "spinweave/observables.hpp"
#include "spinweave/oracle.hpp"
#include "spinweave/scenarios.hpp"
#include "spinweave/version.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spinweave::Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_value(double v) { std::printf("%.17g\n", v); }

void print_peaks(const std::vector<spinweave::Peak>& peaks) {
  std::printf("# time value fwhm\n");
  for (const spinweave::Peak& p : peaks)
    std::printf("%.17g %.17g %.17g\n", p.time, p.value, p.fwhm);
}

void run_one(const spinweave::Scenario& scenario, const std::string& out_override,
             const std::string& out_dir) {
  spinweave::ResultTable table = spinweave::run_scenario(scenario);
  std::filesystem::path out(!out_override.empty()         ? out_override
                            : !scenario.output_path.empty() ? scenario.output_path
                                                            : scenario.name + ".csv");
  if (!out_dir.empty() && out.is_relative()) out = std::filesystem::path(out_dir) / out;
  spinweave::write_csv(table, out);
  std::fprintf(stderr, "wrote %s (%lld rows)\n", out.string().c_str(),
               static_cast<long long>(table.data.rows()));
  if (scenario.revivals) {
    const int col = table.column_index(scenario.revivals->column);
    std::vector<double> times(table.data.rows());
    std::vector<double> values(table.data.rows());
    for (Eigen::Index i = 0; i < table.data.rows(); ++i) {
      times[static_cast<std::size_t>(i)] = table.data(i, 0);
      values[static_cast<std::size_t>(i)] = table.data(i, col);
    }
    print_peaks(spinweave::detect_revivals(times, values, scenario.revivals->threshold));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinweave: single-excitation dynamics on branched spin networks"};
  app.set_version_flag("--version", spinweave::kVersion);
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a scenario config and write CSV results");
  std::string run_config;
  std::string run_out;
  run_cmd->add_option("config", run_config, "scenario .cfg file")->required();
  run_cmd->add_option("--out", run_out, "output CSV path (overrides the config)");

  auto* preset_cmd = app.add_subcommand("preset", "Print or run a named preset scenario");
  std::string preset_name;
  std::string preset_out_dir;
  bool preset_print = false;
  bool preset_run = false;
  bool preset_list = false;
  preset_cmd->add_option("name", preset_name, "preset (group or member) name");
  preset_cmd->add_flag("--print", preset_print, "print the scenario text");
  preset_cmd->add_flag("--run", preset_run, "run and write <name>.csv per member");
  preset_cmd->add_flag("--list", preset_list, "list available presets");
  preset_cmd->add_option("--out-dir", preset_out_dir, "directory for --run outputs");

  auto* reduce_cmd =
      app.add_subcommand("reduce", "Project a network file onto its effective 1D chain");
  std::string reduce_file;
  reduce_cmd->add_option("network", reduce_file, "network text file")->required();

  auto* check_cmd =
      app.add_subcommand("check", "Cross-check the subspace engine against full space");
  int check_max_n = 10;
  check_cmd->add_option("--max-n", check_max_n, "largest network size to check")
      ->check(CLI::Range(2, 14));

  auto* peaks_cmd = app.add_subcommand("peaks", "Detect revival peaks in a results CSV");
  std::string peaks_file;
  std::string peaks_column;
  double peaks_threshold = 0.99;
  peaks_cmd->add_option("results", peaks_file, "CSV produced by `run`")->required();
  peaks_cmd->add_option("--column", peaks_column, "observable column name")->required();
  peaks_cmd->add_option("--threshold", peaks_threshold, "peak detection threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      run_one(spinweave::parse_scenario(read_file(run_config)), run_out, "");
    } else if (*preset_cmd) {
      if (preset_list) {
        for (const std::string& name : spinweave::preset_member_names())
          std::printf("%s\n", name.c_str());
        for (const std::string& name : spinweave::preset_group_names())
          std::printf("%s\n", name.c_str());
        return 0;
      }
      if (preset_name.empty())
        throw spinweave::InvalidArgument("preset needs a name (or --list)");
      const std::vector<spinweave::Scenario> scenarios = spinweave::preset(preset_name);
      if (!preset_print && !preset_run)
        throw spinweave::InvalidArgument("choose --print or --run");
      for (const spinweave::Scenario& s : scenarios) {
        if (preset_print) std::printf("%s\n", s.source_text.c_str());
        if (preset_run) run_one(s, "", preset_out_dir);
      }
    } else if (*reduce_cmd) {
      const spinweave::SpinNetwork net =
          spinweave::SpinNetwork::from_text(read_file(reduce_file));
      const spinweave::EffectiveChain chain = spinweave::effective_chain(net);
      std::printf("%d\n", chain.length);
      for (double j : chain.couplings) print_value(j);
    } else if (*check_cmd) {
      const spinweave::CrossCheckReport report = spinweave::cross_check(check_max_n);
      for (const spinweave::CrossCheckRow& row : report.rows)
        std::printf("%-32s N=%-3d max_dev=%.3e max_leakage=%.3e\n", row.name.c_str(),
                    row.n_sites, row.max_amplitude_deviation, row.max_leakage);
      std::printf("overall: max_dev=%.3e max_leakage=%.3e\n",
                  report.max_amplitude_deviation, report.max_leakage);
      if (report.max_amplitude_deviation > 1e-10 || report.max_leakage > 1e-20) {
        std::fprintf(stderr, "cross-check deviations exceed tolerances\n");
        return 2;
      }
    } else if (*peaks_cmd) {
      const spinweave::ResultTable table = spinweave::read_csv(peaks_file);
      const int col = table.column_index(peaks_column);
      if (col < 0)
        throw spinweave::InvalidArgument("no column named `" + peaks_column + "`");
      std::vector<double> times(table.data.rows());
      std::vector<double> values(table.data.rows());
      for (Eigen::Index i = 0; i < table.data.rows(); ++i) {
        times[static_cast<std::size_t>(i)] = table.data(i, 0);
        values[static_cast<std::size_t>(i)] = table.data(i, col);
      }
      print_peaks(spinweave::detect_revivals(times, values, peaks_threshold));
    }
  } catch (const spinweave::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
