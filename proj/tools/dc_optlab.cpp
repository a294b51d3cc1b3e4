// dc-optlab: command-line front end for the DC loss laboratory.
//
// Exit codes: 0 success, 1 verification or run failure, 2 usage error,
// 3 I/O or format error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dcopt/convergence.hpp"
#include "dcopt/csv.hpp"
#include "dcopt/data.hpp"
#include "dcopt/dc_loss.hpp"
#include "dcopt/errors.hpp"
#include "dcopt/io.hpp"
#include "dcopt/neuron.hpp"
#include "dcopt/rng.hpp"
#include "dcopt/svg.hpp"
#include "dcopt/sweep.hpp"
#include "dcopt/verify.hpp"

namespace fs = std::filesystem;
using namespace dcopt;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

constexpr const char* kProtocol = " [protocol default]";

struct ParamFlags {
  double r = 1.0;
  double c = 0.0;
  double d = 0.0;
  double p_d = 0.5;
  std::string file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--r", r, "Growth rate r > 0")->capture_default_str();
    cmd->add_option("--c", c, "Decay rate c >= 0")->capture_default_str();
    cmd->add_option("--d", d, "Difficulty d >= 0")->capture_default_str();
    cmd->add_option("--p-d", p_d, "Probability at t = d, in (0, 1)")->capture_default_str();
    cmd->add_option("--params", file, "JSON file {r, c, d, p_d}; overrides the individual flags");
  }

  DCParams resolve() const { return file.empty() ? DCParams(r, c, d, p_d) : params_from_json(read_json(file)); }
};

struct DataFlags {
  SyntheticSpec spec;
  std::string file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--m", spec.m, std::string("Number of samples") + kProtocol)->capture_default_str();
    cmd->add_option("--n", spec.n, std::string("Feature dimension") + kProtocol)->capture_default_str();
    cmd->add_option("--center", spec.center_distance, "Blob center offset per coordinate")->capture_default_str();
    cmd->add_option("--sigma", spec.noise_sigma, "Per-coordinate noise standard deviation")->capture_default_str();
    cmd->add_option("--split", spec.split_fraction, std::string("Training fraction") + kProtocol)
        ->capture_default_str();
    cmd->add_option("--data-spec", file, "JSON synthetic spec; overrides the individual data flags");
  }

  SyntheticSpec resolve(std::uint64_t seed) const {
    SyntheticSpec s = file.empty() ? spec : synthetic_spec_from_json(read_json(file));
    if (file.empty()) s.seed = seed;
    s.validate();
    return s;
  }
};

std::size_t resolve_threads(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("DC_OPTLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("DC_OPTLAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

// Writes to a file, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text(path, text);
  }
}

struct Preset {
  const char* name;
  double r, c, d, p_d;
};

// One representative of each loss shape.
constexpr Preset kPresets[] = {
    {"no-dc", 1.0, 0.0, 0.0, 0.5},
    {"growing", 3.0, 0.0, 0.0, 0.5},
    {"decaying", 1.0, 1.0, 0.0, 0.5},
    {"grow-decay", 2.0, 2.0, 0.0, 0.5},
};

TrainMode parse_mode(const std::string& s) { return s == "gd" ? TrainMode::GD : TrainMode::SGD; }
InitScheme parse_init(const std::string& s) { return s == "gaussian" ? InitScheme::GaussianScaled : InitScheme::Zeros; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DC loss laboratory: loss shapes, convergence rates, bound verification, training and sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dc-optlab 0.1.0");
  std::size_t threads_flag = 0;
  app.add_option("--threads", threads_flag, "Worker threads (0: DC_OPTLAB_THREADS or 1)")->capture_default_str();

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate the synthetic two-blob dataset");
  DataFlags gen_data;
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_train_out, gen_test_out;
  gen_data.add_to(gen);
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Full dataset CSV (default stdout)");
  gen->add_option("--train-out", gen_train_out, "Training split CSV");
  gen->add_option("--test-out", gen_test_out, "Test split CSV");

  // curves
  auto* curves = app.add_subcommand("curves", "Emit loss shape curves t,prob,loss,derivative,f");
  ParamFlags curve_params;
  std::string preset;
  double t_min = -5.0, t_max = 5.0;
  std::size_t curve_samples = 201;
  std::string curve_out, curve_dir;
  curve_params.add_to(curves);
  curves->add_option("--preset", preset, "no-dc, growing, decaying, grow-decay or all")
      ->check(CLI::IsMember({"no-dc", "growing", "decaying", "grow-decay", "all"}));
  curves->add_option("--t-min", t_min, "Lower end of the margin range")->capture_default_str();
  curves->add_option("--t-max", t_max, "Upper end of the margin range")->capture_default_str();
  curves->add_option("--samples", curve_samples, "Points per curve (>= 2)")->capture_default_str();
  curves->add_option("--out", curve_out, "Output CSV (default stdout)");
  curves->add_option("--out-dir", curve_dir, "Directory for --preset all (one CSV per preset)");

  // rates
  auto* rates = app.add_subcommand("rates", "Emit the DC rate against the default rate and its bracket");
  ParamFlags rate_params;
  double z_lo = 0.0, z_hi = 20.0;
  std::size_t rate_samples = 400;
  std::string rate_out;
  rate_params.p_d = std::exp(-1.0);
  rate_params.add_to(rates);
  rates->add_option("--z-min", z_lo, "Lower end of the z range")->capture_default_str();
  rates->add_option("--z-max", z_hi, "Upper end of the z range")->capture_default_str();
  rates->add_option("--samples", rate_samples, "Grid points before domain filtering")->capture_default_str();
  rates->add_option("--out", rate_out, "Output CSV (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run numerical property suites; exit 1 on any failure");
  std::string suite = "all";
  std::uint64_t verify_seed = 7;
  std::string verify_out;
  verify->add_option("--suite", suite, "lambert, theorem, corollary, gradient or all")
      ->check(CLI::IsMember({"lambert", "theorem", "corollary", "gradient", "all"}))
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "Seed for randomized suites")->capture_default_str();
  verify->add_option("--out", verify_out, "JSON report path (default stdout)");

  // train
  auto* tr = app.add_subcommand("train", "Train the single neuron and emit its per-epoch trace");
  ParamFlags train_params;
  DataFlags train_data;
  TrainConfig cfg;
  std::string mode = "sgd", init = "zeros", train_csv, test_csv, trace_out, weights_out;
  train_params.add_to(tr);
  train_data.add_to(tr);
  tr->add_option("--eta", cfg.eta, "Fixed step size")->capture_default_str();
  tr->add_option("--batch", cfg.batch_size, std::string("Minibatch size") + kProtocol)->capture_default_str();
  tr->add_option("--epochs", cfg.epochs, std::string("Passes over the training set") + kProtocol)
      ->capture_default_str();
  tr->add_option("--mode", mode, "sgd or gd")->check(CLI::IsMember({"sgd", "gd"}))->capture_default_str();
  tr->add_option("--init", init, "zeros or gaussian")->check(CLI::IsMember({"zeros", "gaussian"}))
      ->capture_default_str();
  tr->add_option("--seed", cfg.seed, "Seed for data, split and shuffling")->capture_default_str();
  tr->add_option("--train", train_csv, "Training CSV (otherwise generated)");
  tr->add_option("--test", test_csv, "Test CSV (required with --train)");
  tr->add_option("--trace-out", trace_out, "Trace CSV (default stdout)");
  tr->add_option("--weights-out", weights_out, "Final weights JSON");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Hyperparameter grid sweep with repeated runs");
  GridSpec grid;
  DataFlags sweep_data;
  TrainConfig sweep_cfg;
  std::string grid_file, profile = "full", json_out, csv_out, curves_out;
  std::size_t config_count = 0;
  bool no_baseline = false;
  sweep_data.add_to(sw);
  sw->add_option("--grid", grid_file, "GridSpec JSON; overrides the grid flags");
  sw->add_option("--profile", profile, "full (protocol scale) or desk (reduced grid, 3 runs, 300 epochs)")
      ->check(CLI::IsMember({"full", "desk"}))
      ->capture_default_str();
  sw->add_option("--d-steps", grid.d.steps, "Points on d in [0, 5]")->capture_default_str();
  sw->add_option("--pd-steps", grid.p_d.steps, "Points on p_d in [0.1, 0.9]")->capture_default_str();
  sw->add_option("--r-steps", grid.r.steps, "Points on r in [0.1, 12]")->capture_default_str();
  sw->add_option("--c-steps", grid.c.steps, "Points on c in [0, 12]")->capture_default_str();
  sw->add_option("--pick", grid.pick_fraction, std::string("Random fraction of the grid") + kProtocol)
      ->capture_default_str();
  sw->add_option("--configs", config_count, "Sample exactly this many configs instead of --pick");
  sw->add_option("--runs", grid.runs, std::string("Runs per config") + kProtocol)->capture_default_str();
  sw->add_option("--epochs", sweep_cfg.epochs, std::string("Epochs per run") + kProtocol)->capture_default_str();
  sw->add_option("--batch", sweep_cfg.batch_size, std::string("Minibatch size") + kProtocol)->capture_default_str();
  sw->add_option("--eta", sweep_cfg.eta, "Fixed step size")->capture_default_str();
  sw->add_option("--seed", grid.seed, "Sweep seed")->capture_default_str();
  sw->add_flag("--no-baseline", no_baseline, "Do not prepend the no-DC baseline config (r=1, c=0, d=0, p_d=0.5)");
  sw->add_option("--json-out", json_out, "SweepResult JSON");
  sw->add_option("--csv-out", csv_out, "Flat per-run CSV");
  sw->add_option("--curves-out", curves_out, "Per-config mean/std curves CSV");

  // plot
  auto* pl = app.add_subcommand("plot", "Render a CSV produced by this tool as SVG");
  std::string plot_in, plot_kind, plot_out, plot_title;
  pl->add_option("--in", plot_in, "Input CSV")->required();
  pl->add_option("--kind", plot_kind, "curves, rates, trace or sweep-curves")
      ->check(CLI::IsMember({"curves", "rates", "trace", "sweep-curves"}))
      ->required();
  pl->add_option("--out", plot_out, "Output SVG (default stdout)");
  pl->add_option("--title", plot_title, "Override the plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const std::size_t threads = resolve_threads(threads_flag);

    if (*gen) {
      const SyntheticSpec spec = gen_data.resolve(gen_seed);
      const Dataset data = generate(spec);
      std::ostringstream all;
      write_csv(data, all);
      if (!gen_out.empty() || (gen_train_out.empty() && gen_test_out.empty())) emit(gen_out, all.str());
      if (!gen_train_out.empty() || !gen_test_out.empty()) {
        const auto sets = split(data, spec.split_fraction, derive_seed(spec.seed, 2));
        if (!gen_train_out.empty()) save_csv(sets.train, gen_train_out);
        if (!gen_test_out.empty()) save_csv(sets.test, gen_test_out);
      }
      return 0;
    }

    if (*curves) {
      if (preset == "all") {
        if (curve_dir.empty()) throw ValidationError("--preset all needs --out-dir");
        fs::create_directories(curve_dir);
        for (const auto& p : kPresets) {
          std::ofstream out(fs::path(curve_dir) / (std::string("curves_") + p.name + ".csv"), std::ios::binary);
          if (!out) throw IoError("cannot write into " + curve_dir);
          write_loss_curves_csv(DCParams(p.r, p.c, p.d, p.p_d), t_min, t_max, curve_samples, out);
        }
        return 0;
      }
      DCParams params = curve_params.resolve();
      for (const auto& p : kPresets) {
        if (preset == p.name) params = DCParams(p.r, p.c, p.d, p.p_d);
      }
      std::ostringstream out;
      write_loss_curves_csv(params, t_min, t_max, curve_samples, out);
      emit(curve_out, out.str());
      return 0;
    }

    if (*rates) {
      const RateCurve curve = sample_rate_curve(rate_params.resolve(), z_lo, z_hi, rate_samples);
      std::ostringstream out;
      write_rates_csv(curve, out);
      emit(rate_out, out.str());
      return 0;
    }

    if (*verify) {
      const auto outcomes = run_suites(suite, verify_seed);
      Json report = Json::object();
      bool all_passed = true;
      for (const auto& o : outcomes) {
        report[o.name] = o.report;
        all_passed = all_passed && o.passed;
        std::cerr << (o.passed ? "PASS " : "FAIL ") << o.name << '\n';
      }
      report["passed"] = all_passed;
      emit(verify_out, report.dump(2) + "\n");
      return all_passed ? 0 : kExitFailure;
    }

    if (*tr) {
      cfg.mode = parse_mode(mode);
      cfg.init = parse_init(init);
      const DCParams params = train_params.resolve();
      Dataset train_set, test_set;
      if (!train_csv.empty() || !test_csv.empty()) {
        if (train_csv.empty() || test_csv.empty()) throw ValidationError("--train and --test go together");
        train_set = load_csv(train_csv);
        test_set = load_csv(test_csv);
      } else {
        const SyntheticSpec spec = train_data.resolve(derive_seed(cfg.seed, 1));
        auto sets = split(generate(spec), spec.split_fraction, derive_seed(cfg.seed, 2));
        train_set = std::move(sets.train);
        test_set = std::move(sets.test);
      }
      const TrainResult result = train(params, train_set, test_set, cfg);
      std::ostringstream trace;
      write_trace_csv(result.trace, trace);
      emit(trace_out, trace.str());
      if (!weights_out.empty()) {
        Json w = to_json(result.theta);
        w["params"] = to_json(params);
        w["config"] = to_json(cfg);
        write_text(weights_out, w.dump(2) + "\n");
      }
      return 0;
    }

    if (*sw) {
      if (!grid_file.empty()) {
        grid = grid_spec_from_json(read_json(grid_file));
      } else if (profile == "desk") {
        grid.d.steps = 6;
        grid.p_d.steps = 5;
        grid.r.steps = 6;
        grid.c.steps = 6;
        if (sw->count("--runs") == 0) grid.runs = 3;
        if (sw->count("--epochs") == 0) sweep_cfg.epochs = 300;
      }
      const auto full = build_grid(grid);
      std::vector<DCParams> configs;
      if (!no_baseline) configs.emplace_back(1.0, 0.0, 0.0, 0.5);
      if (config_count > 0) {
        if (config_count > full.size()) throw ValidationError("--configs exceeds the grid size");
        for (std::size_t i : sample_indices(full.size(), config_count, derive_seed(grid.seed, 0x9e1d))) {
          configs.push_back(full[i]);
        }
      } else {
        const auto picked = sample_grid(full, grid.pick_fraction, derive_seed(grid.seed, 0x9e1d));
        configs.insert(configs.end(), picked.begin(), picked.end());
      }
      const SyntheticSpec data_spec = sweep_data.resolve(grid.seed);
      std::cerr << "sweep: " << full.size() << " grid points, " << configs.size() << " configs x " << grid.runs
                << " runs x " << sweep_cfg.epochs << " epochs on " << threads << " thread(s)\n";
      const SweepResult result = run_sweep(configs, data_spec, sweep_cfg, grid.runs, grid.seed, {threads});

      Json doc = to_json(result);
      doc["grid"] = to_json(grid);
      doc["grid_size"] = full.size();
      doc["baseline_prepended"] = !no_baseline;
      doc["train_config"] = to_json(sweep_cfg);
      doc["data_spec"] = to_json(data_spec);
      if (!json_out.empty()) write_text(json_out, doc.dump(2) + "\n");
      if (!csv_out.empty()) {
        std::ostringstream out;
        write_sweep_csv(result, out);
        write_text(csv_out, out.str());
      }
      if (!curves_out.empty()) {
        std::ostringstream out;
        write_sweep_curves_csv(result, out);
        write_text(curves_out, out.str());
      }
      std::ostringstream table;
      table << "family,config_id,mean_final_accuracy,delta_vs_no_dc\n";
      for (const auto& row : compare_families(result)) {
        table << row.family << ',' << row.config_id << ',' << csv::format_real(row.mean_final_accuracy) << ','
              << csv::format_real(row.delta_vs_no_dc) << '\n';
      }
      table << "# excluded_runs=" << result.excluded_runs << '\n';
      std::cout << table.str();
      return 0;
    }

    if (*pl) {
      std::ifstream in(plot_in, std::ios::binary);
      if (!in) throw IoError("cannot open " + plot_in);
      Plot plot = plot_from_csv(in, parse_plot_kind(plot_kind));
      if (!plot_title.empty()) plot.title = plot_title;
      emit(plot_out, render_svg(plot));
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
