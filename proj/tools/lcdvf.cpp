// lcdvf command-line front end.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "lcdvf/distance_transform.hpp"
#include "lcdvf/field_ops.hpp"
#include "lcdvf/image_io.hpp"
#include "lcdvf/learning.hpp"
#include "lcdvf/metrics.hpp"
#include "lcdvf/pipeline.hpp"
#include "lcdvf/shapes.hpp"

namespace fs = std::filesystem;
using namespace lcdvf;

namespace {

constexpr int kExitCompute = 1;
constexpr int kExitUsage = 2;

// Settings shared by run, batch, sweep and learn. Each key doubles as the
// long flag name and the config-file key.
const std::vector<std::string> kSnakeKeys = {"profile", "field", "clip",  "init",  "init-radius-scale",
                                             "iters",   "tau",   "nodes", "alpha", "beta",
                                             "kappa",   "resample"};
const std::vector<std::string> kInputKeys = {"mask", "gt", "image", "out", "dump-frames"};

using Settings = std::map<std::string, std::string>;

Settings read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  Settings out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError(fmt::format("{}:{}: expected key=value", path.string(), number));
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) throw CLI::ValidationError("--" + key, "not a number: " + value);
  return x;
}

int to_int(const std::string& key, const std::string& value) {
  const double x = to_double(key, value);
  if (std::floor(x) != x) throw CLI::ValidationError("--" + key, "not an integer: " + value);
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw CLI::ValidationError("--" + key, "not a boolean: " + value);
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "profile") {
    // Handled before the other keys.
  } else if (key == "mask") {
    c.mask = value;
  } else if (key == "gt") {
    c.gt = value;
  } else if (key == "image") {
    c.image = value;
  } else if (key == "out") {
    c.out_dir = value;
  } else if (key == "dump-frames") {
    c.dump_frames = value;
  } else if (key == "field") {
    if (value.rfind("energy:", 0) == 0) {
      c.field = FieldKind::EnergyGradient;
      c.energy_map = value.substr(7);
    } else {
      c.field = parse_field_kind(value);
    }
  } else if (key == "clip") {
    c.snake.clip_norm = value == "none" ? kNoClip : to_double(key, value);
  } else if (key == "init") {
    c.init = parse_init_mode(value);
  } else if (key == "init-radius-scale") {
    c.init_radius_scale = to_double(key, value);
  } else if (key == "iters") {
    c.snake.iterations = to_int(key, value);
  } else if (key == "tau") {
    c.snake.tau = to_double(key, value);
  } else if (key == "nodes") {
    const int n = to_int(key, value);
    if (n < 3) throw CLI::ValidationError("--nodes", "must be >= 3");
    c.snake.nodes = static_cast<std::size_t>(n);
  } else if (key == "alpha") {
    c.alpha = value;
  } else if (key == "beta") {
    c.beta = value;
  } else if (key == "kappa") {
    c.kappa = value;
  } else if (key == "resample") {
    c.snake.resample_each_step = to_bool(key, value);
  } else {
    throw CLI::ValidationError("config", "unknown key '" + key + "'");
  }
}

// Holds the raw string of every run setting given on the command line.
struct RunOptions {
  Settings cli;
  std::string config_file;
  bool resample = false;
  CLI::App* app = nullptr;

  void add(CLI::App* sub, const std::vector<std::string>& keys) {
    app = sub;
    for (const std::string& key : keys) {
      if (key == "resample") {
        sub->add_flag("--resample", resample, "resample nodes to uniform arc length after every step");
        continue;
      }
      sub->add_option("--" + key, cli[key], description(key));
    }
    sub->add_option("--config", config_file, "key=value file; command-line flags take precedence")
        ->check(CLI::ExistingFile);
  }

  static std::string description(const std::string& key) {
    static const Settings d = {
        {"profile", "building (60 nodes, circumscribed, 50 iterations) or medical (100, inscribed, 10)"},
        {"field", "lcdvf | dvf | energy | energy:<map.pfm>"},
        {"clip", "force clip norm in px, or 'none' (default none)"},
        {"init", "inscribed | circumscribed"},
        {"init-radius-scale", "multiplies the initialization circle radius"},
        {"iters", "snake iterations"},
        {"tau", "time step"},
        {"nodes", "contour node count"},
        {"alpha", "continuity weight, number or alpha.json"},
        {"beta", "curvature weight, number or PFM map"},
        {"kappa", "balloon weight (> 0 inflates), number or PFM map"},
        {"mask", "mask PGM driving the distance transform and the initialization"},
        {"gt", "ground-truth mask PGM (defaults to --mask)"},
        {"image", "image PGM used for frame rendering"},
        {"out", "output directory"},
        {"dump-frames", "directory for frame_%04d.pgm and frame_%04d.json"},
    };
    return d.at(key);
  }

  RunConfig resolve() const {
    Settings file;
    if (!config_file.empty()) file = read_config_file(config_file);
    auto given = [&](const std::string& key) { return app->count("--" + key) > 0; };

    std::string profile = "building";
    if (file.count("profile")) profile = file.at("profile");
    if (cli.count("profile") && given("profile")) profile = cli.at("profile");
    try {
      RunConfig c = RunConfig::for_profile(parse_profile(profile));
      for (const auto& [key, value] : file) apply(c, key, value);
      for (const auto& [key, value] : cli) {
        if (given(key)) apply(c, key, value);
      }
      if (resample) c.snake.resample_each_step = true;
      return c;
    } catch (const IoError&) {
      throw;
    } catch (const Error& e) {
      // Bad enum values are usage errors.
      throw CLI::ValidationError("option", e.what());
    }
  }
};

void report_error(const char* kind, const std::string& message) {
  std::cerr << fmt::format("{{\"error\":\"{}\",\"message\":{}}}", kind, nlohmann::json(message).dump()) << "\n";
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    io::write_file_atomic(out_path, text);
  }
}

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fixed(double x) { return fmt::format("{:.6f}", x); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally controlled distance vector flow active contours"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "evolve one contour and score it");
  {
    std::vector<std::string> keys = kSnakeKeys;
    keys.insert(keys.end(), kInputKeys.begin(), kInputKeys.end());
    run_opts.add(run_cmd, keys);
  }

  RunOptions batch_opts;
  std::string manifest, batch_out;
  int jobs = 1;
  auto* batch_cmd = app.add_subcommand("batch", "run every manifest item, print JSON lines and means");
  batch_opts.add(batch_cmd, kSnakeKeys);
  batch_cmd->add_option("--manifest", manifest, "lines of: mask [gt [image]]")->required();
  batch_cmd->add_option("--jobs", jobs, "items in flight")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--out", batch_out, "JSON-lines file (default stdout)");

  RunOptions sweep_opts;
  std::string axis, values, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "one run per axis value, CSV out");
  sweep_opts.add(sweep_cmd, {"profile", "field", "clip", "init", "init-radius-scale", "iters", "tau", "nodes",
                             "alpha", "beta", "kappa", "resample", "mask", "gt", "image"});
  sweep_cmd->add_option("--axis", axis, "radius | iterations | field | init")
      ->required()
      ->check(CLI::IsMember({"radius", "iterations", "field", "init"}));
  sweep_cmd->add_option("--values", values, "comma-separated axis values")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV file (default stdout)");

  std::string pred_path, gt_path, metrics_out;
  bool as_json = false;
  auto* metrics_cmd = app.add_subcommand("metrics", "IoU, Dice and BoundF of two masks");
  metrics_cmd->add_option("--pred", pred_path, "predicted mask PGM")->required();
  metrics_cmd->add_option("--gt", gt_path, "ground-truth mask PGM")->required();
  metrics_cmd->add_flag("--json", as_json, "print JSON");
  metrics_cmd->add_option("--out", metrics_out, "write to file instead of stdout");

  std::string dt_mask, dt_out, dt_preview;
  auto* dt_cmd = app.add_subcommand("dt", "distance transform of a mask's inner boundary");
  dt_cmd->add_option("--mask", dt_mask, "mask PGM")->required();
  dt_cmd->add_option("--out", dt_out, "PFM output")->required();
  dt_cmd->add_option("--preview", dt_preview, "also write a normalized PGM");

  RunOptions learn_opts;
  std::string learn_image, learn_gt, learn_out;
  int epochs = 100;
  double lr = 1e-3;
  auto* learn_cmd = app.add_subcommand("learn", "fit per-pixel alpha/beta/kappa to one mask pair");
  learn_opts.add(learn_cmd, kSnakeKeys);
  learn_cmd->add_option("--image", learn_image, "input map PGM, thresholded at 128, drives the snake")->required();
  learn_cmd->add_option("--gt", learn_gt, "ground-truth mask PGM")->required();
  learn_cmd->add_option("--epochs", epochs, "epochs")->check(CLI::NonNegativeNumber);
  learn_cmd->add_option("--lr", lr, "learning rate")->check(CLI::NonNegativeNumber);
  learn_cmd->add_option("--out", learn_out, "directory for alpha.json, beta.pfm, kappa.pfm")->required();

  std::string synth_shape, synth_out;
  int synth_size = 64;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic test mask");
  synth_cmd->add_option("--shape", synth_shape, "disk | rectangle | star | u_shape | annulus_cut_blob")->required();
  synth_cmd->add_option("--size", synth_size, "frame side in px")->check(CLI::Range(8, 4096));
  synth_cmd->add_option("--out", synth_out, "mask PGM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (*run_cmd) {
      const RunConfig config = run_opts.resolve();
      const RunResult r = run(config);
      std::cout << metrics_json(r.metrics) << "\n";
      std::cerr << fmt::format("run: {} iterations, wall_ms={:.1f}\n", config.snake.iterations, r.wall_ms);
      return 0;
    }
    if (*batch_cmd) {
      const RunConfig config = batch_opts.resolve();
      const auto items = read_manifest(manifest);
      const BatchReport report = batch(config, items, jobs);
      emit(batch_out, batch_jsonl(items, report));
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (!report.items[i].metrics) report_error("item", fmt::format("{}: {}", i, report.items[i].error));
      }
      return report.failed ? kExitCompute : 0;
    }
    if (*sweep_cmd) {
      const RunConfig config = sweep_opts.resolve();
      const auto rows = sweep(config, parse_sweep_axis(axis), split_values(values));
      emit(sweep_out, sweep_csv(rows));
      for (const SweepRow& row : rows) {
        if (!row.metrics) return kExitCompute;
      }
      return 0;
    }
    if (*metrics_cmd) {
      const BinaryMask pred = io::read_mask(pred_path);
      const BinaryMask gt = io::read_mask(gt_path);
      const MetricsReport m = evaluate(pred, gt);
      std::string text;
      if (as_json) {
        text = metrics_json(m) + "\n";
      } else {
        text = fmt::format("iou {}\ndice {}\nboundf {}\n", fixed(m.iou), fixed(m.dice), fixed(m.boundf));
      }
      emit(metrics_out, text);
      return 0;
    }
    if (*dt_cmd) {
      const DistanceField dt = mask_to_dt(io::read_mask(dt_mask));
      io::write_pfm(dt_out, dt);
      if (!dt_preview.empty()) {
        double peak = 0.0;
        for (double x : dt.data()) peak = std::max(peak, x);
        ScalarField img(dt.width(), dt.height(), 0.0);
        for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = peak > 0 ? 255.0 * dt.data()[i] / peak : 0.0;
        io::write_pgm(dt_preview, img);
      }
      return 0;
    }
    if (*learn_cmd) {
      RunConfig config = learn_opts.resolve();
      config.mask = learn_image;
      config.gt = learn_gt;
      const RunInputs inputs = load_inputs(config);
      const ForceField force = build_force(config, inputs);
      const int w = inputs.mask.width();
      const int h = inputs.mask.height();
      const Contour init =
          circle_to_contour(init_circle(inputs.mask, config.init, config.init_radius_scale), config.snake.nodes, w, h);
      const FitResult fit = fit_parameters(inputs.gt, force, init, inputs.params, config.snake, lr, epochs);
      for (const EpochRecord& e : fit.history) {
        std::cerr << fmt::format("epoch {} iou {} alpha {}\n", e.epoch, fixed(e.iou), fixed(e.alpha));
      }
      fs::create_directories(learn_out);
      io::write_file_atomic(fs::path(learn_out) / "alpha.json",
                            fmt::format("{{\"alpha\":{},\"best_iou\":{},\"initial_iou\":{}}}\n", fixed(fit.best.alpha),
                                        fixed(fit.best_iou), fixed(fit.initial_iou)));
      io::write_pfm(fs::path(learn_out) / "beta.pfm", fit.best.beta);
      io::write_pfm(fs::path(learn_out) / "kappa.pfm", fit.best.kappa);
      std::cout << fmt::format("{{\"initial_iou\":{},\"best_iou\":{}}}\n", fixed(fit.initial_iou), fixed(fit.best_iou));
      return 0;
    }
    if (*synth_cmd) {
      io::write_mask(synth_out, shapes::by_name(synth_shape, synth_size));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    report_error("usage", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    report_error("io", e.what());
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    report_error("io", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    report_error("compute", e.what());
    return kExitCompute;
  } catch (const std::exception& e) {
    report_error("compute", e.what());
    return kExitCompute;
  }
  return kExitUsage;
}
