#include "lcdvf/pipeline.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lcdvf/distance_transform.hpp"
#include "lcdvf/field_ops.hpp"
#include "lcdvf/image_io.hpp"

namespace lcdvf {

namespace fs = std::filesystem;

std::string_view to_string(Profile profile) { return profile == Profile::Building ? "building" : "medical"; }

Profile parse_profile(std::string_view text) {
  if (text == "building") return Profile::Building;
  if (text == "medical") return Profile::Medical;
  throw Error(fmt::format("unknown profile '{}'", text));
}

FieldKind parse_field_kind(std::string_view text) {
  if (text == "lcdvf") return FieldKind::LCDVF;
  if (text == "dvf") return FieldKind::DVF;
  if (text == "energy") return FieldKind::EnergyGradient;
  throw Error(fmt::format("unknown field '{}'", text));
}

InitMode parse_init_mode(std::string_view text) {
  if (text == "inscribed") return InitMode::Inscribed;
  if (text == "circumscribed") return InitMode::Circumscribed;
  throw Error(fmt::format("unknown init mode '{}'", text));
}

RunConfig RunConfig::for_profile(Profile profile) {
  RunConfig c;
  c.profile = profile;
  if (profile == Profile::Building) {
    c.snake.nodes = 60;
    c.snake.iterations = 50;
    c.init = InitMode::Circumscribed;
  } else {
    c.snake.nodes = 100;
    c.snake.iterations = 10;
    c.init = InitMode::Inscribed;
  }
  return c;
}

namespace {

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const double x = std::stod(text, &used);
    if (used == text.size()) return x;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

void require_file(const fs::path& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError(fmt::format("{} file not found: {}", what, path.string()));
}

ScalarField load_map(const std::string& value, int w, int h, const char* what) {
  if (auto x = parse_number(value)) return ScalarField(w, h, *x);
  require_file(value, what);
  ScalarField f = io::read_pfm(value);
  if (f.width() != w || f.height() != h) {
    throw DimensionError(fmt::format("{} map is {}x{}, mask is {}x{}", what, f.width(), f.height(), w, h));
  }
  return f;
}

double load_alpha(const std::string& value) {
  if (auto x = parse_number(value)) return *x;
  require_file(value, "alpha");
  std::ifstream in(value);
  try {
    const auto j = nlohmann::json::parse(in);
    return j.at("alpha").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("cannot read alpha from {}: {}", value, e.what()));
  }
}

std::string fixed(double x) { return fmt::format("{:.6f}", x); }

std::string array_json(std::span<const double> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fixed(xs[i]);
  }
  return out + "]";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

BinaryMask read_mask_checked(const fs::path& path, const char* what) {
  require_file(path, what);
  return io::read_mask(path);
}

}  // namespace

RunInputs load_inputs(const RunConfig& config) {
  config.snake.validate();
  if (!(config.init_radius_scale > 0.0)) throw Error("init radius scale must be positive");
  if (config.mask.empty()) throw IoError("no mask given");
  RunInputs in;
  in.mask = read_mask_checked(config.mask, "mask");
  const int w = in.mask.width();
  const int h = in.mask.height();
  in.gt = config.gt.empty() ? in.mask : read_mask_checked(config.gt, "ground-truth");
  require_same_shape(in.mask, in.gt, "ground truth");
  if (!config.image.empty()) {
    require_file(config.image, "image");
    in.image = io::read_pgm(config.image);
    require_same_shape(in.mask, *in.image, "image");
  }
  if (config.field == FieldKind::EnergyGradient && !config.energy_map.empty()) {
    require_file(config.energy_map, "energy map");
    in.energy = io::read_pfm(config.energy_map);
    require_same_shape(in.mask, *in.energy, "energy map");
  }
  in.params.alpha = load_alpha(config.alpha);
  in.params.beta = load_map(config.beta, w, h, "beta");
  in.params.kappa = load_map(config.kappa, w, h, "kappa");
  in.params.validate(w, h);
  return in;
}

ForceField build_force(const RunConfig& config, const RunInputs& inputs) {
  const DistanceField dt = mask_to_dt(inputs.mask);
  switch (config.field) {
    case FieldKind::DVF:
      return dvf(dt, config.snake.clip_norm);
    case FieldKind::LCDVF:
      return lcdvf(dt, config.snake.clip_norm);
    case FieldKind::EnergyGradient:
      return energy_gradient_field(inputs.energy ? *inputs.energy : dt, config.snake.clip_norm);
  }
  throw Error("unknown field kind");
}

Circle init_circle(const BinaryMask& mask, InitMode mode, double radius_scale) {
  Circle c = mode == InitMode::Inscribed ? inscribed_circle(mask) : circumscribed_circle(mask);
  c.radius *= radius_scale;
  return c;
}

RunResult compute(const RunConfig& config, const RunInputs& inputs) {
  const auto start = std::chrono::steady_clock::now();
  const int w = inputs.mask.width();
  const int h = inputs.mask.height();
  const ForceField force = build_force(config, inputs);
  RunResult r{init_circle(inputs.mask, config.init, config.init_radius_scale), Contour({{0, 0}, {1, 0}, {0, 1}}),
              BinaryMask(w, h, 0), {}, {}, 0.0};
  const Contour init = circle_to_contour(r.init_circle, config.snake.nodes, w, h);
  EvolveResult evolved = evolve(init, force, inputs.params, config.snake);
  r.final_contour = std::move(evolved.final_contour);
  r.trace = std::move(evolved.trace);
  r.prediction = rasterize(r.final_contour, w, h).mask;
  r.metrics = evaluate(r.prediction, inputs.gt);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string metrics_json(const MetricsReport& m) {
  return fmt::format("{{\"iou\":{},\"dice\":{},\"boundf\":{},\"boundf_per_threshold\":{}}}", fixed(m.iou),
                     fixed(m.dice), fixed(m.boundf), array_json(m.boundf_per_threshold));
}

namespace {

std::string nodes_json(const Contour& contour) {
  std::string out = "[";
  for (std::size_t i = 0; i < contour.size(); ++i) {
    if (i) out += ",";
    out += fmt::format("[{},{}]", fixed(contour[i].u), fixed(contour[i].v));
  }
  return out + "]";
}

}  // namespace

std::string contour_json(const Contour& contour) { return "{\"nodes\":" + nodes_json(contour) + "}"; }

std::string result_json(const RunConfig& config, const RunResult& r) {
  std::vector<double> energy, displacement;
  for (const TraceEntry& e : r.trace.entries) {
    energy.push_back(e.energy);
    displacement.push_back(e.mean_displacement);
  }
  return fmt::format(
      "{{\"profile\":\"{}\",\"field\":\"{}\",\"init\":\"{}\",\"init_circle\":{{\"u\":{},\"v\":{},\"radius\":{}}},"
      "\"iterations\":{},\"nodes\":{},\"metrics\":{},\"trace\":{{\"energy\":{},\"mean_displacement\":{}}}}}\n",
      to_string(config.profile), to_string(config.field), to_string(config.init), fixed(r.init_circle.center.u),
      fixed(r.init_circle.center.v), fixed(r.init_circle.radius), config.snake.iterations, config.snake.nodes,
      metrics_json(r.metrics), array_json(energy), array_json(displacement));
}

ScalarField render_overlay(const BinaryMask& mask, const BinaryMask& prediction, const ScalarField* image) {
  ScalarField out(mask.width(), mask.height(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double base = image ? std::round(image->data()[i] * 96.0 / 255.0) : (mask.data()[i] ? 96.0 : 0.0);
    if (image && mask.data()[i]) base = 96.0;
    out.data()[i] = prediction.data()[i] ? std::min(255.0, base + 159.0) : base;
  }
  return out;
}

void write_outputs(const RunConfig& config, const RunInputs& inputs, const RunResult& r) {
  if (!config.out_dir.empty()) {
    fs::create_directories(config.out_dir);
    io::write_file_atomic(config.out_dir / "contour.json", contour_json(r.final_contour) + "\n");
    io::write_mask(config.out_dir / "prediction.pgm", r.prediction);
    io::write_file_atomic(config.out_dir / "result.json", result_json(config, r));
  }
  if (!config.dump_frames.empty()) {
    fs::create_directories(config.dump_frames);
    const int w = inputs.mask.width();
    const int h = inputs.mask.height();
    const ScalarField* image = inputs.image ? &*inputs.image : nullptr;
    for (std::size_t k = 0; k < r.trace.entries.size(); ++k) {
      const TraceEntry& e = r.trace.entries[k];
      const BinaryMask pred = rasterize(e.contour, w, h).mask;
      const std::string stem = fmt::format("frame_{:04d}", k);
      io::write_pgm(config.dump_frames / (stem + ".pgm"), render_overlay(inputs.mask, pred, image));
      io::write_file_atomic(config.dump_frames / (stem + ".json"),
                            fmt::format("{{\"iteration\":{},\"energy\":{},\"mean_displacement\":{},\"nodes\":{}}}\n",
                                        k, fixed(e.energy), fixed(e.mean_displacement),
                                        nodes_json(e.contour)));
    }
  }
}

RunResult run(const RunConfig& config) {
  const RunInputs inputs = load_inputs(config);
  RunResult r = compute(config, inputs);
  write_outputs(config, inputs, r);
  return r;
}

std::vector<BatchItem> read_manifest(const fs::path& manifest) {
  require_file(manifest, "manifest");
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  const fs::path base = manifest.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  std::vector<BatchItem> items;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string mask, gt, image, extra;
    if (!(fields >> mask)) continue;
    fields >> gt >> image;
    if (fields >> extra) throw IoError("manifest line has more than 3 columns: " + line);
    BatchItem item{resolve(mask), gt.empty() ? fs::path() : resolve(gt), image.empty() ? fs::path() : resolve(image)};
    items.push_back(std::move(item));
  }
  if (items.empty()) throw IoError("manifest lists no items: " + manifest.string());
  return items;
}

BatchReport batch(const RunConfig& base, const std::vector<BatchItem>& items, int jobs) {
  if (jobs < 1) throw Error("jobs must be >= 1");
  BatchReport report;
  report.items.resize(items.size());
  const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long i = 0; i < n; ++i) {
    RunConfig config = base;
    config.mask = items[i].mask;
    config.gt = items[i].gt;
    config.image = items[i].image;
    config.out_dir.clear();
    config.dump_frames.clear();
    try {
      report.items[i].metrics = compute(config, load_inputs(config)).metrics;
    } catch (const std::exception& e) {
      report.items[i].error = e.what();
    }
  }
  std::size_t ok = 0;
  for (const BatchOutcome& item : report.items) {
    if (!item.metrics) {
      ++report.failed;
      continue;
    }
    ++ok;
    report.mean.iou += item.metrics->iou;
    report.mean.dice += item.metrics->dice;
    report.mean.boundf += item.metrics->boundf;
    for (std::size_t t = 0; t < kBoundFThresholds.size(); ++t) {
      report.mean.boundf_per_threshold[t] += item.metrics->boundf_per_threshold[t];
    }
  }
  if (ok > 0) {
    const double k = static_cast<double>(ok);
    report.mean.iou /= k;
    report.mean.dice /= k;
    report.mean.boundf /= k;
    for (double& x : report.mean.boundf_per_threshold) x /= k;
  }
  return report;
}

std::string batch_jsonl(const std::vector<BatchItem>& items, const BatchReport& report) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const BatchOutcome& item = report.items[i];
    if (item.metrics) {
      out += fmt::format("{{\"index\":{},\"mask\":{},\"metrics\":{}}}\n", i, json_string(items[i].mask.string()),
                         metrics_json(*item.metrics));
    } else {
      out += fmt::format("{{\"index\":{},\"mask\":{},\"error\":{}}}\n", i, json_string(items[i].mask.string()),
                         json_string(item.error));
    }
  }
  const std::size_t ok = items.size() - report.failed;
  out += fmt::format(
      "{{\"aggregate\":{{\"count\":{},\"succeeded\":{},\"failed\":{},\"miou\":{},\"dice\":{},\"boundf\":{}}}}}\n",
      items.size(), ok, report.failed, fixed(report.mean.iou), fixed(report.mean.dice), fixed(report.mean.boundf));
  return out;
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "radius") return SweepAxis::Radius;
  if (text == "iterations") return SweepAxis::Iterations;
  if (text == "field") return SweepAxis::Field;
  if (text == "init") return SweepAxis::Init;
  throw Error(fmt::format("unknown sweep axis '{}'", text));
}

std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis, const std::vector<std::string>& values) {
  if (values.empty()) throw Error("sweep needs at least one value");
  RunConfig loading = base;
  // An energy map may be needed by any row of a field sweep.
  if (axis == SweepAxis::Field) loading.field = FieldKind::EnergyGradient;
  const RunInputs inputs = load_inputs(loading);

  std::vector<SweepRow> rows;
  for (const std::string& value : values) {
    SweepRow row{value, std::nullopt, {}};
    try {
      RunConfig config = base;
      switch (axis) {
        case SweepAxis::Radius: {
          const auto x = parse_number(value);
          if (!x || !(*x > 0.0)) throw Error("radius scale must be a positive number");
          config.init_radius_scale = *x;
          break;
        }
        case SweepAxis::Iterations: {
          const auto x = parse_number(value);
          if (!x || *x < 0 || std::floor(*x) != *x) throw Error("iterations must be a non-negative integer");
          config.snake.iterations = static_cast<int>(*x);
          break;
        }
        case SweepAxis::Field:
          config.field = parse_field_kind(value);
          break;
        case SweepAxis::Init:
          config.init = parse_init_mode(value);
          break;
      }
      RunInputs local = inputs;
      if (config.field != FieldKind::EnergyGradient) local.energy.reset();
      row.metrics = compute(config, local).metrics;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
  };
  std::string out = "axis_value,iou,dice,boundf,error\n";
  for (const SweepRow& r : rows) {
    if (r.metrics) {
      out += fmt::format("{},{},{},{},\n", quote(r.axis_value), fixed(r.metrics->iou), fixed(r.metrics->dice),
                         fixed(r.metrics->boundf));
    } else {
      out += fmt::format("{},,,,{}\n", quote(r.axis_value), quote(r.error));
    }
  }
  return out;
}

}  // namespace lcdvf
