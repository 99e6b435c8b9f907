#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lcdvf/auto_init.hpp"
#include "lcdvf/metrics.hpp"
#include "lcdvf/snake.hpp"
#include "lcdvf/vector_flow.hpp"

namespace lcdvf {

enum class Profile { Building, Medical };

std::string_view to_string(Profile profile);
Profile parse_profile(std::string_view text);
FieldKind parse_field_kind(std::string_view text);
InitMode parse_init_mode(std::string_view text);

// Everything a single run needs. Paths are checked and parsed by
// load_inputs before any computation.
struct RunConfig {
  Profile profile = Profile::Building;

  std::filesystem::path mask;   // drives the distance transform and the init circle
  std::filesystem::path gt;     // scored against; defaults to `mask`
  std::filesystem::path image;  // optional, used for frame rendering

  FieldKind field = FieldKind::LCDVF;
  std::filesystem::path energy_map;  // PFM for FieldKind::EnergyGradient; empty means E = DT

  InitMode init = InitMode::Circumscribed;
  double init_radius_scale = 1.0;

  SnakeConfig snake;
  std::string alpha = "0.01";  // number or JSON file with an "alpha" key
  std::string beta = "0.1";    // number or PFM map
  std::string kappa = "0.2";   // number or PFM map

  std::filesystem::path out_dir;      // contour.json, prediction.pgm, result.json
  std::filesystem::path dump_frames;  // frame_%04d.pgm + frame_%04d.json

  // Profile defaults: building = 60 nodes, circumscribed, 50 iterations;
  // medical = 100 nodes, inscribed, 10 iterations.
  static RunConfig for_profile(Profile profile);
};

struct RunInputs {
  BinaryMask mask;
  BinaryMask gt;
  std::optional<ScalarField> image;
  std::optional<ScalarField> energy;
  ParameterSet params;
};

// Reads and validates every referenced file. Throws IoError on missing or
// malformed files, DimensionError on size mismatches.
RunInputs load_inputs(const RunConfig& config);

struct RunResult {
  Circle init_circle;
  Contour final_contour;
  BinaryMask prediction;
  MetricsReport metrics;
  EvolutionTrace trace;
  double wall_ms = 0.0;
};

ForceField build_force(const RunConfig& config, const RunInputs& inputs);
Circle init_circle(const BinaryMask& mask, InitMode mode, double radius_scale);

// mask -> DT -> force -> init circle -> evolve -> rasterize -> metrics.
// No files are written.
RunResult compute(const RunConfig& config, const RunInputs& inputs);

// load_inputs + compute + atomic writes of the configured outputs.
RunResult run(const RunConfig& config);
void write_outputs(const RunConfig& config, const RunInputs& inputs, const RunResult& result);

// JSON with 6-decimal reals.
std::string metrics_json(const MetricsReport& report);
std::string contour_json(const Contour& contour);
std::string result_json(const RunConfig& config, const RunResult& result);

// Grey overlay: mask 96, prediction 159, both 255. With an image the
// image is dimmed to [0, 96] instead of the flat mask value.
ScalarField render_overlay(const BinaryMask& mask, const BinaryMask& prediction, const ScalarField* image);

struct BatchItem {
  std::filesystem::path mask;
  std::filesystem::path gt;
  std::filesystem::path image;
};

// One item per non-empty, non-comment line: `mask [gt [image]]`, relative
// paths resolved against the manifest's directory.
std::vector<BatchItem> read_manifest(const std::filesystem::path& manifest);

struct BatchOutcome {
  std::optional<MetricsReport> metrics;
  std::string error;
};

struct BatchReport {
  std::vector<BatchOutcome> items;
  std::size_t failed = 0;
  MetricsReport mean;  // over successful items
};

// Runs items with at most `jobs` in flight. Results keep manifest order.
BatchReport batch(const RunConfig& base, const std::vector<BatchItem>& items, int jobs);

// JSON lines: one per item, then one aggregate line.
std::string batch_jsonl(const std::vector<BatchItem>& items, const BatchReport& report);

enum class SweepAxis { Radius, Iterations, Field, Init };
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepRow {
  std::string axis_value;
  std::optional<MetricsReport> metrics;
  std::string error;
};

// One run per value on top of `base`. Inputs are loaded once.
std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis, const std::vector<std::string>& values);

// Columns: axis_value,iou,dice,boundf,error
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace lcdvf
