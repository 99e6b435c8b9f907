#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lcdvf/field_ops.hpp"
#include "lcdvf/image_io.hpp"
#include "lcdvf/pipeline.hpp"
#include "lcdvf/shapes.hpp"

using namespace lcdvf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lcdvf_pipeline_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

RunConfig disk_config(const fs::path& dir) {
  io::write_mask(dir / "disk.pgm", shapes::disk(64));
  RunConfig c = RunConfig::for_profile(Profile::Building);
  c.mask = dir / "disk.pgm";
  return c;
}

}  // namespace

TEST_CASE("profile defaults") {
  const RunConfig b = RunConfig::for_profile(Profile::Building);
  CHECK(b.snake.nodes == 60);
  CHECK(b.snake.iterations == 50);
  CHECK(b.init == InitMode::Circumscribed);
  const RunConfig m = RunConfig::for_profile(Profile::Medical);
  CHECK(m.snake.nodes == 100);
  CHECK(m.snake.iterations == 10);
  CHECK(m.init == InitMode::Inscribed);
  CHECK(b.field == FieldKind::LCDVF);
  CHECK(b.snake.tau == 0.1);
  CHECK_THROWS(parse_profile("satellite"));
}

TEST_CASE("building profile segments the disk") {
  const RunResult r = run(disk_config(fresh_dir("disk")));
  CHECK(r.metrics.iou >= 0.95);
}

TEST_CASE("dry run predicts the raster of the initial circle") {
  RunConfig c = disk_config(fresh_dir("dry"));
  c.snake.iterations = 0;
  const RunInputs in = load_inputs(c);
  const RunResult r = compute(c, in);
  const Contour init = circle_to_contour(r.init_circle, 60, 64, 64);
  CHECK(r.prediction == rasterize(init, 64, 64).mask);
  CHECK(r.trace.entries.size() == 1);
}

TEST_CASE("missing inputs fail before anything is written") {
  const fs::path dir = fresh_dir("missing");
  RunConfig c = RunConfig::for_profile(Profile::Building);
  c.mask = dir / "nope.pgm";
  c.out_dir = dir / "out";
  CHECK_THROWS_AS(run(c), IoError);
  CHECK_FALSE(fs::exists(c.out_dir));

  c = disk_config(dir);
  c.beta = (dir / "beta.pfm").string();
  c.out_dir = dir / "out";
  CHECK_THROWS_AS(run(c), IoError);
  CHECK_FALSE(fs::exists(c.out_dir));
}

TEST_CASE("mismatched map sizes are dimension errors") {
  const fs::path dir = fresh_dir("dims");
  RunConfig c = disk_config(dir);
  io::write_pfm(dir / "kappa.pfm", ScalarField(32, 32, 0.1));
  c.kappa = (dir / "kappa.pfm").string();
  CHECK_THROWS_AS(load_inputs(c), DimensionError);
  io::write_mask(dir / "gt.pgm", shapes::disk(32));
  c = disk_config(dir);
  c.gt = dir / "gt.pgm";
  CHECK_THROWS_AS(load_inputs(c), DimensionError);
}

TEST_CASE("outputs: files, 6-decimal JSON, metrics reproducible from the written mask") {
  const fs::path dir = fresh_dir("outputs");
  RunConfig c = disk_config(dir);
  c.out_dir = dir / "out";
  const RunResult r = run(c);
  REQUIRE(fs::exists(c.out_dir / "contour.json"));
  REQUIRE(fs::exists(c.out_dir / "prediction.pgm"));
  REQUIRE(fs::exists(c.out_dir / "result.json"));
  const MetricsReport again = evaluate(io::read_mask(c.out_dir / "prediction.pgm"), shapes::disk(64));
  CHECK(metrics_json(again) == metrics_json(r.metrics));
  const std::string json = read_text(c.out_dir / "result.json");
  CHECK(json.find('\r') == std::string::npos);
  CHECK(json.back() == '\n');
  CHECK(json.find(metrics_json(r.metrics)) != std::string::npos);
}

TEST_CASE("metrics JSON layout") {
  MetricsReport m{0.5, 2.0 / 3.0, 0.25, {1, 0.5, 0.25, 0.125, 0.0625}};
  CHECK(metrics_json(m) ==
        "{\"iou\":0.500000,\"dice\":0.666667,\"boundf\":0.250000,"
        "\"boundf_per_threshold\":[1.000000,0.500000,0.250000,0.125000,0.062500]}");
}

TEST_CASE("identical runs write byte-identical files") {
  const fs::path dir = fresh_dir("determinism");
  RunConfig c = disk_config(dir);
  c.out_dir = dir / "a";
  run(c);
  c.out_dir = dir / "b";
  run(c);
  for (const char* name : {"contour.json", "prediction.pgm", "result.json"}) {
    CHECK(read_text(dir / "a" / name) == read_text(dir / "b" / name));
  }
}

TEST_CASE("frame dumps: one PGM and one JSON per trace entry") {
  const fs::path dir = fresh_dir("frames");
  RunConfig c = disk_config(dir);
  c.snake.iterations = 3;
  c.dump_frames = dir / "frames";
  run(c);
  for (int k = 0; k <= 3; ++k) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "frame_%04d", k);
    CHECK(fs::exists(c.dump_frames / (std::string(stem) + ".pgm")));
    CHECK(fs::exists(c.dump_frames / (std::string(stem) + ".json")));
  }
  CHECK_FALSE(fs::exists(c.dump_frames / "frame_0004.pgm"));
  CHECK(read_text(c.dump_frames / "frame_0002.json").rfind("{\"iteration\":2,", 0) == 0);
}

TEST_CASE("manifest parsing") {
  const fs::path dir = fresh_dir("manifest");
  std::ofstream(dir / "m.txt") << "# comment\n\na.pgm\nsub/b.pgm  gt.pgm img.pgm  # trailing\r\n/abs/c.pgm\n";
  const auto items = read_manifest(dir / "m.txt");
  REQUIRE(items.size() == 3);
  CHECK(items[0].mask == dir / "a.pgm");
  CHECK(items[0].gt.empty());
  CHECK(items[1].mask == dir / "sub/b.pgm");
  CHECK(items[1].gt == dir / "gt.pgm");
  CHECK(items[1].image == dir / "img.pgm");
  CHECK(items[2].mask == fs::path("/abs/c.pgm"));
  std::ofstream(dir / "empty.txt") << "# nothing\n";
  CHECK_THROWS_AS(read_manifest(dir / "empty.txt"), IoError);
}

TEST_CASE("batch: single item, duplicates, failures, ordering") {
  const fs::path dir = fresh_dir("batch");
  const RunConfig base = RunConfig::for_profile(Profile::Building);
  io::write_mask(dir / "disk.pgm", shapes::disk(64));
  io::write_mask(dir / "star.pgm", shapes::star(64));

  const std::vector<BatchItem> one = {{dir / "disk.pgm", {}, {}}};
  const BatchReport r1 = batch(base, one, 1);
  REQUIRE(r1.items[0].metrics);
  CHECK(metrics_json(r1.mean) == metrics_json(*r1.items[0].metrics));

  const std::vector<BatchItem> items = {{dir / "disk.pgm", {}, {}},
                                        {dir / "missing.pgm", {}, {}},
                                        {dir / "star.pgm", {}, {}},
                                        {dir / "disk.pgm", {}, {}}};
  const BatchReport serial = batch(base, items, 1);
  const BatchReport parallel = batch(base, items, 3);
  CHECK(serial.failed == 1);
  CHECK_FALSE(serial.items[1].metrics);
  CHECK(batch_jsonl(items, serial) == batch_jsonl(items, parallel));
  CHECK(metrics_json(*serial.items[0].metrics) == metrics_json(*serial.items[3].metrics));
  const double want = (serial.items[0].metrics->iou * 2 + serial.items[2].metrics->iou) / 3.0;
  CHECK(serial.mean.iou == doctest::Approx(want));
  const std::string text = batch_jsonl(items, serial);
  CHECK(text.find("\"index\":1,") != std::string::npos);
  CHECK(text.find("\"error\":") != std::string::npos);
  CHECK(text.find("\"aggregate\":") != std::string::npos);
}

TEST_CASE("sweep rows") {
  const fs::path dir = fresh_dir("sweep");
  const RunConfig c = disk_config(dir);
  const auto single = sweep(c, SweepAxis::Radius, {"1.0"});
  REQUIRE(single.size() == 1);
  REQUIRE(single[0].metrics);
  CHECK(metrics_json(*single[0].metrics) == metrics_json(compute(c, load_inputs(c)).metrics));

  const auto fields = sweep(c, SweepAxis::Field, {"lcdvf", "dvf", "bogus"});
  CHECK(fields[0].metrics);
  CHECK(fields[1].metrics);
  CHECK_FALSE(fields[2].metrics);
  CHECK_FALSE(fields[2].error.empty());

  const std::string csv = sweep_csv(fields);
  CHECK(csv.rfind("axis_value,iou,dice,boundf,error\n", 0) == 0);
  CHECK(csv.find("\nbogus,,,,") != std::string::npos);
}

TEST_CASE("iteration sweep on the disk: IoU at 50 within 0.02 below IoU at 10") {
  const RunConfig c = disk_config(fresh_dir("sweep_iters"));
  const auto iters = sweep(c, SweepAxis::Iterations, {"10", "50"});
  REQUIRE(iters[0].metrics);
  REQUIRE(iters[1].metrics);
  CHECK(iters[1].metrics->iou >= iters[0].metrics->iou - 0.02);
}

TEST_CASE("batch over the synthetic suite is reproduced bit for bit") {
  const fs::path dir = fresh_dir("suite");
  std::vector<BatchItem> items;
  for (const auto& fx : shapes::suite()) {
    io::write_mask(dir / (fx.name + ".pgm"), fx.mask);
    items.push_back({dir / (fx.name + ".pgm"), {}, {}});
  }
  const RunConfig base = RunConfig::for_profile(Profile::Building);
  const std::string first = batch_jsonl(items, batch(base, items, 2));
  const std::string second = batch_jsonl(items, batch(base, items, 4));
  CHECK(first == second);
  CHECK(first.find("\"count\":10") != std::string::npos);
}
