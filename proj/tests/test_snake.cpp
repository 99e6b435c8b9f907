#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcdvf/auto_init.hpp"
#include "lcdvf/distance_transform.hpp"
#include "lcdvf/field_ops.hpp"
#include "lcdvf/metrics.hpp"
#include "lcdvf/reference.hpp"
#include "lcdvf/shapes.hpp"
#include "lcdvf/snake.hpp"
#include "support.hpp"

using namespace lcdvf;
using namespace lcdvf::testing;

namespace {

Contour circle_nodes(Point c, double r, int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    pts.push_back({c.u + r * std::cos(a), c.v + r * std::sin(a)});
  }
  return Contour(std::move(pts));
}

Contour moved(const Contour& c, std::size_t s, int axis, double h) {
  std::vector<Point> pts(c.nodes().begin(), c.nodes().end());
  (axis == 0 ? pts[s].u : pts[s].v) += h;
  return Contour(std::move(pts));
}

// Left half foreground: on the right half DT is exactly u - (b - 1).
BinaryMask half_plane(int w, int h, int b) {
  BinaryMask m(w, h, 0);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < b; ++u) m(u, v) = 1;
  return m;
}

}  // namespace

TEST_CASE("energy terms on a square") {
  const int w = 20, h = 20;
  ParameterSet p = ParameterSet::uniform(w, h, 0.5, 0.25, 0.1);
  const Contour sq = square(4.5, 4.5, 4.0);  // encloses 16 pixel centers
  const Energy e = energy_eval(sq, ExternalPotential::sampled(ScalarField(w, h, 1.0)), p);
  CHECK(e.external == doctest::Approx(4.0));
  CHECK(e.continuity == doctest::Approx(0.5 * 4 * 16.0));
  CHECK(e.curvature == doctest::Approx(0.25 * 4 * 32.0));
  CHECK(e.balloon == doctest::Approx(0.1 * 16));
  CHECK_FALSE(e.degenerate);
}

TEST_CASE("energy special cases") {
  const ExternalPotential zero = ExternalPotential::sampled(ScalarField(20, 20, 0.0));
  const double a = 3.0, alpha = 0.7;
  Energy e = energy_eval(square(5, 5, a), zero, ParameterSet::uniform(20, 20, alpha, 0.0, 0.0));
  CHECK(e.total() == doctest::Approx(4 * alpha * a * a));
  auto g = rng(31);
  e = energy_eval(random_star_contour(g, {10, 10}, 2, 8, 13), zero, ParameterSet::uniform(20, 20, 0, 0, 0));
  CHECK(e.total() == 0.0);
  // side 3 centered on a pixel center: 3x3 enclosed centers
  e = energy_eval(square(8.5, 8.5, 3.0), zero, ParameterSet::uniform(20, 20, 0, 0, 0.25));
  CHECK(e.total() == doctest::Approx(0.25 * double(count_foreground(reference::rasterize_brute(square(8.5, 8.5, 3.0), 20, 20)))));
  CHECK(e.total() == doctest::Approx(0.25 * 9));
}

TEST_CASE("internal system: symmetric, uniform stencil") {
  const Contour c = circle_nodes({20, 20}, 8, 12);
  const double alpha = 0.3, beta = 0.7;
  const std::vector<double> b(12, beta);
  const InternalSystem a = assemble_internal_system(c, b, alpha);
  CHECK(a.symmetric(0.0));
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(a(i, i) == doctest::Approx(4 * alpha + 12 * beta));
    CHECK(a(i, (i + 1) % 12) == doctest::Approx(-2 * alpha - 8 * beta));
    CHECK(a(i, (i + 11) % 12) == doctest::Approx(-2 * alpha - 8 * beta));
    CHECK(a(i, (i + 2) % 12) == doctest::Approx(2 * beta));
    CHECK(a(i, (i + 3) % 12) == 0.0);
  }
}

TEST_CASE("A y matches finite differences of the internal energy") {
  auto g = rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(g, 5, 30);
    const Contour c = random_star_contour(g, {30, 30}, 5, 20, n);
    std::vector<double> beta(n);
    for (double& b : beta) b = uniform(g, 0.0, 1.0);
    const double alpha = uniform(g, 0.0, 0.5);
    const InternalSystem a = assemble_internal_system(c, beta, alpha);
    std::vector<double> us(n), vs(n);
    for (int s = 0; s < n; ++s) {
      us[s] = c[s].u;
      vs[s] = c[s].v;
    }
    const auto gu = a.apply(us);
    const auto gv = a.apply(vs);
    const double step = 1e-4;
    for (int s = 0; s < n; ++s) {
      const double fd_u = (internal_energy(moved(c, s, 0, step), alpha, beta) -
                           internal_energy(moved(c, s, 0, -step), alpha, beta)) / (2 * step);
      const double fd_v = (internal_energy(moved(c, s, 1, step), alpha, beta) -
                           internal_energy(moved(c, s, 1, -step), alpha, beta)) / (2 * step);
      REQUIRE(std::abs(fd_u - gu[s]) <= 1e-4);
      REQUIRE(std::abs(fd_v - gv[s]) <= 1e-4);
    }
  }
}

TEST_CASE("force equals minus the energy gradient where DT is affine") {
  const int w = 64, h = 48, b = 16;
  const BinaryMask m = half_plane(w, h, b);
  const ForceField f = lcdvf::lcdvf(mask_to_dt(m), kNoClip);
  ParameterSet p = ParameterSet::uniform(w, h, 0.01, 0.1, 0.0);
  auto g = rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Contour c = random_star_contour(g, {uniform(g, 36, 44), uniform(g, 20, 28)}, 3, 15, 24);
    const std::vector<double> beta = sample_at_nodes(p.beta, c);
    auto total = [&](const Contour& y) {
      double e = internal_energy(y, p.alpha, beta);
      for (const Point& q : y.nodes()) e += f.potential.at(q);
      return e;
    };
    const InternalSystem a = assemble_internal_system(c, beta, p.alpha);
    std::vector<double> us, vs;
    for (const Point& q : c.nodes()) {
      us.push_back(q.u);
      vs.push_back(q.v);
    }
    const auto au = a.apply(us), av = a.apply(vs);
    double worst = 0.0, scale = 0.0;
    for (std::size_t s = 0; s < c.size(); ++s) {
      const double hstep = 1e-4;
      const double fd_u = (total(moved(c, s, 0, hstep)) - total(moved(c, s, 0, -hstep))) / (2 * hstep);
      const double fd_v = (total(moved(c, s, 1, hstep)) - total(moved(c, s, 1, -hstep))) / (2 * hstep);
      const Point fe = f.at(c[s]);
      worst = std::max({worst, std::abs(fd_u - (au[s] - fe.u)), std::abs(fd_v - (av[s] - fe.v))});
      scale = std::max({scale, std::abs(fd_u), std::abs(fd_v)});
    }
    REQUIRE(worst <= 1e-3 * scale);
  }
}

TEST_CASE("balloon force points outward for positive kappa") {
  const Contour c = circle_nodes({20, 20}, 6, 16);
  const auto f = balloon_force(c, ScalarField(40, 40, 0.5));
  for (std::size_t s = 0; s < c.size(); ++s) {
    CHECK(norm(f[s]) == doctest::Approx(0.5));
    CHECK(dot(f[s], c[s] - Point{20, 20}) > 0.0);
  }
  const auto inward = balloon_force(c, ScalarField(40, 40, -0.5));
  CHECK(dot(inward[0], c[0] - Point{20, 20}) < 0.0);
}

TEST_CASE("balloon: zero kappa gives zero force, negative kappa shrinks") {
  const Contour c = circle_nodes({20, 20}, 6, 16);
  for (const Point& f : balloon_force(c, ScalarField(40, 40, 0.0))) CHECK(norm(f) == 0.0);
  const auto f = balloon_force(c, ScalarField(40, 40, -1.0));
  double before = 0.0, after = 0.0;
  for (std::size_t s = 0; s < c.size(); ++s) {
    before += norm(c[s] - Point{20, 20});
    after += norm(c[s] + f[s] - Point{20, 20});
  }
  CHECK(after < before);
}

TEST_CASE("smoothing alone shortens any polygon") {
  const ForceField none = energy_gradient_field(ScalarField(64, 64, 0.0), kNoClip);
  SnakeConfig cfg;
  cfg.iterations = 1;
  auto g = rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Contour c = random_star_contour(g, {32, 32}, 5, 25, uniform_int(g, 3, 40));
    const Contour next = evolve_step(c, none, ParameterSet::uniform(64, 64, 0.05, 0.0, 0.0), cfg);
    REQUIRE(next.perimeter() < c.perimeter());
  }
}

TEST_CASE("without internal terms a step is a plain force step") {
  ScalarField ramp(64, 64);
  for (int v = 0; v < 64; ++v)
    for (int u = 0; u < 64; ++u) ramp(u, v) = 0.5 * u - 0.25 * v;
  const ForceField f = energy_gradient_field(ramp, kNoClip);  // constant (-0.5, 0.25)
  SnakeConfig cfg;
  const Contour c = circle_nodes({30, 30}, 10, 12);
  const Contour next = evolve_step(c, f, ParameterSet::uniform(64, 64, 0, 0, 0), cfg);
  for (std::size_t s = 0; s < c.size(); ++s) {
    CHECK(next[s].u == doctest::Approx(c[s].u - cfg.tau * 0.5).epsilon(1e-12));
    CHECK(next[s].v == doctest::Approx(c[s].v + cfg.tau * 0.25).epsilon(1e-12));
  }
}

TEST_CASE("one step inside a disk moves every node toward the boundary") {
  const BinaryMask m = shapes::disk(64);
  const DistanceField dt = mask_to_dt(m);
  const ForceField f = lcdvf::lcdvf(dt, kNoClip);
  const Circle in = inscribed_circle(m);
  const Contour c = circle_nodes(in.center, in.radius * 0.5, 60);
  const Contour next = evolve_step(c, f, ParameterSet::uniform(64, 64, 0.01, 0.1, 0.0), SnakeConfig{});
  for (std::size_t s = 0; s < c.size(); ++s) {
    REQUIRE(bilinear_sample(dt, next[s]) < bilinear_sample(dt, c[s]));
  }
}

TEST_CASE("zero iterations is a dry run") {
  const BinaryMask m = shapes::disk(64);
  const ForceField f = lcdvf::lcdvf(mask_to_dt(m), kNoClip);
  const Contour init = circle_to_contour(circumscribed_circle(m), 60, 64, 64);
  SnakeConfig cfg;
  cfg.iterations = 0;
  const EvolveResult r = evolve(init, f, ParameterSet::uniform(64, 64, 0.01, 0.1, 0.2), cfg);
  CHECK(r.final_contour == init);
  CHECK(r.trace.entries.size() == 1);
}

TEST_CASE("disk converges from the inscribed circle on the brute-force field") {
  const BinaryMask m = shapes::disk(64);
  const auto boundary = boundary_pixels(m);
  const ForceField f = lcdvf::lcdvf(edt_brute(boundary, 64, 64), kNoClip);
  const Contour init = circle_to_contour(inscribed_circle(m), 60, 64, 64);
  const EvolveResult r = evolve(init, f, ParameterSet::uniform(64, 64, 0.01, 0.1, 0.2), SnakeConfig{});
  CHECK(r.trace.entries.size() == 51);
  CHECK(iou(rasterize(r.final_contour, 64, 64).mask, m) >= 0.95);
}

TEST_CASE("U-shape converges from the circumscribed circle") {
  const BinaryMask m = shapes::u_shape(64);
  const auto boundary = boundary_pixels(m);
  const ForceField f = lcdvf::lcdvf(edt_brute(boundary, 64, 64), kNoClip);
  const Contour init = circle_to_contour(circumscribed_circle(m), 60, 64, 64);
  const EvolveResult r = evolve(init, f, ParameterSet::uniform(64, 64, 0.01, 0.1, 0.2), SnakeConfig{});
  CHECK(iou(rasterize(r.final_contour, 64, 64).mask, m) >= 0.90);
}

TEST_CASE("energy does not increase on the rectangle with kappa = 0") {
  const BinaryMask m = shapes::rectangle(64);
  const ForceField f = lcdvf::lcdvf(mask_to_dt(m), kNoClip);
  const Contour init = circle_to_contour(circumscribed_circle(m), 60, 64, 64);
  const EvolveResult r = evolve(init, f, ParameterSet::uniform(64, 64, 0.01, 0.1, 0.0), SnakeConfig{});
  for (std::size_t k = 1; k < r.trace.entries.size(); ++k) {
    REQUIRE(r.trace.entries[k].energy <= r.trace.entries[k - 1].energy + 1e-6);
  }
}

TEST_CASE("nodes stay inside the frame") {
  const BinaryMask m = shapes::star(64);
  const ForceField f = lcdvf::lcdvf(mask_to_dt(m), kNoClip);
  const Contour init = circle_to_contour({{32, 32}, 80.0}, 40, 64, 64);
  SnakeConfig cfg;
  cfg.iterations = 5;
  cfg.resample_each_step = true;
  const EvolveResult r = evolve(init, f, ParameterSet::uniform(64, 64, 0.01, 0.1, 0.0), cfg);
  for (const TraceEntry& e : r.trace.entries) {
    for (const Point& p : e.contour.nodes()) {
      REQUIRE(p.u >= 0.0);
      REQUIRE(p.u <= 63.0);
      REQUIRE(p.v >= 0.0);
      REQUIRE(p.v <= 63.0);
    }
  }
}

TEST_CASE("invalid parameters and configs are rejected") {
  const BinaryMask m = shapes::disk(32);
  const ForceField f = lcdvf::lcdvf(mask_to_dt(m), kNoClip);
  const Contour init = circle_to_contour(inscribed_circle(m), 20, 32, 32);
  ParameterSet p = ParameterSet::uniform(32, 32, 0.01, 0.1, 0.0);
  p.beta(3, 3) = -1.0;
  CHECK_THROWS(evolve(init, f, p, SnakeConfig{}));
  p = ParameterSet::uniform(32, 32, -0.1, 0.1, 0.0);
  CHECK_THROWS(evolve(init, f, p, SnakeConfig{}));
  p = ParameterSet::uniform(16, 16, 0.01, 0.1, 0.0);
  CHECK_THROWS_AS(evolve(init, f, p, SnakeConfig{}), DimensionError);
  SnakeConfig bad;
  bad.tau = 0.0;
  CHECK_THROWS(evolve(init, f, ParameterSet::uniform(32, 32, 0.01, 0.1, 0.0), bad));
}
