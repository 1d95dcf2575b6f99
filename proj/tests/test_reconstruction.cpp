#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ofdr/calibration.hpp"
#include "ofdr/error.hpp"
#include "ofdr/reconstruction.hpp"

using namespace ofdr;
using std::numbers::pi;

namespace {

// N = round(L / h) cells tiling [0, L], one curvature value per cell.
CurvatureProfile cells(double length, double spacing, double kappa) {
  const auto n = static_cast<std::size_t>(std::llround(length / spacing));
  const double h = length / static_cast<double>(n);
  CurvatureProfile c;
  for (std::size_t i = 0; i < n; ++i) {
    c.positions.push_back(h * (static_cast<double>(i) + 0.5));
    c.curvatures.push_back(kappa);
  }
  return c;
}

Vec2 arc_tip(double kappa, double length) {
  return {std::sin(kappa * length) / kappa, (1.0 - std::cos(kappa * length)) / kappa};
}

StrainProfile profile(std::vector<double> s, std::vector<double> e) {
  StrainProfile p;
  p.positions = std::move(s);
  p.strains = std::move(e);
  return p;
}

}  // namespace

TEST_CASE("strains to curvatures") {
  const PowerLawModel m = reported_model();

  SUBCASE("below threshold is straight") {
    const auto c = strains_to_curvatures(m, profile({0, 1, 2}, {5, -3, 9}), 10.0);
    for (double k : c.curvatures) CHECK(k == 0.0);
  }

  SUBCASE("constant strain") {
    const auto c = strains_to_curvatures(m, profile({0, 1.3, 2.6}, {1440.649, 1440.649, 1440.649}), 0.0);
    for (double k : c.curvatures) {
      CHECK(k == doctest::Approx(1.0 / (126099.3715 * std::pow(1440.649, -0.97984))).epsilon(1e-14));
      CHECK(k * 1000.0 == doctest::Approx(9.87).epsilon(0.002));  // 1/m
    }
    CHECK(c.positions == std::vector<double>{0, 1.3, 2.6});
  }

  SUBCASE("step profile") {
    std::vector<double> s, e;
    for (int i = 0; i < 100; ++i) {
      s.push_back(1.3 * i);
      e.push_back(s.back() < 50.0 ? 0.0 : 1460.0);
    }
    const auto c = strains_to_curvatures(m, profile(s, e), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 50.0) CHECK(c.curvatures[i] == 0.0);
      else CHECK(1.0 / c.curvatures[i] == doctest::Approx(100.0).epsilon(0.001));
    }
  }

  SUBCASE("sign convention") {
    const auto pos = strains_to_curvatures(m, profile({0, 1}, {1500, 1500}), 0.0, +1);
    const auto neg = strains_to_curvatures(m, profile({0, 1}, {1500, 1500}), 0.0, -1);
    CHECK(neg.curvatures[0] == -pos.curvatures[0]);
    CHECK_THROWS_AS(strains_to_curvatures(m, profile({0, 1}, {1, 1}), 0.0, 2), Error);
  }
}

TEST_CASE("integrate straight and analytic arcs") {
  SUBCASE("zero curvature") {
    const auto shape = integrate_shape(cells(170.0, 1.3, 0.0));
    CHECK(shape.points.back().x == doctest::Approx(170.0).epsilon(1e-12));
    CHECK(shape.points.back().y == doctest::Approx(0.0));
    CHECK(shape.size() == 131 + 1);
  }

  SUBCASE("quarter circle") {
    const double L = 100.0 * pi / 2.0;
    const auto shape = integrate_shape(cells(L, 1.3, 0.01));
    CHECK(distance(shape.points.back(), {100.0, 100.0}) < 0.05);
    CHECK(shape.headings.back() == doctest::Approx(pi / 2.0).epsilon(1e-12));
  }

  SUBCASE("half circle") {
    const double L = 60.0 * pi;
    const auto shape = integrate_shape(cells(L, 1.3, 1.0 / 60.0));
    CHECK(distance(shape.points.back(), {0.0, 120.0}) < 0.05);
    CHECK(shape.headings.back() == doctest::Approx(pi).epsilon(1e-12));
  }

  SUBCASE("too few samples") {
    CurvatureProfile c{{1.0}, {0.0}};
    CHECK_THROWS_AS(integrate_shape(c), Error);
  }
}

TEST_CASE("midpoint scheme converges at second order; Euler carries a bias") {
  const double kappa = 0.01;
  const double L = pi / 2.0 / kappa;
  double prev = 0.0;
  for (double h : {2.6, 1.3, 0.65, 0.325}) {
    const double err = distance(integrate_shape(cells(L, h, kappa)).points.back(), arc_tip(kappa, L));
    if (prev > 0.0) CHECK(prev / err >= 3.5);
    prev = err;
  }
  const double euler = distance(integrate_shape(cells(L, 1.3, kappa), {}, Scheme::Euler).points.back(),
                                arc_tip(kappa, L));
  const double mid = distance(integrate_shape(cells(L, 1.3, kappa)).points.back(), arc_tip(kappa, L));
  CHECK(euler > 10.0 * mid);
}

TEST_CASE("integrator invariants") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uk(-0.02, 0.02), uh(0.5, 2.0), upose(-50.0, 50.0), uth(-pi, pi);
  for (int trial = 0; trial < 50; ++trial) {
    CurvatureProfile c;
    double s = 0.0;
    for (int i = 0; i < 120; ++i) {
      s += uh(rng);
      c.positions.push_back(s);
      c.curvatures.push_back(uk(rng));
    }
    const auto edges = cell_edges(c.positions);
    const PlanarShape base = integrate_shape(c);
    REQUIRE(base.size() == c.size() + 1);

    // Arc length: every step is exactly one cell long.
    double travelled = 0.0;
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
      const double step = distance(base.points[i], base.points[i + 1]);
      CHECK(step == doctest::Approx(edges[i + 1] - edges[i]).epsilon(1e-9));
      travelled += step;
    }
    CHECK(travelled == doctest::Approx(edges.back() - edges.front()).epsilon(1e-9));
    CHECK(base.span() == doctest::Approx(edges.back() - edges.front()).epsilon(1e-12));

    // Rigid motion of the initial pose moves the whole curve rigidly.
    const Pose pose{upose(rng), upose(rng), uth(rng)};
    const PlanarShape moved = integrate_shape(c, pose);
    CHECK(moved.points.front().x == pose.x);
    CHECK(moved.headings.front() == pose.theta);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const Vec2 p = base.points[i];
      const Vec2 expect{pose.x + std::cos(pose.theta) * p.x - std::sin(pose.theta) * p.y,
                        pose.y + std::sin(pose.theta) * p.x + std::cos(pose.theta) * p.y};
      CHECK(distance(moved.points[i], expect) < 1e-9);
    }

    // Mirror: negated curvature reflects across the initial heading axis.
    CurvatureProfile mirrored = c;
    for (double& k : mirrored.curvatures) k = -k;
    const PlanarShape m = integrate_shape(mirrored);
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(m.points[i].x == doctest::Approx(base.points[i].x).epsilon(1e-12));
      CHECK(m.points[i].y == doctest::Approx(-base.points[i].y).epsilon(1e-12));
    }
  }
}

TEST_CASE("resample profile") {
  std::vector<double> s, ramp, flat;
  for (int i = 0; i < 50; ++i) {
    s.push_back(10.0 + 1.3 * i);
    ramp.push_back(3.0 * s.back() - 7.0);
    flat.push_back(812.5);
  }

  SUBCASE("onto the original grid") {
    const auto r = resample_profile(profile(s, ramp), 1.3);
    REQUIRE(r.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(r.positions[i] == doctest::Approx(s[i]).epsilon(1e-12));
      CHECK(r.strains[i] == doctest::Approx(ramp[i]).epsilon(1e-12));
    }
  }

  SUBCASE("affine data is reproduced at any spacing") {
    for (double h : {0.37, 1.0, 2.9, 7.0}) {
      const auto r = resample_profile(profile(s, ramp), h);
      CHECK(r.positions.front() == s.front());
      CHECK(r.positions.back() == s.back());
      CHECK(r.strains.front() == ramp.front());
      CHECK(r.strains.back() == ramp.back());
      for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r.strains[i] == doctest::Approx(3.0 * r.positions[i] - 7.0).epsilon(1e-12));
      }
      const auto c = resample_profile(profile(s, flat), h);
      for (double e : c.strains) CHECK(e == doctest::Approx(812.5).epsilon(1e-14));
    }
  }

  SUBCASE("spacing wider than the profile") {
    CHECK_THROWS_AS(resample_profile(profile(s, ramp), 1000.0), Error);
    CHECK_THROWS_AS(resample_profile(profile(s, ramp), 0.0), Error);
  }
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(profile({}, {}).validate(), Error);
  CHECK_THROWS_AS(profile({0, 1}, {1}).validate(), Error);
  CHECK_THROWS_AS(profile({0, 0}, {1, 1}).validate(), Error);
  CHECK_NOTHROW(profile({0, 1}, {1, 1}).validate());
}

TEST_CASE("reconstruct composes the stages") {
  const PowerLawModel m = reported_model();
  std::vector<double> s, e;
  for (int i = 0; i < 131; ++i) {
    s.push_back(1.3 * (i + 0.5));
    e.push_back(radius_to_strain(m, 100.0));
  }
  ReconstructOptions o;
  const Reconstruction r = reconstruct(m, profile(s, e), o);
  CHECK(r.shape.size() == 132);
  CHECK(1.0 / r.curvature.curvatures[0] == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(distance(r.shape.points.back(), arc_tip(0.01, 170.3)) < 0.05);

  o.resample_spacing_mm = 2.6;
  const Reconstruction coarse = reconstruct(m, profile(s, e), o);
  CHECK(coarse.strain.size() < s.size());
}
