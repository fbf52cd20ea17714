#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "funkgeo/cpn_geom.hpp"
#include "funkgeo/error.hpp"
#include "funkgeo/sphere_funk.hpp"

using namespace funkgeo;
using namespace funkgeo::cpn;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

CVec phased(const CVec& v, double phi) { return v * std::polar(1.0, phi); }

// Closed form d(p, L) = 2·atan2(‖p − Pp‖, ‖Pp‖) with P from a fresh QR.
double line_distance_oracle(const ProjPoint& p, const ProjLine& line) {
  Eigen::MatrixXcd a(p.rep().size(), 2);
  a.col(0) = line.first();
  a.col(1) = line.second();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), 2);
  const CVec proj = q * (q.adjoint() * p.rep());
  return 2 * std::atan2((p.rep() - proj).norm(), proj.norm());
}

}  // namespace

TEST_CASE("Fubini-Study distance") {
  Rng rng(1);
  for (int n : {1, 2, 3, 5}) {
    for (int t = 0; t < 200; ++t) {
      const auto p = random_point(n, rng), q = random_point(n, rng), r = random_point(n, rng);
      const double d = fs_distance(p, q);
      CHECK(d >= 0);
      CHECK(d <= pi + 1e-15);
      CHECK(d == doctest::Approx(2 * std::acos(std::min(1.0, std::abs(p.rep().dot(q.rep())))))
                     .epsilon(1e-10));
      CHECK(std::abs(d - fs_distance(q, p)) < 1e-14);
      CHECK(fs_distance(ProjPoint(phased(p.rep(), 1.3)), q) == doctest::Approx(d).epsilon(1e-14));
      CHECK(fs_distance(p, r) <= fs_distance(p, q) + fs_distance(q, r) + 1e-12);
    }
    const auto p = random_point(n, rng);
    CHECK(fs_distance(p, ProjPoint(phased(p.rep(), 2.0))) < 1e-7);
  }
  CVec e0 = CVec::Zero(3), e1 = CVec::Zero(3);
  e0[0] = 1;
  e1[1] = 1;
  CHECK(fs_distance(ProjPoint(e0), ProjPoint(e1)) == doctest::Approx(pi));
}

TEST_CASE("projective points") {
  Rng rng(2);
  const auto p = random_point(3, rng);
  const ProjPoint same(phased(p.rep(), -0.4) * 3.0);
  CHECK(p.same_as(same));
  CHECK((p.canonical() - same.canonical()).norm() < 1e-14);
  CHECK(p.canonical()[0].imag() == 0.0);
  CHECK(code_of([] { ProjPoint(CVec::Zero(3)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ProjPoint(CVec::Ones(1)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("geodesics") {
  Rng rng(3);
  for (int n : {1, 2, 4}) {
    for (int t = 0; t < 50; ++t) {
      const auto p = random_point(n, rng), q = random_point(n, rng);
      const auto g = geodesic_through(p, q);
      const double d = fs_distance(p, q);
      CHECK(g.point(0).same_as(p));
      CHECK(fs_distance(g.point(d), q) < 1e-7);
      CHECK(g.point(2 * pi).same_as(p, 1e-12));
      // unit speed, minimizing up to length π
      for (double s : {0.3, 1.1, 2.9}) CHECK(fs_distance(g.point(0.2), g.point(0.2 + s)) ==
                                             doctest::Approx(s).epsilon(1e-9));
      CHECK(g.line().contains(g.point(1.7)));
      CHECK(std::abs(g.base().rep().dot(g.direction())) < 1e-14);
    }
  }
  const auto p = random_point(2, rng);
  CHECK(code_of([&] { geodesic_through(p, p); }) == ErrorCode::CoincidentPoints);
  CVec e0 = CVec::Zero(3), e1 = CVec::Zero(3);
  e0[0] = 1;
  e1[1] = 1;
  CHECK(code_of([&] { geodesic_through(ProjPoint(e0), ProjPoint(e1)); }) ==
        ErrorCode::AntipodalPoints);
}

TEST_CASE("geodesic integrals: trapezoid is exact for bidegree polynomials") {
  Rng rng(4);
  const auto geos = sample_geodesics(2, 5, rng);
  // |z0|² along t ↦ cos(t/2)a + sin(t/2)c has mean (|a|²+|c|²)/2
  for (const auto& g : geos) {
    const auto a = g.base().rep()[0], c = g.direction()[0];
    const double v = geodesic_integral([](const CVec& z) { return std::norm(z[0]); }, g, 8);
    CHECK(v == doctest::Approx(pi * (std::norm(a) + std::norm(c))).epsilon(1e-13));
  }
  CHECK(code_of([&] { geodesic_integral([](const CVec&) { return 1.0; }, geos[0], 3); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("lines, antipodes and perpendicular lines") {
  Rng rng(5);
  for (int n : {2, 3, 5}) {
    for (int t = 0; t < 100; ++t) {
      const auto a = random_point(n, rng), b = random_point(n, rng);
      const auto line = line_through(a, b);
      CHECK(line.contains(a));
      CHECK(line.contains(b));
      const auto x = line.point(rng.uniform() * pi, rng.uniform() * 2 * pi);
      CHECK(line.membership_residual(x.rep()) < 1e-13);
      const auto y = antipode_in_line(line, x);
      CHECK(line.contains(y));
      CHECK(std::abs(x.rep().dot(y.rep())) < 1e-13);
      CHECK(fs_distance(x, y) == doctest::Approx(pi));

      for (Rng* r : {static_cast<Rng*>(nullptr), &rng}) {
        const auto perp = perpendicular_line_at(line, x, r);
        CHECK(perp.contains(x));
        const CVec v = perp.second() - perp.first() * perp.first().dot(perp.second());
        CHECK(std::abs(line.first().dot(v)) < 1e-12);
        CHECK(std::abs(line.second().dot(v)) < 1e-12);
      }
    }
  }
  const auto a = random_point(2, rng), b = random_point(2, rng);
  const auto line = line_through(a, b);
  CVec off = rng.complex_gaussian(3);
  off -= line.first() * line.first().dot(off) + line.second() * line.second().dot(off);
  CHECK(code_of([&] { antipode_in_line(line, ProjPoint(off)); }) == ErrorCode::NotOnLine);
  const auto l1 = line_through(random_point(1, rng), random_point(1, rng));
  CHECK(code_of([&] { perpendicular_line_at(l1, random_point(1, rng)); }) ==
        ErrorCode::UnsupportedDimension);
}

TEST_CASE("triple antipode returns to p") {
  Rng rng(6);
  for (int n : {2, 3}) {
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto p = random_point(n, rng);
      const auto line = line_through(p, random_point(n, rng));
      worst = std::max(worst, triple_antipode_residual(p, line, &rng));
      worst = std::max(worst, triple_antipode_residual(p, line));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("avoiding line") {
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    const auto p = random_point(2, rng), q = random_point(2, rng);
    const double s = fs_distance(p, q);
    const auto line = avoiding_line(p, q);
    CHECK(line.membership_residual(q.rep()) <= 1e-12);
    const double closed = distance_to_line(p, line);
    CHECK(closed == doctest::Approx(s).epsilon(1e-10));
    CHECK(closed == doctest::Approx(line_distance_oracle(p, line)).epsilon(1e-12));
    CHECK(sampled_distance_to_line(p, line, 2000) >= s - 1e-9);
  }
  // q in the cut locus of p
  CVec e0 = CVec::Zero(3), e1 = CVec::Zero(3);
  e0[0] = 1;
  e1[1] = 1;
  const auto cut = avoiding_line(ProjPoint(e0), ProjPoint(e1));
  CHECK(distance_to_line(ProjPoint(e0), cut) == doctest::Approx(pi));
  const auto p = random_point(2, rng);
  CHECK(code_of([&] { avoiding_line(p, p); }) == ErrorCode::CoincidentPoints);
  CHECK(code_of([&] { avoiding_line(random_point(1, rng), random_point(1, rng)); }) ==
        ErrorCode::UnsupportedDimension);
}

TEST_CASE("distance to a line: closed form vs sampling") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_point(3, rng);
    const auto line = line_through(random_point(3, rng), random_point(3, rng));
    const double d = distance_to_line(p, line);
    CHECK(d == doctest::Approx(line_distance_oracle(p, line)).epsilon(1e-12));
    const double sampled = sampled_distance_to_line(p, line, 10000);
    CHECK(sampled >= d - 1e-12);
    CHECK(sampled <= d + 0.05);
  }
}

TEST_CASE("distance to a geodesic: closed form vs sampling") {
  Rng rng(9);
  const auto geos = sample_geodesics(2, 100, rng);
  for (const auto& g : geos) {
    const auto p = random_point(2, rng);
    const double d = distance_to_geodesic(p, g);
    const double sampled = sampled_distance_to_geodesic(p, g, 4096);
    CHECK(sampled >= d - 1e-7);
    CHECK(sampled <= d + 2e-3);
    CHECK(d >= distance_to_line(p, g.line()) - 1e-9);
  }
}

TEST_CASE("unitary invariance") {
  Rng rng(10);
  for (int n : {1, 2, 3}) {
    const auto u = random_unitary(n + 1, rng);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n + 1, n + 1)).norm() < 1e-13);
    for (int t = 0; t < 50; ++t) {
      const auto p = random_point(n, rng), q = random_point(n, rng);
      CHECK(fs_distance(ProjPoint(u * p.rep()), ProjPoint(u * q.rep())) ==
            doctest::Approx(fs_distance(p, q)).epsilon(1e-12));
      const auto g = sample_geodesics(n, 1, rng).front();
      const auto ug = transform(u, g);
      CHECK(fs_distance(ug.point(0.9), ProjPoint(u * g.lift(0.9))) < 1e-7);
    }
  }
}

TEST_CASE("geodesic sampling follows the invariant measure") {
  // For the unitary-invariant measure on geodesics, a uniform point on a
  // random geodesic is uniform on CP^n: E|z0|² = 1/(n+1), E|z0|⁴ = 2/((n+1)(n+2)).
  Rng rng(11);
  const int n = 2, count = 40000;
  const auto geos = sample_geodesics(n, count, rng);
  double m2 = 0, m4 = 0;
  for (const auto& g : geos) {
    const CVec z = g.lift(rng.uniform() * 2 * pi);
    m2 += std::norm(z[0]);
    m4 += std::norm(z[0]) * std::norm(z[0]);
  }
  m2 /= count;
  m4 /= count;
  CHECK(m2 == doctest::Approx(1.0 / 3).epsilon(0.02));
  CHECK(m4 == doctest::Approx(2.0 / 12).epsilon(0.03));
  // invariance: the same statistic after a fixed unitary
  const auto u = random_unitary(n + 1, rng);
  double m2u = 0;
  for (const auto& g : geos) m2u += std::norm((u * g.lift(rng.uniform() * 2 * pi))[0]);
  CHECK(m2u / count == doctest::Approx(1.0 / 3).epsilon(0.02));
}

TEST_CASE("sampling is deterministic per seed") {
  Rng a(42), b(42);
  const auto ga = sample_geodesics(3, 20, a), gb = sample_geodesics(3, 20, b);
  for (int i = 0; i < 20; ++i) {
    CHECK(ga[i].base().rep() == gb[i].base().rep());
    CHECK(ga[i].direction() == gb[i].direction());
  }
}

TEST_CASE("CP^1 is the round sphere under the Bloch map") {
  Rng rng(12);
  sphere::HarmonicBasis basis(6);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_point(1, rng), q = random_point(1, rng);
    const double angle = std::acos(std::clamp(bloch_map(p).dot(bloch_map(q)), -1.0, 1.0));
    CHECK(angle == doctest::Approx(fs_distance(p, q)).epsilon(1e-7));

    const auto g = sample_geodesics(1, 1, rng).front();
    const Eigen::Vector3d pole = bloch_map(g.point(0)).cross(bloch_map(g.point(pi / 2)));
    const sphere::GreatCircle c(pole);
    const int j = t % basis.size();
    auto f = [&](const Eigen::Vector3d& x) { return basis.evaluate(j, x); };
    const double on_cp1 =
        geodesic_integral([&](const CVec& z) { return f(bloch_map(ProjPoint(z))); }, g, 64);
    const double on_s2 = sphere::circle_integral(f, c, 64);
    CHECK(std::abs(on_cp1 - on_s2) <= 1e-10);
  }
  CHECK(code_of([&] { bloch_map(random_point(2, rng)); }) == ErrorCode::UnsupportedDimension);
}

TEST_CASE("balls") {
  Rng rng(13);
  const auto p = random_point(2, rng);
  CHECK_NOTHROW(Ball(p, 0.5));
  CHECK(code_of([&] { Ball(p, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { Ball(p, pi); }) == ErrorCode::InvalidArgument);
}
