#include <doctest.h>

#include <cmath>
#include <numbers>

#include "funkgeo/error.hpp"
#include "funkgeo/sphere_funk.hpp"
#include "oracles.hpp"

using namespace funkgeo;
using namespace funkgeo::sphere;
using std::numbers::pi;

namespace {

Eigen::Vector3d random_unit(Rng& rng) { return rng.gaussian3().normalized(); }

Eigen::Matrix3d random_rotation(Rng& rng) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

}  // namespace

TEST_CASE("harmonic indexing") {
  for (int l = 0; l <= 10; ++l)
    for (int m = -l; m <= l; ++m) CHECK(HarmonicBasis::degree_of(HarmonicBasis::index(l, m)) == l);
  HarmonicBasis b(8);
  CHECK(b.size() == 81);
  CHECK(b.odd_count() == 36);
  CHECK(b.even_count() == 45);
  CHECK_THROWS_AS(HarmonicBasis(33), Error);
  CHECK_THROWS_AS(HarmonicBasis(-1), Error);
}

TEST_CASE("low-degree harmonics in closed form") {
  HarmonicBasis b(2);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Vector3d x = random_unit(rng);
    const auto y = b.evaluate(x);
    CHECK(y[0] == doctest::Approx(1 / std::sqrt(4 * pi)).epsilon(1e-14));
    CHECK(std::abs(y[HarmonicBasis::index(1, 0)]) ==
          doctest::Approx(std::sqrt(3 / (4 * pi)) * std::abs(x.z())).epsilon(1e-13));
    const double y11 = y[HarmonicBasis::index(1, 1)], y1m = y[HarmonicBasis::index(1, -1)];
    CHECK(y11 * y11 + y1m * y1m ==
          doctest::Approx(3 / (4 * pi) * (x.x() * x.x() + x.y() * x.y())).epsilon(1e-12));
  }
}

TEST_CASE("addition theorem") {
  HarmonicBasis b(32);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Vector3d x = random_unit(rng), y = random_unit(rng);
    const auto yx = b.evaluate(x), yy = b.evaluate(y);
    for (int l = 0; l <= 32; ++l) {
      double s = 0.0, sxy = 0.0;
      for (int m = -l; m <= l; ++m) {
        const int i = HarmonicBasis::index(l, m);
        s += yx[i] * yx[i];
        sxy += yx[i] * yy[i];
      }
      CHECK(s == doctest::Approx((2 * l + 1) / (4 * pi)).epsilon(1e-11));
      CHECK(sxy == doctest::Approx((2 * l + 1) / (4 * pi) * oracle::legendre(l, x.dot(y)))
                       .epsilon(1e-9)
                       .scale(1.0));
    }
  }
}

TEST_CASE("orthonormality by product Gauss quadrature") {
  const int lmax = 12;
  HarmonicBasis b(lmax);
  const auto nodes = oracle::gauss_legendre(lmax + 2);
  const int nphi = 2 * lmax + 3;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(b.size(), b.size());
  for (const auto& [z, w] : nodes)
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2 * pi * k / nphi;
      const double s = std::sqrt(1 - z * z);
      const auto y = b.evaluate(Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z));
      gram += (w * 2 * pi / nphi) * y * y.transpose();
    }
  CHECK((gram - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("circle integrals") {
  const GreatCircle eq(Eigen::Vector3d(0, 0, 1));
  CHECK(circle_integral([](const Eigen::Vector3d&) { return 1.0; }, eq, 16) ==
        doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(circle_integral([](const Eigen::Vector3d& x) { return x.x() * x.x(); }, eq, 16) ==
        doctest::Approx(pi).epsilon(1e-14));
  CHECK(circle_integral([](const Eigen::Vector3d& x) { return x.z(); }, eq, 16) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(circle_integral([](const Eigen::Vector3d&) { return 1.0; }, eq, 3), Error);

  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Vector3d p = random_unit(rng);
    const GreatCircle a(p), b(Eigen::Vector3d(-p));
    for (double th : {0.0, 0.7, 2.0, 5.5}) {
      CHECK(a.point(th) == b.point(th));
      CHECK(std::abs(a.point(th).dot(a.pole())) < 1e-15);
      CHECK(a.point(th).norm() == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("Funk-Hecke eigenvalues") {
  for (int l = 0; l <= 20; ++l)
    CHECK(funk_hecke_eigenvalue(l) ==
          doctest::Approx(2 * pi * oracle::legendre_at_zero(l)).epsilon(1e-14));

  const int lmax = 12;
  HarmonicBasis b(lmax);
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const GreatCircle c(random_unit(rng));
    const auto at_pole = b.evaluate(c.pole());
    for (int j = 0; j < b.size(); ++j) {
      const int l = HarmonicBasis::degree_of(j);
      const double v =
          circle_integral([&](const Eigen::Vector3d& x) { return b.evaluate(j, x); }, c, 64);
      const double expect = 2 * pi * oracle::legendre_at_zero(l) * at_pole[j];
      if (l % 2)
        CHECK(std::abs(v) <= 1e-10);
      else
        CHECK(std::abs(v - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("transform as function agrees with direct integration") {
  Rng rng(2);
  const auto f = random_function(10, rng);
  const auto fhat = transform_as_function(f);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Vector3d w = random_unit(rng);
    const double direct =
        circle_integral([&](const Eigen::Vector3d& x) { return f(x); }, GreatCircle(w), 128);
    CHECK(fhat(w) == doctest::Approx(direct).epsilon(1e-11).scale(1.0));
    CHECK(fhat(w) == doctest::Approx(fhat(-w)).epsilon(1e-12).scale(1.0));
  }
  CHECK(fhat.odd_energy() < 1e-24);
}

TEST_CASE("transform commutes with rotations") {
  Rng rng(8);
  const auto f = random_function(6, rng);
  const Eigen::Matrix3d r = random_rotation(rng);
  auto g = [&](const Eigen::Vector3d& x) { return f(r.transpose() * x); };
  for (int t = 0; t < 10; ++t) {
    const Eigen::Vector3d w = random_unit(rng);
    const double lhs = circle_integral(g, GreatCircle(Eigen::Vector3d(r * w)), 64);
    const double rhs =
        circle_integral([&](const Eigen::Vector3d& x) { return f(x); }, GreatCircle(w), 64);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("even inversion round trip and odd rejection") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_even_function(12, rng);
    CHECK(f.odd_energy() == 0.0);
    const auto back = invert_even(transform_as_function(f));
    CHECK((back.coefficients - f.coefficients).norm() <= 1e-8 * f.coefficients.norm());
  }
  const auto odd = random_function(12, rng);
  try {
    invert_even(odd);
    FAIL("odd data accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPreimage);
  }
}

TEST_CASE("operator assembly and kernel") {
  HarmonicBasis b(8);
  Rng rng(7);
  const auto circles = sample_circles(400, rng);
  CHECK_THROWS_AS(assemble_operator(b, circles, 2 * 8 + 7), Error);
  const auto op = assemble_operator(b, circles, 256);
  REQUIRE(op.rows() == 400);
  REQUIRE(op.cols() == 81);

  // rows against direct circle integrals
  for (int i : {0, 17, 399})
    for (int j : {0, 5, 40, 80}) {
      const double v = circle_integral(
          [&](const Eigen::Vector3d& x) { return b.evaluate(j, x); }, circles[i], 256);
      CHECK(op.matrix(i, j) == doctest::Approx(v).epsilon(1e-13).scale(1.0));
    }

  const auto k = kernel_analysis(op, 8);
  CHECK(k.analysis.rank == 45);
  CHECK(k.kernel_dim == 36);
  CHECK(k.odd_count == 36);
  CHECK(k.max_principal_angle <= 1e-6);
  CHECK_FALSE(k.analysis.ill_separated);

  Rng again(7);
  const auto op2 = assemble_operator(b, sample_circles(400, again), 256);
  CHECK(op.matrix == op2.matrix);
}
