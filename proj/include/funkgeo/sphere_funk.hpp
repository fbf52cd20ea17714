#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "funkgeo/linalg.hpp"
#include "funkgeo/rng.hpp"

namespace funkgeo::sphere {

/// Point of S² ⊂ ℝ³; construction normalizes.
class UnitVec3 {
 public:
  explicit UnitVec3(const Eigen::Vector3d& v);
  UnitVec3(double x, double y, double z) : UnitVec3(Eigen::Vector3d(x, y, z)) {}

  const Eigen::Vector3d& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Eigen::Vector3d v_;
};

/// Great circle {x : ⟨x, pole⟩ = 0}. The pole is stored with a canonical sign
/// so that `pole` and `-pole` produce bit-identical circles.
class GreatCircle {
 public:
  explicit GreatCircle(const UnitVec3& pole);
  explicit GreatCircle(const Eigen::Vector3d& pole) : GreatCircle(UnitVec3(pole)) {}

  const Eigen::Vector3d& pole() const { return pole_; }
  /// Unit-speed parametrization θ ↦ cos θ·u + sin θ·v.
  Eigen::Vector3d point(double theta) const;

 private:
  Eigen::Vector3d pole_, u_, v_;
};

using PointFunction = std::function<double(const Eigen::Vector3d&)>;

/// Trapezoidal arc-length integral over K equispaced points (K ≥ 4).
double circle_integral(const PointFunction& f, const GreatCircle& c, int k);

/// Real spherical harmonics Y_{l,m}, l ≤ lmax ≤ 32, orthonormal for the
/// surface measure of total mass 4π. Index of (l, m) is l² + l + m.
class HarmonicBasis {
 public:
  static constexpr int kMaxDegree = 32;

  explicit HarmonicBasis(int lmax);

  int lmax() const { return lmax_; }
  int size() const { return (lmax_ + 1) * (lmax_ + 1); }
  static int index(int l, int m) { return l * l + l + m; }
  static int degree_of(int index);

  /// All basis values at a unit vector.
  Eigen::VectorXd evaluate(const Eigen::Vector3d& x) const;
  void evaluate(const Eigen::Vector3d& x, std::span<double> out) const;
  double evaluate(int index, const Eigen::Vector3d& x) const;

  int odd_count() const;
  int even_count() const { return size() - odd_count(); }

 private:
  int lmax_;
  // recurrence coefficients for the fully normalized associated Legendre functions
  std::vector<double> a_, b_;
};

/// Coefficients against a HarmonicBasis.
struct SphereFunction {
  int lmax = 0;
  Eigen::VectorXd coefficients;

  SphereFunction() = default;
  SphereFunction(int lmax, Eigen::VectorXd c);

  double operator()(const Eigen::Vector3d& x) const;
  double odd_energy() const;
};

/// 2π·P_l(0): zero on odd degrees.
double funk_hecke_eigenvalue(int l);

/// Funk transform read as a function of the circle's pole.
SphereFunction transform_as_function(const SphereFunction& f);

/// Inverse on the even part; throws NoPreimage if odd-degree energy exceeds
/// 1e-8 of the norm.
SphereFunction invert_even(const SphereFunction& fhat);

/// Poles drawn uniformly (normalized Gaussians).
std::vector<GreatCircle> sample_circles(int count, Rng& rng);

/// Entry (i, j) = circle_integral(Y_j, circle_i, K); requires K ≥ 2·lmax + 8.
TransformOperator assemble_operator(const HarmonicBasis& basis,
                                    std::span<const GreatCircle> circles, int k);

struct SphereKernel {
  KernelAnalysis analysis;
  int kernel_dim = 0;
  int odd_count = 0;
  /// Largest principal angle between the numerical kernel and the odd span.
  double max_principal_angle = 0.0;
};

SphereKernel kernel_analysis(const TransformOperator& op, int lmax,
                             double tol_ratio = 1e-8);

/// Random even function with Gaussian coefficients up to lmax.
SphereFunction random_even_function(int lmax, Rng& rng);
SphereFunction random_function(int lmax, Rng& rng);

}  // namespace funkgeo::sphere
