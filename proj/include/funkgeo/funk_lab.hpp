#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "funkgeo/cpn_geom.hpp"
#include "funkgeo/linalg.hpp"
#include "funkgeo/rng.hpp"

namespace funkgeo::lab {

/// Sphere moment ∫ |z^c|² dσ over the unit sphere of ℂⁿ⁺¹ with the
/// normalized measure: n!·c!/(n+|c|)!.
double sphere_moment(int n, std::span<const int> c);

/// Orthonormal basis of the phase-invariant functions spanned by
/// z^a z̄^b, |a| = |b| = D, restricted to unit representatives.
///
/// Generators are real: z^a z̄^a, and Re/Im of z^a z̄^b for a < b. The Gram
/// matrix comes from the closed-form moments and is symmetrically
/// orthonormalized (G^{-1/2}).
class CPBasis {
 public:
  static constexpr long kMaxSize = 2500;

  CPBasis(int n, int degree);

  int n() const { return n_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(gram_.rows()); }
  int monomial_count() const { return static_cast<int>(exponents_.size()); }

  /// Analytic Gram matrix of the real generators.
  const Eigen::MatrixXd& gram() const { return gram_; }
  /// Columns: orthonormal basis functions in generator coordinates.
  const Eigen::MatrixXd& transform() const { return transform_; }
  double gram_condition() const { return condition_; }

  Eigen::VectorXd generators(const cpn::CVec& z) const;
  Eigen::VectorXd evaluate(const cpn::CVec& z) const;
  double evaluate(const Eigen::VectorXd& coefficients, const cpn::CVec& z) const;

  const std::vector<std::vector<int>>& exponents() const { return exponents_; }

 private:
  int n_, degree_;
  std::vector<std::vector<int>> exponents_;  // all a with |a| = D
  // generator k = (a, b, part): part 0 real, 1 imaginary
  std::vector<std::array<int, 3>> generators_;
  Eigen::MatrixXd gram_, transform_;
  double condition_ = 1.0;
};

/// K ≥ 8·D + 8 required.
TransformOperator assemble_cp_operator(const CPBasis& basis,
                                       std::span<const cpn::CPGeodesic> geodesics,
                                       int k);

struct RankResult {
  int basis_dim = 0;
  int rank = 0;
  Eigen::VectorXd singular_values{};
  double ratio = 0.0;  ///< σ_min / σ_max
  double gap = 0.0;
  bool ill_separated = false;
  bool full_rank = false;
  Eigen::VectorXd near_kernel;  ///< right singular vector of σ_min
};

/// Rank analysis of an arbitrary transform operator; every experiment
/// (sphere or projective) funnels through this.
RankResult operator_rank(const TransformOperator& op, double tol_ratio = 1e-8);

/// CPⁿ pipeline without the n ≥ 2 guard (n = 1 is the round sphere).
RankResult cp_rank_experiment(int n, int degree, int n_geo, std::uint64_t seed,
                              double tol_ratio = 1e-8, int k = 64);

/// Full column rank check of the discretized Funk transform on CPⁿ, n ≥ 2,
/// with at least 2·basis_dim geodesics.
RankResult injectivity_experiment(int n, int degree, int n_geo, std::uint64_t seed,
                                  double tol_ratio = 1e-8, int k = 64);

/// argmin ‖op·x − data‖² + reg‖x‖².
Eigen::VectorXd least_squares_invert(const TransformOperator& op,
                                     const Eigen::VectorXd& data, double reg = 0.0);

struct SupportReport {
  cpn::Ball ball;
  int n_candidates = 0;
  int n_avoiding_geodesics = 0;
  Eigen::VectorXd singular_values{};
  int rank = 0;
  int kernel_dim = 0;
  double gap = 0.0;
  bool ill_separated = false;
  std::vector<double> outside_sup{};  ///< per unit-norm kernel function
  std::vector<double> inside_sup{};
  int outside_points = 0;
  int inside_points = 0;
  bool vacuous = true;
};

struct SupportSettings {
  int n = 2;
  int degree = 1;
  int n_geo = 200;
  std::uint64_t seed = 0;
  double margin = 0.3;
  double tol_ratio = 1e-8;
  int k = 64;
  int distance_samples = 512;
  int grid_outside = 4000;
  int grid_inside = 2000;
};

/// Keeps sampled geodesics whose sampled distance to the ball center exceeds
/// the radius (drawing at most 10·n_geo candidates), analyzes the kernel of
/// the restricted operator and measures each kernel function outside the
/// ball enlarged by `margin`. n = 1 (the round sphere) is allowed as a
/// control where a nonzero kernel exists.
SupportReport support_experiment(const cpn::Ball& ball, const SupportSettings& s);

}  // namespace funkgeo::lab
