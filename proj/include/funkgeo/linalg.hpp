#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace funkgeo {

/// Dense discretized transform: row i holds the integrals of every basis
/// function over sampled geodesic i.
struct TransformOperator {
  Eigen::MatrixXd matrix;
  std::string space;   ///< "S^2" or "CP^n"
  std::string basis;   ///< e.g. "harmonics lmax=8", "bidegree n=2 D=1"
  std::uint64_t seed = 0;
  int quadrature = 0;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

/// Singular values, non-increasing. Throws NonFinite on NaN/Inf entries.
Eigen::VectorXd rank_revealing_spectrum(const Eigen::MatrixXd& a);

struct KernelAnalysis {
  Eigen::VectorXd singular_values;
  int rank = 0;
  Eigen::MatrixXd kernel;  ///< orthonormal columns spanning the numerical kernel
  Eigen::VectorXd smallest_right;  ///< right singular vector of the last column
  /// σ_{rank} / σ_{rank+1} at the cut (1-based); for full rank, the ratio of
  /// σ_min to the threshold tol_ratio·σ_1.
  double gap = 0.0;
  bool ill_separated = false;
};

/// rank = #{σ_i > tol_ratio·σ_1}; flags ill_separated when gap < min_gap.
KernelAnalysis analyze_kernel(const Eigen::MatrixXd& a, double tol_ratio = 1e-8,
                              double min_gap = 1e3);

/// argmin ‖A x − b‖² + reg‖x‖²; reg = 0 is the pseudoinverse solution with
/// the threshold max(m,n)·eps·σ_1.
Eigen::VectorXd least_squares_solve(const Eigen::MatrixXd& a,
                                    const Eigen::VectorXd& b, double reg = 0.0);

}  // namespace funkgeo
