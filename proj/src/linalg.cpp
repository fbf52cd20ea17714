#include "funkgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "funkgeo/error.hpp"

namespace funkgeo {

namespace {

void require_finite(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) fail(ErrorCode::NonFinite, "matrix has non-finite entries");
}

}  // namespace

Eigen::VectorXd rank_revealing_spectrum(const Eigen::MatrixXd& a) {
  require_finite(a);
  if (a.size() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues();
}

KernelAnalysis analyze_kernel(const Eigen::MatrixXd& a, double tol_ratio,
                              double min_gap) {
  require_finite(a);
  KernelAnalysis out;
  const Eigen::Index n = a.cols();
  if (n == 0) return out;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const Eigen::Index k = out.singular_values.size();
  const double s1 = k > 0 ? out.singular_values[0] : 0.0;
  const double threshold = tol_ratio * s1;
  int rank = 0;
  while (rank < k && out.singular_values[rank] > threshold) ++rank;
  out.rank = rank;

  const Eigen::Index kernel_dim = n - rank;
  out.kernel = svd.matrixV().rightCols(kernel_dim);
  out.smallest_right = svd.matrixV().col(n - 1);

  if (rank == 0) {
    out.gap = 0.0;
  } else if (rank < k) {
    const double below = out.singular_values[rank];
    out.gap = below > 0 ? out.singular_values[rank - 1] / below
                        : std::numeric_limits<double>::infinity();
  } else if (rank < n) {
    // wide matrix: kernel from missing rows, spectrum itself is clean
    out.gap = std::numeric_limits<double>::infinity();
  } else {
    out.gap = threshold > 0 ? out.singular_values[k - 1] / threshold
                            : std::numeric_limits<double>::infinity();
  }
  out.ill_separated = out.gap < min_gap;
  return out;
}

Eigen::VectorXd least_squares_solve(const Eigen::MatrixXd& a,
                                    const Eigen::VectorXd& b, double reg) {
  require_finite(a);
  if (b.size() != a.rows())
    fail(ErrorCode::InvalidArgument, "data length does not match operator rows");
  if (reg < 0) fail(ErrorCode::InvalidArgument, "regularization must be nonnegative");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double s1 = s.size() ? s[0] : 0.0;
  const double cut = static_cast<double>(std::max(a.rows(), a.cols())) *
                     std::numeric_limits<double>::epsilon() * s1;
  Eigen::VectorXd ub = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (reg > 0)
      ub[i] *= s[i] / (s[i] * s[i] + reg);
    else
      ub[i] = s[i] > cut ? ub[i] / s[i] : 0.0;
  }
  return svd.matrixV() * ub;
}

}  // namespace funkgeo
