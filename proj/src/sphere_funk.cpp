#include "funkgeo/sphere_funk.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "funkgeo/error.hpp"

namespace funkgeo::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

int tri(int l, int m) { return l * (l + 1) / 2 + m; }

}  // namespace

UnitVec3::UnitVec3(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n))
    fail(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  v_ = v / n;
}

GreatCircle::GreatCircle(const UnitVec3& pole) : pole_(pole.vec()) {
  int big = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(pole_[i]) > std::abs(pole_[big])) big = i;
  if (pole_[big] < 0) pole_ = -pole_;
  int small = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(pole_[i]) < std::abs(pole_[small])) small = i;
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  axis[small] = 1.0;
  u_ = axis.cross(pole_).normalized();
  v_ = pole_.cross(u_);
}

Eigen::Vector3d GreatCircle::point(double theta) const {
  return std::cos(theta) * u_ + std::sin(theta) * v_;
}

double circle_integral(const PointFunction& f, const GreatCircle& c, int k) {
  if (k < 4) fail(ErrorCode::InvalidArgument, "quadrature count must be at least 4");
  const double h = 2.0 * kPi / k;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += f(c.point(h * i));
  return h * sum;
}

HarmonicBasis::HarmonicBasis(int lmax) : lmax_(lmax) {
  if (lmax < 0 || lmax > kMaxDegree) {
    std::ostringstream os;
    os << "lmax must lie in [0, " << kMaxDegree << "], got " << lmax;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  const int n = tri(lmax, lmax) + 1;
  a_.assign(n, 0.0);
  b_.assign(n, 0.0);
  for (int m = 0; m <= lmax; ++m)
    for (int l = m + 2; l <= lmax; ++l) {
      const double l2 = l * l, m2 = m * m, lm1 = (l - 1) * (l - 1);
      a_[tri(l, m)] = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      b_[tri(l, m)] = std::sqrt((lm1 - m2) / (4.0 * lm1 - 1.0));
    }
}

int HarmonicBasis::degree_of(int index) {
  return static_cast<int>(std::sqrt(static_cast<double>(index)));
}

int HarmonicBasis::odd_count() const {
  int c = 0;
  for (int l = 1; l <= lmax_; l += 2) c += 2 * l + 1;
  return c;
}

void HarmonicBasis::evaluate(const Eigen::Vector3d& x, std::span<double> out) const {
  // Fully normalized P_l^m(t) / s^m, combined with Re/Im (x + iy)^m = s^m cos/sin(mφ).
  const double t = x[2];
  const std::complex<double> e(x[0], x[1]);
  std::complex<double> em(1.0, 0.0);
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 0; m <= lmax_; ++m) {
    if (m > 0) {
      pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      em *= e;
    }
    const double c = m == 0 ? 1.0 : std::numbers::sqrt2 * em.real();
    const double s = std::numbers::sqrt2 * em.imag();
    double p2 = 0.0, p1 = pmm;
    for (int l = m; l <= lmax_; ++l) {
      double p;
      if (l == m)
        p = pmm;
      else if (l == m + 1)
        p = std::sqrt(2.0 * m + 3.0) * t * pmm;
      else
        p = a_[tri(l, m)] * (t * p1 - b_[tri(l, m)] * p2);
      if (l > m) {
        p2 = p1;
        p1 = p;
      }
      out[index(l, m)] = p * c;
      if (m > 0) out[index(l, -m)] = p * s;
    }
  }
}

Eigen::VectorXd HarmonicBasis::evaluate(const Eigen::Vector3d& x) const {
  Eigen::VectorXd v(size());
  evaluate(x, std::span<double>(v.data(), static_cast<std::size_t>(v.size())));
  return v;
}

double HarmonicBasis::evaluate(int index, const Eigen::Vector3d& x) const {
  return evaluate(x)[index];
}

SphereFunction::SphereFunction(int l, Eigen::VectorXd c)
    : lmax(l), coefficients(std::move(c)) {
  if (coefficients.size() != (lmax + 1) * (lmax + 1))
    fail(ErrorCode::InvalidArgument, "coefficient vector length does not match lmax");
}

double SphereFunction::operator()(const Eigen::Vector3d& x) const {
  return HarmonicBasis(lmax).evaluate(x).dot(coefficients);
}

double SphereFunction::odd_energy() const {
  double e = 0.0;
  for (int l = 1; l <= lmax; l += 2)
    e += coefficients.segment(l * l, 2 * l + 1).squaredNorm();
  return std::sqrt(e);
}

double funk_hecke_eigenvalue(int l) {
  if (l < 0) fail(ErrorCode::InvalidArgument, "degree must be nonnegative");
  if (l % 2 == 1) return 0.0;
  // P_l(0) = (-1)^{l/2} (l-1)!! / l!!
  double p = 1.0;
  for (int k = 2; k <= l; k += 2) p *= -static_cast<double>(k - 1) / k;
  return 2.0 * kPi * p;
}

SphereFunction transform_as_function(const SphereFunction& f) {
  SphereFunction g = f;
  for (int l = 0; l <= f.lmax; ++l)
    g.coefficients.segment(l * l, 2 * l + 1) *= funk_hecke_eigenvalue(l);
  return g;
}

SphereFunction invert_even(const SphereFunction& fhat) {
  const double norm = fhat.coefficients.norm();
  if (fhat.odd_energy() > 1e-8 * norm)
    fail(ErrorCode::NoPreimage,
         "odd-degree energy present: no function has this Funk transform");
  SphereFunction f = fhat;
  for (int l = 0; l <= f.lmax; ++l) {
    auto block = f.coefficients.segment(l * l, 2 * l + 1);
    if (l % 2 == 1)
      block.setZero();
    else
      block /= funk_hecke_eigenvalue(l);
  }
  return f;
}

std::vector<GreatCircle> sample_circles(int count, Rng& rng) {
  if (count < 0) fail(ErrorCode::InvalidArgument, "circle count must be nonnegative");
  std::vector<GreatCircle> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.emplace_back(rng.gaussian3());
  return out;
}

TransformOperator assemble_operator(const HarmonicBasis& basis,
                                    std::span<const GreatCircle> circles, int k) {
  if (k < 2 * basis.lmax() + 8) {
    std::ostringstream os;
    os << "quadrature count " << k << " below 2*lmax+8 = " << 2 * basis.lmax() + 8;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  TransformOperator op;
  op.space = "S^2";
  op.basis = "harmonics lmax=" + std::to_string(basis.lmax());
  op.quadrature = k;
  op.matrix.setZero(static_cast<Eigen::Index>(circles.size()), basis.size());
  const double h = 2.0 * kPi / k;
  Eigen::VectorXd values(basis.size());
  std::span<double> buf(values.data(), static_cast<std::size_t>(values.size()));
  for (std::size_t i = 0; i < circles.size(); ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(basis.size());
    for (int j = 0; j < k; ++j) {
      basis.evaluate(circles[i].point(h * j), buf);
      row += values;
    }
    op.matrix.row(static_cast<Eigen::Index>(i)) = h * row;
  }
  return op;
}

SphereKernel kernel_analysis(const TransformOperator& op, int lmax,
                             double tol_ratio) {
  if (op.cols() != (lmax + 1) * (lmax + 1))
    fail(ErrorCode::InvalidArgument, "operator width does not match lmax");
  SphereKernel out;
  out.analysis = analyze_kernel(op.matrix, tol_ratio);
  out.kernel_dim = static_cast<int>(out.analysis.kernel.cols());
  out.odd_count = HarmonicBasis(lmax).odd_count();
  if (out.kernel_dim != out.odd_count) {
    out.max_principal_angle = kPi / 2;
  } else if (out.kernel_dim > 0) {
    // sin of the largest angle = ‖even rows of the kernel basis‖₂
    Eigen::MatrixXd even(op.cols() - out.odd_count, out.kernel_dim);
    Eigen::Index r = 0;
    for (int l = 0; l <= lmax; l += 2)
      for (int i = l * l; i < (l + 1) * (l + 1); ++i) even.row(r++) = out.analysis.kernel.row(i);
    const double s = even.size() ? Eigen::JacobiSVD<Eigen::MatrixXd>(even).singularValues()[0] : 0.0;
    out.max_principal_angle = std::asin(std::min(1.0, s));
  }
  return out;
}

SphereFunction random_function(int lmax, Rng& rng) {
  const int n = (lmax + 1) * (lmax + 1);
  return SphereFunction(lmax, rng.gaussian(n));
}

SphereFunction random_even_function(int lmax, Rng& rng) {
  SphereFunction f = random_function(lmax, rng);
  for (int l = 1; l <= lmax; l += 2) f.coefficients.segment(l * l, 2 * l + 1).setZero();
  return f;
}

}  // namespace funkgeo::sphere
