#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "funkgeo/rng.hpp"

namespace funkgeo::cpn {

using CVec = Eigen::VectorXcd;

/// Inner product ⟨u, v⟩ = Σ conj(u_i) v_i.
inline std::complex<double> hermitian(const CVec& u, const CVec& v) { return u.dot(v); }

/// Point of CPⁿ held by a unit representative in ℂⁿ⁺¹. Everything downstream
/// is invariant under multiplying the representative by a unit phase.
class ProjPoint {
 public:
  explicit ProjPoint(const CVec& rep);

  const CVec& rep() const { return rep_; }
  int n() const { return static_cast<int>(rep_.size()) - 1; }

  /// Representative with the first nonzero component real-positive.
  CVec canonical() const;
  /// Same point, |⟨p, q⟩| = 1 within tol.
  bool same_as(const ProjPoint& other, double tol = 1e-12) const;

 private:
  CVec rep_;
};

/// Projective line: the complex 2-plane spanned by an orthonormal frame.
class ProjLine {
 public:
  ProjLine(const CVec& a, const CVec& b);

  const CVec& first() const { return f1_; }
  const CVec& second() const { return f2_; }
  int n() const { return static_cast<int>(f1_.size()) - 1; }

  /// ‖x − P x‖ for the orthogonal projector P onto the frame span.
  double membership_residual(const CVec& x) const;
  bool contains(const ProjPoint& p, double tol = 1e-9) const;
  /// Point with Bloch coordinates (θ, φ) relative to the frame.
  ProjPoint point(double theta, double phi) const;

 private:
  CVec f1_, f2_;
};

/// Unit-speed closed geodesic t ↦ [cos(t/2)·base + sin(t/2)·w], t ∈ [0, 2π).
class CPGeodesic {
 public:
  CPGeodesic(const ProjPoint& base, const CVec& direction);

  const ProjPoint& base() const { return base_; }
  const CVec& direction() const { return w_; }
  int n() const { return base_.n(); }

  CVec lift(double t) const;
  ProjPoint point(double t) const { return ProjPoint(lift(t)); }
  ProjLine line() const { return ProjLine(base_.rep(), w_); }

 private:
  ProjPoint base_;
  CVec w_;
};

struct Ball {
  ProjPoint center;
  double radius;

  Ball(ProjPoint c, double r);
};

/// Distance for the metric with closed geodesics of length 2π:
/// 2·arccos|⟨p, q⟩|, evaluated through atan2 for accuracy near 0 and π.
double fs_distance(const ProjPoint& p, const ProjPoint& q);

/// Shortest geodesic with γ(0) = p and γ(d(p, q)) = q.
/// Throws CoincidentPoints if p ≡ q and AntipodalPoints if d = π.
CPGeodesic geodesic_through(const ProjPoint& p, const ProjPoint& q);

/// The projective line through two distinct points.
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);

/// Point of L orthogonal to x; throws NotOnLine when x ∉ L.
ProjPoint antipode_in_line(const ProjLine& line, const ProjPoint& x);

/// Line Q through q meeting L perpendicularly (n ≥ 2). Without rng the second
/// frame vector is the lowest-index coordinate direction orthogonal to L;
/// with rng it is a random unit vector of that complement.
ProjLine perpendicular_line_at(const ProjLine& line, const ProjPoint& q,
                               Rng* rng = nullptr);

/// |⟨r, p⟩| for the triple-antipode construction p → q → r.
double triple_antipode_residual(const ProjPoint& p, const ProjLine& line, Rng* rng = nullptr);

/// Projective line through q that does not meet the open ball B_s(p),
/// s = d(p, q). Throws CoincidentPoints (p ≡ q) or UnsupportedDimension (n = 1).
ProjLine avoiding_line(const ProjPoint& p, const ProjPoint& q);

/// min over the line of d(p, ·) = 2·arccos‖projection of p onto the span‖.
double distance_to_line(const ProjPoint& p, const ProjLine& line);

/// Sampled min over `samples` points of the line (Fibonacci lattice on the
/// Bloch sphere of the line).
double sampled_distance_to_line(const ProjPoint& p, const ProjLine& line,
                                int samples = 10000);

ProjPoint random_point(int n, Rng& rng);

/// Unitary-invariant sample: Gaussian base, uniform horizontal direction.
std::vector<CPGeodesic> sample_geodesics(int n, int count, Rng& rng);

using PointFunction = std::function<double(const CVec&)>;

/// (2π/K) Σ f(γ(2πk/K)), K ≥ 4.
double geodesic_integral(const PointFunction& f, const CPGeodesic& geo, int k);

/// Sampled min_t d(p, γ(t)) over `samples` equispaced t.
double sampled_distance_to_geodesic(const ProjPoint& p, const CPGeodesic& geo,
                                    int samples = 512);
/// Closed form of the same minimum.
double distance_to_geodesic(const ProjPoint& p, const CPGeodesic& geo);

/// CP¹ → S²: [z₀:z₁] ↦ (2Re(z̄₀z₁), 2Im(z̄₀z₁), |z₀|² − |z₁|²).
Eigen::Vector3d bloch_map(const ProjPoint& p);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
Eigen::MatrixXcd random_unitary(int dim, Rng& rng);

CPGeodesic transform(const Eigen::MatrixXcd& u, const CPGeodesic& geo);

}  // namespace funkgeo::cpn
