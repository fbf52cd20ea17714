#include "funkgeo/cpn_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "funkgeo/error.hpp"

namespace funkgeo::cpn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerate = 1e-12;

CVec normalized(const CVec& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n)) fail(ErrorCode::InvalidArgument, what);
  return v / n;
}

// Remove the components along the given orthonormal vectors (two passes).
CVec orthogonalize(CVec v, std::initializer_list<const CVec*> against) {
  for (int pass = 0; pass < 2; ++pass)
    for (const CVec* u : against) v -= hermitian(*u, v) * *u;
  return v;
}

// Lowest-index coordinate direction with a usable component orthogonal to
// the given orthonormal vectors.
CVec coordinate_complement(Eigen::Index dim, std::initializer_list<const CVec*> against) {
  for (Eigen::Index k = 0; k < dim; ++k) {
    CVec e = CVec::Zero(dim);
    e[k] = 1.0;
    CVec v = orthogonalize(e, against);
    if (v.norm() > 1e-6) return orthogonalize(v.normalized(), against).normalized();
  }
  fail(ErrorCode::UnsupportedDimension, "no direction orthogonal to the given frame");
}

CVec random_complement(Eigen::Index dim, std::initializer_list<const CVec*> against,
                       Rng& rng) {
  for (;;) {
    CVec v = orthogonalize(rng.complex_gaussian(dim), against);
    if (v.norm() > 1e-6) return orthogonalize(v.normalized(), against).normalized();
  }
}

}  // namespace

ProjPoint::ProjPoint(const CVec& rep)
    : rep_(normalized(rep, "projective point needs a nonzero finite representative")) {
  if (rep_.size() < 2) fail(ErrorCode::InvalidArgument, "CP^n needs n >= 1");
}

CVec ProjPoint::canonical() const {
  for (Eigen::Index i = 0; i < rep_.size(); ++i) {
    const double a = std::abs(rep_[i]);
    if (a > kDegenerate) {
      CVec c = rep_ * (std::conj(rep_[i]) / a);
      c[i] = a;
      return c;
    }
  }
  return rep_;
}

bool ProjPoint::same_as(const ProjPoint& other, double tol) const {
  return rep_.size() == other.rep_.size() &&
         std::abs(std::abs(hermitian(rep_, other.rep_)) - 1.0) <= tol;
}

ProjLine::ProjLine(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "frame dimension mismatch");
  f1_ = normalized(a, "line frame needs nonzero vectors");
  CVec w = orthogonalize(b, {&f1_});
  if (w.norm() <= kDegenerate * std::max(1.0, b.norm()))
    fail(ErrorCode::CoincidentPoints, "frame vectors span a single point");
  f2_ = orthogonalize(w.normalized(), {&f1_}).normalized();
}

double ProjLine::membership_residual(const CVec& x) const {
  if (x.size() != f1_.size()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  return (x - hermitian(f1_, x) * f1_ - hermitian(f2_, x) * f2_).norm();
}

bool ProjLine::contains(const ProjPoint& p, double tol) const {
  return membership_residual(p.rep()) <= tol;
}

ProjPoint ProjLine::point(double theta, double phi) const {
  return ProjPoint(std::cos(theta / 2) * f1_ +
                   std::polar(std::sin(theta / 2), phi) * f2_);
}

CPGeodesic::CPGeodesic(const ProjPoint& base, const CVec& direction) : base_(base) {
  if (direction.size() != base.rep().size())
    fail(ErrorCode::InvalidArgument, "direction dimension mismatch");
  CVec w = orthogonalize(direction, {&base_.rep()});
  w_ = orthogonalize(normalized(w, "geodesic direction must be horizontal and nonzero"),
                     {&base_.rep()})
           .normalized();
}

CVec CPGeodesic::lift(double t) const {
  return std::cos(t / 2) * base_.rep() + std::sin(t / 2) * w_;
}

Ball::Ball(ProjPoint c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0 && r < kPi)) fail(ErrorCode::InvalidArgument, "ball radius must lie in (0, pi)");
}

double fs_distance(const ProjPoint& p, const ProjPoint& q) {
  if (p.n() != q.n()) fail(ErrorCode::InvalidArgument, "points live in different CP^n");
  const auto c = hermitian(p.rep(), q.rep());
  const double perp = (q.rep() - c * p.rep()).norm();
  return 2.0 * std::atan2(perp, std::abs(c));
}

CPGeodesic geodesic_through(const ProjPoint& p, const ProjPoint& q) {
  if (p.n() != q.n()) fail(ErrorCode::InvalidArgument, "points live in different CP^n");
  const auto c = hermitian(p.rep(), q.rep());
  const CVec perp = q.rep() - c * p.rep();
  const double s = perp.norm();
  if (s <= kDegenerate)
    fail(ErrorCode::CoincidentPoints, "p and q coincide: geodesic direction undefined");
  if (std::abs(c) <= kDegenerate)
    fail(ErrorCode::AntipodalPoints,
         "p and q are at distance pi: the shortest geodesic is not unique");
  const auto phase = std::conj(c) / std::abs(c);
  return CPGeodesic(p, perp * phase / s);
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  if (p.n() != q.n()) fail(ErrorCode::InvalidArgument, "points live in different CP^n");
  return ProjLine(p.rep(), q.rep());
}

ProjPoint antipode_in_line(const ProjLine& line, const ProjPoint& x) {
  if (x.n() != line.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  if (!line.contains(x)) fail(ErrorCode::NotOnLine, "point does not lie on the line");
  const auto a1 = hermitian(line.first(), x.rep());
  const auto a2 = hermitian(line.second(), x.rep());
  return ProjPoint(-std::conj(a2) * line.first() + std::conj(a1) * line.second());
}

ProjLine perpendicular_line_at(const ProjLine& line, const ProjPoint& q, Rng* rng) {
  if (line.n() < 2)
    fail(ErrorCode::UnsupportedDimension, "CP^1 has no second line through a point");
  if (!line.contains(q)) fail(ErrorCode::NotOnLine, "point does not lie on the line");
  const Eigen::Index dim = q.rep().size();
  const CVec v = rng ? random_complement(dim, {&line.first(), &line.second()}, *rng)
                     : coordinate_complement(dim, {&line.first(), &line.second()});
  return ProjLine(q.rep(), v);
}

double triple_antipode_residual(const ProjPoint& p, const ProjLine& line, Rng* rng) {
  const ProjPoint q = antipode_in_line(line, p);
  const ProjLine perp = perpendicular_line_at(line, q, rng);
  const ProjPoint r = antipode_in_line(perp, q);
  return std::abs(hermitian(r.rep(), p.rep()));
}

ProjLine avoiding_line(const ProjPoint& p, const ProjPoint& q) {
  if (p.n() != q.n()) fail(ErrorCode::InvalidArgument, "points live in different CP^n");
  if (p.n() < 2)
    fail(ErrorCode::UnsupportedDimension, "CP^1 is a single projective line");
  const auto c = hermitian(p.rep(), q.rep());
  if ((q.rep() - c * p.rep()).norm() <= kDegenerate)
    fail(ErrorCode::CoincidentPoints, "p and q coincide");
  const Eigen::Index dim = p.rep().size();
  if (std::abs(c) <= kDegenerate) {
    // q lies in the cut locus of p: take a line through q inside it
    const CVec pp = orthogonalize(p.rep(), {&q.rep()}).normalized();
    return ProjLine(q.rep(), coordinate_complement(dim, {&q.rep(), &pp}));
  }
  // continue the geodesic from q through p to the cut point p̂ = σ(π); a line
  // through q inside the cut locus of p̂ stays at distance ≥ s from p
  const CPGeodesic sigma = geodesic_through(q, p);
  const CVec& cut_point = sigma.direction();
  return ProjLine(q.rep(), coordinate_complement(dim, {&q.rep(), &cut_point}));
}

double distance_to_line(const ProjPoint& p, const ProjLine& line) {
  const auto a1 = hermitian(line.first(), p.rep());
  const auto a2 = hermitian(line.second(), p.rep());
  const double inside = std::sqrt(std::norm(a1) + std::norm(a2));
  return 2.0 * std::atan2(line.membership_residual(p.rep()), inside);
}

double sampled_distance_to_line(const ProjPoint& p, const ProjLine& line, int samples) {
  if (samples < 1) fail(ErrorCode::InvalidArgument, "need at least one sample");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = kPi;
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / samples;
    best = std::min(best, fs_distance(p, line.point(std::acos(z), golden * i)));
  }
  return best;
}

ProjPoint random_point(int n, Rng& rng) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "CP^n needs n >= 1");
  return ProjPoint(rng.complex_gaussian(n + 1));
}

std::vector<CPGeodesic> sample_geodesics(int n, int count, Rng& rng) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "need at least one geodesic");
  std::vector<CPGeodesic> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const ProjPoint base = random_point(n, rng);
    out.emplace_back(base, random_complement(n + 1, {&base.rep()}, rng));
  }
  return out;
}

double geodesic_integral(const PointFunction& f, const CPGeodesic& geo, int k) {
  if (k < 4) fail(ErrorCode::InvalidArgument, "quadrature count must be at least 4");
  const double h = 2.0 * kPi / k;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += f(geo.lift(h * i));
  return h * sum;
}

double sampled_distance_to_geodesic(const ProjPoint& p, const CPGeodesic& geo,
                                    int samples) {
  const double h = 2.0 * kPi / samples;
  double best = kPi;
  for (int i = 0; i < samples; ++i)
    best = std::min(best, fs_distance(p, ProjPoint(geo.lift(h * i))));
  return best;
}

double distance_to_geodesic(const ProjPoint& p, const CPGeodesic& geo) {
  // max_θ |a cosθ + c sinθ|² for a = ⟨base, p⟩, c = ⟨w, p⟩
  const auto a = hermitian(geo.base().rep(), p.rep());
  const auto c = hermitian(geo.direction(), p.rep());
  const double mean = 0.5 * (std::norm(a) + std::norm(c));
  const double half_diff = 0.5 * (std::norm(a) - std::norm(c));
  const double cross = (std::conj(a) * c).real();
  const double best = std::clamp(mean + std::hypot(half_diff, cross), 0.0, 1.0);
  return 2.0 * std::acos(std::sqrt(best));
}

Eigen::Vector3d bloch_map(const ProjPoint& p) {
  if (p.n() != 1) fail(ErrorCode::UnsupportedDimension, "the Bloch map is defined on CP^1 only");
  const auto z0 = p.rep()[0], z1 = p.rep()[1];
  const auto m = std::conj(z0) * z1;
  return {2.0 * m.real(), 2.0 * m.imag(), std::norm(z0) - std::norm(z1)};
}

Eigen::MatrixXcd random_unitary(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int j = 0; j < dim; ++j) g.col(j) = rng.complex_gaussian(dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const auto d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

CPGeodesic transform(const Eigen::MatrixXcd& u, const CPGeodesic& geo) {
  return CPGeodesic(ProjPoint(u * geo.base().rep()), u * geo.direction());
}

}  // namespace funkgeo::cpn
