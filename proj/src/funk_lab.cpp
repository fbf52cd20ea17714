#include "funkgeo/funk_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "funkgeo/error.hpp"

namespace funkgeo::lab {

namespace {

using cpn::CVec;

void enumerate_exponents(int vars, int total, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == vars - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = total; e >= 0; --e) {
    cur.push_back(e);
    enumerate_exponents(vars, total - e, cur, out);
    cur.pop_back();
  }
}

long binomial(int a, int b) {
  long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

// Complex monomial expansion of a real generator: Σ coeff·z^a z̄^b.
struct Term {
  int a, b;
  std::complex<double> coeff;
};

std::array<Term, 2> expand(const std::array<int, 3>& g) {
  const int a = g[0], b = g[1];
  if (a == b) return {Term{a, b, 1.0}, Term{a, b, 0.0}};
  // m̄_ab = m_ba; Re m = (m_ab + m_ba)/2, Im m = (m_ab − m_ba)/(2i)
  if (g[2] == 0) return {Term{a, b, 0.5}, Term{b, a, 0.5}};
  return {Term{a, b, std::complex<double>(0, -0.5)}, Term{b, a, std::complex<double>(0, 0.5)}};
}

std::complex<double> monomial(const CVec& z, const std::vector<int>& e) {
  std::complex<double> m = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int p = 0; p < e[i]; ++p) m *= z[static_cast<Eigen::Index>(i)];
  return m;
}

}  // namespace

double sphere_moment(int n, std::span<const int> c) {
  // n!·Πc_i!/(n+|c|)! computed as a running ratio
  double r = 1.0;
  int k = n;
  for (int ci : c)
    for (int j = 1; j <= ci; ++j) r *= static_cast<double>(j) / static_cast<double>(++k);
  return r;
}

CPBasis::CPBasis(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "CP^n needs n >= 1");
  if (degree < 0) fail(ErrorCode::InvalidArgument, "degree must be nonnegative");
  const long count = binomial(degree + n, n);
  if (count * count > kMaxSize) {
    std::ostringstream os;
    os << "basis size C(D+n,n)^2 = " << count * count << " exceeds the cap " << kMaxSize;
    fail(ErrorCode::CapExceeded, os.str());
  }
  std::vector<int> cur;
  enumerate_exponents(n + 1, degree, cur, exponents_);
  const int m = monomial_count();
  for (int a = 0; a < m; ++a) {
    generators_.push_back({a, a, 0});
    for (int b = a + 1; b < m; ++b) {
      generators_.push_back({a, b, 0});
      generators_.push_back({a, b, 1});
    }
  }

  const int size = static_cast<int>(generators_.size());
  // ⟨z^a z̄^b, z^a' z̄^b'⟩ = ∫ z^{b+a'} z̄^{a+b'} = δ_{b+a', a+b'} · moment(b+a')
  auto mono_inner = [&](int a, int b, int a2, int b2) {
    std::vector<int> left(static_cast<std::size_t>(n + 1)), right(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      left[i] = exponents_[b][i] + exponents_[a2][i];
      right[i] = exponents_[a][i] + exponents_[b2][i];
    }
    return left == right ? sphere_moment(n, left) : 0.0;
  };
  gram_.resize(size, size);
  for (int i = 0; i < size; ++i) {
    const auto ti = expand(generators_[i]);
    for (int j = i; j < size; ++j) {
      const auto tj = expand(generators_[j]);
      std::complex<double> g = 0.0;
      for (const Term& x : ti)
        for (const Term& y : tj)
          if (x.coeff != 0.0 && y.coeff != 0.0)
            g += std::conj(x.coeff) * y.coeff * mono_inner(x.a, x.b, y.a, y.b);
      gram_(i, j) = gram_(j, i) = g.real();
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  condition_ = lambda[0] > 0 ? lambda[size - 1] / lambda[0]
                             : std::numeric_limits<double>::infinity();
  if (!(condition_ <= 1e12))
    fail(ErrorCode::IllConditioned, "generator Gram matrix is numerically singular");
  transform_ = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
               eig.eigenvectors().transpose();
}

Eigen::VectorXd CPBasis::generators(const CVec& z) const {
  if (z.size() != n_ + 1) fail(ErrorCode::InvalidArgument, "point dimension mismatch");
  std::vector<std::complex<double>> mono(exponents_.size());
  for (std::size_t i = 0; i < mono.size(); ++i) mono[i] = monomial(z, exponents_[i]);
  Eigen::VectorXd g(static_cast<Eigen::Index>(generators_.size()));
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const auto& [a, b, part] = generators_[k];
    const auto m = mono[a] * std::conj(mono[b]);
    g[static_cast<Eigen::Index>(k)] = part == 0 ? m.real() : m.imag();
  }
  return g;
}

Eigen::VectorXd CPBasis::evaluate(const CVec& z) const {
  return transform_.transpose() * generators(z);
}

double CPBasis::evaluate(const Eigen::VectorXd& coefficients, const CVec& z) const {
  return evaluate(z).dot(coefficients);
}

TransformOperator assemble_cp_operator(const CPBasis& basis,
                                       std::span<const cpn::CPGeodesic> geodesics,
                                       int k) {
  if (k < 8 * basis.degree() + 8) {
    std::ostringstream os;
    os << "quadrature count " << k << " below 8*D+8 = " << 8 * basis.degree() + 8;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  TransformOperator op;
  op.space = "CP^" + std::to_string(basis.n());
  op.basis = "bidegree n=" + std::to_string(basis.n()) + " D=" + std::to_string(basis.degree());
  op.quadrature = k;
  op.matrix.resize(static_cast<Eigen::Index>(geodesics.size()), basis.size());
  const double h = 2.0 * std::numbers::pi / k;
  for (std::size_t i = 0; i < geodesics.size(); ++i) {
    if (geodesics[i].n() != basis.n())
      fail(ErrorCode::InvalidArgument, "geodesic lives in a different CP^n");
    // integrate generators first, then map through the orthonormalizing transform
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(basis.size());
    for (int j = 0; j < k; ++j) acc += basis.generators(geodesics[i].lift(h * j));
    op.matrix.row(static_cast<Eigen::Index>(i)) = h * (basis.transform().transpose() * acc);
  }
  return op;
}

RankResult operator_rank(const TransformOperator& op, double tol_ratio) {
  const KernelAnalysis ka = analyze_kernel(op.matrix, tol_ratio);
  RankResult r;
  r.basis_dim = static_cast<int>(op.cols());
  r.rank = ka.rank;
  r.singular_values = ka.singular_values;
  const auto k = r.singular_values.size();
  r.ratio = k > 0 && r.singular_values[0] > 0 ? r.singular_values[k - 1] / r.singular_values[0]
                                              : 0.0;
  if (k < op.cols()) r.ratio = 0.0;
  r.gap = ka.gap;
  r.ill_separated = ka.ill_separated;
  r.full_rank = r.rank == r.basis_dim;
  r.near_kernel = ka.smallest_right;
  return r;
}

RankResult cp_rank_experiment(int n, int degree, int n_geo, std::uint64_t seed,
                              double tol_ratio, int k) {
  const CPBasis basis(n, degree);
  Rng rng(seed);
  const auto geodesics = cpn::sample_geodesics(n, n_geo, rng);
  TransformOperator op = assemble_cp_operator(basis, geodesics, k);
  op.seed = seed;
  return operator_rank(op, tol_ratio);
}

RankResult injectivity_experiment(int n, int degree, int n_geo, std::uint64_t seed,
                                  double tol_ratio, int k) {
  if (n < 2)
    fail(ErrorCode::UnsupportedDimension,
         "CP^1 is a round sphere, where the transform has a kernel");
  const CPBasis basis(n, degree);
  if (n_geo < 2 * basis.size()) {
    std::ostringstream os;
    os << "need at least " << 2 * basis.size() << " geodesics for basis size " << basis.size();
    fail(ErrorCode::InvalidArgument, os.str());
  }
  return cp_rank_experiment(n, degree, n_geo, seed, tol_ratio, k);
}

Eigen::VectorXd least_squares_invert(const TransformOperator& op,
                                     const Eigen::VectorXd& data, double reg) {
  return least_squares_solve(op.matrix, data, reg);
}

SupportReport support_experiment(const cpn::Ball& ball, const SupportSettings& s) {
  if (s.n < 1) fail(ErrorCode::UnsupportedDimension, "the support experiment needs n >= 1");
  if (ball.center.n() != s.n) fail(ErrorCode::InvalidArgument, "ball center dimension mismatch");
  if (s.margin < 0) fail(ErrorCode::InvalidArgument, "margin must be nonnegative");
  const CPBasis basis(s.n, s.degree);

  Rng rng(s.seed);
  Rng geo_rng = rng.split();
  Rng grid_rng = rng.split();

  SupportReport rep{.ball = ball};
  std::vector<cpn::CPGeodesic> kept;
  const int max_candidates = 10 * s.n_geo;
  while (static_cast<int>(kept.size()) < s.n_geo && rep.n_candidates < max_candidates) {
    auto geo = cpn::sample_geodesics(s.n, 1, geo_rng).front();
    ++rep.n_candidates;
    if (cpn::sampled_distance_to_geodesic(ball.center, geo, s.distance_samples) > ball.radius)
      kept.push_back(std::move(geo));
  }
  rep.n_avoiding_geodesics = static_cast<int>(kept.size());
  if (2 * rep.n_avoiding_geodesics < basis.size()) {
    std::ostringstream os;
    os << "only " << rep.n_avoiding_geodesics << " of " << rep.n_candidates
       << " sampled geodesics avoid the ball; need " << (basis.size() + 1) / 2;
    fail(ErrorCode::InsufficientGeodesics, os.str());
  }

  TransformOperator op = assemble_cp_operator(basis, kept, s.k);
  op.seed = s.seed;
  const KernelAnalysis ka = analyze_kernel(op.matrix, s.tol_ratio);
  rep.singular_values = ka.singular_values;
  rep.rank = ka.rank;
  rep.kernel_dim = static_cast<int>(ka.kernel.cols());
  rep.gap = ka.gap;
  rep.ill_separated = ka.ill_separated;
  rep.vacuous = rep.kernel_dim == 0;

  // evaluation grid: uniform points beyond r + margin, plus points at
  // uniformly distributed distances inside r + margin
  const double edge = ball.radius + s.margin;
  std::vector<CVec> outside, inside{ball.center.rep()};
  int attempts = 0;
  while (static_cast<int>(outside.size()) < s.grid_outside && attempts < 100 * s.grid_outside) {
    ++attempts;
    const cpn::ProjPoint x = cpn::random_point(s.n, grid_rng);
    if (cpn::fs_distance(ball.center, x) >= edge) outside.push_back(x.rep());
  }
  const auto& c = ball.center.rep();
  for (int i = 0; i < s.grid_inside; ++i) {
    CVec u = grid_rng.complex_gaussian(s.n + 1);
    u -= cpn::hermitian(c, u) * c;
    u.normalize();
    const double t = std::min(edge, std::numbers::pi) * grid_rng.uniform();
    inside.push_back(std::cos(t / 2) * c + std::sin(t / 2) * u);
  }
  rep.outside_points = static_cast<int>(outside.size());
  rep.inside_points = static_cast<int>(inside.size());

  for (Eigen::Index j = 0; j < ka.kernel.cols(); ++j) {
    const Eigen::VectorXd coeffs = ka.kernel.col(j);
    double out_sup = 0.0, in_sup = 0.0;
    for (const auto& x : outside) out_sup = std::max(out_sup, std::abs(basis.evaluate(coeffs, x)));
    for (const auto& x : inside) in_sup = std::max(in_sup, std::abs(basis.evaluate(coeffs, x)));
    rep.outside_sup.push_back(out_sup);
    rep.inside_sup.push_back(in_sup);
  }
  return rep;
}

}  // namespace funkgeo::lab
