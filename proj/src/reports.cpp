#include "reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "funkgeo/cpn_geom.hpp"
#include "funkgeo/error.hpp"
#include "funkgeo/funk_lab.hpp"
#include "funkgeo/rootsys.hpp"
#include "funkgeo/sphere_funk.hpp"

namespace funkgeo::reports {

namespace {

constexpr double kPi = std::numbers::pi;

// Acceptance thresholds echoed into every report that checks them.
constexpr double kPairingTol = 1e-12;
constexpr double kGeometryTol = 1e-12;
constexpr double kAvoidSlack = 1e-9;
constexpr double kSpectralRel = 1e-8;
constexpr double kOddAbs = 1e-10;
constexpr double kAngleTol = 1e-6;
constexpr double kRoundTrip = 1e-8;
constexpr double kMinRatio = 1e-6;
constexpr double kOutsideSup = 5e-2;
constexpr double kInsideSup = 0.5;

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json interleaved(const cpn::CVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    a.push_back(v[i].real());
    a.push_back(v[i].imag());
  }
  return a;
}

struct Checks {
  Json list = Json::array();
  bool passed = true;

  void add(const std::string& name, bool ok, Json detail = Json::object()) {
    Json c = {{"name", name}, {"passed", ok}};
    for (auto it = detail.begin(); it != detail.end(); ++it) c[it.key()] = it.value();
    list.push_back(std::move(c));
    passed = passed && ok;
  }
};

Report finish(Json body, Checks checks, std::string csv = {}) {
  body["checks"] = std::move(checks.list);
  body["passed"] = checks.passed;
  Report r;
  r.passed = checks.passed;
  r.body = std::move(body);
  r.csv = std::move(csv);
  return r;
}

Json envelope(const RunConfig& c, Json parameters) {
  parameters["seed"] = c.seed;
  return Json{{"command", c.command + " " + c.subcommand}, {"parameters", std::move(parameters)}};
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------- roots

Json root_system_json(const roots::RootSystem& rs) {
  Json rj = Json::array();
  for (const auto& r : rs.roots()) rj.push_back(vec_json(r));
  return Json{{"family", std::string(roots::family_name(rs.family()))},
              {"rank", rs.rank()},
              {"roots", rj},
              {"positive", rs.positive()},
              {"highest", rs.highest()}};
}

bool reflection_closed(const roots::RootSystem& rs) {
  for (const auto& b : rs.roots())
    for (const auto& a : rs.roots()) {
      const Eigen::VectorXd s = a - 2.0 * a.dot(b) / b.squaredNorm() * b;
      if (rs.find(s) == rs.size()) return false;
    }
  return true;
}

Report roots_check(const RunConfig& c) {
  const double tol = c.tol > 0 ? c.tol : kPairingTol;
  const auto rs = roots::build_root_system(roots::parse_family(c.family), c.rank);
  Json body = envelope(c, {{"family", c.family}, {"rank", c.rank}, {"tol", tol}});
  body["root_system"] = root_system_json(rs);
  Checks checks;

  const auto pr = roots::check_longest_root_pairing(rs, tol);
  Json pairings = Json::array();
  std::vector<double> over_pi;
  for (const auto& p : pr.pairings) {
    pairings.push_back({{"root", p.root}, {"value", p.value}, {"over_pi", p.value / kPi}});
    over_pi.push_back(p.value / kPi);
  }
  std::sort(over_pi.begin(), over_pi.end());
  body["pairings"] = pairings;
  body["pairing_multiset_over_pi"] = over_pi;
  body["count_pm_pi"] = pr.count_pi;
  checks.add("pairings in {0, +-pi} and 2pi at the highest root", pr.passed,
             {{"offending", pr.offending}, {"tol", tol}});
  checks.add("at least two positive roots pair to +-pi (rank >= 2)", pr.at_least_two,
             {{"count", pr.count_pi}});

  Json duals = Json::array();
  bool identity_ok = true;
  for (std::size_t i : rs.positive()) {
    const auto x = roots::dual_vector(rs, i);
    identity_ok = identity_ok && std::abs(rs.root(i).dot(x.coordinates) - 2.0 * kPi) <= tol;
    duals.push_back({{"root", i}, {"coordinates", vec_json(x.coordinates)}, {"length", x.length}});
  }
  body["dual_vectors"] = duals;
  checks.add("<a, X_a> = 2pi for every root", identity_ok);
  const double highest_len = roots::dual_vector(rs, rs.highest()).length;
  body["highest_dual_length"] = highest_len;
  checks.add("|X_delta| = 2pi", std::abs(highest_len - 2.0 * kPi) <= tol);

  const Eigen::VectorXd half = roots::dual_vector(rs, rs.highest()).coordinates / 2.0;
  const auto odd = roots::odd_root_set(rs, half);
  body["odd_root_set_half_highest"] = odd;
  if (rs.rank() >= 2)
    checks.add("|R(X_delta/2)| >= 2", odd.size() >= 2, {{"count", odd.size()}});

  if (rs.family() == roots::Family::B && rs.rank() == 2) {
    // β = α1 + α2: the short positive root that is not simple
    const auto simple = rs.simple_roots();
    std::size_t beta = rs.size();
    for (std::size_t i : rs.positive())
      if (rs.root(i).squaredNorm() < 0.75 && std::find(simple.begin(), simple.end(), i) == simple.end())
        beta = i;
    const auto xb = roots::dual_vector(rs, beta);
    const auto odd_beta = roots::odd_root_set(rs, xb.coordinates / 2.0);
    body["short_root"] = beta;
    body["short_dual_length"] = xb.length;
    body["odd_root_set_half_short"] = odd_beta;
    checks.add("|X_beta| = 2 sqrt(2) pi", std::abs(xb.length - 2.0 * std::numbers::sqrt2 * kPi) <= tol);
    checks.add("R(X_beta/2) is empty", odd_beta.empty());
  }
  if (rs.rank() <= 4) checks.add("reflection closure", reflection_closed(rs));
  return finish(std::move(body), std::move(checks));
}

Json space_json(const roots::SymmetricSpace& s, Checks& checks) {
  const auto& rs = s.root_system;
  Json mult = Json::array();
  for (std::size_t i : rs.positive())
    mult.push_back({{"root", i}, {"squared_length", rs.root(i).squaredNorm()}, {"multiplicity", s.multiplicity_of(i)}});
  const int helg = roots::helgason_sphere_dimension(s);
  const Eigen::VectorXd half = roots::dual_vector(rs, rs.highest()).coordinates / 2.0;
  const int mid = roots::midpoint_locus_dimension(s, half);
  const int book = roots::bookkeeping_dimension(s);
  const std::string label = s.label();
  checks.add(label + ": dimension bookkeeping", book == s.dimension, {{"dimension", s.dimension}});
  if (!s.is_sphere())
    checks.add(label + ": midpoint locus dimension >= 2", mid >= 2, {{"value", mid}});
  else
    checks.add(label + ": midpoint locus is a point", mid == 0, {{"value", mid}});
  return Json{{"name", label},
              {"n", s.n},
              {"root_system", rs.name()},
              {"rank", rs.rank()},
              {"dimension", s.dimension},
              {"multiplicities", mult},
              {"helgason_sphere_dimension", helg},
              {"midpoint_locus_dimension", mid},
              {"odd_root_set_half_highest", roots::odd_root_set(rs, half)},
              {"is_sphere", s.is_sphere()}};
}

Report roots_table(const RunConfig& c) {
  Json body = envelope(c, Json::object());
  Checks checks;
  Json rows = Json::array();
  std::string csv = "name,rank,dimension,helgason_sphere_dimension,midpoint_locus_dimension\n";
  for (const auto& s : roots::descriptor_table()) {
    Json row = space_json(s, checks);
    csv += row["name"].get<std::string>() + ',' + std::to_string(s.root_system.rank()) + ',' +
           std::to_string(s.dimension) + ',' + std::to_string(row["helgason_sphere_dimension"].get<int>()) +
           ',' + std::to_string(row["midpoint_locus_dimension"].get<int>()) + '\n';
    rows.push_back(std::move(row));
  }
  body["descriptors"] = rows;
  return finish(std::move(body), std::move(checks), c.want_csv ? csv : std::string());
}

Report roots_midpoint(const RunConfig& c) {
  const auto s = roots::make_space(c.space, c.n);
  Json body = envelope(c, {{"space", c.space}, {"n", c.n}});
  Checks checks;
  body["descriptor"] = space_json(s, checks);
  return finish(std::move(body), std::move(checks));
}

// ---------------------------------------------------------------- sphere

void validate_sphere(const RunConfig& c, int quad) {
  require(c.lmax >= 0 && c.lmax <= sphere::HarmonicBasis::kMaxDegree, "--lmax must lie in [0, 32]");
  require(c.circles >= 1 && c.circles <= 100000, "--circles must lie in [1, 100000]");
  require(quad >= 2 * c.lmax + 8 && quad <= 1 << 16, "--quad must be at least 2*lmax+8");
  require(c.tol_ratio > 0 && c.tol_ratio < 1, "--tol-ratio must lie in (0, 1)");
}

Report sphere_kernel(const RunConfig& c) {
  const int quad = c.quad > 0 ? c.quad : 256;
  validate_sphere(c, quad);
  Rng rng(c.seed);
  const sphere::HarmonicBasis basis(c.lmax);
  const auto circles = sphere::sample_circles(c.circles, rng);
  auto op = sphere::assemble_operator(basis, circles, quad);
  op.seed = c.seed;
  const auto k = sphere::kernel_analysis(op, c.lmax, c.tol_ratio);

  Json body = envelope(c, {{"lmax", c.lmax}, {"n_circles", c.circles}, {"K", quad}, {"tol_ratio", c.tol_ratio}});
  body["lmax"] = c.lmax;
  body["n_circles"] = c.circles;
  body["K"] = quad;
  body["singular_values"] = vec_json(k.analysis.singular_values);
  body["rank"] = k.analysis.rank;
  body["kernel_dim"] = k.kernel_dim;
  body["odd_count"] = k.odd_count;
  body["basis_size"] = basis.size();
  body["spectral_gap"] = k.analysis.gap;
  body["ill_separated"] = k.analysis.ill_separated;
  body["max_principal_angle"] = k.max_principal_angle;
  Checks checks;
  checks.add("kernel dimension equals odd-degree count", k.kernel_dim == k.odd_count);
  checks.add("kernel equals odd-degree span", k.max_principal_angle <= kAngleTol,
             {{"angle", k.max_principal_angle}, {"tol", kAngleTol}});
  checks.add("spectral gap at the cut >= 1e3", !k.analysis.ill_separated, {{"gap", k.analysis.gap}});
  return finish(std::move(body), std::move(checks), c.want_csv ? matrix_csv(op.matrix) : std::string());
}

Report sphere_invert(const RunConfig& c) {
  require(c.lmax >= 0 && c.lmax <= sphere::HarmonicBasis::kMaxDegree, "--lmax must lie in [0, 32]");
  const int trials = std::max(1, std::min(c.trials, 1000));
  Rng rng(c.seed);
  double worst = 0.0;
  std::string csv = "trial,relative_error\n";
  for (int t = 0; t < trials; ++t) {
    const auto f = sphere::random_even_function(c.lmax, rng);
    const auto back = sphere::invert_even(sphere::transform_as_function(f));
    const double err = (back.coefficients - f.coefficients).norm() / f.coefficients.norm();
    worst = std::max(worst, err);
    csv += std::to_string(t) + ',' + format_number(err) + '\n';
  }
  bool rejected = false;
  if (c.lmax >= 1) {
    auto g = sphere::random_function(c.lmax, rng);
    try {
      sphere::invert_even(g);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::NoPreimage;
    }
  }
  Json body = envelope(c, {{"lmax", c.lmax}, {"trials", trials}});
  body["max_relative_error"] = worst;
  Checks checks;
  checks.add("even round trip", worst <= kRoundTrip, {{"tol", kRoundTrip}});
  if (c.lmax >= 1) checks.add("odd energy rejected", rejected);
  return finish(std::move(body), std::move(checks), c.want_csv ? csv : std::string());
}

Report sphere_eigen(const RunConfig& c) {
  const int quad = c.quad > 0 ? c.quad : 512;
  validate_sphere(c, quad);
  Rng rng(c.seed);
  const sphere::HarmonicBasis basis(c.lmax);
  const auto circles = sphere::sample_circles(c.circles, rng);
  const auto op = sphere::assemble_operator(basis, circles, quad);
  Eigen::MatrixXd at_poles(op.rows(), basis.size());
  for (Eigen::Index i = 0; i < op.rows(); ++i)
    at_poles.row(i) = basis.evaluate(circles[static_cast<std::size_t>(i)].pole()).transpose();

  Json rows = Json::array();
  std::string csv = "l,eigenvalue,max_relative_error,max_abs_odd\n";
  double worst_rel = 0.0, worst_odd = 0.0;
  for (int l = 0; l <= c.lmax; ++l) {
    const double lambda = sphere::funk_hecke_eigenvalue(l);
    double rel = 0.0, odd_abs = 0.0;
    for (int m = -l; m <= l; ++m) {
      const int j = sphere::HarmonicBasis::index(l, m);
      if (l % 2 == 1) {
        odd_abs = std::max(odd_abs, op.matrix.col(j).cwiseAbs().maxCoeff());
      } else {
        const Eigen::VectorXd expect = lambda * at_poles.col(j);
        rel = std::max(rel, (op.matrix.col(j) - expect).norm() / expect.norm());
      }
    }
    worst_rel = std::max(worst_rel, rel);
    worst_odd = std::max(worst_odd, odd_abs);
    rows.push_back({{"l", l}, {"eigenvalue", lambda}, {"max_relative_error", rel}, {"max_abs_odd", odd_abs}});
    csv += std::to_string(l) + ',' + format_number(lambda) + ',' + format_number(rel) + ',' +
           format_number(odd_abs) + '\n';
  }
  Json body = envelope(c, {{"lmax", c.lmax}, {"n_circles", c.circles}, {"K", quad}});
  body["eigenvalues"] = rows;
  Checks checks;
  checks.add("matrix route matches 2pi P_l(0)", worst_rel <= kSpectralRel, {{"value", worst_rel}, {"tol", kSpectralRel}});
  checks.add("odd degrees map to zero", worst_odd <= kOddAbs, {{"value", worst_odd}, {"tol", kOddAbs}});
  return finish(std::move(body), std::move(checks), c.want_csv ? csv : std::string());
}

// ---------------------------------------------------------------- cpn

void validate_cpn(const RunConfig& c, int min_n) {
  require(c.n >= min_n && c.n <= 8, "--n must lie in [" + std::to_string(min_n) + ", 8]");
}

Report cpn_rank(const RunConfig& c) {
  validate_cpn(c, 2);
  require(c.degree >= 0, "--degree must be nonnegative");
  const lab::CPBasis basis(c.n, c.degree);
  const int geodesics = c.geodesics > 0 ? c.geodesics : 5 * basis.size();
  const int quad = c.quad > 0 ? c.quad : std::max(64, 8 * c.degree + 8);
  require(quad >= 8 * c.degree + 8, "--quad must be at least 8*degree+8");
  require(c.tol_ratio > 0 && c.tol_ratio < 1, "--tol-ratio must lie in (0, 1)");
  Rng rng(c.seed);
  const auto geos = cpn::sample_geodesics(c.n, geodesics, rng);
  require(geodesics >= 2 * basis.size(), "--geodesics must be at least twice the basis size");
  auto op = lab::assemble_cp_operator(basis, geos, quad);
  op.seed = c.seed;
  const auto r = lab::operator_rank(op, c.tol_ratio);

  Json body = envelope(c, {{"n", c.n}, {"D", c.degree}, {"n_geo", geodesics}, {"K", quad}, {"tol_ratio", c.tol_ratio}});
  body["basis_dim"] = r.basis_dim;
  body["rank"] = r.rank;
  body["singular_values"] = vec_json(r.singular_values);
  body["sigma_ratio"] = r.ratio;
  body["spectral_gap"] = r.gap;
  body["ill_separated"] = r.ill_separated;
  body["full_rank"] = r.full_rank;
  if (!r.full_rank) body["near_kernel"] = vec_json(r.near_kernel);
  Checks checks;
  checks.add("full column rank", r.full_rank, {{"rank", r.rank}, {"basis_dim", r.basis_dim}});
  checks.add("sigma_min / sigma_max > 1e-6", r.ratio > kMinRatio, {{"value", r.ratio}});
  checks.add("spectral gap >= 1e3", !r.ill_separated, {{"gap", r.gap}});
  return finish(std::move(body), std::move(checks), c.want_csv ? matrix_csv(op.matrix) : std::string());
}

Report cpn_support(const RunConfig& c) {
  validate_cpn(c, 2);
  require(c.radius > 0 && c.radius < kPi, "--radius must lie in (0, pi)");
  require(c.margin >= 0, "--margin must be nonnegative");
  require(c.tol_ratio > 0 && c.tol_ratio < 1, "--tol-ratio must lie in (0, 1)");
  require(c.degree >= 0, "--degree must be nonnegative");
  lab::SupportSettings s;
  s.n = c.n;
  s.degree = c.degree;
  const lab::CPBasis basis(c.n, c.degree);
  s.n_geo = c.geodesics > 0 ? c.geodesics : 10 * basis.size();
  s.seed = c.seed;
  s.margin = c.margin;
  s.tol_ratio = c.tol_ratio;
  s.k = c.quad > 0 ? c.quad : std::max(64, 8 * c.degree + 8);
  require(s.k >= 8 * c.degree + 8, "--quad must be at least 8*degree+8");
  cpn::CVec e = cpn::CVec::Zero(c.n + 1);
  e[0] = 1.0;
  const cpn::Ball ball(cpn::ProjPoint(e), c.radius);
  const auto rep = lab::support_experiment(ball, s);

  Json body = envelope(c, {{"n", c.n}, {"D", c.degree}, {"n_geo", s.n_geo}, {"K", s.k},
                           {"r", c.radius}, {"margin", c.margin}, {"tol_ratio", c.tol_ratio}});
  body["ball"] = {{"center", interleaved(ball.center.canonical())}, {"radius", ball.radius}};
  body["n_candidates"] = rep.n_candidates;
  body["n_avoiding_geodesics"] = rep.n_avoiding_geodesics;
  body["singular_values"] = vec_json(rep.singular_values);
  body["rank"] = rep.rank;
  body["kernel_dim"] = rep.kernel_dim;
  body["spectral_gap"] = rep.gap;
  body["outside_sup"] = rep.outside_sup;
  body["inside_sup"] = rep.inside_sup;
  body["vacuous"] = rep.vacuous;
  bool concentrated = true;
  for (std::size_t i = 0; i < rep.outside_sup.size(); ++i)
    concentrated = concentrated && rep.outside_sup[i] <= kOutsideSup && rep.inside_sup[i] >= kInsideSup;
  body["verdict"] = rep.vacuous ? "vacuous" : (concentrated ? "concentrated" : "violated");
  Checks checks;
  checks.add("kernel functions concentrate inside the ball", concentrated,
             {{"outside_tol", kOutsideSup}, {"inside_min", kInsideSup}, {"vacuous", rep.vacuous}});
  return finish(std::move(body), std::move(checks));
}

Report cpn_remark31(const RunConfig& c) {
  validate_cpn(c, 2);
  require(c.trials >= 1 && c.trials <= 1000000, "--trials must lie in [1, 1e6]");
  const double tol = c.tol > 0 ? c.tol : kGeometryTol;
  Rng rng(c.seed);
  double worst = 0.0;
  Json failures = Json::array();
  std::string csv = "trial,residual\n";
  for (int t = 0; t < c.trials; ++t) {
    const cpn::ProjPoint p = cpn::random_point(c.n, rng);
    const cpn::ProjPoint other = cpn::random_point(c.n, rng);
    const cpn::ProjLine line = cpn::line_through(p, other);
    const double res = cpn::triple_antipode_residual(p, line, &rng);
    worst = std::max(worst, res);
    if (res > tol) failures.push_back({{"trial", t}, {"residual", res}});
    csv += std::to_string(t) + ',' + format_number(res) + '\n';
  }
  Json body = envelope(c, {{"n", c.n}, {"trials", c.trials}, {"tol", tol}});
  body["trials"] = c.trials;
  body["max_residual"] = worst;
  body["failures"] = failures;
  Checks checks;
  checks.add("r and p antipodal on R", failures.empty(), {{"value", worst}, {"tol", tol}});
  return finish(std::move(body), std::move(checks), c.want_csv ? csv : std::string());
}

Report cpn_avoidline(const RunConfig& c) {
  validate_cpn(c, 2);
  require(c.trials >= 1 && c.trials <= 1000000, "--trials must lie in [1, 1e6]");
  require(c.samples >= 1 && c.samples <= 1000000, "--samples must lie in [1, 1e6]");
  const double tol = c.tol > 0 ? c.tol : kGeometryTol;
  Rng rng(c.seed);
  double worst_member = 0.0, worst_margin = kPi, worst_closed = 0.0;
  Json failures = Json::array();
  std::string csv = "trial,s,sampled_min,closed_form_min,membership\n";
  for (int t = 0; t < c.trials; ++t) {
    const cpn::ProjPoint p = cpn::random_point(c.n, rng);
    const cpn::ProjPoint q = cpn::random_point(c.n, rng);
    const double s = cpn::fs_distance(p, q);
    const cpn::ProjLine line = cpn::avoiding_line(p, q);
    const double member = line.membership_residual(q.rep());
    const double sampled = cpn::sampled_distance_to_line(p, line, c.samples);
    const double closed = cpn::distance_to_line(p, line);
    worst_member = std::max(worst_member, member);
    worst_margin = std::min(worst_margin, sampled - s);
    worst_closed = std::max(worst_closed, std::abs(closed - s));
    const bool ok = member <= tol && sampled >= s - kAvoidSlack && closed >= s - kAvoidSlack;
    if (!ok)
      failures.push_back({{"trial", t}, {"s", s}, {"sampled_min", sampled}, {"closed_form_min", closed}, {"membership", member}});
    csv += std::to_string(t) + ',' + format_number(s) + ',' + format_number(sampled) + ',' +
           format_number(closed) + ',' + format_number(member) + '\n';
  }
  Json body = envelope(c, {{"n", c.n}, {"trials", c.trials}, {"samples", c.samples}, {"tol", tol}});
  body["trials"] = c.trials;
  body["max_residual"] = worst_member;
  body["min_sampled_margin"] = worst_margin;
  body["max_closed_form_deviation"] = worst_closed;
  body["failures"] = failures;
  Checks checks;
  checks.add("line contains q", worst_member <= tol, {{"value", worst_member}, {"tol", tol}});
  checks.add("line avoids the open ball B_s(p)", worst_margin >= -kAvoidSlack, {{"value", worst_margin}, {"tol", kAvoidSlack}});
  checks.add("closed-form distance equals s", worst_closed <= kAvoidSlack, {{"value", worst_closed}});
  return finish(std::move(body), std::move(checks), c.want_csv ? csv : std::string());
}

Report cpn_sample(const RunConfig& c) {
  validate_cpn(c, 1);
  const int count = c.geodesics > 0 ? c.geodesics : 10;
  require(count <= 100000, "--geodesics must be at most 100000");
  Rng rng(c.seed);
  const auto geos = cpn::sample_geodesics(c.n, count, rng);
  Json list = Json::array();
  std::string csv;
  double worst_horizontal = 0.0;
  for (const auto& g : geos) {
    // canonicalize the base and rotate w by the same phase
    const cpn::CVec base = g.base().canonical();
    const auto phase = cpn::hermitian(g.base().rep(), base);
    const cpn::CVec w = g.direction() * phase;
    worst_horizontal = std::max(worst_horizontal, std::abs(cpn::hermitian(base, w)));
    list.push_back({{"base", interleaved(base)}, {"direction", interleaved(w)}});
    for (Eigen::Index i = 0; i < base.size(); ++i)
      csv += format_number(base[i].real()) + ',' + format_number(base[i].imag()) + ',';
    for (Eigen::Index i = 0; i < w.size(); ++i)
      csv += format_number(w[i].real()) + ',' + format_number(w[i].imag()) + (i + 1 < w.size() ? "," : "\n");
  }
  Json body = envelope(c, {{"n", c.n}, {"n_geo", count}});
  body["geodesics"] = list;
  Checks checks;
  checks.add("horizontal directions", worst_horizontal <= kGeometryTol, {{"value", worst_horizontal}});
  return finish(std::move(body), std::move(checks), c.want_csv ? csv : std::string());
}

void write_json(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        write_json(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_json(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      break;
    }
    default: out += j.dump();
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Report::json_text() const {
  std::string out;
  write_json(body, out);
  out += '\n';
  return out;
}

Report run(const RunConfig& c) {
  const std::string& cmd = c.command;
  const std::string& sub = c.subcommand;
  require(c.tol >= 0 && std::isfinite(c.tol), "--tol must be a nonnegative number");
  if (cmd == "roots") {
    if (sub == "check") return roots_check(c);
    if (sub == "table") return roots_table(c);
    if (sub == "midpoint") return roots_midpoint(c);
  } else if (cmd == "sphere") {
    if (sub == "kernel") return sphere_kernel(c);
    if (sub == "invert") return sphere_invert(c);
    if (sub == "eigen") return sphere_eigen(c);
  } else if (cmd == "cpn") {
    if (sub == "rank") return cpn_rank(c);
    if (sub == "support") return cpn_support(c);
    if (sub == "remark31") return cpn_remark31(c);
    if (sub == "avoidline") return cpn_avoidline(c);
    if (sub == "sample") return cpn_sample(c);
  }
  fail(ErrorCode::InvalidArgument, "unknown command '" + cmd + " " + sub + "'");
}

}  // namespace funkgeo::reports
