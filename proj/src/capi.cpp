#include "funkgeo/funkgeo.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "funkgeo/error.hpp"
#include "funkgeo/funk_lab.hpp"
#include "funkgeo/linalg.hpp"
#include "funkgeo/rng.hpp"
#include "funkgeo/rootsys.hpp"
#include "funkgeo/sphere_funk.hpp"
#include "reports.hpp"

struct fg_report {
  std::string json;
  std::string csv;
  bool has_csv = false;
  bool passed = true;
};

struct fg_root_system {
  funkgeo::roots::RootSystem rs;
};

struct fg_operator {
  funkgeo::TransformOperator op;
};

namespace {

thread_local std::string last_error;

fg_status status_of(funkgeo::ErrorCode code) {
  return static_cast<fg_status>(static_cast<int>(code));
}

fg_status set_error(fg_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
fg_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const funkgeo::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FG_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(FG_ERR_INTERNAL, "unknown exception");
  }
}

fg_status invalid(const char* message) {
  return set_error(FG_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* fg_version(void) { return "1.0.0"; }

const char* fg_status_string(fg_status status) {
  switch (status) {
    case FG_OK: return "ok";
    case FG_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case FG_ERR_INTERNAL: return "internal error";
    default:
      if (status >= FG_ERR_INVALID_ARGUMENT && status <= FG_ERR_NON_FINITE)
        return funkgeo::to_string(static_cast<funkgeo::ErrorCode>(status));
      return "unknown status";
  }
}

const char* fg_last_error(void) { return last_error.c_str(); }

void fg_params_init(fg_params* p) {
  if (!p) return;
  const funkgeo::reports::RunConfig d;
  p->seed = d.seed;
  p->family = "B";
  p->rank = d.rank;
  p->space = "CP";
  p->lmax = d.lmax;
  p->circles = d.circles;
  p->quad = d.quad;
  p->n = d.n;
  p->degree = d.degree;
  p->geodesics = d.geodesics;
  p->radius = d.radius;
  p->margin = d.margin;
  p->trials = d.trials;
  p->samples = d.samples;
  p->tol = d.tol;
  p->tol_ratio = d.tol_ratio;
  p->want_csv = 0;
}

fg_status fg_run(const char* command, const char* subcommand, const fg_params* params,
                 fg_report** out) {
  if (!command || !subcommand || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    fg_params p;
    fg_params_init(&p);
    if (params) p = *params;
    funkgeo::reports::RunConfig c;
    c.command = command;
    c.subcommand = subcommand;
    c.seed = p.seed;
    if (p.family) c.family = p.family;
    c.rank = p.rank;
    if (p.space) c.space = p.space;
    c.lmax = p.lmax;
    c.circles = p.circles;
    c.quad = p.quad;
    c.n = p.n;
    c.degree = p.degree;
    c.geodesics = p.geodesics;
    c.radius = p.radius;
    c.margin = p.margin;
    c.trials = p.trials;
    c.samples = p.samples;
    c.tol = p.tol;
    c.tol_ratio = p.tol_ratio;
    c.want_csv = p.want_csv != 0;
    const auto report = funkgeo::reports::run(c);
    auto* r = new fg_report;
    r->json = report.json_text();
    r->csv = report.csv;
    r->has_csv = !report.csv.empty();
    r->passed = report.passed;
    *out = r;
    return FG_OK;
  });
}

const char* fg_report_json(const fg_report* r) { return r ? r->json.c_str() : nullptr; }

const char* fg_report_csv(const fg_report* r) {
  return r && r->has_csv ? r->csv.c_str() : nullptr;
}

int fg_report_passed(const fg_report* r) { return r && r->passed ? 1 : 0; }

void fg_report_free(fg_report* r) { delete r; }

fg_status fg_root_system_create(const char* family, int rank, fg_root_system** out) {
  if (!family || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto rs = funkgeo::roots::build_root_system(funkgeo::roots::parse_family(family), rank);
    *out = new fg_root_system{std::move(rs)};
    return FG_OK;
  });
}

void fg_root_system_free(fg_root_system* rs) { delete rs; }

int fg_root_system_rank(const fg_root_system* rs) { return rs ? rs->rs.rank() : 0; }

size_t fg_root_system_size(const fg_root_system* rs) { return rs ? rs->rs.size() : 0; }

size_t fg_root_system_highest(const fg_root_system* rs) {
  return rs ? rs->rs.highest() : 0;
}

int fg_root_system_is_positive(const fg_root_system* rs, size_t index) {
  return rs && index < rs->rs.size() && rs->rs.is_positive(index) ? 1 : 0;
}

fg_status fg_root_system_root(const fg_root_system* rs, size_t index, double* coords,
                              size_t len) {
  if (!rs || !coords) return invalid("null argument");
  if (index >= rs->rs.size()) return invalid("root index out of range");
  if (len < static_cast<size_t>(rs->rs.rank()))
    return set_error(FG_ERR_BUFFER_TOO_SMALL, "coordinate buffer shorter than rank");
  const auto& v = rs->rs.root(index);
  for (Eigen::Index i = 0; i < v.size(); ++i) coords[i] = v[i];
  return FG_OK;
}

fg_status fg_root_system_dual_vector(const fg_root_system* rs, size_t index,
                                     double* coords, size_t len, double* length) {
  if (!rs || !coords) return invalid("null argument");
  if (index >= rs->rs.size()) return invalid("root index out of range");
  if (len < static_cast<size_t>(rs->rs.rank()))
    return set_error(FG_ERR_BUFFER_TOO_SMALL, "coordinate buffer shorter than rank");
  return guarded([&] {
    const auto x = funkgeo::roots::dual_vector(rs->rs, index);
    for (Eigen::Index i = 0; i < x.coordinates.size(); ++i) coords[i] = x.coordinates[i];
    if (length) *length = x.length;
    return FG_OK;
  });
}

fg_status fg_root_system_odd_roots(const fg_root_system* rs, const double* y, size_t len,
                                   double tol, size_t* indices, size_t cap,
                                   size_t* count) {
  if (!rs || !y || !count || (cap > 0 && !indices)) return invalid("null argument");
  if (len != static_cast<size_t>(rs->rs.rank())) return invalid("vector length must equal rank");
  return guarded([&] {
    Eigen::VectorXd v(rs->rs.rank());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = y[i];
    const auto odd = funkgeo::roots::odd_root_set(rs->rs, v, tol > 0 ? tol : 1e-9);
    *count = odd.size();
    for (size_t i = 0; i < odd.size() && i < cap; ++i) indices[i] = odd[i];
    if (cap < odd.size())
      return set_error(FG_ERR_BUFFER_TOO_SMALL, "index buffer too small");
    return FG_OK;
  });
}

fg_status fg_root_system_json(const fg_root_system* rs, fg_report** out) {
  if (!rs || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    using funkgeo::reports::Json;
    const auto& sys = rs->rs;
    Json roots = Json::array();
    for (const auto& r : sys.roots()) {
      Json row = Json::array();
      for (Eigen::Index i = 0; i < r.size(); ++i) row.push_back(r[i]);
      roots.push_back(std::move(row));
    }
    funkgeo::reports::Report report;
    report.body = Json::object();
    report.body["family"] = std::string(funkgeo::roots::family_name(sys.family()));
    report.body["rank"] = sys.rank();
    report.body["roots"] = std::move(roots);
    report.body["positive"] = sys.positive();
    report.body["highest"] = sys.highest();
    auto* r = new fg_report;
    r->json = report.json_text();
    *out = r;
    return FG_OK;
  });
}

fg_status fg_sphere_operator_create(int lmax, int circles, int quad, uint64_t seed,
                                    fg_operator** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    if (circles < 1) funkgeo::fail(funkgeo::ErrorCode::InvalidArgument, "circles must be >= 1");
    const funkgeo::sphere::HarmonicBasis basis(lmax);
    funkgeo::Rng rng(seed);
    const auto sampled = funkgeo::sphere::sample_circles(circles, rng);
    auto op = funkgeo::sphere::assemble_operator(basis, sampled,
                                                 quad > 0 ? quad : 2 * lmax + 8);
    op.seed = seed;
    *out = new fg_operator{std::move(op)};
    return FG_OK;
  });
}

fg_status fg_cp_operator_create(int n, int degree, int geodesics, int quad, uint64_t seed,
                                fg_operator** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    if (n < 1) funkgeo::fail(funkgeo::ErrorCode::UnsupportedDimension, "n must be >= 1");
    if (degree < 0) funkgeo::fail(funkgeo::ErrorCode::InvalidArgument, "degree must be >= 0");
    const funkgeo::lab::CPBasis basis(n, degree);
    const int count = geodesics > 0 ? geodesics : 5 * basis.size();
    funkgeo::Rng rng(seed);
    const auto geos = funkgeo::cpn::sample_geodesics(n, count, rng);
    auto op = funkgeo::lab::assemble_cp_operator(
        basis, geos, quad > 0 ? quad : std::max(64, 8 * degree + 8));
    op.seed = seed;
    *out = new fg_operator{std::move(op)};
    return FG_OK;
  });
}

void fg_operator_free(fg_operator* op) { delete op; }

size_t fg_operator_rows(const fg_operator* op) {
  return op ? static_cast<size_t>(op->op.rows()) : 0;
}

size_t fg_operator_cols(const fg_operator* op) {
  return op ? static_cast<size_t>(op->op.cols()) : 0;
}

double fg_operator_entry(const fg_operator* op, size_t row, size_t col) {
  if (!op || row >= fg_operator_rows(op) || col >= fg_operator_cols(op)) return NAN;
  return op->op.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

fg_status fg_operator_singular_values(const fg_operator* op, double* out, size_t cap,
                                      size_t* count) {
  if (!op || !count || (cap > 0 && !out)) return invalid("null argument");
  return guarded([&] {
    const auto s = funkgeo::rank_revealing_spectrum(op->op.matrix);
    *count = static_cast<size_t>(s.size());
    for (size_t i = 0; i < *count && i < cap; ++i) out[i] = s[static_cast<Eigen::Index>(i)];
    if (cap < *count) return set_error(FG_ERR_BUFFER_TOO_SMALL, "output buffer too small");
    return FG_OK;
  });
}

fg_status fg_operator_rank(const fg_operator* op, double tol_ratio, int* rank,
                           int* kernel_dim) {
  if (!op || !rank) return invalid("null argument");
  if (!(tol_ratio > 0.0 && tol_ratio < 1.0)) return invalid("tol_ratio must lie in (0, 1)");
  return guarded([&] {
    const auto r = funkgeo::lab::operator_rank(op->op, tol_ratio);
    *rank = r.rank;
    if (kernel_dim) *kernel_dim = r.basis_dim - r.rank;
    return FG_OK;
  });
}

fg_status fg_operator_solve(const fg_operator* op, const double* b, size_t b_len,
                            double reg, double* x, size_t x_len) {
  if (!op || !b || !x) return invalid("null argument");
  if (b_len != fg_operator_rows(op)) return invalid("data length must equal rows");
  if (x_len < fg_operator_cols(op))
    return set_error(FG_ERR_BUFFER_TOO_SMALL, "solution buffer shorter than cols");
  if (!(reg >= 0.0) || !std::isfinite(reg)) return invalid("reg must be finite and >= 0");
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> data(b, static_cast<Eigen::Index>(b_len));
    const Eigen::VectorXd sol = funkgeo::lab::least_squares_invert(op->op, data, reg);
    for (Eigen::Index i = 0; i < sol.size(); ++i) x[i] = sol[i];
    return FG_OK;
  });
}

}  // extern "C"
