#include "funkgeo/rootsys.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "funkgeo/error.hpp"

namespace funkgeo::roots {

namespace {

using Vec = Eigen::VectorXd;
constexpr double kPi = std::numbers::pi;

Vec unit(int dim, int i, double s = 1.0) {
  Vec v = Vec::Zero(dim);
  v[i] = s;
  return v;
}

void add_pm_ei(std::vector<Vec>& out, int dim, double scale) {
  for (int i = 0; i < dim; ++i) {
    out.push_back(unit(dim, i, scale));
    out.push_back(unit(dim, i, -scale));
  }
}

void add_pm_ei_pm_ej(std::vector<Vec>& out, int dim) {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (double s : {1.0, -1.0})
        for (double t : {1.0, -1.0}) {
          Vec v = Vec::Zero(dim);
          v[i] = s;
          v[j] = t;
          out.push_back(v);
        }
}

void add_ei_minus_ej(std::vector<Vec>& out, int dim) {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i != j) {
        Vec v = Vec::Zero(dim);
        v[i] = 1.0;
        v[j] = -1.0;
        out.push_back(v);
      }
}

std::vector<Vec> e8_roots() {
  std::vector<Vec> out;
  add_pm_ei_pm_ej(out, 8);
  for (int mask = 0; mask < 256; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    Vec v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? -0.5 : 0.5;
    out.push_back(v);
  }
  return out;
}

std::vector<Vec> orthogonal_to(const std::vector<Vec>& roots,
                               const std::vector<Vec>& normals) {
  std::vector<Vec> out;
  for (const auto& r : roots) {
    bool keep = true;
    for (const auto& n : normals) keep = keep && std::abs(r.dot(n)) < 1e-12;
    if (keep) out.push_back(r);
  }
  return out;
}

std::size_t expected_count(Family f, int n) {
  switch (f) {
    case Family::A: return static_cast<std::size_t>(n * (n + 1));
    case Family::B:
    case Family::C: return static_cast<std::size_t>(2 * n * n);
    case Family::D: return static_cast<std::size_t>(2 * n * (n - 1));
    case Family::BC: return static_cast<std::size_t>(2 * n * (n + 1));
    case Family::E6: return 72;
    case Family::E7: return 126;
    case Family::E8: return 240;
    case Family::F4: return 48;
    case Family::G2: return 12;
  }
  return 0;
}

// Ambient realization (possibly in a space larger than the rank).
std::vector<Vec> ambient_roots(Family f, int n) {
  std::vector<Vec> r;
  switch (f) {
    case Family::A: add_ei_minus_ej(r, n + 1); break;
    case Family::B:
      add_pm_ei(r, n, 1.0);
      add_pm_ei_pm_ej(r, n);
      break;
    case Family::C:
      add_pm_ei(r, n, 2.0);
      add_pm_ei_pm_ej(r, n);
      break;
    case Family::D: add_pm_ei_pm_ej(r, n); break;
    case Family::BC:
      add_pm_ei(r, n, 1.0);
      add_pm_ei(r, n, 2.0);
      add_pm_ei_pm_ej(r, n);
      break;
    case Family::E8: r = e8_roots(); break;
    case Family::E7: r = orthogonal_to(e8_roots(), {unit(8, 6) + unit(8, 7)}); break;
    case Family::E6:
      r = orthogonal_to(e8_roots(),
                        {unit(8, 6) + unit(8, 7), unit(8, 5) - unit(8, 6)});
      break;
    case Family::F4:
      add_pm_ei(r, 4, 1.0);
      add_pm_ei_pm_ej(r, 4);
      for (int mask = 0; mask < 16; ++mask) {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? -0.5 : 0.5;
        r.push_back(v);
      }
      break;
    case Family::G2:
      // short: e_i - e_j; long: ±(2e_i - e_j - e_k), inside x+y+z = 0
      add_ei_minus_ej(r, 3);
      for (int i = 0; i < 3; ++i) {
        Vec v = Vec::Constant(3, -1.0);
        v[i] = 2.0;
        r.push_back(v);
        r.push_back(-v);
      }
      break;
  }
  return r;
}

bool valid_rank(Family f, int n) {
  switch (f) {
    case Family::A:
    case Family::BC: return n >= 1;
    case Family::B:
    case Family::C: return n >= 2;
    case Family::D: return n >= 4;
    case Family::E6: return n == 6;
    case Family::E7: return n == 7;
    case Family::E8: return n == 8;
    case Family::F4: return n == 4;
    case Family::G2: return n == 2;
  }
  return false;
}

// Orthonormal basis of the span of `vs` by modified Gram-Schmidt.
Eigen::MatrixXd span_basis(const std::vector<Vec>& vs, int expected_rank) {
  const auto dim = vs.front().size();
  Eigen::MatrixXd q(dim, expected_rank);
  int found = 0;
  for (const auto& v : vs) {
    if (found == expected_rank) break;
    Vec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < found; ++k) w -= q.col(k).dot(w) * q.col(k);
    if (w.norm() > 1e-8) q.col(found++) = w.normalized();
  }
  if (found != expected_rank)
    fail(ErrorCode::InvalidArgument, "root span has unexpected dimension");
  return q;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::BC: return "BC";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC,
                   Family::E6, Family::E7, Family::E8, Family::F4, Family::G2})
    if (family_name(f) == upper) return f;
  fail(ErrorCode::InvalidArgument,
       "unknown root system family '" + std::string(name) + "'");
}

bool RootSystem::is_positive(std::size_t i) const {
  return std::find(positive_.begin(), positive_.end(), i) != positive_.end();
}

std::size_t RootSystem::find(const Eigen::VectorXd& v, double tol) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if ((roots_[i] - v).norm() <= tol) return i;
  return roots_.size();
}

std::vector<std::size_t> RootSystem::simple_roots() const {
  std::vector<std::size_t> simple;
  for (std::size_t g : positive_) {
    bool decomposable = false;
    for (std::size_t a : positive_) {
      if (a == g) continue;
      const std::size_t b = find(roots_[g] - roots_[a]);
      if (b < roots_.size() && is_positive(b)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(g);
  }
  return simple;
}

std::string RootSystem::name() const {
  std::ostringstream os;
  os << family_name(family_);
  if (family_ == Family::A || family_ == Family::B || family_ == Family::C ||
      family_ == Family::D || family_ == Family::BC)
    os << rank_;
  return os.str();
}

RootSystem build_root_system(Family family, int rank) {
  if (!valid_rank(family, rank)) {
    std::ostringstream os;
    os << "invalid root system " << family_name(family) << " of rank " << rank;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  std::vector<Vec> ambient = ambient_roots(family, rank);
  const auto dim = ambient.front().size();

  // Generic functional selecting R⁺; the maximizer of ⟨·, v⟩ over the roots
  // is the highest root of that positive system.
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v[i] = static_cast<double>(dim - i) + 1.0 / (kPi * static_cast<double>(i + 2));

  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = rank;

  Eigen::MatrixXd basis;
  const bool project = dim != rank;
  if (project) basis = span_basis(ambient, rank);

  double best = -1.0;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    const double h = ambient[i].dot(v);
    if (std::abs(h) < 1e-6)
      fail(ErrorCode::InvalidArgument, "positivity functional is not regular");
    if (h > 0) rs.positive_.push_back(i);
    if (h > best) {
      best = h;
      rs.highest_ = i;
    }
    rs.roots_.push_back(project ? Vec(basis.transpose() * ambient[i]) : ambient[i]);
  }
  const double scale = 1.0 / rs.roots_[rs.highest_].norm();
  for (auto& r : rs.roots_) r *= scale;

  if (rs.roots_.size() != expected_count(family, rank))
    fail(ErrorCode::InvalidArgument, "root count does not match classification");
  return rs;
}

LatticeVector dual_vector(const RootSystem& rs, std::size_t root_index) {
  if (root_index >= rs.size())
    fail(ErrorCode::InvalidArgument, "root index out of range");
  const Vec& a = rs.root(root_index);
  LatticeVector x;
  x.coordinates = (2.0 * kPi / a.squaredNorm()) * a;
  x.source_root = root_index;
  x.length = x.coordinates.norm();
  return x;
}

std::vector<std::size_t> odd_root_set(const RootSystem& rs, const Vec& y,
                                      double tol) {
  if (y.size() != rs.rank())
    fail(ErrorCode::InvalidArgument, "vector dimension does not match rank");
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  std::vector<std::size_t> out;
  for (std::size_t i : rs.positive()) {
    const double value = 2.0 * rs.root(i).dot(y) / kPi;
    const double nearest = std::round(value);
    const double dist = std::abs(value - nearest);
    if (dist > tol && dist < 2.0 * tol) {
      std::ostringstream os;
      os << "parity of root " << i << " is numerically ambiguous (2<a,Y>/pi = "
         << value << ")";
      fail(ErrorCode::NumericallyUnstable, os.str());
    }
    if (dist <= tol && std::fmod(std::abs(nearest), 2.0) == 1.0) out.push_back(i);
  }
  return out;
}

PairingReport check_longest_root_pairing(const RootSystem& rs, double tol) {
  PairingReport rep;
  const Vec xd = dual_vector(rs, rs.highest()).coordinates;
  for (std::size_t i : rs.positive()) {
    const double value = rs.root(i).dot(xd);
    rep.pairings.push_back({i, value});
    if (i == rs.highest()) {
      rep.highest_value = value;
      if (std::abs(value - 2.0 * kPi) > tol) {
        rep.passed = false;
        rep.offending.push_back(i);
      }
      continue;
    }
    if (std::abs(std::abs(value) - kPi) <= tol) {
      ++rep.count_pi;
    } else if (std::abs(value) > tol) {
      rep.passed = false;
      rep.offending.push_back(i);
    }
  }
  rep.at_least_two = rs.rank() < 2 || rep.count_pi >= 2;
  return rep;
}

Eigen::VectorXd lattice_coordinates(const RootSystem& rs, const Vec& y) {
  // Coroots of positive roots are the positive roots of the dual system; its
  // indecomposable elements form a lattice basis.
  std::vector<Vec> dual;
  for (std::size_t i : rs.positive()) dual.push_back(dual_vector(rs, i).coordinates);
  auto find_dual = [&](const Vec& v) {
    for (std::size_t k = 0; k < dual.size(); ++k)
      if ((dual[k] - v).norm() <= 1e-9) return k;
    return dual.size();
  };
  Eigen::MatrixXd basis(rs.rank(), rs.rank());
  int found = 0;
  for (std::size_t g = 0; g < dual.size(); ++g) {
    bool decomposable = false;
    for (std::size_t a = 0; a < dual.size() && !decomposable; ++a)
      decomposable = find_dual(dual[g] - dual[a]) < dual.size();
    if (!decomposable) {
      if (found == rs.rank())
        fail(ErrorCode::InvalidArgument, "too many simple coroots");
      basis.col(found++) = dual[g];
    }
  }
  if (found != rs.rank())
    fail(ErrorCode::InvalidArgument, "simple coroots do not form a basis");
  return basis.fullPivLu().solve(y);
}

std::string SymmetricSpace::label() const {
  if (name == "OP^2") return name;
  const auto caret = name.find('^');
  return name.substr(0, caret + 1) + std::to_string(n);
}

namespace {

// Multiplicity by squared-length class relative to the highest root.
std::vector<int> multiplicities(const RootSystem& rs, int m_long, int m_mid,
                                int m_short) {
  std::vector<int> m(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double len2 = rs.root(i).squaredNorm();
    if (std::abs(len2 - 1.0) < 1e-9)
      m[i] = m_long;
    else if (std::abs(len2 - 0.5) < 1e-9)
      m[i] = m_mid;
    else
      m[i] = m_short;
  }
  return m;
}

}  // namespace

SymmetricSpace make_space(std::string_view name, int n) {
  std::string key(name);
  if (const auto caret = key.find('^'); caret != std::string::npos) {
    if (n <= 0) n = std::stoi(key.substr(caret + 1));
    key = key.substr(0, caret);
  }
  SymmetricSpace s;
  s.n = n;
  // Restricted root multiplicities:
  //   S^n : A1, m(δ) = n-1
  //   CP^n: BC1, m(α) = 2n-2, m(2α) = 1
  //   HP^n: BC1, m(α) = 4n-4, m(2α) = 3
  //   OP^2: BC1, m(α) = 8,    m(2α) = 7
  //   Q^n : B2,  long 1, short n-2 (checked via dimension bookkeeping only)
  if (key == "S") {
    if (n < 2) fail(ErrorCode::InvalidArgument, "S^n requires n >= 2");
    s.name = "S^n";
    s.root_system = build_root_system(Family::A, 1);
    s.multiplicity.assign(2, n - 1);
  } else if (key == "CP" || key == "HP") {
    const int real_dim = key == "CP" ? 2 : 4;
    if (n < 1) fail(ErrorCode::InvalidArgument, key + "^n requires n >= 1");
    if (n == 1) {
      // projective line: m(α) = 0, the space is the round sphere S^2 or S^4
      s = make_space("S", real_dim);
      return s;
    }
    s.name = key + "^n";
    s.root_system = build_root_system(Family::BC, 1);
    s.multiplicity = multiplicities(s.root_system, real_dim - 1, -1,
                                    real_dim * n - real_dim);
  } else if (key == "OP") {
    if (n != 2) fail(ErrorCode::InvalidArgument, "only the octonionic plane OP^2 exists");
    s.name = "OP^2";
    s.root_system = build_root_system(Family::BC, 1);
    s.multiplicity = multiplicities(s.root_system, 7, -1, 8);
  } else if (key == "Q") {
    if (n < 3) fail(ErrorCode::InvalidArgument, "Q^n requires n >= 3");
    s.name = "Q^n";
    s.root_system = build_root_system(Family::B, 2);
    s.multiplicity = multiplicities(s.root_system, 1, n - 2, -1);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown symmetric space '" + std::string(name) + "'");
  }
  // real dimension of the manifold, independent of the root data
  if (s.name == "S^n")
    s.dimension = n;
  else if (s.name == "CP^n" || s.name == "Q^n")
    s.dimension = 2 * n;
  else if (s.name == "HP^n")
    s.dimension = 4 * n;
  else
    s.dimension = 16;
  return s;
}

std::vector<SymmetricSpace> descriptor_table() {
  return {make_space("S", 2),  make_space("S", 3),  make_space("CP", 2),
          make_space("CP", 3), make_space("HP", 2), make_space("HP", 3),
          make_space("OP", 2), make_space("Q", 3),  make_space("Q", 4),
          make_space("Q", 5)};
}

int bookkeeping_dimension(const SymmetricSpace& space) {
  int dim = space.root_system.rank();
  for (std::size_t i : space.root_system.positive()) dim += space.multiplicity_of(i);
  return dim;
}

int midpoint_locus_dimension(const SymmetricSpace& space, const Vec& y,
                             double tol) {
  const RootSystem& rs = space.root_system;
  const Vec c = lattice_coordinates(rs, y);
  bool integral = true;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (std::abs(2.0 * c[i] - std::round(2.0 * c[i])) > tol)
      fail(ErrorCode::NotHalfLattice, "Y is not in half the lattice of closed geodesics");
    integral = integral && std::abs(c[i] - std::round(c[i])) <= tol;
  }
  if (integral)
    fail(ErrorCode::LatticePoint, "Exp(Y) is the base point itself, not an antipode");
  int dim = 0;
  for (std::size_t i : odd_root_set(rs, y, tol)) dim += space.multiplicity_of(i);
  return dim;
}

int helgason_sphere_dimension(const SymmetricSpace& space) {
  return space.multiplicity_of(space.root_system.highest()) + 1;
}

}  // namespace funkgeo::roots
