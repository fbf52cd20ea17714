#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace funkgeo::roots {

enum class Family { A, B, C, D, BC, E6, E7, E8, F4, G2 };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// Irreducible (possibly non-reduced) root system in rank-dimensional
/// Euclidean coordinates, scaled so the highest root has unit norm.
///
/// The Euclidean inner product of these coordinates plays the role of the
/// Killing form restricted to the flat; on an irreducible system that form
/// is fixed up to the overall scale, which the normalization pins down.
class RootSystem {
 public:
  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::size_t size() const { return roots_.size(); }

  const Eigen::VectorXd& root(std::size_t i) const { return roots_.at(i); }
  const std::vector<Eigen::VectorXd>& roots() const { return roots_; }
  const std::vector<std::size_t>& positive() const { return positive_; }
  std::size_t highest() const { return highest_; }
  const Eigen::VectorXd& highest_root() const { return roots_[highest_]; }

  bool is_positive(std::size_t i) const;
  /// Index of the root equal to `v` within `tol`, or size() when absent.
  std::size_t find(const Eigen::VectorXd& v, double tol = 1e-9) const;
  /// Indecomposable positive roots.
  std::vector<std::size_t> simple_roots() const;

  std::string name() const;

 private:
  friend RootSystem build_root_system(Family family, int rank);

  Family family_ = Family::A;
  int rank_ = 0;
  std::vector<Eigen::VectorXd> roots_;
  std::vector<std::size_t> positive_;
  std::size_t highest_ = 0;
};

/// Standard realization of (family, rank); throws InvalidArgument for
/// combinations outside the classification (A≥1, B≥2, C≥2, D≥4, BC≥1,
/// E6/E7/E8/F4/G2 at their fixed rank).
RootSystem build_root_system(Family family, int rank);

/// Generator X_α = 2π α/⟨α,α⟩ of the lattice of closed geodesics through the
/// origin; its norm is the length of the closed geodesic t ↦ Exp(t X_α).
struct LatticeVector {
  Eigen::VectorXd coordinates;
  std::size_t source_root = 0;
  double length = 0.0;
};

LatticeVector dual_vector(const RootSystem& rs, std::size_t root_index);

/// Positive roots α with 2⟨α,Y⟩/π an odd integer (within tol). Throws
/// NumericallyUnstable if some value lies between tol and 2·tol from the
/// nearest integer.
std::vector<std::size_t> odd_root_set(const RootSystem& rs,
                                      const Eigen::VectorXd& y,
                                      double tol = 1e-9);

struct PairingEntry {
  std::size_t root = 0;
  double value = 0.0;  ///< ⟨β, X_δ⟩
};

struct PairingReport {
  std::vector<PairingEntry> pairings;  ///< one per positive root
  bool passed = true;
  double highest_value = 0.0;        ///< ⟨δ, X_δ⟩, expected 2π
  std::size_t count_pi = 0;          ///< non-δ positive roots pairing to ±π
  bool at_least_two = true;          ///< count_pi ≥ 2 (only demanded for rank ≥ 2)
  std::vector<std::size_t> offending;
};

PairingReport check_longest_root_pairing(const RootSystem& rs,
                                         double tol = 1e-12);

/// Irreducible compact symmetric space given by its restricted roots and
/// their multiplicities.
struct SymmetricSpace {
  std::string name;  ///< "S^n", "CP^n", "HP^n", "OP^2", "Q^n"
  int n = 0;
  RootSystem root_system;
  std::vector<int> multiplicity;  ///< per root index, same on ± pairs
  int dimension = 0;

  bool is_sphere() const { return name == "S^n"; }
  std::string label() const;
  int multiplicity_of(std::size_t root) const { return multiplicity.at(root); }
};

/// Builds a bundled descriptor. Accepted names: "S", "CP", "HP", "OP", "Q"
/// (with or without a "^n" suffix). CP^1 and HP^1 collapse to the A1 sphere
/// descriptors S^2 and S^4.
SymmetricSpace make_space(std::string_view name, int n);

/// Bundled sample: S^2, S^3, CP^2, CP^3, HP^2, HP^3, OP^2, Q^3, Q^4, Q^5.
std::vector<SymmetricSpace> descriptor_table();

/// Sum of Σ m(α) over R⁺ plus the rank.
int bookkeeping_dimension(const SymmetricSpace& space);

/// Dimension of K(Exp Y) for Y in ½·lattice but not in the lattice.
int midpoint_locus_dimension(const SymmetricSpace& space,
                             const Eigen::VectorXd& y, double tol = 1e-9);

/// Maximal dimension of a totally geodesic unit sphere through a shortest
/// closed geodesic: m(δ)+1.
int helgason_sphere_dimension(const SymmetricSpace& space);

/// Coordinates of y in the basis of lattice generators X_α of the simple
/// coroots (indecomposable positive dual vectors).
Eigen::VectorXd lattice_coordinates(const RootSystem& rs,
                                    const Eigen::VectorXd& y);

}  // namespace funkgeo::roots
