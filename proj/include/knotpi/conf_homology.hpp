#pragma once

// Rational (co)homology of the configuration spaces K(n) of n points in R^d.
//
// H^*(K(n)) is graded commutative on classes A_ij of degree d-1 with A_ij^2 = 0
// and the three-term relation A_ij A_ik = A_kj A_ik - A_kj A_ij (j < k < i).
// Monomials whose first indices strictly increase form a basis. Homology is
// the dual coalgebra: xi_M is dual to the admissible monomial M, and in degree
// d-1 we write gamma_ij for the dual of A_ij.

#include "knotpi/chords.hpp"
#include "knotpi/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace knotpi {

/// Ordered product of A-classes.
using Monomial = std::vector<Chord>;
/// Linear combination of admissible monomials.
using CohomologyVector = std::map<Monomial, Rational>;

bool is_admissible(const Monomial& m);

/// Rewrites a product of A-classes into admissible monomials.
CohomologyVector arnold_reduce(const Monomial& product, int d);

/// Admissible monomials of length k on n points, ordered lexicographically.
std::vector<Monomial> admissible_monomials(int n, int k);

std::string cohomology_label(const Monomial& m);
std::string homology_label(const Monomial& m);

/// Basis of H^{k(d-1)}(K(n)).
LabeledBasis cohomology_basis(int n, int d, int k);

/// One term c * (xi_left (x) xi_right) of a reduced diagonal.
struct DiagonalTerm {
  int left_length = 0;
  std::size_t left = 0;
  int right_length = 0;
  std::size_t right = 0;
  Rational coeff;
  friend auto operator<=>(const DiagonalTerm&, const DiagonalTerm&) = default;
};

class ConfigurationSpace {
 public:
  ConfigurationSpace(int n, int d);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int d() const { return d_; }
  /// Largest k with nonzero H_{k(d-1)}.
  [[nodiscard]] int top_length() const { return n_ < 2 ? 0 : n_ - 1; }
  [[nodiscard]] int degree(int k) const { return k * (d_ - 1); }

  [[nodiscard]] const std::vector<Monomial>& monomials(int k) const;
  [[nodiscard]] std::size_t dimension(int k) const { return monomials(k).size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(const Monomial& m) const;
  [[nodiscard]] LabeledBasis homology_labels(int k) const;

  /// Coordinates of a product of A-classes in the admissible basis of length k.
  [[nodiscard]] SparseVector product_coordinates(const Monomial& product) const;

  /// Reduced diagonals of all xi of length k, indexed like monomials(k).
  /// Delta(xi) = sum <xi, alpha beta> (-1)^{|alpha||beta|} alpha^v (x) beta^v.
  [[nodiscard]] const std::vector<std::vector<DiagonalTerm>>& reduced_diagonals(int k) const;

 private:
  int n_;
  int d_;
  std::vector<std::vector<Monomial>> monomials_;
  std::map<Monomial, std::size_t> index_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<std::vector<DiagonalTerm>>>> diagonals_;
};

/// Shared instance per (n, d); thread-safe.
const ConfigurationSpace& configuration_space(int n, int d);

/// Reduced diagonal of xi_M for admissible M.
std::vector<DiagonalTerm> reduced_diagonal(int n, int d, const Monomial& m);

/// <xi_M, M'> for admissible M, M' of length k; the identity by construction.
SparseRationalMatrix pairing_matrix(int n, int d, int k);

/// Cohomology restriction of a structure map, H^{k(d-1)}(K(target)) -> H^{k(d-1)}(K(n)),
/// on generators the transpose of the chord rule, extended multiplicatively.
SparseRationalMatrix cohomology_pullback_matrix(MapKind kind, int index, int n, int d, int k);

/// Homology structure map H_{k(d-1)}(K(n)) -> H_{k(d-1)}(K(n +- 1)) (transpose of the pullback).
SparseRationalMatrix homology_structure_matrix(MapKind kind, int index, int n, int d, int k);

/// Degrees (as word lengths) where the structure map fails to commute with the reduced diagonal.
std::vector<int> coalgebra_map_failures(MapKind kind, int index, int n, int d);

}  // namespace knotpi
