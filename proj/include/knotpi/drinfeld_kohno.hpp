#pragma once

// The graded Lie algebras chi(n) = L(B_ij : 1 <= j < i <= n) / I, with I the
// ideal of the infinitesimal Yang-Baxter relations and |B_ij| = d-2, and the
// cosimplicial structure chi(n) -> chi(n +- 1).
//
// Two independent constructions are provided.
//
// DrinfeldKohno computes in the split extension chi(n) = F_n x| chi(n-1),
// where F_n is free on B_n1..B_n,n-1. Elements are sums of "row-pure" Lie
// tensors, one free Lie element per first index, and brackets across rows are
// evaluated through the derivation action of chi(n-1) on F_n read off from the
// relations. This is the fast path used everywhere downstream.
//
// chi_component works from the definition: the ideal is generated weight by
// weight inside the free Lie algebra and quotiented out. Its basis is chosen
// to coincide with the row-pure basis, so the two constructions can be
// compared coordinate by coordinate.

#include "knotpi/chords.hpp"
#include "knotpi/free_lie.hpp"
#include "knotpi/linalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace knotpi {

/// Homogeneous element of chi(n) in row-pure normal form.
struct ChiElement {
  Tensor tensor;
  int weight = 1;

  [[nodiscard]] bool is_zero() const { return tensor.is_zero(); }
  friend bool operator==(const ChiElement&, const ChiElement&) = default;
};

class DrinfeldKohno {
 public:
  DrinfeldKohno(int n, int d);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] int generator_degree() const { return d_ - 2; }
  [[nodiscard]] int degree(int weight) const { return weight * (d_ - 2); }
  /// Free Lie algebra on all chords; letter = chord id.
  [[nodiscard]] const FreeLieAlgebra& free() const { return free_; }
  [[nodiscard]] int row_of(Letter l) const { return row_of_.at(l); }
  [[nodiscard]] std::vector<Letter> row_letters(int row) const;

  [[nodiscard]] std::size_t dimension(int weight) const { return layout(weight).dimension; }
  [[nodiscard]] LabeledBasis labels(int weight) const;
  /// Lie basis of F_row in the given weight (optionally: words using every letter of the row).
  [[nodiscard]] const LieBasis& row_basis(int row, int weight, bool full_support = false) const;

  [[nodiscard]] ChiElement zero(int weight) const { return {Tensor{}, weight}; }
  [[nodiscard]] ChiElement generator(Chord c, const Rational& coeff = 1) const;
  [[nodiscard]] ChiElement basis_element(int weight, std::size_t index) const;
  [[nodiscard]] const BracketWord& basis_tree(int weight, std::size_t index) const;
  [[nodiscard]] ChiElement element(int weight, const SparseVector& coords) const;
  [[nodiscard]] SparseVector coordinates(const ChiElement& e) const;

  [[nodiscard]] ChiElement bracket(const ChiElement& a, const ChiElement& b) const;
  /// Evaluates a bracket tree whose leaves are chord ids.
  [[nodiscard]] ChiElement evaluate(const BracketWord& w) const;

 private:
  struct Layout {
    std::vector<const LieBasis*> rows;  // index k-2 holds row k
    std::vector<std::size_t> offsets;
    std::size_t dimension = 0;
  };
  const Layout& layout(int weight) const;
  [[nodiscard]] Tensor act(const Tensor& x, const Tensor& y) const;
  [[nodiscard]] const Tensor& rho(Letter g, Letter h) const;

  int n_;
  int d_;
  FreeLieAlgebra free_;
  std::vector<int> row_of_;
  DegreeTable degrees_;
  std::vector<Tensor> rho_;  // rho_[g * L + h] = [B_g, B_h] for row(g) < row(h)
  mutable std::mutex mutex_;
  mutable std::map<int, Layout> layouts_;
};

/// Shared instance per (n, d); thread-safe.
const DrinfeldKohno& chi_algebra(int n, int d);

/// A relation [left, right] with left and right linear in the generators.
struct YangBaxterRelation {
  std::vector<std::pair<Chord, Rational>> left;
  std::vector<std::pair<Chord, Rational>> right;
  std::string label;
};

/// The three families: disjoint-pair brackets, [B_ij, B_it + (-1)^d B_tj] and
/// [B_tj, B_ij + B_it] for j < t < i.
std::vector<YangBaxterRelation> yang_baxter_relation_terms(int n, int d);
/// The same relations as elements of the free Lie algebra on the chords.
std::vector<LieElement> yang_baxter_relations(int n, int d);

/// chi(n) in one weight, computed from the definition.
struct ChiComponent {
  int n = 0;
  int d = 4;
  int weight = 1;
  LabeledBasis basis;
  std::size_t free_dimension = 0;
  std::size_t ideal_dimension = 0;
  /// Columns: free Lie basis words of this weight; rows: chi coordinates.
  SparseRationalMatrix reduction;

  [[nodiscard]] std::size_t dimension() const { return basis.dimension(); }
  [[nodiscard]] int degree() const { return weight * (d - 2); }
};

ChiComponent chi_component(int n, int d, int weight);
/// Coordinates of a free Lie element in chi; rejects a weight mismatch.
SparseVector reduce_to_chi(const LieElement& e, const ChiComponent& c);

struct CosimplicialLieMap {
  MapKind kind = MapKind::Coface;
  int index = 0;
  int source_n = 0;
  int target_n = 0;
  int weight = 1;
  SparseRationalMatrix matrix;
};

/// Image of a generator of chi(n) under a structure map.
ChiElement structure_map_on_generator(MapKind kind, int index, int n, int d, Chord c);

/// Matrix of the Lie map chi(n) -> chi(m) determined by generator images, in one weight.
SparseRationalMatrix lie_map_matrix(const DrinfeldKohno& source, const DrinfeldKohno& target, int weight,
                                    const std::function<ChiElement(Chord)>& on_generator);

CosimplicialLieMap coface_map(int i, int n, int d, int weight);
CosimplicialLieMap codegeneracy_map(int j, int n, int d, int weight);

/// Labels of relations whose image under the structure map is nonzero in the target.
std::vector<std::string> ideal_violations(MapKind kind, int index, int n, int d);

}  // namespace knotpi
