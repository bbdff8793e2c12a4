#pragma once

// Free graded Lie algebras over Q.
//
// Elements live in the tensor algebra, where the bracket is the graded
// commutator; this embedding is faithful in characteristic zero. The canonical
// basis in each bracket length consists of the standard bracketings of Lyndon
// words together with the squares [P_u, P_u] of odd-degree Lyndon words u.

#include "knotpi/linalg.hpp"
#include "knotpi/tensor.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace knotpi {

struct GeneratorSpec {
  int id = 0;
  std::string name;
  int degree = 1;
  /// Auxiliary grading used to filter basis components (1 unless stated).
  int weight = 1;
};

/// Binary bracket tree whose leaves are generator ids.
struct BracketWord {
  int letter = -1;
  std::vector<BracketWord> children;

  static BracketWord leaf(int generator);
  static BracketWord bracket(BracketWord left, BracketWord right);
  [[nodiscard]] bool is_leaf() const { return children.empty(); }
  [[nodiscard]] const BracketWord& left() const { return children.at(0); }
  [[nodiscard]] const BracketWord& right() const { return children.at(1); }
  [[nodiscard]] int length() const;
  [[nodiscard]] std::vector<Letter> leaves() const;
  friend bool operator==(const BracketWord&, const BracketWord&) = default;
};

/// Homogeneous element of a free graded Lie algebra, stored as its tensor image.
struct LieElement {
  Tensor tensor;
  int length = 1;
  int degree = 0;

  [[nodiscard]] bool is_zero() const { return tensor.is_zero(); }
  friend bool operator==(const LieElement&, const LieElement&) = default;
};

struct LieBasisElement {
  Word word;  // Lyndon word, or u·u for a square
  BracketWord tree;
  Tensor expansion;
  int degree = 0;
  int weight = 0;
  std::string label;
};

/// Selects a basis component: words of `length` letters drawn from `alphabet`
/// (empty = all generators) with total weight `weight` (-1 = any). With
/// `full_support` only words using every alphabet letter are kept.
struct BasisKey {
  std::vector<Letter> alphabet;
  int length = 1;
  int weight = -1;
  bool full_support = false;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

class LieBasis {
 public:
  LieBasis(std::vector<LieBasisElement> elements, const DegreeTable& degrees);

  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] const std::vector<LieBasisElement>& elements() const { return elements_; }
  [[nodiscard]] const LieBasisElement& operator[](std::size_t i) const { return elements_.at(i); }
  [[nodiscard]] LabeledBasis labels() const;
  [[nodiscard]] std::optional<std::size_t> index_of(const Word& w) const;

  /// Coordinates of a Lie tensor in this basis. Throws std::domain_error when
  /// the tensor is not in the span.
  [[nodiscard]] SparseVector coordinates(const Tensor& t) const;
  [[nodiscard]] Tensor to_tensor(const SparseVector& coords) const;

 private:
  [[nodiscard]] std::optional<SparseVector> index_tensor(const Tensor& t) const;
  const Echelon& echelon() const;

  std::vector<LieBasisElement> elements_;
  std::vector<Word> support_;  // sorted words occurring in the expansions
  std::map<Word, std::size_t> by_word_;
  // built on first use; many callers only need index_of
  mutable std::once_flag echelon_once_;
  mutable Echelon echelon_;
};

class FreeLieAlgebra {
 public:
  explicit FreeLieAlgebra(std::vector<GeneratorSpec> generators);

  [[nodiscard]] const std::vector<GeneratorSpec>& generators() const { return generators_; }
  [[nodiscard]] std::size_t generator_count() const { return generators_.size(); }
  [[nodiscard]] const DegreeTable& degrees() const { return degrees_; }
  [[nodiscard]] int degree(const BracketWord& w) const;
  [[nodiscard]] int weight(const BracketWord& w) const;

  /// Basis of the bracket-length-`length` component.
  [[nodiscard]] const LieBasis& basis(int length) const { return basis(BasisKey{{}, length, -1}); }
  [[nodiscard]] const LieBasis& basis(const BasisKey& key) const;

  [[nodiscard]] LieElement generator(int id, Rational c = 1) const;
  [[nodiscard]] LieElement expand(const BracketWord& w, const Rational& coeff = 1) const;
  [[nodiscard]] LieElement zero(int length, int degree) const { return {Tensor{}, length, degree}; }

  /// Canonical-basis coordinates of a bracket word times a coefficient.
  [[nodiscard]] SparseVector normal_form(const BracketWord& w, const Rational& coeff = 1) const;
  /// Canonical-basis coordinates of an element in basis(e.length).
  [[nodiscard]] SparseVector coordinates(const LieElement& e) const;

  [[nodiscard]] std::string render(const BracketWord& w) const;

 private:
  std::vector<GeneratorSpec> generators_;
  DegreeTable degrees_;
  mutable std::mutex mutex_;
  mutable std::map<BasisKey, std::unique_ptr<LieBasis>> bases_;
};

LieElement bracket(const LieElement& a, const LieElement& b);

/// Lyndon words of exactly `length` letters over `alphabet` (sorted ascending), in lex order.
std::vector<Word> lyndon_words(const std::vector<Letter>& alphabet, int length);
bool is_lyndon(std::span<const Letter> w);
/// Standard bracketing of a Lyndon word.
BracketWord standard_bracketing(std::span<const Letter> lyndon);

/// Basis labels of the weight-`length` component (convenience wrapper).
LabeledBasis lie_basis(const std::vector<GeneratorSpec>& generators, int length);

/// Evaluates a bracket tree in any Lie algebra given leaf images and a bracket.
template <class Element, class LeafFn, class BracketFn>
Element evaluate_tree(const BracketWord& w, const LeafFn& leaf, const BracketFn& br) {
  if (w.is_leaf()) return leaf(w.letter);
  return br(evaluate_tree<Element>(w.left(), leaf, br), evaluate_tree<Element>(w.right(), leaf, br));
}

}  // namespace knotpi
