#pragma once

// Noncommutative polynomials (elements of the tensor algebra T(V)) over Q.
// Free graded Lie algebras are realised inside T(V), where the bracket is the
// graded commutator.

#include "knotpi/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace knotpi {

inline constexpr std::size_t kMaxWordLength = 14;

using Letter = std::uint16_t;

/// Word in the generators; compared by length, then lexicographically.
struct Word {
  std::uint8_t length = 0;
  std::array<Letter, kMaxWordLength> letters{};

  Word() = default;
  explicit Word(std::span<const Letter> ls);
  static Word single(Letter l) { return Word(std::span<const Letter>(&l, 1)); }

  [[nodiscard]] std::span<const Letter> view() const { return {letters.data(), length}; }
  [[nodiscard]] Letter operator[](std::size_t i) const { return letters[i]; }
  [[nodiscard]] Word concat(const Word& o) const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

/// Returns the degree of a letter; all letters of a tensor use the same table.
using DegreeTable = std::vector<int>;

class Tensor {
 public:
  using Term = std::pair<Word, Rational>;

  Tensor() = default;
  static Tensor letter(Letter l, Rational c = 1);
  static Tensor word(const Word& w, Rational c = 1);
  /// Terms may be unsorted, repeated or zero.
  static Tensor from_terms(std::vector<Term> terms);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] Rational coefficient(const Word& w) const;

  void axpy(const Rational& factor, const Tensor& other);
  Tensor& operator+=(const Tensor& o) {
    axpy(1, o);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    axpy(-1, o);
    return *this;
  }
  Tensor& operator*=(const Rational& c);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Rational& c, Tensor t) { return t *= c; }
  /// Concatenation product.
  friend Tensor operator*(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor&, const Tensor&) = default;

  /// Image under a letter substitution. A negative image drops the word.
  [[nodiscard]] Tensor relabeled(const std::function<int(Letter)>& map) const;

 private:
  std::vector<Term> terms_;
};

/// Algebra map T(V) -> T(W) determined by the images of letters.
Tensor substitute(const Tensor& t, const std::function<const Tensor&(Letter)>& image);

/// Degree of a word under a degree table.
int word_degree(const Word& w, const DegreeTable& degrees);

/// Graded commutator ab - (-1)^{|a||b|} ba of homogeneous tensors.
Tensor graded_commutator(const Tensor& a, int degree_a, const Tensor& b, int degree_b);

/// Applies the graded derivation of T(V) of degree `degree` determined by its
/// values on letters: D(xy) = D(x)y + (-1)^{degree |x|} x D(y).
Tensor apply_derivation(const Tensor& t, int degree, const DegreeTable& letter_degrees,
                        const std::function<const Tensor&(Letter)>& on_letter);

}  // namespace knotpi
