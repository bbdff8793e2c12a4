#pragma once

// Exact sparse linear algebra over Q.
//
// Vectors are sorted (index, value) lists without explicit zeros. Matrices are
// stored by columns because every map in this project is built as "image of the
// j-th basis vector". All eliminations are deterministic: a vector's pivot is
// its smallest index, and vectors are processed in input order.

#include "knotpi/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knotpi {

class SparseVector {
 public:
  using Entry = std::pair<std::uint32_t, Rational>;

  SparseVector() = default;
  /// Entries may be unsorted and contain duplicates or zeros.
  static SparseVector from_entries(std::vector<Entry> entries);
  static SparseVector unit(std::uint32_t index, Rational value = 1);
  static SparseVector from_dense(const std::vector<Rational>& dense);

  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] Rational at(std::uint32_t index) const;
  [[nodiscard]] std::uint32_t leading_index() const { return entries_.front().first; }
  [[nodiscard]] const Rational& leading_value() const { return entries_.front().second; }
  /// One past the largest stored index (0 if empty).
  [[nodiscard]] std::uint32_t extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }
  [[nodiscard]] std::vector<Rational> to_dense(std::size_t length) const;

  /// this += factor * other
  void axpy(const Rational& factor, const SparseVector& other);
  SparseVector& operator*=(const Rational& factor);
  SparseVector& operator+=(const SparseVector& o) {
    axpy(1, o);
    return *this;
  }
  SparseVector& operator-=(const SparseVector& o) {
    axpy(-1, o);
    return *this;
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Rational& c, SparseVector v) { return v *= c; }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;

  /// Keeps entries with index in [begin, end), shifted down by `begin`.
  [[nodiscard]] SparseVector slice(std::uint32_t begin, std::uint32_t end) const;
  /// Adds `offset` to every index.
  [[nodiscard]] SparseVector shifted(std::uint32_t offset) const;

 private:
  std::vector<Entry> entries_;
};

/// Thrown when a computation requires g∘f = 0 and it does not hold.
class NotAComplex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SparseRationalMatrix {
 public:
  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols);
  static SparseRationalMatrix identity(std::size_t n);
  static SparseRationalMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);
  static SparseRationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return columns_.size(); }
  [[nodiscard]] const SparseVector& column(std::size_t c) const { return columns_.at(c); }
  [[nodiscard]] const std::vector<SparseVector>& columns() const { return columns_; }
  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::size_t nnz() const;

  [[nodiscard]] SparseVector apply(const SparseVector& v) const;
  [[nodiscard]] SparseRationalMatrix transpose() const;
  /// Row vectors (each of length cols()).
  [[nodiscard]] std::vector<SparseVector> row_vectors() const;
  /// Stacks matrices with equal column counts on top of each other.
  static SparseRationalMatrix vstack(const std::vector<SparseRationalMatrix>& blocks, std::size_t cols);

  friend SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b);
  friend SparseRationalMatrix operator+(const SparseRationalMatrix& a, const SparseRationalMatrix& b);
  friend SparseRationalMatrix operator-(const SparseRationalMatrix& a, const SparseRationalMatrix& b);
  friend SparseRationalMatrix operator*(const Rational& c, SparseRationalMatrix m);
  friend bool operator==(const SparseRationalMatrix&, const SparseRationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

/// Ordered list of pairwise distinct basis tags.
class LabeledBasis {
 public:
  LabeledBasis() = default;
  explicit LabeledBasis(std::vector<std::string> labels);
  [[nodiscard]] std::size_t dimension() const { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return labels_.at(i); }
  friend bool operator==(const LabeledBasis&, const LabeledBasis&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Row-echelon form built incrementally. Each stored row has leading value 1
/// and may carry a tag vector recording how it was combined from the tagged
/// inputs, which gives coordinates with respect to those inputs.
class Echelon {
 public:
  struct Reduction {
    SparseVector remainder;
    SparseVector tag;
  };

  /// Reduces `v` against the stored rows; the remainder has no entry at any pivot.
  [[nodiscard]] Reduction reduce(SparseVector v, SparseVector tag = {}) const;
  /// Inserts `v`; returns the reduction (remainder empty means `v` was dependent,
  /// in which case `tag` holds the dependency relation).
  Reduction insert(SparseVector v, SparseVector tag = {});
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] bool contains(const SparseVector& v) const { return reduce(v).remainder.is_zero(); }
  [[nodiscard]] std::vector<std::uint32_t> pivots() const;
  /// Back-substitutes so that every pivot column has a single nonzero entry.
  void make_reduced();
  /// Rows ordered by pivot.
  [[nodiscard]] std::vector<SparseVector> rows() const;

 private:
  struct Row {
    SparseVector vector;
    SparseVector tag;
  };
  std::map<std::uint32_t, Row> rows_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseVector> kernel;
};

struct HomologyResult {
  std::size_t dimension = 0;
  std::vector<SparseVector> cycle_representatives;
};

struct QuotientResult {
  std::size_t dimension = 0;
  std::vector<SparseVector> representatives;
};

RankKernel rank_and_kernel(const SparseRationalMatrix& m);
std::size_t rank(const SparseRationalMatrix& m);
std::size_t rank_of(const std::vector<SparseVector>& vectors);
std::vector<SparseVector> image_basis(const SparseRationalMatrix& m);
QuotientResult quotient_basis(std::size_t ambient_dim, const std::vector<SparseVector>& subspace);
/// Homology at the middle of A --f--> B --g--> C. Throws NotAComplex if g∘f ≠ 0.
HomologyResult homology_at(const SparseRationalMatrix& f, const SparseRationalMatrix& g);

/// Coordinates with respect to a list of linearly independent vectors.
class SubspaceCoordinates {
 public:
  SubspaceCoordinates() = default;
  explicit SubspaceCoordinates(const std::vector<SparseVector>& basis);
  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  /// Throws std::domain_error if `v` is outside the span.
  [[nodiscard]] SparseVector coordinates(const SparseVector& v) const;
  [[nodiscard]] std::optional<SparseVector> try_coordinates(const SparseVector& v) const;

 private:
  Echelon echelon_;
  std::size_t dimension_ = 0;
};

/// Coordinates in W/U for W = U + span(representatives). Representatives that
/// are dependent modulo U and the previously accepted ones are dropped.
class QuotientCoordinates {
 public:
  QuotientCoordinates() = default;
  QuotientCoordinates(const std::vector<SparseVector>& denominator,
                      const std::vector<SparseVector>& candidates);
  [[nodiscard]] std::size_t dimension() const { return representatives_.size(); }
  [[nodiscard]] const std::vector<SparseVector>& representatives() const { return representatives_; }
  /// Throws std::domain_error if `v` is outside U + span(representatives).
  [[nodiscard]] SparseVector coordinates(const SparseVector& v) const;

 private:
  Echelon echelon_;
  std::vector<SparseVector> representatives_;
};

}  // namespace knotpi
