#include "knotpi/linalg.hpp"

#include <algorithm>
#include <set>

namespace knotpi {

// ---------------------------------------------------------------- SparseVector

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().first == e.first) {
      out.entries_.back().second += e.second;
      if (out.entries_.back().second.is_zero()) out.entries_.pop_back();
    } else if (!e.second.is_zero()) {
      out.entries_.push_back(std::move(e));
    }
  }
  return out;
}

SparseVector SparseVector::unit(std::uint32_t index, Rational value) {
  SparseVector out;
  if (!value.is_zero()) out.entries_.emplace_back(index, std::move(value));
  return out;
}

SparseVector SparseVector::from_dense(const std::vector<Rational>& dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) out.entries_.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  return out;
}

Rational SparseVector::at(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint32_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0;
}

std::vector<Rational> SparseVector::to_dense(std::size_t length) const {
  std::vector<Rational> out(length);
  for (const auto& [i, v] : entries_) out.at(i) = v;
  return out;
}

void SparseVector::axpy(const Rational& factor, const SparseVector& other) {
  if (factor.is_zero() || other.entries_.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational sum = a->second + factor * b->second;
      if (!sum.is_zero()) merged.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

SparseVector& SparseVector::operator*=(const Rational& factor) {
  if (factor.is_zero()) {
    entries_.clear();
  } else {
    for (auto& e : entries_) e.second *= factor;
  }
  return *this;
}

SparseVector SparseVector::slice(std::uint32_t begin, std::uint32_t end) const {
  SparseVector out;
  for (const auto& [i, v] : entries_)
    if (i >= begin && i < end) out.entries_.emplace_back(i - begin, v);
  return out;
}

SparseVector SparseVector::shifted(std::uint32_t offset) const {
  SparseVector out = *this;
  for (auto& e : out.entries_) e.first += offset;
  return out;
}

// ---------------------------------------------------------------- Matrix

SparseRationalMatrix::SparseRationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), columns_(cols) {}

SparseRationalMatrix SparseRationalMatrix::identity(std::size_t n) {
  SparseRationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(static_cast<std::uint32_t>(i));
  return m;
}

SparseRationalMatrix SparseRationalMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns) {
  for (const auto& c : columns)
    if (c.extent() > rows) throw std::out_of_range("matrix column entry outside row range");
  SparseRationalMatrix m;
  m.rows_ = rows;
  m.columns_ = std::move(columns);
  return m;
}

SparseRationalMatrix SparseRationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  SparseRationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Rational SparseRationalMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols()) throw std::out_of_range("matrix index");
  return columns_[c].at(static_cast<std::uint32_t>(r));
}

void SparseRationalMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols()) throw std::out_of_range("matrix index");
  const Rational old = columns_[c].at(static_cast<std::uint32_t>(r));
  columns_[c].axpy(1, SparseVector::unit(static_cast<std::uint32_t>(r), value - old));
}

bool SparseRationalMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.is_zero(); });
}

std::size_t SparseRationalMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.nnz();
  return n;
}

SparseVector SparseRationalMatrix::apply(const SparseVector& v) const {
  if (v.extent() > cols()) throw std::out_of_range("vector longer than matrix domain");
  SparseVector out;
  for (const auto& [i, x] : v.entries()) out.axpy(x, columns_[i]);
  return out;
}

SparseRationalMatrix SparseRationalMatrix::transpose() const {
  std::vector<std::vector<SparseVector::Entry>> rows(rows_);
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns_[c].entries()) rows[r].emplace_back(static_cast<std::uint32_t>(c), v);
  std::vector<SparseVector> cols_out;
  cols_out.reserve(rows_);
  for (auto& r : rows) cols_out.push_back(SparseVector::from_entries(std::move(r)));
  return from_columns(cols(), std::move(cols_out));
}

std::vector<SparseVector> SparseRationalMatrix::row_vectors() const { return transpose().columns_; }

SparseRationalMatrix SparseRationalMatrix::vstack(const std::vector<SparseRationalMatrix>& blocks,
                                                  std::size_t cols) {
  std::size_t total_rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    total_rows += b.rows();
  }
  std::vector<SparseVector> columns(cols);
  std::uint32_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t c = 0; c < cols; ++c) columns[c] += b.columns_[c].shifted(offset);
    offset += static_cast<std::uint32_t>(b.rows());
  }
  return from_columns(total_rows, std::move(columns));
}

SparseRationalMatrix operator*(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  std::vector<SparseVector> cols;
  cols.reserve(b.cols());
  for (const auto& c : b.columns_) cols.push_back(a.apply(c));
  return SparseRationalMatrix::from_columns(a.rows(), std::move(cols));
}

SparseRationalMatrix operator+(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  SparseRationalMatrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c) out.columns_[c] += b.columns_[c];
  return out;
}

SparseRationalMatrix operator-(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  return a + Rational(-1) * b;
}

SparseRationalMatrix operator*(const Rational& c, SparseRationalMatrix m) {
  for (auto& col : m.columns_) col *= c;
  return m;
}

// ---------------------------------------------------------------- LabeledBasis

LabeledBasis::LabeledBasis(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw std::invalid_argument("LabeledBasis: duplicate labels");
}

// ---------------------------------------------------------------- Echelon

Echelon::Reduction Echelon::reduce(SparseVector v, SparseVector tag) const {
  // Pivot rows only have entries at or after their pivot, so a single sweep in
  // increasing index order clears every pivot position.
  std::size_t pos = 0;
  while (pos < v.nnz()) {
    const auto& [index, value] = v.entries()[pos];
    auto it = rows_.find(index);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    const Rational factor = -value;
    v.axpy(factor, it->second.vector);
    if (!it->second.tag.is_zero()) tag.axpy(factor, it->second.tag);
  }
  return {std::move(v), std::move(tag)};
}

Echelon::Reduction Echelon::insert(SparseVector v, SparseVector tag) {
  Reduction r = reduce(std::move(v), std::move(tag));
  if (r.remainder.is_zero()) return r;
  const Rational inv = Rational(1) / r.remainder.leading_value();
  Row row{r.remainder, r.tag};
  row.vector *= inv;
  row.tag *= inv;
  rows_.emplace(row.vector.leading_index(), std::move(row));
  return r;
}

std::vector<std::uint32_t> Echelon::pivots() const {
  std::vector<std::uint32_t> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

void Echelon::make_reduced() {
  // Process pivots from the largest down; each row is cleared at later pivots.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    Row& row = it->second;
    SparseVector& v = row.vector;
    std::size_t pos = 1;
    while (pos < v.nnz()) {
      const auto& [index, value] = v.entries()[pos];
      auto other = rows_.find(index);
      if (other == rows_.end()) {
        ++pos;
        continue;
      }
      const Rational factor = -value;
      v.axpy(factor, other->second.vector);
      if (!other->second.tag.is_zero()) row.tag.axpy(factor, other->second.tag);
    }
  }
}

std::vector<SparseVector> Echelon::rows() const {
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row.vector);
  return out;
}

// ---------------------------------------------------------------- operations

RankKernel rank_and_kernel(const SparseRationalMatrix& m) {
  // Columns are inserted left to right; a column dependent on earlier ones
  // yields the kernel vector e_c - (its expression in the earlier columns).
  Echelon e;
  RankKernel out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto r = e.insert(m.column(c), SparseVector::unit(static_cast<std::uint32_t>(c)));
    if (r.remainder.is_zero()) {
      out.kernel.push_back(std::move(r.tag));
    } else {
      ++out.rank;
    }
  }
  return out;
}

std::size_t rank(const SparseRationalMatrix& m) { return rank_of(m.columns()); }

std::size_t rank_of(const std::vector<SparseVector>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<SparseVector> image_basis(const SparseRationalMatrix& m) {
  Echelon e;
  std::vector<SparseVector> out;
  for (const auto& c : m.columns())
    if (!e.insert(c).remainder.is_zero()) out.push_back(c);
  return out;
}

QuotientResult quotient_basis(std::size_t ambient_dim, const std::vector<SparseVector>& subspace) {
  Echelon e;
  for (const auto& v : subspace) {
    if (v.extent() > ambient_dim) throw std::invalid_argument("quotient_basis: vector outside ambient space");
    e.insert(v);
  }
  QuotientResult out;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    auto u = SparseVector::unit(static_cast<std::uint32_t>(i));
    if (!e.insert(u).remainder.is_zero()) out.representatives.push_back(std::move(u));
  }
  out.dimension = out.representatives.size();
  return out;
}

HomologyResult homology_at(const SparseRationalMatrix& f, const SparseRationalMatrix& g) {
  if (f.rows() != g.cols()) throw std::invalid_argument("homology_at: maps are not composable");
  if (!(g * f).is_zero()) throw NotAComplex("not a complex: g∘f ≠ 0");
  Echelon boundaries;
  for (const auto& c : f.columns()) boundaries.insert(c);
  HomologyResult out;
  for (auto& z : rank_and_kernel(g).kernel)
    if (!boundaries.insert(z).remainder.is_zero()) out.cycle_representatives.push_back(std::move(z));
  out.dimension = out.cycle_representatives.size();
  return out;
}

SubspaceCoordinates::SubspaceCoordinates(const std::vector<SparseVector>& basis) : dimension_(basis.size()) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto r = echelon_.insert(basis[i], SparseVector::unit(static_cast<std::uint32_t>(i)));
    if (r.remainder.is_zero()) throw std::invalid_argument("SubspaceCoordinates: dependent basis");
  }
}

std::optional<SparseVector> SubspaceCoordinates::try_coordinates(const SparseVector& v) const {
  auto r = echelon_.reduce(v);
  if (!r.remainder.is_zero()) return std::nullopt;
  return Rational(-1) * r.tag;
}

SparseVector SubspaceCoordinates::coordinates(const SparseVector& v) const {
  auto c = try_coordinates(v);
  if (!c) throw std::domain_error("vector outside subspace");
  return *c;
}

QuotientCoordinates::QuotientCoordinates(const std::vector<SparseVector>& denominator,
                                         const std::vector<SparseVector>& candidates) {
  for (const auto& u : denominator) echelon_.insert(u);
  for (const auto& c : candidates) {
    const auto index = static_cast<std::uint32_t>(representatives_.size());
    if (!echelon_.insert(c, SparseVector::unit(index)).remainder.is_zero()) representatives_.push_back(c);
  }
}

SparseVector QuotientCoordinates::coordinates(const SparseVector& v) const {
  auto r = echelon_.reduce(v);
  if (!r.remainder.is_zero()) throw std::domain_error("vector outside U + span(representatives)");
  return Rational(-1) * r.tag;
}

}  // namespace knotpi
