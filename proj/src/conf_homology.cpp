#include "knotpi/conf_homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace knotpi {

bool is_admissible(const Monomial& m) {
  for (std::size_t k = 1; k < m.size(); ++k)
    if (m[k - 1].i >= m[k].i) return false;
  return true;
}

namespace {

using Key = std::pair<Monomial, int>;

std::mutex reduce_mutex;
std::map<Key, CohomologyVector> reduce_cache;

void accumulate(CohomologyVector& into, const CohomologyVector& v, const Rational& factor) {
  for (const auto& [m, c] : v) {
    auto& slot = into[m];
    slot += factor * c;
    if (slot.is_zero()) into.erase(m);
  }
}

CohomologyVector reduce_impl(Monomial p, int d) {
  // sort by (i, j); each transposition of two degree d-1 classes costs (-1)^{d-1}
  long swaps = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = p.size() - 1; b > a; --b)
      if (p[b] < p[b - 1]) {
        std::swap(p[b], p[b - 1]);
        ++swaps;
      }
  const Rational sign = sign_power(swaps * (d - 1));
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p[k] == p[k - 1]) return {};

  const Key key{p, d % 2};
  {
    std::lock_guard lock(reduce_mutex);
    if (auto it = reduce_cache.find(key); it != reduce_cache.end()) {
      CohomologyVector out;
      accumulate(out, it->second, sign);
      return out;
    }
  }

  CohomologyVector result;
  std::size_t k = 1;
  while (k < p.size() && p[k].i != p[k - 1].i) ++k;
  if (k >= p.size()) {
    result[p] = 1;
  } else {
    // A_ij A_ik = A_kj A_ik - A_kj A_ij, j < k < i
    const int i = p[k].i, j = p[k - 1].j, kk = p[k].j;
    Monomial first = p, second = p;
    first[k - 1] = {kk, j};
    first[k] = {i, kk};
    second[k - 1] = {kk, j};
    second[k] = {i, j};
    accumulate(result, reduce_impl(std::move(first), d), 1);
    accumulate(result, reduce_impl(std::move(second), d), -1);
  }
  {
    std::lock_guard lock(reduce_mutex);
    reduce_cache.emplace(key, result);
  }
  CohomologyVector out;
  accumulate(out, result, sign);
  return out;
}

}  // namespace

CohomologyVector arnold_reduce(const Monomial& product, int d) {
  for (const auto& c : product)
    if (c.j < 1 || c.j >= c.i) throw std::invalid_argument("A_ij needs i > j >= 1");
  return reduce_impl(product, d);
}

std::vector<Monomial> admissible_monomials(int n, int k) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  Monomial current;
  // choose rows i_1 < ... < i_k in 2..n, then a second index for each
  auto rec = [&](auto&& self, int next_row) -> void {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (int i = next_row; i <= n; ++i)
      for (int j = 1; j < i; ++j) {
        current.push_back({i, j});
        self(self, i + 1);
        current.pop_back();
      }
  };
  rec(rec, 2);
  return out;
}

std::string cohomology_label(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& c : m) s += "A" + chord_suffix(c);
  return s;
}

std::string homology_label(const Monomial& m) {
  if (m.empty()) return "1";
  if (m.size() == 1) return "gamma" + chord_suffix(m[0]);
  std::string s = "xi";
  for (std::size_t k = 0; k < m.size(); ++k) s += (k ? "_" : "") + chord_suffix(m[k]);
  return s;
}

LabeledBasis cohomology_basis(int n, int d, int k) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  std::vector<std::string> labels;
  for (const auto& m : admissible_monomials(n, k)) labels.push_back(cohomology_label(m));
  return LabeledBasis(std::move(labels));
}

// ---------------------------------------------------------------- ConfigurationSpace

ConfigurationSpace::ConfigurationSpace(int n, int d) : n_(n), d_(d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  if (n < 0) throw std::invalid_argument("negative point count");
  for (int k = 0; k <= top_length(); ++k) {
    monomials_.push_back(admissible_monomials(n, k));
    for (std::size_t i = 0; i < monomials_.back().size(); ++i) index_.emplace(monomials_.back()[i], i);
  }
}

const std::vector<Monomial>& ConfigurationSpace::monomials(int k) const {
  static const std::vector<Monomial> none;
  if (k < 0 || k > top_length()) return none;
  return monomials_[k];
}

std::optional<std::size_t> ConfigurationSpace::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabeledBasis ConfigurationSpace::homology_labels(int k) const {
  std::vector<std::string> labels;
  for (const auto& m : monomials(k)) labels.push_back(homology_label(m));
  return LabeledBasis(std::move(labels));
}

SparseVector ConfigurationSpace::product_coordinates(const Monomial& product) const {
  std::vector<SparseVector::Entry> entries;
  for (const auto& [m, c] : arnold_reduce(product, d_)) {
    auto idx = index_of(m);
    if (!idx) throw std::out_of_range("monomial uses points beyond n");
    entries.emplace_back(static_cast<std::uint32_t>(*idx), c);
  }
  return SparseVector::from_entries(std::move(entries));
}

const std::vector<std::vector<DiagonalTerm>>& ConfigurationSpace::reduced_diagonals(int k) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = diagonals_.find(k); it != diagonals_.end()) return *it->second;
  }
  auto diag = std::make_unique<std::vector<std::vector<DiagonalTerm>>>(dimension(k));
  for (int k1 = 1; k1 < k; ++k1) {
    const int k2 = k - k1;
    const Rational sign = sign_power(static_cast<long>(k1) * k2 * (d_ - 1));
    const auto& left = monomials(k1);
    const auto& right = monomials(k2);
    for (std::size_t a = 0; a < left.size(); ++a)
      for (std::size_t b = 0; b < right.size(); ++b) {
        Monomial prod = left[a];
        prod.insert(prod.end(), right[b].begin(), right[b].end());
        const auto coords = product_coordinates(prod);
        for (const auto& [m, c] : coords.entries())
          (*diag)[m].push_back({k1, a, k2, b, sign * c});
      }
  }
  for (auto& terms : *diag) std::sort(terms.begin(), terms.end());
  std::lock_guard lock(mutex_);
  return *diagonals_.emplace(k, std::move(diag)).first->second;
}

const ConfigurationSpace& configuration_space(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ConfigurationSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_unique<ConfigurationSpace>(n, d);
  return *slot;
}

std::vector<DiagonalTerm> reduced_diagonal(int n, int d, const Monomial& m) {
  const auto& space = configuration_space(n, d);
  auto idx = space.index_of(m);
  if (!idx) throw std::invalid_argument("reduced_diagonal needs an admissible monomial on n points");
  if (m.empty()) throw std::invalid_argument("reduced_diagonal needs positive degree");
  return space.reduced_diagonals(static_cast<int>(m.size()))[*idx];
}

SparseRationalMatrix pairing_matrix(int n, int d, int k) {
  const auto& space = configuration_space(n, d);
  std::vector<SparseVector> cols;
  for (const auto& m : space.monomials(k)) cols.push_back(space.product_coordinates(m));
  return SparseRationalMatrix::from_columns(space.dimension(k), std::move(cols));
}

// ---------------------------------------------------------------- structure maps

SparseRationalMatrix cohomology_pullback_matrix(MapKind kind, int index, int n, int d, int k) {
  check_map_index(kind, index, n);
  const int m = target_level(kind, n);
  const auto& source = configuration_space(n, d);
  const auto& target = configuration_space(m, d);

  // transpose of the chord rule: A_c (target) -> sum of A_s over source chords s hitting c
  std::map<Chord, std::vector<Chord>> pullback;
  for (int id = 0; id < chord_count(n); ++id) {
    const Chord s = chord_of(id);
    if (kind == MapKind::Coface) {
      for (const auto& c : coface_on_chord(index, n, s)) pullback[c].push_back(s);
    } else if (auto c = codegeneracy_on_chord(index, s)) {
      pullback[*c].push_back(s);
    }
  }

  std::vector<SparseVector> cols;
  for (const auto& mono : target.monomials(k)) {
    // expand the product of the generator images
    std::vector<Monomial> terms{{}};
    for (const auto& c : mono) {
      std::vector<Monomial> next;
      auto it = pullback.find(c);
      if (it != pullback.end())
        for (const auto& t : terms)
          for (const auto& s : it->second) {
            next.push_back(t);
            next.back().push_back(s);
          }
      terms = std::move(next);
    }
    SparseVector col;
    for (const auto& t : terms) col += source.product_coordinates(t);
    cols.push_back(std::move(col));
  }
  return SparseRationalMatrix::from_columns(source.dimension(k), std::move(cols));
}

SparseRationalMatrix homology_structure_matrix(MapKind kind, int index, int n, int d, int k) {
  return cohomology_pullback_matrix(kind, index, n, d, k).transpose();
}

namespace {
using Pair = std::tuple<int, std::size_t, int, std::size_t>;

void add_to(std::map<Pair, Rational>& acc, const Pair& key, const Rational& c) {
  auto& slot = acc[key];
  slot += c;
  if (slot.is_zero()) acc.erase(key);
}
}  // namespace

std::vector<int> coalgebra_map_failures(MapKind kind, int index, int n, int d) {
  check_map_index(kind, index, n);
  const int m = target_level(kind, n);
  const auto& source = configuration_space(n, d);
  const auto& target = configuration_space(m, d);
  std::map<int, SparseRationalMatrix> f;
  auto F = [&](int k) -> const SparseRationalMatrix& {
    auto it = f.find(k);
    if (it == f.end()) it = f.emplace(k, homology_structure_matrix(kind, index, n, d, k)).first;
    return it->second;
  };
  std::vector<int> failures;
  for (int k = 2; k <= source.top_length(); ++k) {
    const auto& src_diag = source.reduced_diagonals(k);
    const auto& dst_diag = target.reduced_diagonals(k);
    bool ok = true;
    for (std::size_t x = 0; x < source.dimension(k) && ok; ++x) {
      std::map<Pair, Rational> lhs, rhs;
      for (const auto& [y, c] : F(k).column(x).entries())
        for (const auto& t : dst_diag[y]) add_to(lhs, {t.left_length, t.left, t.right_length, t.right}, c * t.coeff);
      for (const auto& t : src_diag[x])
        for (const auto& [a, ca] : F(t.left_length).column(t.left).entries())
          for (const auto& [b, cb] : F(t.right_length).column(t.right).entries())
            add_to(rhs, {t.left_length, a, t.right_length, b}, t.coeff * ca * cb);
      ok = lhs == rhs;
    }
    if (!ok) failures.push_back(k);
  }
  return failures;
}

}  // namespace knotpi
