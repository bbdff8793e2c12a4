#include "knotpi/drinfeld_kohno.hpp"

#include <algorithm>
#include <stdexcept>

namespace knotpi {

namespace {

std::vector<GeneratorSpec> chord_generators(int n, int degree) {
  std::vector<GeneratorSpec> gens;
  for (int id = 0; id < chord_count(n); ++id) gens.push_back({id, "B" + chord_suffix(chord_of(id)), degree, 1});
  return gens;
}

// Splits a row-pure tensor into its rows. Terms are sorted by word, and equal
// length words sort by first letter, so each row is a contiguous run.
std::vector<std::pair<int, Tensor>> split_rows(const Tensor& t, const std::vector<int>& row_of) {
  std::vector<std::pair<int, Tensor>> out;
  std::vector<Tensor::Term> run;
  int current = -1;
  auto flush = [&] {
    if (!run.empty()) out.emplace_back(current, Tensor::from_terms(std::move(run)));
    run.clear();
  };
  for (const auto& term : t.terms()) {
    const int row = row_of.at(term.first[0]);
    for (std::size_t k = 1; k < term.first.length; ++k)
      if (row_of.at(term.first[k]) != row) throw std::logic_error("chi element is not row-pure");
    if (row != current) {
      flush();
      current = row;
    }
    run.push_back(term);
  }
  flush();
  return out;
}

}  // namespace

DrinfeldKohno::DrinfeldKohno(int n, int d) : n_(n), d_(d), free_(chord_generators(n, d - 2)) {
  if (d < 3) throw std::invalid_argument("chi(n) needs d >= 3");
  if (n < 0) throw std::invalid_argument("negative point count");
  const int L = chord_count(n);
  for (int id = 0; id < L; ++id) row_of_.push_back(chord_of(id).i);
  degrees_.assign(L, d - 2);
  rho_.resize(static_cast<std::size_t>(L) * L);
  // B_ba acts on row c (a < b < c): B_ca -> [B_ca, B_cb], B_cb -> -[B_ca, B_cb]
  for (int c = 3; c <= n; ++c)
    for (int b = 2; b < c; ++b)
      for (int a = 1; a < b; ++a) {
        const auto g = chord_id(b, a), ca = chord_id(c, a), cb = chord_id(c, b);
        Tensor br = graded_commutator(Tensor::letter(ca), d - 2, Tensor::letter(cb), d - 2);
        rho_[g * L + ca] = br;
        rho_[g * L + cb] = Rational(-1) * br;
      }
}

std::vector<Letter> DrinfeldKohno::row_letters(int row) const {
  std::vector<Letter> out;
  for (int j = 1; j < row; ++j) out.push_back(static_cast<Letter>(chord_id(row, j)));
  return out;
}

const LieBasis& DrinfeldKohno::row_basis(int row, int weight, bool full_support) const {
  if (row < 2 || row > n_) throw std::out_of_range("row out of range");
  return free_.basis(BasisKey{row_letters(row), weight, -1, full_support});
}

const DrinfeldKohno::Layout& DrinfeldKohno::layout(int weight) const {
  if (weight < 1) throw std::invalid_argument("weight must be >= 1");
  {
    std::lock_guard lock(mutex_);
    if (auto it = layouts_.find(weight); it != layouts_.end()) return it->second;
  }
  Layout l;
  for (int row = 2; row <= n_; ++row) {
    l.rows.push_back(&row_basis(row, weight));
    l.offsets.push_back(l.dimension);
    l.dimension += l.rows.back()->size();
  }
  std::lock_guard lock(mutex_);
  return layouts_.emplace(weight, std::move(l)).first->second;
}

LabeledBasis DrinfeldKohno::labels(int weight) const {
  std::vector<std::string> out;
  for (const auto* b : layout(weight).rows)
    for (const auto& e : b->elements()) out.push_back(e.label);
  return LabeledBasis(std::move(out));
}

ChiElement DrinfeldKohno::generator(Chord c, const Rational& coeff) const {
  if (c.j < 1 || c.j >= c.i || c.i > n_) throw std::out_of_range("chord out of range");
  return {Tensor::letter(static_cast<Letter>(chord_id(c)), coeff), 1};
}

namespace {
std::pair<std::size_t, std::size_t> locate(const std::vector<std::size_t>& offsets, std::size_t index) {
  auto it = std::upper_bound(offsets.begin(), offsets.end(), index);
  const std::size_t row = static_cast<std::size_t>(it - offsets.begin()) - 1;
  return {row, index - offsets[row]};
}
}  // namespace

ChiElement DrinfeldKohno::basis_element(int weight, std::size_t index) const {
  const auto& l = layout(weight);
  if (index >= l.dimension) throw std::out_of_range("basis index out of range");
  auto [row, local] = locate(l.offsets, index);
  return {(*l.rows[row])[local].expansion, weight};
}

const BracketWord& DrinfeldKohno::basis_tree(int weight, std::size_t index) const {
  const auto& l = layout(weight);
  if (index >= l.dimension) throw std::out_of_range("basis index out of range");
  auto [row, local] = locate(l.offsets, index);
  return (*l.rows[row])[local].tree;
}

ChiElement DrinfeldKohno::element(int weight, const SparseVector& coords) const {
  const auto& l = layout(weight);
  ChiElement e{Tensor{}, weight};
  for (const auto& [i, c] : coords.entries()) {
    auto [row, local] = locate(l.offsets, i);
    e.tensor.axpy(c, (*l.rows[row])[local].expansion);
  }
  return e;
}

SparseVector DrinfeldKohno::coordinates(const ChiElement& e) const {
  if (e.is_zero()) return {};
  const auto& l = layout(e.weight);
  SparseVector out;
  for (const auto& [row, t] : split_rows(e.tensor, row_of_)) {
    if (static_cast<int>(t.terms().front().first.length) != e.weight) throw std::invalid_argument("weight mismatch");
    out += l.rows[row - 2]->coordinates(t).shifted(static_cast<std::uint32_t>(l.offsets[row - 2]));
  }
  return out;
}

const Tensor& DrinfeldKohno::rho(Letter g, Letter h) const {
  return rho_[static_cast<std::size_t>(g) * row_of_.size() + h];
}

// x in a lower row acting on y: x = sum c_w w with w = g1...gm acts as rho(g1)...rho(gm).
Tensor DrinfeldKohno::act(const Tensor& x, const Tensor& y) const {
  const int deg = d_ - 2;
  Tensor out;
  for (const auto& [w, c] : x.terms()) {
    Tensor t = y;
    for (int pos = static_cast<int>(w.length) - 1; pos >= 0 && !t.is_zero(); --pos) {
      const Letter g = w[pos];
      t = apply_derivation(t, deg, degrees_, [this, g](Letter h) -> const Tensor& { return rho(g, h); });
    }
    out.axpy(c, t);
  }
  return out;
}

ChiElement DrinfeldKohno::bracket(const ChiElement& a, const ChiElement& b) const {
  ChiElement out{Tensor{}, a.weight + b.weight};
  if (a.is_zero() || b.is_zero()) return out;
  const int da = degree(a.weight), db = degree(b.weight);
  const auto ra = split_rows(a.tensor, row_of_);
  const auto rb = split_rows(b.tensor, row_of_);
  for (const auto& [ka, x] : ra)
    for (const auto& [kb, y] : rb) {
      if (ka == kb) {
        out.tensor += graded_commutator(x, da, y, db);
      } else if (ka < kb) {
        out.tensor += act(x, y);
      } else {
        out.tensor.axpy(Rational(-sign_power(static_cast<long>(da) * db)), act(y, x));
      }
    }
  return out;
}

ChiElement DrinfeldKohno::evaluate(const BracketWord& w) const {
  return evaluate_tree<ChiElement>(
      w, [this](int id) { return generator(chord_of(id)); },
      [this](const ChiElement& x, const ChiElement& y) { return bracket(x, y); });
}

const DrinfeldKohno& chi_algebra(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<DrinfeldKohno>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_unique<DrinfeldKohno>(n, d);
  return *slot;
}

// ---------------------------------------------------------------- relations

std::vector<YangBaxterRelation> yang_baxter_relation_terms(int n, int d) {
  if (d < 3) throw std::invalid_argument("d must be >= 3");
  std::vector<YangBaxterRelation> out;
  const Rational eps = sign_power(d);
  auto name = [](Chord c) { return "B" + chord_suffix(c); };
  for (int a = 0; a < chord_count(n); ++a)
    for (int b = a + 1; b < chord_count(n); ++b) {
      const Chord x = chord_of(a), y = chord_of(b);
      if (x.i == y.i || x.i == y.j || x.j == y.i || x.j == y.j) continue;
      out.push_back({{{x, 1}}, {{y, 1}}, "[" + name(x) + "," + name(y) + "]"});
    }
  for (int i = 3; i <= n; ++i)
    for (int t = 2; t < i; ++t)
      for (int j = 1; j < t; ++j) {
        const Chord ij{i, j}, it{i, t}, tj{t, j};
        out.push_back({{{ij, 1}},
                       {{it, 1}, {tj, eps}},
                       "[" + name(ij) + "," + name(it) + (d % 2 == 0 ? "+" : "-") + name(tj) + "]"});
        out.push_back({{{tj, 1}}, {{ij, 1}, {it, 1}}, "[" + name(tj) + "," + name(ij) + "+" + name(it) + "]"});
      }
  return out;
}

std::vector<LieElement> yang_baxter_relations(int n, int d) {
  const auto& free = chi_algebra(n, d).free();
  auto combo = [&](const std::vector<std::pair<Chord, Rational>>& terms) {
    LieElement e = free.zero(1, d - 2);
    for (const auto& [c, k] : terms) e.tensor.axpy(k, free.generator(chord_id(c)).tensor);
    return e;
  };
  std::vector<LieElement> out;
  for (const auto& r : yang_baxter_relation_terms(n, d)) out.push_back(bracket(combo(r.left), combo(r.right)));
  return out;
}

// ---------------------------------------------------------------- definition

namespace {

bool row_pure(const Word& w, const std::vector<int>& row_of) {
  for (std::size_t k = 1; k < w.length; ++k)
    if (row_of[w[k]] != row_of[w[0]]) return false;
  return true;
}

// Spanning vectors of the ideal in free Lie coordinates, independent.
const std::vector<SparseVector>& ideal_basis(int n, int d, int weight) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<SparseVector>>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({n, d, weight}); it != cache.end()) return *it->second;
  }
  const auto& free = chi_algebra(n, d).free();
  auto result = std::make_unique<std::vector<SparseVector>>();
  Echelon ech;
  auto keep = [&](SparseVector v) {
    if (!ech.insert(v).remainder.is_zero()) result->push_back(std::move(v));
  };
  if (weight == 2) {
    for (const auto& r : yang_baxter_relations(n, d)) keep(free.coordinates(r));
  } else if (weight > 2) {
    const auto& lower = ideal_basis(n, d, weight - 1);
    const auto& lower_basis = free.basis(weight - 1);
    for (const auto& v : lower) {
      LieElement r{lower_basis.to_tensor(v), weight - 1, (weight - 1) * (d - 2)};
      for (int g = 0; g < chord_count(n); ++g) keep(free.coordinates(bracket(free.generator(g), r)));
    }
  }
  std::lock_guard lock(mutex);
  return *cache.emplace(std::tuple{n, d, weight}, std::move(result)).first->second;
}

}  // namespace

ChiComponent chi_component(int n, int d, int weight) {
  if (weight < 1) throw std::invalid_argument("weight must be >= 1");
  const auto& alg = chi_algebra(n, d);
  const auto& free_basis = alg.free().basis(weight);
  std::vector<int> row_of(chord_count(n));
  for (int id = 0; id < chord_count(n); ++id) row_of[id] = chord_of(id).i;

  // mixed words first, row-pure words last; the quotient then has the row-pure basis
  std::vector<std::uint32_t> position(free_basis.size());
  std::vector<std::size_t> pure;
  std::uint32_t next = 0;
  for (std::size_t k = 0; k < free_basis.size(); ++k)
    if (!row_pure(free_basis[k].word, row_of)) position[k] = next++;
  const std::uint32_t mixed = next;
  for (std::size_t k = 0; k < free_basis.size(); ++k)
    if (row_pure(free_basis[k].word, row_of)) {
      position[k] = next++;
      pure.push_back(k);
    }

  auto permute = [&](const SparseVector& v) {
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, c] : v.entries()) e.emplace_back(position[i], c);
    return SparseVector::from_entries(std::move(e));
  };
  Echelon ech;
  for (const auto& v : ideal_basis(n, d, weight)) ech.insert(permute(v));
  const auto pivots = ech.pivots();
  if (pivots.size() != mixed || (!pivots.empty() && pivots.back() >= mixed))
    throw std::logic_error("row-pure words do not form a basis of the quotient for n=" + std::to_string(n) +
                           " weight " + std::to_string(weight));

  ChiComponent c;
  c.n = n;
  c.d = d;
  c.weight = weight;
  c.free_dimension = free_basis.size();
  c.ideal_dimension = ech.rank();
  std::vector<std::string> labels;
  for (auto k : pure) labels.push_back(free_basis[k].label);
  c.basis = LabeledBasis(std::move(labels));
  std::vector<SparseVector> cols;
  cols.reserve(free_basis.size());
  for (std::size_t k = 0; k < free_basis.size(); ++k) {
    auto r = ech.reduce(SparseVector::unit(position[k]));
    std::vector<SparseVector::Entry> e;
    for (const auto& [i, v] : r.remainder.entries()) e.emplace_back(i - mixed, v);
    cols.push_back(SparseVector::from_entries(std::move(e)));
  }
  c.reduction = SparseRationalMatrix::from_columns(pure.size(), std::move(cols));
  return c;
}

SparseVector reduce_to_chi(const LieElement& e, const ChiComponent& c) {
  if (e.length != c.weight) throw std::invalid_argument("reduce_to_chi: weight mismatch");
  if (e.is_zero()) return {};
  return c.reduction.apply(chi_algebra(c.n, c.d).free().coordinates(e));
}

// ---------------------------------------------------------------- structure maps

ChiElement structure_map_on_generator(MapKind kind, int index, int n, int d, Chord c) {
  check_map_index(kind, index, n);
  const auto& target = chi_algebra(target_level(kind, n), d);
  ChiElement out = target.zero(1);
  if (kind == MapKind::Coface) {
    for (auto image : coface_on_chord(index, n, c)) out.tensor += target.generator(image).tensor;
  } else if (auto image = codegeneracy_on_chord(index, c)) {
    out = target.generator(*image);
  }
  return out;
}

SparseRationalMatrix lie_map_matrix(const DrinfeldKohno& source, const DrinfeldKohno& target, int weight,
                                    const std::function<ChiElement(Chord)>& on_generator) {
  const std::size_t dim = source.dimension(weight);
  std::vector<ChiElement> leaf;
  for (int id = 0; id < chord_count(source.n()); ++id) leaf.push_back(on_generator(chord_of(id)));
  // subtrees of standard bracketings are determined by their leaf words
  std::map<std::vector<Letter>, ChiElement> memo;
  std::function<ChiElement(const BracketWord&)> eval = [&](const BracketWord& w) -> ChiElement {
    if (w.is_leaf()) return leaf.at(w.letter);
    auto key = w.leaves();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ChiElement v = target.bracket(eval(w.left()), eval(w.right()));
    memo.emplace(std::move(key), v);
    return v;
  };
  std::vector<SparseVector> cols;
  cols.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) cols.push_back(target.coordinates(eval(source.basis_tree(weight, k))));
  return SparseRationalMatrix::from_columns(target.dimension(weight), std::move(cols));
}

namespace {
CosimplicialLieMap structure_map(MapKind kind, int index, int n, int d, int weight) {
  check_map_index(kind, index, n);
  CosimplicialLieMap m;
  m.kind = kind;
  m.index = index;
  m.source_n = n;
  m.target_n = target_level(kind, n);
  m.weight = weight;
  m.matrix = lie_map_matrix(chi_algebra(n, d), chi_algebra(m.target_n, d), weight,
                            [&](Chord c) { return structure_map_on_generator(kind, index, n, d, c); });
  return m;
}
}  // namespace

CosimplicialLieMap coface_map(int i, int n, int d, int weight) { return structure_map(MapKind::Coface, i, n, d, weight); }

CosimplicialLieMap codegeneracy_map(int j, int n, int d, int weight) {
  return structure_map(MapKind::Codegeneracy, j, n, d, weight);
}

std::vector<std::string> ideal_violations(MapKind kind, int index, int n, int d) {
  check_map_index(kind, index, n);
  const auto& target = chi_algebra(target_level(kind, n), d);
  auto image = [&](const std::vector<std::pair<Chord, Rational>>& terms) {
    ChiElement e = target.zero(1);
    for (const auto& [c, k] : terms) e.tensor.axpy(k, structure_map_on_generator(kind, index, n, d, c).tensor);
    return e;
  };
  std::vector<std::string> bad;
  for (const auto& r : yang_baxter_relation_terms(n, d))
    if (!target.bracket(image(r.left), image(r.right)).is_zero()) bad.push_back(r.label);
  return bad;
}

}  // namespace knotpi
