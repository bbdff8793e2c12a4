#include "knotpi/knot_pipeline.hpp"

#include "knotpi/conf_homology.hpp"
#include "knotpi/drinfeld_kohno.hpp"
#include "knotpi/parallel.hpp"

#include <algorithm>
#include <functional>

namespace knotpi {

namespace {

void require_d(int d) {
  if (d < 4) throw std::invalid_argument("the knot spectral sequence needs d >= 4");
}

bool column_possible(int s, int weight) { return s >= 2 && s - 1 <= weight; }

const LieBasis* direct_basis(int d, int s, int weight) {
  if (!column_possible(s, weight)) return nullptr;
  const auto& basis = chi_algebra(s, d).row_basis(s, weight, true);
  return basis.size() > 0 ? &basis : nullptr;
}

}  // namespace

LabeledBasis normalized_chi_column(int d, int s, int weight) {
  const auto* b = direct_basis(d, s, weight);
  return b ? b->labels() : LabeledBasis{};
}

SparseRationalMatrix normalized_chi_differential(int d, int s, int weight) {
  const auto* from = direct_basis(d, s, weight);
  const auto* to = direct_basis(d, s + 1, weight);
  const std::size_t rows = to ? to->size() : 0;
  if (!from) return SparseRationalMatrix(rows, 0);

  const auto& target = chi_algebra(s + 1, d);
  std::vector<SparseVector> cols(from->size());
  std::vector<Tensor> sums(from->size());
  for (int i = 0; i <= s + 1; ++i) {
    std::map<Letter, ChiElement> leaf;
    for (int j = 1; j < s; ++j)
      leaf.emplace(static_cast<Letter>(chord_id(s, j)), structure_map_on_generator(MapKind::Coface, i, s, d, {s, j}));
    // basis trees share nothing, but their left spines repeat a lot; key on the rendered subtree
    std::map<std::string, ChiElement> memo;
    const auto& free = chi_algebra(s, d).free();
    std::function<ChiElement(const BracketWord&)> eval = [&](const BracketWord& w) -> ChiElement {
      if (w.is_leaf()) return leaf.at(static_cast<Letter>(w.letter));
      auto key = free.render(w);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      ChiElement v = target.bracket(eval(w.left()), eval(w.right()));
      memo.emplace(std::move(key), v);
      return v;
    };
    for (std::size_t k = 0; k < from->size(); ++k)
      sums[k].axpy(Rational(sign_power(i)), eval((*from)[k].tree).tensor);
  }
  for (std::size_t k = 0; k < from->size(); ++k) {
    // the alternating sum must be a Lie element of row s+1 using every letter
    for (const auto& [word, c] : sums[k].terms())
      for (std::size_t pos = 0; pos < word.length; ++pos)
        if (target.row_of(word[pos]) != s + 1)
          throw std::logic_error("alternating coface sum leaves the normalized column");
    if (sums[k].is_zero()) continue;
    if (!to) throw std::logic_error("alternating coface sum leaves the normalized column");
    cols[k] = to->coordinates(sums[k]);
  }
  return SparseRationalMatrix::from_columns(rows, std::move(cols));
}

namespace {

}  // namespace

Bicomplex homotopy_weight_bicomplex(int d, int weight, int truncation) {
  require_d(d);
  const int q = weight * (d - 2) + 1;
  Bicomplex b;
  for (int s = 0; s <= truncation; ++s) {
    ChainComplexQ c;
    auto labels = normalized_chi_column(d, s, weight);
    if (labels.dimension() > 0) c.bases.emplace(q, std::move(labels));
    b.columns.push_back(std::move(c));
  }
  for (int s = 0; s < truncation; ++s) {
    GradedMatrix h;
    if (b.columns[s].dimension(q) > 0) {
      auto m = normalized_chi_differential(d, s, weight);
      if (!m.is_zero()) h.emplace(q, std::move(m));
    }
    b.horizontal.push_back(std::move(h));
  }
  return b;
}

namespace {

std::vector<SpectralSequencePage> merge_pages(const std::vector<std::vector<SpectralSequencePage>>& parts) {
  std::vector<SpectralSequencePage> out;
  for (const auto& pages : parts)
    for (std::size_t k = 0; k < pages.size(); ++k) {
      if (out.size() <= k) {
        out.emplace_back();
        out[k].r = pages[k].r;
        out[k].truncation = pages[k].truncation;
      }
      for (const auto& [pq, e] : pages[k].entries) out[k].entries[pq] = e;
      for (const auto& [pq, m] : pages[k].differentials) out[k].differentials[pq] = m;
    }
  return out;
}

}  // namespace

std::size_t HomotopyE1::dimension(int s, int q) const {
  for (const auto& [w, b] : weights)
    if (q_of(w) == q && s >= 0 && s <= b.truncation()) return b.columns[s].dimension(q);
  return 0;
}

LabeledBasis HomotopyE1::basis(int s, int q) const {
  for (const auto& [w, b] : weights)
    if (q_of(w) == q && s >= 0 && s <= b.truncation()) return b.columns[s].basis(q);
  return {};
}

SparseRationalMatrix HomotopyE1::differential(int s, int weight) const {
  return weights.at(weight).horizontal_at(s, q_of(weight));
}

HomotopyE1 homotopy_e1(int d, int p_max, int weight_max) {
  require_d(d);
  if (p_max < 0) throw std::invalid_argument("p_max must be >= 0");
  HomotopyE1 e1;
  e1.d = d;
  e1.p_max = p_max;
  e1.weight_max = weight_max;
  auto parts = parallel_map(static_cast<std::size_t>(std::max(weight_max, 0)),
                            [&](std::size_t k) { return homotopy_weight_bicomplex(d, static_cast<int>(k) + 1, p_max); });
  for (int w = 1; w <= weight_max; ++w) e1.weights.emplace(w, std::move(parts[w - 1]));
  return e1;
}

std::vector<SpectralSequencePage> homotopy_pages(const HomotopyE1& e1, int r_max) {
  std::vector<const Bicomplex*> list;
  for (const auto& [w, b] : e1.weights) list.push_back(&b);
  auto parts = parallel_map(list.size(), [&](std::size_t k) { return bkss_pages(*list[k], r_max); });
  auto pages = merge_pages(parts);
  if (pages.empty())
    for (int r = 1; r <= r_max; ++r) pages.push_back({r, e1.p_max, {}, {}});
  return pages;
}

SpectralSequencePage e2_page(const HomotopyE1& e1) { return homotopy_pages(e1, 2).at(1); }

CosimplicialChainComplex chi_cosimplicial(int d, int weight, int truncation) {
  const int q = weight * (d - 2) + 1;
  CosimplicialChainComplex v;
  for (int n = 0; n <= truncation; ++n) {
    ChainComplexQ c;
    auto labels = chi_algebra(n, d).labels(weight);
    if (labels.dimension() > 0) c.bases.emplace(q, std::move(labels));
    v.levels.push_back(std::move(c));
  }
  for (int n = 0; n <= truncation; ++n) {
    if (n < truncation) {
      std::vector<GradedMatrix> faces;
      for (int i = 0; i <= n + 1; ++i) faces.push_back({{q, coface_map(i, n, d, weight).matrix}});
      v.cofaces.push_back(std::move(faces));
    }
    std::vector<GradedMatrix> degs;
    for (int j = 0; j < n; ++j) degs.push_back({{q, codegeneracy_map(j, n, d, weight).matrix}});
    v.codegeneracies.push_back(std::move(degs));
  }
  return v;
}

CosimplicialChainComplex homology_cosimplicial(int d, int k_max, int truncation) {
  CosimplicialChainComplex v;
  auto degrees_at = [&](int n) { return std::min(k_max, configuration_space(n, d).top_length()); };
  for (int n = 0; n <= truncation; ++n) {
    const auto& space = configuration_space(n, d);
    ChainComplexQ c;
    for (int k = 1; k <= degrees_at(n); ++k) c.bases.emplace(space.degree(k), space.homology_labels(k));
    v.levels.push_back(std::move(c));
  }
  auto graded_map = [&](MapKind kind, int index, int n) {
    GradedMatrix g;
    for (int k = 1; k <= degrees_at(n); ++k)
      g.emplace(k * (d - 1), homology_structure_matrix(kind, index, n, d, k));
    return g;
  };
  for (int n = 0; n <= truncation; ++n) {
    if (n < truncation) {
      std::vector<GradedMatrix> faces;
      for (int i = 0; i <= n + 1; ++i) faces.push_back(graded_map(MapKind::Coface, i, n));
      v.cofaces.push_back(std::move(faces));
    }
    std::vector<GradedMatrix> degs;
    for (int j = 0; j < n; ++j) {
      GradedMatrix g;
      for (int k = 1; k <= std::min(degrees_at(n), degrees_at(n - 1)); ++k)
        g.emplace(k * (d - 1), homology_structure_matrix(MapKind::Codegeneracy, j, n, d, k));
      degs.push_back(std::move(g));
    }
    v.codegeneracies.push_back(std::move(degs));
  }
  return v;
}

// ---------------------------------------------------------------- support bound

bool SupportBoundReport::bound_2w() const {
  for (const auto& e : entries)
    if (e.p > 2 * e.weight && e.generic != 0) return false;
  return true;
}

bool SupportBoundReport::bound_w1() const {
  for (const auto& e : entries)
    if (e.p > e.weight + 1 && e.generic != 0) return false;
  return true;
}

bool SupportBoundReport::direct_agrees() const {
  for (const auto& e : entries)
    if (e.generic != e.direct || !e.direct_in_kernel) return false;
  return true;
}

namespace {

SupportBoundEntry support_entry(int d, int weight, int p) {
  SupportBoundEntry e{weight, p, 0, 0, true};
  const auto& chi = chi_algebra(p, d);
  const std::size_t dim = chi.dimension(weight);
  if (const auto* b = direct_basis(d, p, weight)) e.direct = b->size();
  if (dim == 0) return e;
  std::vector<SparseRationalMatrix> blocks;
  for (int j = 0; j < p; ++j) blocks.push_back(codegeneracy_map(j, p, d, weight).matrix);
  if (p == 0) {
    e.generic = dim;
  } else {
    const auto stacked = SparseRationalMatrix::vstack(blocks, dim);
    e.generic = dim - rank(stacked);
    if (const auto* b = direct_basis(d, p, weight))
      for (const auto& el : b->elements())
        if (!stacked.apply(chi.coordinates(chi.evaluate(el.tree))).is_zero()) e.direct_in_kernel = false;
  }
  return e;
}

}  // namespace

SupportBoundReport verify_support_bound(int d, int weight_max, int n_max) {
  SupportBoundReport report;
  report.d = d;
  std::vector<std::pair<int, int>> jobs;
  for (int w = 1; w <= weight_max; ++w)
    for (int p = 0; p <= n_max; ++p) jobs.emplace_back(w, p);
  report.entries = parallel_map(jobs.size(), [&](std::size_t k) { return support_entry(d, jobs[k].first, jobs[k].second); });
  return report;
}

// ---------------------------------------------------------------- pi table

std::pair<int, int> contributing_weights(int d, int m) {
  require_d(d);
  if (m < 0) return {1, 0};
  const int lo = (m + 1 + (d - 2) - 1) / (d - 2);
  const int hi = m / (d - 3);
  return {std::max(lo, 1), hi};
}

int pi_table_top_weight(int d, int m_max, const PiTableLimits& limits) {
  require_d(d);
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
  int top = 0;
  for (int m = 0; m <= m_max; ++m) top = std::max(top, contributing_weights(d, m).second);
  if (top > limits.max_weight)
    throw ResourceGuard("pi_m for m <= " + std::to_string(m_max) + " needs weight " + std::to_string(top) +
                        ", above the limit " + std::to_string(limits.max_weight));
  return top;
}

PiWeightComponent pi_weight_component(int d, int weight, const PiTableLimits& limits) {
  require_d(d);
  PiWeightComponent c;
  c.weight = weight;
  c.truncation = weight + 2;  // columns beyond w+1 vanish; one zero column keeps E2 stable up to s = w+1
  c.e2 = bkss_pages(homotopy_weight_bicomplex(d, weight, c.truncation), 2).at(1);
  if (chi_algebra(c.truncation, d).dimension(weight) <= limits.certify_dimension_limit) {
    bool ok = true;
    for (int p = 0; p <= c.truncation && ok; ++p) {
      const auto e = support_entry(d, weight, p);
      ok = e.generic == e.direct && e.direct_in_kernel;
    }
    c.certified = ok;
  }
  return c;
}

KnotPiTable assemble_pi_table(int d, int m_max, const std::vector<PiWeightComponent>& components) {
  KnotPiTable table;
  table.d = d;
  table.m_max = m_max;
  for (const auto& c : components) {
    table.truncation[c.weight] = c.truncation;
    table.certified[c.weight] = c.certified;
  }
  for (int m = 0; m <= m_max; ++m) {
    KnotPiRow row;
    row.m = m;
    row.complete = true;
    const auto [lo, hi] = contributing_weights(d, m);
    for (int w = lo; w <= hi; ++w) {
      const auto& c = components.at(w - 1);
      if (c.weight != w) throw std::invalid_argument("pi table components out of order");
      const int q = w * (d - 2) + 1;
      const int s = q - m;
      const std::size_t dim = c.e2.dimension(-s, q);
      if (!page_entry_stable(s, 2, c.truncation) || !c.certified) row.complete = false;
      if (dim > 0) {
        row.contributions.push_back({-s, q, w, dim});
        row.dimension += dim;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

KnotPiTable knot_pi_table(int d, int m_max, const PiTableLimits& limits) {
  const int top = pi_table_top_weight(d, m_max, limits);
  auto components = parallel_map(static_cast<std::size_t>(top), [&](std::size_t k) {
    return pi_weight_component(d, static_cast<int>(k) + 1, limits);
  });
  return assemble_pi_table(d, m_max, components);
}

// ---------------------------------------------------------------- homology side

std::vector<SpectralSequencePage> homology_side_pages(int d, int p_max, int degree_max, int r_max) {
  require_d(d);
  const auto v = homology_cosimplicial(d, degree_max / (d - 1), p_max);
  return bkss_pages(v, r_max);
}

SpectralSequencePage homology_side_e2(int d, int p_max, int degree_max) {
  return homology_side_pages(d, p_max, degree_max, 2).at(1);
}

HurewiczReport hurewicz_check(int d, int p_max) {
  require_d(d);
  HurewiczReport report;
  // full levels: the alternating coface sums agree as matrices
  for (int n = 0; n < p_max; ++n) {
    SparseRationalMatrix a = SparseRationalMatrix(chi_algebra(n + 1, d).dimension(1), chi_algebra(n, d).dimension(1));
    SparseRationalMatrix b = a;
    for (int i = 0; i <= n + 1; ++i) {
      a = a + Rational(sign_power(i)) * coface_map(i, n, d, 1).matrix;
      b = b + Rational(sign_power(i)) * homology_structure_matrix(MapKind::Coface, i, n, d, 1);
    }
    if (!(a == b)) report.failures.push_back("unnormalized d1 differs on level " + std::to_string(n));
  }
  // normalized columns: same labels up to gamma <-> B, same matrices
  const auto homotopy = homotopy_e1(d, p_max, 1);
  const auto homology = normalized_bicomplex(homology_cosimplicial(d, 1, p_max));
  const int qh = d - 1;
  const int qe = homotopy.q_of(1);
  auto strip = [](std::string s, const std::string& prefix) {
    if (s.rfind("N(", 0) == 0 && s.back() == ')') s = s.substr(2, s.size() - 3);
    return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
  };
  for (int s = 0; s <= p_max; ++s) {
    const auto lb = homotopy.basis(s, qe).labels();
    const auto lh = homology.columns[s].basis(qh).labels();
    bool same = lb.size() == lh.size();
    for (std::size_t k = 0; same && k < lb.size(); ++k) same = strip(lb[k], "B") == strip(lh[k], "gamma");
    if (!same) report.failures.push_back("normalized column " + std::to_string(s) + " differs");
    if (s < p_max && !(homotopy.differential(s, 1) == homology.horizontal_at(s, qh)))
      report.failures.push_back("normalized d1 differs out of column " + std::to_string(s));
  }
  return report;
}

}  // namespace knotpi
