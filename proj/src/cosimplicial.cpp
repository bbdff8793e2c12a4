#include "knotpi/cosimplicial.hpp"

#include "knotpi/cosimplicial_identities.hpp"

#include <set>
#include <stdexcept>

namespace knotpi {

// ---------------------------------------------------------------- ChainComplexQ

std::size_t ChainComplexQ::dimension(int j) const {
  auto it = bases.find(j);
  return it == bases.end() ? 0 : it->second.dimension();
}

const LabeledBasis& ChainComplexQ::basis(int j) const {
  static const LabeledBasis empty;
  auto it = bases.find(j);
  return it == bases.end() ? empty : it->second;
}

std::vector<int> ChainComplexQ::degrees() const {
  std::vector<int> out;
  for (const auto& [j, b] : bases)
    if (b.dimension() > 0) out.push_back(j);
  return out;
}

SparseRationalMatrix graded_at(const GradedMatrix& m, int j, std::size_t rows, std::size_t cols) {
  auto it = m.find(j);
  if (it == m.end()) return SparseRationalMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw std::invalid_argument("graded map has the wrong shape in degree " + std::to_string(j));
  return it->second;
}

SparseRationalMatrix ChainComplexQ::boundary_at(int j) const {
  return graded_at(boundary, j, dimension(j - 1), dimension(j));
}

bool ChainComplexQ::has_zero_differential() const {
  for (const auto& [j, m] : boundary)
    if (!m.is_zero()) return false;
  return true;
}

std::size_t ChainComplexQ::homology(int j) const {
  return homology_at(boundary_at(j + 1), boundary_at(j)).dimension;
}

void ChainComplexQ::validate() const {
  for (const auto& [j, m] : boundary) (void)boundary_at(j);
  for (const auto& [j, m] : boundary)
    if (!(boundary_at(j - 1) * m).is_zero()) throw NotAComplex("d^2 != 0 at degree " + std::to_string(j));
}

// ---------------------------------------------------------------- CosimplicialChainComplex

SparseRationalMatrix CosimplicialChainComplex::coface(int i, int n, int j) const {
  check_map_index(MapKind::Coface, i, n);
  if (n + 1 > truncation()) throw std::out_of_range("coface leaves the truncation");
  return graded_at(cofaces.at(n).at(i), j, levels[n + 1].dimension(j), levels[n].dimension(j));
}

SparseRationalMatrix CosimplicialChainComplex::codegeneracy(int k, int n, int j) const {
  check_map_index(MapKind::Codegeneracy, k, n);
  if (n > truncation()) throw std::out_of_range("codegeneracy leaves the truncation");
  return graded_at(codegeneracies.at(n).at(k), j, levels[n - 1].dimension(j), levels[n].dimension(j));
}

SparseRationalMatrix CosimplicialChainComplex::map(MapKind kind, int index, int n, int j) const {
  return kind == MapKind::Coface ? coface(index, n, j) : codegeneracy(index, n, j);
}

std::vector<int> CosimplicialChainComplex::degrees() const {
  std::set<int> all;
  for (const auto& l : levels)
    for (int j : l.degrees()) all.insert(j);
  return {all.begin(), all.end()};
}

std::vector<std::string> CosimplicialChainComplex::identity_failures() const {
  std::vector<std::string> out;
  const int top = truncation();
  for (int j : degrees()) {
    auto fn = [&](MapKind kind, int index, int n) { return map(kind, index, n, j); };
    for (auto& f : cosimplicial_identity_failures(fn, top)) out.push_back(f + " in degree " + std::to_string(j));

    auto chain = [&](MapKind kind, int index, int n) {
      const int m = target_level(kind, n);
      const auto lhs = levels[m].boundary_at(j) * map(kind, index, n, j);
      const auto rhs = map(kind, index, n, j - 1) * levels[n].boundary_at(j);
      if (!(lhs == rhs))
        out.push_back(std::string(kind == MapKind::Coface ? "d^" : "s^") + std::to_string(index) + " on level " +
                      std::to_string(n) + " is not a chain map in degree " + std::to_string(j));
    };
    for (int n = 0; n <= top; ++n) {
      if (n < top)
        for (int i = 0; i <= n + 1; ++i) chain(MapKind::Coface, i, n);
      for (int k = 0; k < n; ++k) chain(MapKind::Codegeneracy, k, n);
    }
  }
  return out;
}

CosimplicialChainComplex CosimplicialChainComplex::constant(const ChainComplexQ& c, int truncation) {
  CosimplicialChainComplex v;
  GradedMatrix id;
  for (int j : c.degrees()) id.emplace(j, SparseRationalMatrix::identity(c.dimension(j)));
  for (int n = 0; n <= truncation; ++n) {
    v.levels.push_back(c);
    if (n < truncation) v.cofaces.emplace_back(n + 2, id);
    v.codegeneracies.emplace_back(n, id);
  }
  return v;
}

// ---------------------------------------------------------------- normalization

namespace {

std::string combination_label(const SparseVector& v, const LabeledBasis& basis) {
  if (v.nnz() == 1 && v.leading_value() == Rational(1)) return basis[v.leading_index()];
  return "N(" + basis[v.leading_index()] + ")";
}

ChainComplexQ restrict_complex(const ChainComplexQ& c, const GradedMatrix& inclusion,
                               const std::map<int, LabeledBasis>& labels) {
  ChainComplexQ out;
  out.bases = labels;
  for (const auto& [j, inc] : inclusion) {
    if (inc.cols() == 0) continue;
    auto below = inclusion.find(j - 1);
    if (below == inclusion.end() || below->second.cols() == 0) continue;
    const auto d = c.boundary_at(j);
    if (d.is_zero()) continue;
    SubspaceCoordinates coords(below->second.columns());
    std::vector<SparseVector> cols;
    for (const auto& v : inc.columns()) cols.push_back(coords.coordinates(d.apply(v)));
    auto m = SparseRationalMatrix::from_columns(below->second.cols(), std::move(cols));
    if (!m.is_zero()) out.boundary.emplace(j, std::move(m));
  }
  return out;
}

}  // namespace

NormalizedColumn normalize(const CosimplicialChainComplex& v, int p) {
  if (p < 0 || p > v.truncation()) throw std::out_of_range("normalize: level outside the truncation");
  const auto& level = v.levels[p];
  GradedMatrix inclusion;
  std::map<int, LabeledBasis> labels;
  for (int j : level.degrees()) {
    const std::size_t dim = level.dimension(j);
    std::vector<SparseVector> basis;
    if (p == 0) {
      for (std::size_t k = 0; k < dim; ++k) basis.push_back(SparseVector::unit(static_cast<std::uint32_t>(k)));
    } else {
      std::vector<SparseRationalMatrix> blocks;
      for (int k = 0; k < p; ++k) blocks.push_back(v.codegeneracy(k, p, j));
      basis = rank_and_kernel(SparseRationalMatrix::vstack(blocks, dim)).kernel;
    }
    if (basis.empty()) continue;
    std::vector<std::string> names;
    for (const auto& b : basis) names.push_back(combination_label(b, level.basis(j)));
    // kernel vectors can share a leading label; keep labels distinct
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names.size(); ++k)
      if (!seen.insert(names[k]).second) {
        names[k] += "#" + std::to_string(k);
        seen.insert(names[k]);
      }
    labels.emplace(j, LabeledBasis(std::move(names)));
    inclusion.emplace(j, SparseRationalMatrix::from_columns(dim, std::move(basis)));
  }
  NormalizedColumn out;
  out.complex = restrict_complex(level, inclusion, labels);
  out.inclusion = std::move(inclusion);
  return out;
}

namespace {

SparseRationalMatrix alternating_coface_sum(const CosimplicialChainComplex& v, int p, int j) {
  SparseRationalMatrix sum(v.levels[p + 1].dimension(j), v.levels[p].dimension(j));
  for (int i = 0; i <= p + 1; ++i) sum = sum + Rational(sign_power(i)) * v.coface(i, p, j);
  return sum;
}

}  // namespace

GradedMatrix horizontal_differential(const CosimplicialChainComplex& v, int p, const NormalizedColumn& from,
                                     const NormalizedColumn& to) {
  if (p + 1 > v.truncation()) throw std::out_of_range("horizontal differential leaves the truncation");
  GradedMatrix out;
  for (const auto& [j, inc] : from.inclusion) {
    auto target = to.inclusion.find(j);
    const std::size_t rows = target == to.inclusion.end() ? 0 : target->second.cols();
    const auto sum = alternating_coface_sum(v, p, j);
    std::vector<SparseVector> cols;
    if (rows == 0) {
      for (const auto& x : inc.columns())
        if (!sum.apply(x).is_zero()) throw std::logic_error("coface sum leaves the normalized part");
      continue;
    }
    SubspaceCoordinates coords(target->second.columns());
    for (const auto& x : inc.columns()) cols.push_back(coords.coordinates(sum.apply(x)));
    auto m = SparseRationalMatrix::from_columns(rows, std::move(cols));
    if (!m.is_zero()) out.emplace(j, std::move(m));
  }
  return out;
}

GradedMatrix horizontal_differential(const CosimplicialChainComplex& v, int p) {
  return horizontal_differential(v, p, normalize(v, p), normalize(v, p + 1));
}

Bicomplex normalized_bicomplex(const CosimplicialChainComplex& v) {
  Bicomplex b;
  std::vector<NormalizedColumn> cols;
  for (int p = 0; p <= v.truncation(); ++p) cols.push_back(normalize(v, p));
  for (int p = 0; p <= v.truncation(); ++p) {
    b.columns.push_back(cols[p].complex);
    if (p < v.truncation()) b.horizontal.push_back(horizontal_differential(v, p, cols[p], cols[p + 1]));
  }
  return b;
}

Bicomplex unnormalized_bicomplex(const CosimplicialChainComplex& v) {
  Bicomplex b;
  for (int p = 0; p <= v.truncation(); ++p) {
    b.columns.push_back(v.levels[p]);
    if (p == v.truncation()) break;
    GradedMatrix h;
    for (int j : v.levels[p].degrees()) {
      auto m = alternating_coface_sum(v, p, j);
      if (!m.is_zero()) h.emplace(j, std::move(m));
    }
    b.horizontal.push_back(std::move(h));
  }
  return b;
}

// ---------------------------------------------------------------- Bicomplex / Tot

SparseRationalMatrix Bicomplex::horizontal_at(int s, int q) const {
  const std::size_t rows = s + 1 <= truncation() ? columns[s + 1].dimension(q) : 0;
  if (s >= truncation()) return SparseRationalMatrix(0, columns[s].dimension(q));
  return graded_at(horizontal.at(s), q, rows, columns[s].dimension(q));
}

std::vector<std::string> Bicomplex::failures() const {
  std::vector<std::string> out;
  for (int s = 0; s <= truncation(); ++s)
    for (int q : columns[s].degrees()) {
      const std::string at = " at column " + std::to_string(s) + ", degree " + std::to_string(q);
      if (s + 2 <= truncation() && !(horizontal_at(s + 1, q) * horizontal_at(s, q)).is_zero())
        out.push_back("d_h d_h != 0" + at);
      if (s + 1 <= truncation() &&
          !(columns[s + 1].boundary_at(q) * horizontal_at(s, q) == horizontal_at(s, q - 1) * columns[s].boundary_at(q)))
        out.push_back("d_h does not commute with d_v" + at);
    }
  return out;
}

namespace {

// Tot^N in one total degree: blocks ordered by column.
struct TotDegree {
  std::vector<int> column_start;  // size N + 2; column_start[s] = offset of column s
  std::size_t size() const { return column_start.back(); }
  std::size_t start(int s) const {
    if (s <= 0) return 0;
    if (s >= static_cast<int>(column_start.size())) return size();
    return column_start[s];
  }
};

struct Tot {
  int truncation = 0;
  std::map<int, TotDegree> layout;
  std::map<int, SparseRationalMatrix> d;  // d[j] : Tot_j -> Tot_{j-1}

  const TotDegree& at(int j) const {
    static TotDegree empty{std::vector<int>(1, 0)};
    auto it = layout.find(j);
    return it == layout.end() ? empty : it->second;
  }
};

Tot build_tot(const Bicomplex& b, int n) {
  if (n < 0 || n > b.truncation()) throw std::out_of_range("total complex: level outside the truncation");
  Tot t;
  t.truncation = n;
  std::set<int> totals;
  for (int s = 0; s <= n; ++s)
    for (int q : b.columns[s].degrees()) totals.insert(q - s);
  for (int j : totals) {
    TotDegree td;
    int offset = 0;
    for (int s = 0; s <= n; ++s) {
      td.column_start.push_back(offset);
      offset += static_cast<int>(b.columns[s].dimension(s + j));
    }
    td.column_start.push_back(offset);
    t.layout.emplace(j, std::move(td));
  }
  for (int j : totals) {
    const auto& dst = t.at(j - 1);
    std::vector<SparseVector> cols;
    for (int s = 0; s <= n; ++s) {
      const int q = s + j;
      const auto dv = b.columns[s].boundary_at(q);
      const bool has_h = s + 1 <= n;
      const auto dh = has_h ? b.horizontal_at(s, q) : SparseRationalMatrix();
      const Rational sign = sign_power(q);
      for (std::size_t k = 0; k < b.columns[s].dimension(q); ++k) {
        SparseVector col = dv.column(k).shifted(static_cast<std::uint32_t>(dst.start(s)));
        if (has_h) col.axpy(sign, dh.column(k).shifted(static_cast<std::uint32_t>(dst.start(s + 1))));
        cols.push_back(std::move(col));
      }
    }
    t.d.emplace(j, SparseRationalMatrix::from_columns(dst.size(), std::move(cols)));
  }
  return t;
}

}  // namespace

ChainComplexQ total_complex(const Bicomplex& b, int n) {
  const Tot t = build_tot(b, n);
  ChainComplexQ out;
  for (const auto& [j, td] : t.layout) {
    std::vector<std::string> labels;
    for (int s = 0; s <= n; ++s)
      for (const auto& l : b.columns[s].basis(s + j).labels()) labels.push_back(std::to_string(s) + ":" + l);
    out.bases.emplace(j, LabeledBasis(std::move(labels)));
  }
  for (const auto& [j, m] : t.d)
    if (!m.is_zero()) out.boundary.emplace(j, m);
  out.validate();
  return out;
}

ChainComplexQ total_complex(const CosimplicialChainComplex& v, int n) {
  Bicomplex b = normalized_bicomplex(v);
  b.columns.resize(n + 1);
  b.horizontal.resize(n);
  return total_complex(b, n);
}

// ---------------------------------------------------------------- pages

std::size_t SpectralSequencePage::dimension(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? 0 : it->second.dimension;
}

bool SpectralSequencePage::stable(int p, int /*q*/) const { return page_entry_stable(-p, r, truncation); }

namespace {

// {x in F^from : D x in F^to}, as vectors of Tot_j
std::vector<SparseVector> filtered_cycles(const Tot& t, int j, int from, int to) {
  const auto& src = t.at(j);
  const std::size_t begin = src.start(from);
  if (begin >= src.size()) return {};
  const auto& dst = t.at(j - 1);
  const std::size_t limit = dst.start(std::min(to, t.truncation + 1));
  auto it = t.d.find(j);
  std::vector<SparseVector> cols;
  for (std::size_t c = begin; c < src.size(); ++c)
    cols.push_back(it == t.d.end() ? SparseVector{} : it->second.column(c).slice(0, static_cast<std::uint32_t>(limit)));
  auto kernel = rank_and_kernel(SparseRationalMatrix::from_columns(limit, std::move(cols))).kernel;
  for (auto& v : kernel) v = v.shifted(static_cast<std::uint32_t>(begin));
  return kernel;
}

std::vector<SparseVector> boundaries_of(const Tot& t, int j, const std::vector<SparseVector>& xs) {
  auto it = t.d.find(j);
  std::vector<SparseVector> out;
  if (it == t.d.end()) return out;
  for (const auto& x : xs) {
    auto y = it->second.apply(x);
    if (!y.is_zero()) out.push_back(std::move(y));
  }
  return out;
}

}  // namespace

std::vector<SpectralSequencePage> bkss_pages(const Bicomplex& b, int r_max) {
  if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
  const int n = b.truncation();
  const Tot t = build_tot(b, n);

  std::vector<SpectralSequencePage> pages;
  for (int r = 1; r <= r_max; ++r) {
    SpectralSequencePage page;
    page.r = r;
    page.truncation = n;
    std::map<std::pair<int, int>, QuotientCoordinates> quotients;  // keyed (s, j)
    for (const auto& [j, td] : t.layout)
      for (int s = 0; s <= n; ++s) {
        if (td.start(s) == td.start(s + 1)) continue;
        auto numerator = filtered_cycles(t, j, s, s + r);
        auto denominator = filtered_cycles(t, j, s + 1, s + r);
        for (auto& y : boundaries_of(t, j + 1, filtered_cycles(t, j + 1, s - r + 1, s))) denominator.push_back(std::move(y));
        QuotientCoordinates qc(denominator, numerator);
        page.entries[{-s, s + j}] = {qc.dimension(), page_entry_stable(s, r, n)};
        quotients.emplace(std::pair{s, j}, std::move(qc));
      }
    for (const auto& [key, qc] : quotients) {
      const auto [s, j] = key;
      auto target = quotients.find({s + r, j - 1});
      if (target == quotients.end() || qc.dimension() == 0 || target->second.dimension() == 0) continue;
      std::vector<SparseVector> cols;
      for (const auto& x : qc.representatives()) cols.push_back(target->second.coordinates(t.d.at(j).apply(x)));
      auto m = SparseRationalMatrix::from_columns(target->second.dimension(), std::move(cols));
      if (!m.is_zero()) page.differentials.emplace(std::pair{-s, s + j}, std::move(m));
    }
    pages.push_back(std::move(page));
  }
  return pages;
}

std::vector<SpectralSequencePage> bkss_pages(const CosimplicialChainComplex& v, int r_max) {
  return bkss_pages(normalized_bicomplex(v), r_max);
}

CollapseReport collapse_report(const std::vector<SpectralSequencePage>& pages) {
  CollapseReport report;
  report.r_max = static_cast<int>(pages.size());
  if (pages.empty()) return report;
  report.truncation = pages.front().truncation;
  if (pages.size() < 2) return report;
  const auto& e2 = pages[1];
  for (std::size_t k = 2; k < pages.size(); ++k)
    for (const auto& [pq, entry] : pages[k].entries) {
      if (!entry.stable) continue;
      ++report.compared;
      if (entry.dimension != e2.dimension(pq.first, pq.second))
        report.failures.push_back("E" + std::to_string(pages[k].r) + " differs from E2 at (" +
                                  std::to_string(pq.first) + ", " + std::to_string(pq.second) + ")");
    }
  return report;
}

CollapseReport formality_collapse_check(const Bicomplex& b, int r_max) {
  for (const auto& c : b.columns)
    if (!c.has_zero_differential()) throw std::invalid_argument("collapse check needs zero vertical differentials");
  return collapse_report(bkss_pages(b, std::max(r_max, 2)));
}

CollapseReport formality_collapse_check(const CosimplicialChainComplex& v, int r_max) {
  for (const auto& c : v.levels)
    if (!c.has_zero_differential()) throw std::invalid_argument("collapse check needs zero vertical differentials");
  return collapse_report(bkss_pages(v, std::max(r_max, 2)));
}

}  // namespace knotpi
