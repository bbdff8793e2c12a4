#include "knotpi/quillen.hpp"

#include "knotpi/drinfeld_kohno.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace knotpi {

namespace {

std::vector<GeneratorSpec> generator_specs(const std::vector<QuillenGenerator>& gens, int d) {
  std::vector<GeneratorSpec> specs;
  for (std::size_t g = 0; g < gens.size(); ++g)
    specs.push_back({static_cast<int>(g), gens[g].label, gens[g].weight * (d - 1) - 1, gens[g].weight});
  return specs;
}

std::vector<QuillenGenerator> make_generators(int n, int d, int max_weight) {
  const auto& space = configuration_space(n, d);
  std::vector<QuillenGenerator> gens;
  for (int k = 1; k <= std::min(max_weight, space.top_length()); ++k)
    for (std::size_t i = 0; i < space.dimension(k); ++i) {
      const auto& m = space.monomials(k)[i];
      gens.push_back({m, k, i, "s" + homology_label(m)});
    }
  return gens;
}

}  // namespace

QuillenDGL::QuillenDGL(int n, int d, int max_weight)
    : n_(n), d_(d), max_weight_(max_weight), generators_(make_generators(n, d, max_weight)),
      free_(generator_specs(generators_, d)) {
  if (max_weight < 1) throw std::invalid_argument("max_weight must be >= 1");
  offsets_.assign(max_weight + 2, generators_.size());
  for (std::size_t g = generators_.size(); g-- > 0;) {
    ids_.emplace(generators_[g].monomial, static_cast<Letter>(g));
    offsets_[generators_[g].weight] = g;
  }
  for (int k = max_weight; k >= 1; --k) offsets_[k] = std::min(offsets_[k], offsets_[k + 1]);

  // d_2(s^-1 c) = 1/2 sum (-1)^{|a|} [s^-1 a, s^-1 b] over the reduced diagonal of c
  const auto& space = configuration_space(n, d);
  const Rational half(1, 2);
  for (const auto& gen : generators_) {
    Tensor t;
    if (gen.weight >= 2)
      for (const auto& term : space.reduced_diagonals(gen.weight)[gen.index]) {
        const Letter a = generator_id(term.left_length, term.left);
        const Letter b = generator_id(term.right_length, term.right);
        const Rational c = half * term.coeff * Rational(sign_power(static_cast<long>(term.left_length) * (d - 1)));
        t.axpy(c, graded_commutator(Tensor::letter(a), free_.degrees()[a], Tensor::letter(b), free_.degrees()[b]));
      }
    on_generator_.push_back(std::move(t));
  }

  for (int w = 1; w <= max_weight; ++w)
    for (int b = 1; b < w; ++b) {
      const auto& src = chains(w, b);
      const auto& dst = chains(w, b + 1);
      std::vector<SparseVector> cols;
      for (const auto& e : src.elements())
        cols.push_back(dst.coordinates(differential({e.expansion, b, e.degree}).tensor));
      differentials_.emplace(std::pair{w, b}, SparseRationalMatrix::from_columns(dst.size(), std::move(cols)));
    }
}

const LieBasis& QuillenDGL::chains(int weight, int length) const {
  // a bracket of `length` letters of total weight w uses letters of weight <= w - length + 1
  std::vector<Letter> alphabet;
  for (std::size_t g = 0; g < generators_.size(); ++g)
    if (generators_[g].weight <= weight - length + 1) alphabet.push_back(static_cast<Letter>(g));
  if (alphabet.empty()) {
    static const FreeLieAlgebra none({});
    return none.basis(length);
  }
  return free_.basis(BasisKey{alphabet, length, weight});
}

std::size_t QuillenDGL::dimension(int weight, int length) const {
  if (length < 1 || length > weight) return 0;
  return chains(weight, length).size();
}

LieElement QuillenDGL::differential(const LieElement& e) const {
  auto t = apply_derivation(e.tensor, -1, free_.degrees(), [this](Letter l) -> const Tensor& { return on_generator_[l]; });
  return {std::move(t), e.length + 1, e.degree - 1};
}

const SparseRationalMatrix& QuillenDGL::differential_matrix(int weight, int length) const {
  auto it = differentials_.find({weight, length});
  if (it == differentials_.end()) throw std::out_of_range("no differential in this bidegree");
  return it->second;
}

const QuillenDGL& build_quillen_dgl(int n, int d, int max_weight) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<QuillenDGL>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, d, max_weight}];
  if (!slot) {
    auto q = std::make_unique<QuillenDGL>(n, d, max_weight);
    for (int w = 1; w <= max_weight; ++w)
      for (int b = 1; b + 1 < w; ++b)
        if (!(q->differential_matrix(w, b + 1) * q->differential_matrix(w, b)).is_zero())
          throw std::logic_error("Quillen differential squares to a nonzero map in weight " + std::to_string(w) +
                                 ", length " + std::to_string(b));
    slot = std::move(q);
  }
  return *slot;
}

std::vector<QuillenHomologyEntry> quillen_homology(const QuillenDGL& q) {
  std::vector<QuillenHomologyEntry> out;
  for (int w = 1; w <= q.max_weight(); ++w)
    for (int b = 1; b <= w; ++b) {
      const std::size_t dim = q.dimension(w, b);
      const auto in = b > 1 ? q.differential_matrix(w, b - 1) : SparseRationalMatrix(dim, 0);
      const auto outm = b < w ? q.differential_matrix(w, b) : SparseRationalMatrix(0, dim);
      out.push_back({w, b, q.degree(w, b), dim, homology_at(in, outm).dimension});
    }
  return out;
}

PhiMap phi_map(const QuillenDGL& q) {
  PhiMap phi{q.n(), q.d(), q.max_weight(), {}, {}};
  const auto& chi = chi_algebra(q.n(), q.d());
  for (int w = 1; w <= q.max_weight(); ++w) {
    std::vector<SparseVector> cols;
    if (q.dimension(w, w) > 0)
      for (const auto& e : q.chains(w, w).elements())
        cols.push_back(chi.coordinates(chi.evaluate(e.tree)));  // leaves are s^-1 gamma, ids = chord ids
    phi.matrices.emplace(w, SparseRationalMatrix::from_columns(chi.dimension(w), std::move(cols)));
    if (w >= 2 && q.dimension(w, w - 1) > 0) {
      const auto image = phi.matrices.at(w) * q.differential_matrix(w, w - 1);
      for (std::size_t c = 0; c < image.cols(); ++c)
        if (!image.column(c).is_zero()) phi.chain_map_failures.push_back(q.chains(w, w - 1)[c].label);
    }
  }
  return phi;
}

PhiMap phi_map(int n, int d, int max_weight) { return phi_map(build_quillen_dgl(n, d, max_weight)); }

SparseRationalMatrix quillen_structure_matrix(const QuillenDGL& source, const QuillenDGL& target, MapKind kind,
                                              int index, int weight, int length) {
  const std::size_t rows = target.dimension(weight, length);
  if (source.dimension(weight, length) == 0) return SparseRationalMatrix(rows, 0);
  std::map<int, SparseRationalMatrix> on_length;
  std::vector<Tensor> images;
  for (const auto& g : source.generators()) {
    if (g.weight > weight) {
      images.emplace_back();
      continue;
    }
    auto it = on_length.find(g.weight);
    if (it == on_length.end())
      it = on_length.emplace(g.weight, homology_structure_matrix(kind, index, source.n(), source.d(), g.weight)).first;
    Tensor t;
    for (const auto& [row, c] : it->second.column(g.index).entries())
      t.axpy(c, Tensor::letter(target.generator_id(g.weight, row)));
    images.push_back(std::move(t));
  }
  std::vector<SparseVector> cols;
  for (const auto& e : source.chains(weight, length).elements()) {
    const Tensor image = substitute(e.expansion, [&](Letter l) -> const Tensor& { return images[l]; });
    cols.push_back(rows == 0 ? SparseVector{} : target.chains(weight, length).coordinates(image));
  }
  return SparseRationalMatrix::from_columns(rows, std::move(cols));
}

bool QuasiIsoReport::passed() const {
  if (!chain_map_failures.empty() || !naturality_failures.empty()) return false;
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

QuasiIsoReport verify_quasi_iso(int n, int d, int max_weight) {
  QuasiIsoReport report{n, d, max_weight, {}, {}, {}};
  const auto& q = build_quillen_dgl(n, d, max_weight);
  const auto phi = phi_map(q);
  report.chain_map_failures = phi.chain_map_failures;
  const auto& chi = chi_algebra(n, d);

  for (const auto& h : quillen_homology(q)) {
    QuasiIsoEntry e{h.weight, h.length, h.degree, h.dimension, 0, 0, false};
    if (h.length == h.weight) {
      e.chi_dimension = chi.dimension(h.weight);
      e.rank = rank(phi.matrices.at(h.weight));
      e.pass = e.source_homology == e.chi_dimension && e.rank == e.chi_dimension;
    } else {
      e.pass = e.source_homology == 0;
    }
    report.entries.push_back(e);
  }

  auto check_map = [&](MapKind kind, int index) {
    const int m = target_level(kind, n);
    const auto& qt = build_quillen_dgl(m, d, max_weight);
    const auto phi_t = phi_map(qt);
    const std::string name = std::string(kind == MapKind::Coface ? "d^" : "s^") + std::to_string(index);
    for (int w = 1; w <= max_weight; ++w) {
      std::vector<SparseRationalMatrix> f;
      for (int b = 1; b <= w; ++b) f.push_back(quillen_structure_matrix(q, qt, kind, index, w, b));
      for (int b = 1; b < w; ++b) {
        const auto lhs = qt.differential_matrix(w, b) * f[b - 1];
        const auto rhs = f[b] * q.differential_matrix(w, b);
        if (!(lhs == rhs))
          report.naturality_failures.push_back(name + " does not commute with d in weight " + std::to_string(w) +
                                               ", length " + std::to_string(b));
      }
      const auto chi_map = kind == MapKind::Coface ? coface_map(index, n, d, w) : codegeneracy_map(index, n, d, w);
      if (!(phi_t.matrices.at(w) * f[w - 1] == chi_map.matrix * phi.matrices.at(w)))
        report.naturality_failures.push_back(name + " does not commute with phi in weight " + std::to_string(w));
    }
  };
  for (int i = 0; i <= n + 1; ++i) check_map(MapKind::Coface, i);
  for (int j = 0; j < n; ++j) check_map(MapKind::Codegeneracy, j);
  return report;
}

}  // namespace knotpi
