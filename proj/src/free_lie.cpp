#include "knotpi/free_lie.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace knotpi {

BracketWord BracketWord::leaf(int generator) {
  BracketWord w;
  w.letter = generator;
  return w;
}

BracketWord BracketWord::bracket(BracketWord left, BracketWord right) {
  BracketWord w;
  w.children.reserve(2);
  w.children.push_back(std::move(left));
  w.children.push_back(std::move(right));
  return w;
}

int BracketWord::length() const { return is_leaf() ? 1 : left().length() + right().length(); }

std::vector<Letter> BracketWord::leaves() const {
  if (is_leaf()) return {static_cast<Letter>(letter)};
  auto out = left().leaves();
  auto r = right().leaves();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

bool is_lyndon(std::span<const Letter> w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto suffix = w.subspan(i);
    if (!std::lexicographical_compare(w.begin(), w.end(), suffix.begin(), suffix.end())) return false;
  }
  return true;
}

BracketWord standard_bracketing(std::span<const Letter> lyndon) {
  if (lyndon.size() == 1) return BracketWord::leaf(lyndon[0]);
  for (std::size_t split = 1; split < lyndon.size(); ++split) {
    auto suffix = lyndon.subspan(split);
    if (is_lyndon(suffix))
      return BracketWord::bracket(standard_bracketing(lyndon.first(split)), standard_bracketing(suffix));
  }
  throw std::logic_error("standard_bracketing: not a Lyndon word");
}

std::vector<Word> lyndon_words(const std::vector<Letter>& alphabet, int length) {
  std::vector<Word> out;
  const int k = static_cast<int>(alphabet.size());
  if (k == 0 || length < 1) return out;
  // Duval's generation of all Lyndon words of length <= `length`, in lex order.
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == length) {
      std::vector<Letter> letters(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) letters[i] = alphabet[w[i]];
      out.emplace_back(letters);
    }
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < length) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

// ---------------------------------------------------------------- LieBasis

LieBasis::LieBasis(std::vector<LieBasisElement> elements, const DegreeTable& /*degrees*/)
    : elements_(std::move(elements)) {
  for (const auto& e : elements_)
    for (const auto& [w, c] : e.expansion.terms()) support_.push_back(w);
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) by_word_.emplace(elements_[i].word, i);
}

const Echelon& LieBasis::echelon() const {
  std::call_once(echelon_once_, [this] {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      auto r = echelon_.insert(*index_tensor(elements_[i].expansion), SparseVector::unit(static_cast<std::uint32_t>(i)));
      if (r.remainder.is_zero()) throw std::logic_error("Lie basis candidates are linearly dependent");
    }
  });
  return echelon_;
}

LabeledBasis LieBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.label);
  return LabeledBasis(std::move(out));
}

std::optional<std::size_t> LieBasis::index_of(const Word& w) const {
  auto it = by_word_.find(w);
  if (it == by_word_.end()) return std::nullopt;
  return it->second;
}

std::optional<SparseVector> LieBasis::index_tensor(const Tensor& t) const {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(t.size());
  for (const auto& [w, c] : t.terms()) {
    auto it = std::lower_bound(support_.begin(), support_.end(), w);
    if (it == support_.end() || *it != w) return std::nullopt;
    entries.emplace_back(static_cast<std::uint32_t>(it - support_.begin()), c);
  }
  return SparseVector::from_entries(std::move(entries));
}

SparseVector LieBasis::coordinates(const Tensor& t) const {
  auto v = index_tensor(t);
  if (!v) throw std::domain_error("tensor is not in the span of this Lie basis component");
  auto r = echelon().reduce(std::move(*v));
  if (!r.remainder.is_zero()) throw std::domain_error("tensor is not in the span of this Lie basis component");
  return Rational(-1) * r.tag;
}

Tensor LieBasis::to_tensor(const SparseVector& coords) const {
  Tensor t;
  for (const auto& [i, c] : coords.entries()) t.axpy(c, elements_.at(i).expansion);
  return t;
}

// ---------------------------------------------------------------- FreeLieAlgebra

FreeLieAlgebra::FreeLieAlgebra(std::vector<GeneratorSpec> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].id != static_cast<int>(i)) throw std::invalid_argument("generator ids must be dense 0..k-1");
    if (generators_[i].degree < 1) throw std::invalid_argument("generator degree must be >= 1");
    degrees_.push_back(generators_[i].degree);
  }
}

int FreeLieAlgebra::degree(const BracketWord& w) const {
  int d = 0;
  for (auto l : w.leaves()) d += degrees_.at(l);
  return d;
}

int FreeLieAlgebra::weight(const BracketWord& w) const {
  int d = 0;
  for (auto l : w.leaves()) d += generators_.at(l).weight;
  return d;
}

std::string FreeLieAlgebra::render(const BracketWord& w) const {
  if (w.is_leaf()) return generators_.at(w.letter).name;
  return "[" + render(w.left()) + "," + render(w.right()) + "]";
}

LieElement FreeLieAlgebra::generator(int id, Rational c) const {
  return {Tensor::letter(static_cast<Letter>(id), std::move(c)), 1, degrees_.at(id)};
}

LieElement FreeLieAlgebra::expand(const BracketWord& w, const Rational& coeff) const {
  LieElement e = evaluate_tree<LieElement>(
      w, [this](int g) { return generator(g); }, [](const LieElement& a, const LieElement& b) { return bracket(a, b); });
  e.tensor *= coeff;
  return e;
}

const LieBasis& FreeLieAlgebra::basis(const BasisKey& key) const {
  std::lock_guard lock(mutex_);
  if (auto it = bases_.find(key); it != bases_.end()) return *it->second;

  std::vector<Letter> alphabet = key.alphabet;
  if (alphabet.empty()) {
    alphabet.resize(generators_.size());
    std::iota(alphabet.begin(), alphabet.end(), Letter{0});
  }
  std::sort(alphabet.begin(), alphabet.end());
  auto weight_of = [this](const Word& w) {
    int s = 0;
    for (auto l : w.view()) s += generators_.at(l).weight;
    return s;
  };

  std::vector<LieBasisElement> elements;
  auto add = [&](const Word& word, BracketWord tree) {
    LieBasisElement e;
    e.word = word;
    e.degree = word_degree(word, degrees_);
    e.weight = weight_of(word);
    e.expansion = expand(tree).tensor;
    e.label = render(tree);
    e.tree = std::move(tree);
    elements.push_back(std::move(e));
  };
  auto uses_all = [&](const Word& w) {
    if (!key.full_support) return true;
    for (auto l : alphabet)
      if (std::find(w.letters.begin(), w.letters.begin() + w.length, l) == w.letters.begin() + w.length) return false;
    return true;
  };
  for (const auto& w : lyndon_words(alphabet, key.length)) {
    if (key.weight >= 0 && weight_of(w) != key.weight) continue;
    if (!uses_all(w)) continue;
    add(w, standard_bracketing(w.view()));
  }
  if (key.length % 2 == 0) {
    for (const auto& u : lyndon_words(alphabet, key.length / 2)) {
      if (word_degree(u, degrees_) % 2 == 0) continue;
      if (key.weight >= 0 && 2 * weight_of(u) != key.weight) continue;
      if (!uses_all(u)) continue;
      auto half = standard_bracketing(u.view());
      add(u.concat(u), BracketWord::bracket(half, half));
    }
  }
  std::sort(elements.begin(), elements.end(),
            [](const LieBasisElement& a, const LieBasisElement& b) { return a.word < b.word; });
  auto basis = std::make_unique<LieBasis>(std::move(elements), degrees_);
  const LieBasis& ref = *basis;
  bases_.emplace(key, std::move(basis));
  return ref;
}

SparseVector FreeLieAlgebra::normal_form(const BracketWord& w, const Rational& coeff) const {
  return coordinates(expand(w, coeff));
}

SparseVector FreeLieAlgebra::coordinates(const LieElement& e) const {
  return basis(e.length).coordinates(e.tensor);
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  return {graded_commutator(a.tensor, a.degree, b.tensor, b.degree), a.length + b.length, a.degree + b.degree};
}

LabeledBasis lie_basis(const std::vector<GeneratorSpec>& generators, int length) {
  if (length < 1) throw std::invalid_argument("lie_basis: length must be >= 1");
  FreeLieAlgebra algebra(generators);
  return algebra.basis(length).labels();
}

}  // namespace knotpi
