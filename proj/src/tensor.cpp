#include "knotpi/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace knotpi {

Word::Word(std::span<const Letter> ls) {
  if (ls.size() > kMaxWordLength) throw std::length_error("word longer than kMaxWordLength");
  length = static_cast<std::uint8_t>(ls.size());
  std::copy(ls.begin(), ls.end(), letters.begin());
}

Word Word::concat(const Word& o) const {
  if (length + o.length > kMaxWordLength) throw std::length_error("word longer than kMaxWordLength");
  Word w = *this;
  std::copy(o.letters.begin(), o.letters.begin() + o.length, w.letters.begin() + length);
  w.length = static_cast<std::uint8_t>(length + o.length);
  return w;
}

Tensor Tensor::letter(Letter l, Rational c) { return word(Word::single(l), std::move(c)); }

Tensor Tensor::word(const Word& w, Rational c) {
  Tensor t;
  if (!c.is_zero()) t.terms_.emplace_back(w, std::move(c));
  return t;
}

Tensor Tensor::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Tensor t;
  for (auto& term : terms) {
    if (!t.terms_.empty() && t.terms_.back().first == term.first) {
      t.terms_.back().second += term.second;
      if (t.terms_.back().second.is_zero()) t.terms_.pop_back();
    } else if (!term.second.is_zero()) {
      t.terms_.push_back(std::move(term));
    }
  }
  return t;
}

Rational Tensor::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& x) { return t.first < x; });
  if (it != terms_.end() && it->first == w) return it->second;
  return 0;
}

void Tensor::axpy(const Rational& factor, const Tensor& other) {
  if (factor.is_zero() || other.terms_.empty()) return;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational sum = a->second + factor * b->second;
      if (!sum.is_zero()) merged.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
}

Tensor& Tensor::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

Tensor operator*(const Tensor& a, const Tensor& b) {
  std::vector<Tensor::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) terms.emplace_back(wa.concat(wb), ca * cb);
  return Tensor::from_terms(std::move(terms));
}

Tensor Tensor::relabeled(const std::function<int(Letter)>& map) const {
  std::vector<Term> terms;
  for (const auto& [w, c] : terms_) {
    Word out;
    out.length = w.length;
    bool keep = true;
    for (std::size_t i = 0; i < w.length && keep; ++i) {
      const int image = map(w.letters[i]);
      if (image < 0) keep = false;
      else out.letters[i] = static_cast<Letter>(image);
    }
    if (keep) terms.emplace_back(out, c);
  }
  return from_terms(std::move(terms));
}

Tensor substitute(const Tensor& t, const std::function<const Tensor&(Letter)>& image) {
  Tensor out;
  for (const auto& [w, c] : t.terms()) {
    Tensor prod = Tensor::word(Word{}, c);
    for (std::size_t i = 0; i < w.length && !prod.is_zero(); ++i) prod = prod * image(w.letters[i]);
    out += prod;
  }
  return out;
}

int word_degree(const Word& w, const DegreeTable& degrees) {
  int d = 0;
  for (std::size_t i = 0; i < w.length; ++i) d += degrees.at(w.letters[i]);
  return d;
}

Tensor graded_commutator(const Tensor& a, int degree_a, const Tensor& b, int degree_b) {
  Tensor out = a * b;
  out.axpy(Rational(-sign_power(static_cast<long>(degree_a) * degree_b)), b * a);
  return out;
}

Tensor apply_derivation(const Tensor& t, int degree, const DegreeTable& letter_degrees,
                        const std::function<const Tensor&(Letter)>& on_letter) {
  std::vector<Tensor::Term> terms;
  for (const auto& [w, c] : t.terms()) {
    int prefix_degree = 0;
    for (std::size_t pos = 0; pos < w.length; ++pos) {
      const Tensor& image = on_letter(w.letters[pos]);
      if (!image.is_zero()) {
        const Rational coeff = c * Rational(sign_power(static_cast<long>(degree) * prefix_degree));
        Word prefix(std::span<const Letter>(w.letters.data(), pos));
        Word suffix(std::span<const Letter>(w.letters.data() + pos + 1, w.length - pos - 1));
        for (const auto& [iw, ic] : image.terms())
          terms.emplace_back(prefix.concat(iw).concat(suffix), coeff * ic);
      }
      prefix_degree += letter_degrees.at(w.letters[pos]);
    }
  }
  return Tensor::from_terms(std::move(terms));
}

}  // namespace knotpi
