#include "doctest.h"

#include "knotpi/cosimplicial_identities.hpp"
#include "knotpi/drinfeld_kohno.hpp"

using namespace knotpi;

namespace {

ChiElement gen(const DrinfeldKohno& chi, int i, int j, Rational c = 1) { return chi.generator({i, j}, c); }

ChiElement plus(ChiElement a, const ChiElement& b, const Rational& c = 1) {
  a.tensor.axpy(c, b.tensor);
  return a;
}

// free graded Lie algebra on k generators of one degree, computed on its own
std::size_t free_dim(int k, int degree, int weight) {
  std::vector<GeneratorSpec> g;
  for (int i = 0; i < k; ++i) g.push_back({i, "y" + std::to_string(i), degree});
  return FreeLieAlgebra(g).basis(weight).size();
}

}  // namespace

TEST_CASE("chord ids and maps") {
  for (int id = 0; id < 45; ++id) CHECK(chord_id(chord_of(id)) == id);
  CHECK(chord_of(0) == Chord{2, 1});
  CHECK(chord_of(3) == Chord{4, 1});
  CHECK(coface_on_chord(0, 2, {2, 1}) == std::vector<Chord>{{3, 2}});
  CHECK(coface_on_chord(2, 2, {2, 1}) == std::vector<Chord>{{2, 1}, {3, 1}});
  CHECK(coface_on_chord(3, 2, {2, 1}) == std::vector<Chord>{{2, 1}});
  CHECK(coface_on_chord(1, 2, {2, 1}) == std::vector<Chord>{{3, 1}, {3, 2}});
  CHECK(!codegeneracy_on_chord(0, {3, 1}).has_value());
  CHECK(codegeneracy_on_chord(0, {3, 2}) == Chord{2, 1});
  CHECK(codegeneracy_on_chord(2, {2, 1}) == Chord{2, 1});
  CHECK(!codegeneracy_on_chord(2, {3, 1}).has_value());
  CHECK_THROWS_AS(coface_on_chord(4, 2, {2, 1}), std::out_of_range);
  CHECK_THROWS_AS(check_map_index(MapKind::Codegeneracy, 3, 3), std::out_of_range);
}

TEST_CASE("Yang-Baxter relations") {
  CHECK(yang_baxter_relations(2, 4).empty());
  CHECK(yang_baxter_relations(0, 4).empty());
  for (int d : {4, 5}) {
    const auto& chi = chi_algebra(3, d);
    const auto& free = chi.free();
    auto B = [&](int i, int j) { return free.generator(chord_id(i, j)); };
    auto sum = [](LieElement a, const LieElement& b, const Rational& c) {
      a.tensor.axpy(c, b.tensor);
      return a;
    };
    auto rels = yang_baxter_relations(3, d);
    REQUIRE(rels.size() == 2);
    CHECK(rels[0] == bracket(B(3, 1), sum(B(3, 2), B(2, 1), sign_power(d))));
    CHECK(rels[1] == bracket(B(2, 1), sum(B(3, 1), B(3, 2), 1)));
  }
  auto labels4 = yang_baxter_relation_terms(4, 4);
  bool found = false;
  for (const auto& r : labels4) found = found || r.label == "[B21,B43]";
  CHECK(found);
  // disjoint pairs {21,43}, {31,42}, {32,41}; two relations for each of the four triples
  CHECK(labels4.size() == 3 + 2 * 4);
}

TEST_CASE("chi_component examples") {
  auto c = chi_component(2, 4, 1);
  CHECK(c.dimension() == 1);
  CHECK(c.basis[0] == "B21");
  auto c2 = chi_component(2, 5, 2);
  CHECK(c2.dimension() == 1);
  CHECK(c2.basis[0] == "[B21,B21]");
  CHECK(chi_component(2, 4, 2).dimension() == 0);
  auto c3 = chi_component(3, 4, 2);
  CHECK(c3.free_dimension == 3);
  CHECK(c3.ideal_dimension == 2);
  CHECK(c3.dimension() == 1);
  for (int w = 1; w <= 3; ++w) {
    CHECK(chi_component(0, 4, w).dimension() == 0);
    CHECK(chi_component(1, 5, w).dimension() == 0);
  }
  CHECK_THROWS(chi_component(3, 4, 0));
}

TEST_CASE("reduce_to_chi kills exactly the relations") {
  for (int d : {4, 5}) {
    for (int n = 3; n <= 4; ++n) {
      auto c = chi_component(n, d, 2);
      for (const auto& r : yang_baxter_relations(n, d)) CHECK(reduce_to_chi(r, c).is_zero());
      const auto& free_basis = chi_algebra(n, d).free().basis(2);
      // basis elements of chi go to unit vectors
      std::size_t k = 0;
      for (const auto& e : free_basis.elements()) {
        if (std::find(c.basis.labels().begin(), c.basis.labels().end(), e.label) == c.basis.labels().end()) continue;
        LieElement le{e.expansion, 2, 2 * (d - 2)};
        CHECK(reduce_to_chi(le, c) == SparseVector::unit(static_cast<std::uint32_t>(k++)));
      }
      CHECK(k == c.dimension());
    }
    const auto& free = chi_algebra(3, d).free();
    auto B = [&](int i, int j) { return free.generator(chord_id(i, j)); };
    LieElement e = bracket(B(2, 1), B(3, 1));
    e.tensor -= bracket(B(3, 1), B(3, 2)).tensor;
    CHECK(reduce_to_chi(e, chi_component(3, d, 2)).is_zero());
    CHECK_THROWS_AS(reduce_to_chi(B(2, 1), chi_component(3, d, 2)), std::invalid_argument);
  }
}

TEST_CASE("split extension normal form agrees with the quotient by the ideal") {
  for (int d : {4, 5}) {
    for (int n = 2; n <= 4; ++n) {
      const auto& chi = chi_algebra(n, d);
      for (int w = 1; w <= (n == 4 ? 3 : 4); ++w) {
        CAPTURE(d);
        CAPTURE(n);
        CAPTURE(w);
        auto c = chi_component(n, d, w);
        REQUIRE(c.dimension() == chi.dimension(w));
        CHECK(c.basis == chi.labels(w));
        const auto& free_basis = chi.free().basis(w);
        for (std::size_t k = 0; k < free_basis.size(); ++k) {
          auto fast = chi.coordinates(chi.evaluate(free_basis[k].tree));
          CHECK(fast == c.reduction.column(k));
        }
      }
    }
  }
}

TEST_CASE("split-fibration dimension formula") {
  for (int d : {4, 5, 6})
    for (int n = 0; n <= 6; ++n)
      for (int w = 1; w <= (n <= 5 ? 4 : 3); ++w) {
        std::size_t expected = 0;
        for (int k = 2; k <= n; ++k) expected += free_dim(k - 1, d - 2, w);
        CHECK(chi_algebra(n, d).dimension(w) == expected);
      }
}

TEST_CASE("chi(2) is the homotopy Lie algebra of the loop space of a sphere") {
  for (int d = 4; d <= 9; ++d) {
    const auto& chi = chi_algebra(2, d);
    CHECK(chi.dimension(1) == 1);
    CHECK(chi.dimension(2) == (d % 2 == 1 ? 1u : 0u));
    for (int w = 3; w <= 5; ++w) CHECK(chi.dimension(w) == 0);
  }
}

TEST_CASE("bracket is graded antisymmetric and satisfies Jacobi") {
  for (int d : {4, 5}) {
    const auto& chi = chi_algebra(4, d);
    std::vector<ChiElement> pool;
    for (int id = 0; id < 6; ++id) pool.push_back(chi.generator(chord_of(id)));
    pool.push_back(plus(gen(chi, 4, 1), gen(chi, 2, 1), Rational(-2)));
    const int g = d - 2;
    for (const auto& a : pool)
      for (const auto& b : pool) {
        auto ab = chi.bracket(a, b);
        ab.tensor.axpy(Rational(sign_power(static_cast<long>(g) * g)), chi.bracket(b, a).tensor);
        CHECK(ab.is_zero());
        for (const auto& c : pool) {
          auto t1 = chi.bracket(a, chi.bracket(b, c));
          auto t2 = chi.bracket(chi.bracket(a, b), c);
          auto t3 = chi.bracket(b, chi.bracket(a, c));
          // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
          t1.tensor -= t2.tensor;
          t1.tensor.axpy(Rational(-sign_power(static_cast<long>(g) * g)), t3.tensor);
          CHECK(t1.is_zero());
        }
      }
  }
}

TEST_CASE("the cancellation [B21,B31] - [B31,B32] = 0") {
  for (int d : {4, 5}) {
    const auto& chi = chi_algebra(3, d);
    auto e = chi.bracket(gen(chi, 2, 1), gen(chi, 3, 1));
    e.tensor -= chi.bracket(gen(chi, 3, 1), gen(chi, 3, 2)).tensor;
    CHECK(e.is_zero());
  }
  // the alternating coface sum on [B21,B21] is 2([B21,B31] - [B31,B32]), hence 0 for odd d
  SparseRationalMatrix delta(chi_algebra(3, 5).dimension(2), 1);
  for (int i = 0; i <= 3; ++i) delta = delta + Rational(sign_power(i)) * coface_map(i, 2, 5, 2).matrix;
  CHECK(delta.is_zero());
  CHECK(!coface_map(1, 2, 5, 2).matrix.is_zero());
}

TEST_CASE("coface and codegeneracy examples") {
  for (int d : {4, 5}) {
    const auto& chi3 = chi_algebra(3, d);
    auto img = [&](MapKind k, int idx, int n, Chord c) { return structure_map_on_generator(k, idx, n, d, c); };
    CHECK(img(MapKind::Coface, 0, 2, {2, 1}) == gen(chi3, 3, 2));
    CHECK(img(MapKind::Coface, 2, 2, {2, 1}) == plus(gen(chi3, 2, 1), gen(chi3, 3, 1)));
    CHECK(img(MapKind::Coface, 3, 2, {2, 1}) == gen(chi3, 2, 1));
    CHECK(img(MapKind::Codegeneracy, 0, 2, {2, 1}).is_zero());
    const auto& chi2 = chi_algebra(2, d);
    CHECK(img(MapKind::Codegeneracy, 0, 3, {3, 2}) == gen(chi2, 2, 1));
    CHECK(img(MapKind::Codegeneracy, 0, 3, {2, 1}).is_zero());
    CHECK(img(MapKind::Codegeneracy, 2, 3, {2, 1}) == gen(chi2, 2, 1));
    CHECK(img(MapKind::Codegeneracy, 2, 3, {3, 1}).is_zero());

    auto s0 = codegeneracy_map(0, 2, d, 1);
    CHECK(s0.matrix.rows() == 0);
    CHECK(s0.matrix.cols() == 1);
    CHECK_THROWS_AS(coface_map(4, 2, d, 1), std::out_of_range);
    CHECK_THROWS_AS(codegeneracy_map(2, 2, d, 1), std::out_of_range);
  }
}

TEST_CASE("structure maps preserve the ideal") {
  for (int d : {4, 5})
    for (int n = 0; n <= 5; ++n) {
      for (int i = 0; i <= n + 1; ++i) CHECK(ideal_violations(MapKind::Coface, i, n, d).empty());
      for (int j = 0; j < n; ++j) CHECK(ideal_violations(MapKind::Codegeneracy, j, n, d).empty());
    }
}

TEST_CASE("cofaces from the definition agree with the split extension") {
  for (int d : {4, 5})
    for (int n = 2; n <= 3; ++n)
      for (int w = 1; w <= 3; ++w)
        for (int i = 0; i <= n + 1; ++i) {
          const auto& src = chi_algebra(n, d);
          const auto& dst = chi_algebra(n + 1, d);
          auto target = chi_component(n + 1, d, w);
          std::vector<Tensor> images;
          for (int id = 0; id < chord_count(n); ++id)
            images.push_back(structure_map_on_generator(MapKind::Coface, i, n, d, chord_of(id)).tensor);
          std::vector<SparseVector> cols;
          for (std::size_t k = 0; k < src.dimension(w); ++k) {
            Tensor t = substitute(src.basis_element(w, k).tensor, [&](Letter l) -> const Tensor& { return images[l]; });
            cols.push_back(reduce_to_chi(LieElement{t, w, w * (d - 2)}, target));
          }
          auto slow = SparseRationalMatrix::from_columns(dst.dimension(w), cols);
          CHECK(slow == coface_map(i, n, d, w).matrix);
        }
}

TEST_CASE("cosimplicial identities on chi") {
  for (int d : {4, 5})
    for (int w = 1; w <= 3; ++w) {
      auto fn = [&](MapKind kind, int index, int n) {
        return kind == MapKind::Coface ? coface_map(index, n, d, w).matrix : codegeneracy_map(index, n, d, w).matrix;
      };
      CHECK(cosimplicial_identity_failures(fn, 4).empty());
    }
}

TEST_CASE("a wrong coface is caught by the identities") {
  // d^1 that keeps only one half of each doubled chord
  const int d = 4, w = 1;
  auto fn = [&](MapKind kind, int index, int n) {
    if (kind == MapKind::Codegeneracy) return codegeneracy_map(index, n, d, w).matrix;
    if (index != 1 || n < 2) return coface_map(index, n, d, w).matrix;
    return lie_map_matrix(chi_algebra(n, d), chi_algebra(n + 1, d), w, [&](Chord c) {
      auto images = coface_on_chord(1, n, c);
      return chi_algebra(n + 1, d).generator(images.front());
    });
  };
  CHECK(!cosimplicial_identity_failures(fn, 3).empty());
}
