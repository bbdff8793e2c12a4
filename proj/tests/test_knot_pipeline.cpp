#include "doctest.h"

#include "knotpi/conf_homology.hpp"
#include "knotpi/drinfeld_kohno.hpp"
#include "knotpi/knot_pipeline.hpp"
#include "knotpi/parallel.hpp"

using namespace knotpi;

namespace {

std::map<std::pair<int, int>, std::size_t> dims(const SpectralSequencePage& page, bool stable_only = false) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [pq, e] : page.entries)
    if (e.dimension > 0 && (!stable_only || e.stable)) out[pq] = e.dimension;
  return out;
}

ChiElement chord_sum(int n, int d, std::initializer_list<Chord> chords) {
  ChiElement e = chi_algebra(n, d).zero(1);
  for (const auto& c : chords) e.tensor += chi_algebra(n, d).generator(c).tensor;
  return e;
}

}  // namespace

TEST_CASE("homotopy E1 columns") {
  for (int d : {4, 5}) {
    const auto e1 = homotopy_e1(d, 5, 5);
    for (int w = 1; w <= 5; ++w) {
      CHECK(e1.dimension(0, e1.q_of(w)) == 0);
      CHECK(e1.dimension(1, e1.q_of(w)) == 0);
    }
  }
  // chi(2) for d = 5: one odd generator, so B21 and [B21,B21] and nothing else
  const auto e1 = homotopy_e1(5, 3, 6);
  std::map<int, std::size_t> column2;
  for (const auto& [w, b] : e1.weights)
    for (int q : b.columns[2].degrees()) column2[q] += b.columns[2].dimension(q);
  CHECK(column2 == std::map<int, std::size_t>{{4, 1}, {7, 1}});
  CHECK(e1.basis(2, 4).labels() == std::vector<std::string>{"B21"});
}

TEST_CASE("d1 on B21 vanishes") {
  for (int d : {4, 5}) {
    // the four coface images, by hand
    CHECK(structure_map_on_generator(MapKind::Coface, 0, 2, d, {2, 1}) == chord_sum(3, d, {{3, 2}}));
    CHECK(structure_map_on_generator(MapKind::Coface, 1, 2, d, {2, 1}) == chord_sum(3, d, {{3, 1}, {3, 2}}));
    CHECK(structure_map_on_generator(MapKind::Coface, 2, 2, d, {2, 1}) == chord_sum(3, d, {{2, 1}, {3, 1}}));
    CHECK(structure_map_on_generator(MapKind::Coface, 3, 2, d, {2, 1}) == chord_sum(3, d, {{2, 1}}));
    const auto m = normalized_chi_differential(d, 2, 1);
    CHECK(m.cols() == 1);
    CHECK(m.is_zero());
    // also on the full level
    SparseRationalMatrix sum(3, 1);
    for (int i = 0; i <= 3; ++i) sum = sum + Rational(sign_power(i)) * coface_map(i, 2, d, 1).matrix;
    CHECK(sum.is_zero());
  }
}

TEST_CASE("E2 at (-2, d-1)") {
  for (int d : {4, 5, 6}) {
    const auto e2 = e2_page(homotopy_e1(d, 4, 2));
    CHECK(e2.dimension(-2, d - 1) == 1);
    CHECK(e2.stable(-2, d - 1));
    CHECK(e2.dimension(0, d - 1) == 0);
    CHECK(e2.dimension(-1, d - 1) == 0);
  }
}

TEST_CASE("degree pattern and low rows") {
  for (int d : {4, 5, 6}) {
    const auto e1 = homotopy_e1(d, 6, 4);
    const auto pages = homotopy_pages(e1, 2);
    for (const auto& page : pages)
      for (const auto& [pq, e] : page.entries) {
        if (e.dimension == 0) continue;
        CHECK((pq.second - 1) % (d - 2) == 0);
        CHECK(pq.second >= d - 1);
        // total degree q + p never drops below d - 3
        CHECK(pq.second + pq.first >= d - 3);
      }
    const auto table = knot_pi_table(d, d - 3);
    for (const auto& row : table.rows) {
      if (row.m < d - 3) CHECK(row.dimension == 0);
      CHECK(row.complete);
    }
    CHECK(table.rows.back().dimension >= 1);
  }
}

TEST_CASE("the pi table sums stable E2 along antidiagonals") {
  for (int d : {4, 5}) {
    const int m_max = d == 4 ? 5 : 9;
    const auto table = knot_pi_table(d, m_max);
    // one wide run instead of per-weight truncations
    const auto e1 = homotopy_e1(d, 8, m_max / (d - 3));
    const auto e2 = e2_page(e1);
    for (const auto& row : table.rows) {
      std::size_t expected = 0;
      for (const auto& [pq, e] : e2.entries)
        if (pq.second + pq.first == row.m) {
          CHECK(e.stable);
          expected += e.dimension;
        }
      CHECK(row.dimension == expected);
      CHECK(row.complete);
    }
  }
  const auto t4 = knot_pi_table(4, 5);
  const auto t5 = knot_pi_table(5, 5);
  std::vector<std::size_t> a, b;
  for (const auto& r : t4.rows) a.push_back(r.dimension);
  for (const auto& r : t5.rows) b.push_back(r.dimension);
  CHECK(a != b);
  CHECK(a == std::vector<std::size_t>{0, 1, 1, 1, 1, 2});
  CHECK(b == std::vector<std::size_t>{0, 0, 1, 0, 1, 1});
}

TEST_CASE("pi table limits") {
  CHECK_THROWS_AS(knot_pi_table(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(homotopy_e1(3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(knot_pi_table(4, 7), ResourceGuard);
  PiTableLimits tight;
  tight.certify_dimension_limit = 10;
  const auto t = knot_pi_table(4, 4, tight);
  CHECK_FALSE(t.rows.back().complete);
  CHECK(t.rows.back().dimension == knot_pi_table(4, 4).rows.back().dimension);
}

TEST_CASE("direct columns agree with generic normalization") {
  for (int d : {4, 5}) {
    for (int w = 1; w <= 3; ++w) {
      const auto v = chi_cosimplicial(d, w, 5);
      CHECK(v.identity_failures().empty());
      const auto generic = normalized_bicomplex(v);
      const auto e1 = homotopy_e1(d, 5, w);
      const int q = e1.q_of(w);
      for (int s = 0; s <= 5; ++s) CHECK(generic.columns[s].dimension(q) == e1.dimension(s, q));
      // the generic path never touches the direct columns
      const auto direct = dims(homotopy_pages(homotopy_e1(d, 5, w), 2).at(1));
      auto generic_e2 = dims(bkss_pages(generic, 2).at(1));
      std::erase_if(generic_e2, [&](const auto& kv) { return kv.first.second != q; });
      auto direct_w = direct;
      std::erase_if(direct_w, [&](const auto& kv) { return kv.first.second != q; });
      CHECK(direct_w == generic_e2);
    }
  }
  const auto report = verify_support_bound(4, 3, 6);
  CHECK(report.passed());
}

TEST_CASE("unnormalized and normalized E2 agree") {
  // Truncating at 5 makes every column s <= 4 stable on E2. The last column is
  // not comparable: there the unnormalized complex still carries degenerate classes.
  for (int d : {4, 5}) {
    for (int w = 1; w <= 3; ++w) {
      const auto v = chi_cosimplicial(d, w, 5);
      CHECK(dims(bkss_pages(unnormalized_bicomplex(v), 2).at(1), true) == dims(bkss_pages(v, 2).at(1), true));
    }
    const auto h = homology_cosimplicial(d, 3, 5);
    CHECK(h.identity_failures().empty());
    CHECK(dims(bkss_pages(unnormalized_bicomplex(h), 2).at(1), true) == dims(homology_side_e2(d, 5, 3 * (d - 1)), true));
  }
}

TEST_CASE("row Euler characteristic from E1 to E2") {
  const auto e1 = homotopy_e1(5, 6, 4);
  const auto pages = homotopy_pages(e1, 2);
  for (int w = 1; w <= 4; ++w) {
    const int q = e1.q_of(w);
    long chi1 = 0, chi2 = 0;
    for (int s = 0; s <= 6; ++s) {
      chi1 += sign_power(s) * static_cast<long>(pages[0].dimension(-s, q));
      chi2 += sign_power(s) * static_cast<long>(pages[1].dimension(-s, q));
    }
    CHECK(chi1 == chi2);
  }
}

TEST_CASE("homology side") {
  for (int d : {4, 5}) {
    const auto e2 = homology_side_e2(d, 5, 3 * (d - 1));
    for (const auto& [pq, e] : e2.entries) {
      if (e.dimension == 0) continue;
      CHECK(pq.first <= -2);
      CHECK(pq.second % (d - 1) == 0);
    }
    const auto e1 = homology_side_pages(d, 5, 3 * (d - 1), 1).at(0);
    CHECK(e1.dimension(-2, d - 1) == 1);
    std::size_t column2 = 0;
    for (const auto& [pq, e] : e1.entries)
      if (pq.first == -2) column2 += e.dimension;
    CHECK(column2 == 1);
    CHECK(e2.dimension(-2, d - 1) == 1);
    // two chords on four points: the type-2 class, plus the square of the
    // degree d-3 class when that degree is even
    CHECK(e2.dimension(-4, 2 * (d - 1)) == (d % 2 == 0 ? 1u : 2u));
  }
}

TEST_CASE("homology is the free graded-commutative algebra on homotopy") {
  // Emb-bar is an H-space, so over Q its homology is Sym(pi_*) as a graded
  // vector space. Both sides are computed from scratch here.
  for (const auto& [d, m_max] : std::vector<std::pair<int, int>>{{4, 3}, {5, 7}}) {
    std::vector<long> sym(m_max + 1, 0);
    sym[0] = 1;
    for (const auto& row : knot_pi_table(d, m_max).rows) {
      REQUIRE(row.complete);
      for (std::size_t g = 0; g < row.dimension; ++g) {
        if (row.m == 0) continue;
        // multiply by 1/(1 - t^m) for even m, by (1 + t^m) for odd m
        auto next = sym;
        if (row.m % 2 == 0) {
          for (int k = row.m; k <= m_max; ++k) next[k] += next[k - row.m];
        } else {
          for (int k = row.m; k <= m_max; ++k) next[k] += sym[k - row.m];
        }
        sym = next;
      }
    }
    // m = k(d-1) - s with s <= 2k; three chords and seven columns cover m <= m_max
    const auto e2 = homology_side_e2(d, 7, 3 * (d - 1));
    std::vector<long> homology(m_max + 1, 0);
    homology[0] = 1;  // the unit, which reduced homology leaves out
    for (const auto& [pq, e] : e2.entries) {
      const int m = pq.first + pq.second;
      if (m < 0 || m > m_max || e.dimension == 0) continue;
      CHECK(e.stable);
      homology[m] += static_cast<long>(e.dimension);
    }
    CHECK(homology == sym);
  }
}

TEST_CASE("Hurewicz cross-check") {
  for (int d : {4, 5, 6}) {
    const auto r = hurewicz_check(d, 5);
    CHECK(r.passed());
  }
}

TEST_CASE("collapse coherence on the homotopy side") {
  for (int d : {4, 5}) {
    const auto pages = homotopy_pages(homotopy_e1(d, 6, 4), 4);
    const auto report = collapse_report(pages);
    CHECK(report.passed());
    CHECK(report.compared > 0);
  }
  for (int d : {4, 5}) {
    const auto report = collapse_report(homology_side_pages(d, 5, 3 * (d - 1), 4));
    CHECK(report.passed());
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto serial = knot_pi_table(5, 8);
  set_thread_count(4);
  const auto threaded = knot_pi_table(5, 8);
  set_thread_count(1);
  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t k = 0; k < serial.rows.size(); ++k) {
    CHECK(serial.rows[k].dimension == threaded.rows[k].dimension);
    CHECK(serial.rows[k].complete == threaded.rows[k].complete);
  }
  CHECK(serial.certified == threaded.certified);
}
