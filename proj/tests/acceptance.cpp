// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path to knotpi>
//
// Each check throws on the first mismatch with a message saying what differed;
// the line then reads FAIL and the message follows it.

#include "knotpi/cache.hpp"
#include "knotpi/conf_homology.hpp"
#include "knotpi/cosimplicial_identities.hpp"
#include "knotpi/drinfeld_kohno.hpp"
#include "knotpi/knot_pipeline.hpp"
#include "knotpi/quillen.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace knotpi;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class... Args>
void expect(bool ok, Args&&... what) {
  if (ok) return;
  std::ostringstream os;
  (os << ... << what);
  throw Failure(os.str());
}

std::string tool_path;

// -- 1

void d2_on_xi() {
  for (int d : {4, 5}) {
    const auto& q = build_quillen_dgl(3, d, 2);
    const auto& deg = q.free().degrees();
    auto br = [&](Letter a, Letter b) { return graded_commutator(Tensor::letter(a), deg[a], Tensor::letter(b), deg[b]); };
    const Letter g21 = q.generator_id(Monomial{{2, 1}});
    const Letter g31 = q.generator_id(Monomial{{3, 1}});
    const Letter g32 = q.generator_id(Monomial{{3, 2}});
    const Letter xi = q.generator_id(Monomial{{2, 1}, {3, 1}});
    const Tensor expected = br(g21, g31) - br(g31, g32);
    expect(q.differential_on_generator(xi) == expected, "d2(s^-1 xi_21,31) != [x21,x31] - [x31,x32], d=", d);

    // phi of it is [B21,B31] - [B31,B32], which the relations kill
    const auto& free = chi_algebra(3, d).free();
    auto B = [](int i, int j) { return BracketWord::leaf(chord_id(i, j)); };
    LieElement image = free.expand(BracketWord::bracket(B(2, 1), B(3, 1)));
    image.tensor -= free.expand(BracketWord::bracket(B(3, 1), B(3, 2))).tensor;
    expect(!image.is_zero(), "phi image is already zero in the free Lie algebra");
    expect(reduce_to_chi(image, chi_component(3, d, 2)).is_zero(), "phi image is nonzero in chi(3), d=", d);
    const auto phi = phi_map(q);
    expect(phi.matrices.at(2).apply(q.chains(2, 2).coordinates(expected)).is_zero(), "phi(d2 xi) != 0 through phi_map");
  }
}

// -- 2

void quasi_iso() {
  for (int d : {4, 5})
    for (int n = 0; n <= 4; ++n) {
      const auto r = verify_quasi_iso(n, d, 3);
      expect(r.chain_map_failures.empty(), "phi is not a chain map, n=", n, " d=", d);
      expect(r.naturality_failures.empty(), "phi is not natural, n=", n, " d=", d, ": ",
             r.naturality_failures.empty() ? "" : r.naturality_failures.front());
      for (const auto& e : r.entries)
        expect(e.pass, "H(phi) not an isomorphism at weight ", e.weight, " length ", e.length, ", n=", n, " d=", d);
      expect(r.passed(), "quasi-iso report failed, n=", n, " d=", d);
    }
}

// -- 3

std::vector<long> arnold_poincare(int n) {
  std::vector<long> c{1};
  for (int m = 1; m < n; ++m) {
    c.push_back(0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] += m * c[i - 1];
  }
  return c;
}

void cohomology_presentation() {
  for (int d : {4, 5}) {
    const auto b = cohomology_basis(3, d, 2);
    expect(b.labels() == std::vector<std::string>{"A21A31", "A21A32"}, "H^{2(d-1)}(K(3)) basis differs, d=", d);
    const auto r = arnold_reduce(Monomial{{3, 1}, {3, 2}}, d);
    const CohomologyVector expected{{Monomial{{2, 1}, {3, 2}}, 1}, {Monomial{{2, 1}, {3, 1}}, -1}};
    expect(r == expected, "A31A32 does not reduce to A21A32 - A21A31, d=", d);
    for (int n = 0; n <= 6; ++n) {
      const auto p = arnold_poincare(n);
      for (int k = 0; k <= n + 1; ++k) {
        const long want = k < static_cast<int>(p.size()) ? p[k] : 0;
        expect(static_cast<long>(cohomology_basis(n, d, k).dimension()) == want, "dim H^{", k, "(d-1)}(K(", n,
               ")) mismatch, d=", d);
      }
    }
  }
}

// -- 4

void cosimplicial_identities() {
  for (int d : {4, 5}) {
    for (int w = 1; w <= 4; ++w) {
      auto fn = [&](MapKind kind, int index, int n) {
        return kind == MapKind::Coface ? coface_map(index, n, d, w).matrix : codegeneracy_map(index, n, d, w).matrix;
      };
      const auto f = cosimplicial_identity_failures(fn, 5);
      expect(f.empty(), "chi weight ", w, " d=", d, ": ", f.empty() ? "" : f.front());
    }
    for (int k = 0; k <= 3; ++k) {
      auto fn = [&](MapKind kind, int index, int n) { return homology_structure_matrix(kind, index, n, d, k); };
      const auto f = cosimplicial_identity_failures(fn, 5);
      expect(f.empty(), "homology length ", k, " d=", d, ": ", f.empty() ? "" : f.front());
    }
    // structure maps are Lie maps, i.e. chain maps for the zero differential of chi
    for (int n = 0; n <= 5; ++n) {
      for (int i = 0; i <= n + 1 && n < 5; ++i)
        expect(ideal_violations(MapKind::Coface, i, n, d).empty(), "d^", i, " does not preserve the ideal, n=", n);
      for (int j = 0; j < n; ++j)
        expect(ideal_violations(MapKind::Codegeneracy, j, n, d).empty(), "s^", j, " does not preserve the ideal, n=", n);
    }
  }
}

// -- 5

void sphere() {
  for (int d : {4, 5}) {
    const auto& chi = chi_algebra(2, d);
    std::map<int, std::size_t> by_degree;
    for (int w = 1; w <= 6; ++w)
      if (chi.dimension(w)) by_degree[chi.degree(w)] = chi.dimension(w);
    const std::map<int, std::size_t> expected =
        d == 4 ? std::map<int, std::size_t>{{2, 1}} : std::map<int, std::size_t>{{3, 1}, {6, 1}};
    expect(by_degree == expected, "chi(2) degrees differ from the loop space of S^", d - 1);
    expect(chi_component(2, d, 1).dimension() == 1, "chi_component(2) weight 1");

    const auto e2 = e2_page(homotopy_e1(d, 4, 2));
    expect(e2.dimension(-2, d - 1) == 1 && e2.stable(-2, d - 1), "E2_{-2,d-1} != 1, d=", d);
    const auto table = knot_pi_table(d, d - 3);
    expect(table.rows.back().dimension >= 1 && table.rows.back().complete, "pi_{d-3} row empty or incomplete, d=", d);
  }
}

// -- 6

void split_fibration() {
  for (int d : {4, 5})
    for (int n = 0; n <= 5; ++n)
      for (int w = 1; w <= 4; ++w) {
        std::size_t free_side = 0;
        for (int k = 2; k <= n; ++k) {
          std::vector<GeneratorSpec> g;
          for (int i = 0; i < k - 1; ++i) g.push_back({i, "y" + std::to_string(i), d - 2});
          free_side += FreeLieAlgebra(g).basis(w).size();
        }
        const auto quotient = chi_component(n, d, w).dimension();
        expect(quotient == free_side, "dim chi(", n, ")_", w, " = ", quotient, " by elimination but ", free_side,
               " by the split fibration, d=", d);
      }
}

// -- 7

void collapse() {
  for (int d : {4, 5}) {
    std::size_t compared = 0;
    for (int w = 1; w <= 4; ++w) {
      const auto r = formality_collapse_check(chi_cosimplicial(d, w, 6), 4);
      expect(r.passed(), "chi weight ", w, " d=", d, ": ", r.failures.empty() ? "" : r.failures.front());
      compared += r.compared;
    }
    const auto h = formality_collapse_check(homology_cosimplicial(d, 4, 6), 4);
    expect(h.passed(), "homology d=", d, ": ", h.failures.empty() ? "" : h.failures.front());
    expect(compared > 0 && h.compared > 0, "nothing was compared, d=", d);
  }
}

// -- 8

void support_bound() {
  for (int d : {4, 5}) {
    const auto r = verify_support_bound(d, 4, 9);
    expect(r.bound_2w(), "a normalized column survives beyond p = 2w, d=", d);
    expect(r.bound_w1(), "a normalized column survives beyond p = w + 1, d=", d);
    expect(r.direct_agrees(), "direct columns differ from generic normalization, d=", d);
    expect(r.entries.size() == 4 * 10, "not every (w, p) was checked");
    const auto table = knot_pi_table(d, d == 4 ? 4 : 8);
    for (const auto& [w, ok] : table.certified) expect(ok, "weight ", w, " not certified, d=", d);
    for (const auto& row : table.rows) expect(row.complete, "row ", row.m, " incomplete, d=", d);
  }
}

// -- 9

std::string capture(const std::string& cmd) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  expect(p != nullptr, "cannot run ", cmd);
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  const int status = ::pclose(p);
  expect(status == 0, "command failed (", status, "): ", cmd);
  return out;
}

void determinism() {
  expect(!tool_path.empty() && fs::exists(tool_path), "knotpi binary not given or missing: ", tool_path);
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("knotpi-acceptance-" + std::to_string(rd()));
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{dir};
  const std::vector<std::string> commands = {
      "pi-table --d 5 --m-max 8",        "pi-table --d 4 --m-max 5",        "e2 --d 4 --p-max 6 --weight-max 4",
      "homology-e2 --d 5 --p-max 6",     "chi --n 5 --d 4 --weight 3",      "e1 --d 4 --p-max 5 --weight-max 3 --matrices",
      "collapse-check --d 4 --p-max 6 --weight 3",
  };
  const std::string tool = "env -u KNOTPI_CACHE '" + tool_path + "' ";
  int k = 0;
  for (const auto& c : commands) {
    const std::string cache = (dir / std::to_string(k++)).string();
    const auto reference = capture(tool + c + " --threads 1");
    expect(!reference.empty(), "empty output: ", c);
    const std::vector<std::string> variants = {
        tool + c + " --threads 1",
        tool + c + " --threads 4",
        tool + c + " --threads 4 --cache-dir '" + cache + "'",  // cold
        tool + c + " --threads 1 --cache-dir '" + cache + "'",  // warm
        tool + c + " --threads 4 --cache-dir '" + cache + "'",  // warm
        "KNOTPI_CACHE='" + cache + "' '" + tool_path + "' " + c + " --threads 2",
    };
    for (const auto& v : variants) expect(capture(v) == reference, "output differs: ", v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) tool_path = argv[1];
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"d2(s^-1 xi_21,31) = [x21,x31] - [x31,x32] and its phi image vanishes in chi(3), d in {4,5}", d2_on_xi},
      {"phi^n natural quasi-isomorphism, n <= 4, weight <= 3, d in {4,5}", quasi_iso},
      {"H^*(K(n)) presentation: basis of H^{2(d-1)}(K(3)), Arnold reduction, Poincare polynomial n <= 6", cohomology_presentation},
      {"cosimplicial identities on chi(n) and H_*(K(n)), n <= 5, weight <= 4, degree <= 3(d-1)", cosimplicial_identities},
      {"sphere consistency: chi(2) and E2_{-2,d-1} = 1", sphere},
      {"split-fibration dimensions of chi(n), n <= 5, w <= 4", split_fibration},
      {"formality collapse E3 = E4 = E2 on stable entries, truncation 6", collapse},
      {"support bound of normalized columns, w <= 4, n <= 9", support_bound},
      {"byte-identical json across threads and cache states", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
      criteria[k].second();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failed;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s (%.1f s)\n", k + 1, verdict.c_str(), criteria[k].first.c_str(), secs);
    if (!detail.empty()) std::printf("    %s\n", detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
