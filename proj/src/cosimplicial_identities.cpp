#include "knotpi/cosimplicial_identities.hpp"

#include <map>
#include <tuple>

namespace knotpi {

std::vector<std::string> cosimplicial_identity_failures(const StructureMatrixFn& map, int top_level) {
  std::map<std::tuple<MapKind, int, int>, SparseRationalMatrix> cache;
  auto m = [&](MapKind kind, int index, int n) -> const SparseRationalMatrix& {
    auto key = std::tuple{kind, index, n};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, map(kind, index, n)).first;
    return it->second;
  };
  auto d = [&](int i, int n) -> const SparseRationalMatrix& { return m(MapKind::Coface, i, n); };
  auto s = [&](int j, int n) -> const SparseRationalMatrix& { return m(MapKind::Codegeneracy, j, n); };

  std::vector<std::string> failures;
  auto expect = [&](const SparseRationalMatrix& lhs, const SparseRationalMatrix& rhs, const std::string& what) {
    if (!(lhs == rhs)) failures.push_back(what);
  };
  auto tag = [](const std::string& id, int n) { return id + " on level " + std::to_string(n); };

  for (int n = 0; n + 2 <= top_level; ++n)
    for (int j = 1; j <= n + 2; ++j)
      for (int i = 0; i < j; ++i)
        expect(d(j, n + 1) * d(i, n), d(i, n + 1) * d(j - 1, n),
               tag("d^" + std::to_string(j) + " d^" + std::to_string(i), n));

  for (int n = 2; n <= top_level; ++n)
    for (int j = 0; j <= n - 2; ++j)
      for (int i = 0; i <= j; ++i)
        expect(s(j, n - 1) * s(i, n), s(i, n - 1) * s(j + 1, n),
               tag("s^" + std::to_string(j) + " s^" + std::to_string(i), n));

  for (int n = 0; n + 1 <= top_level; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const auto lhs = s(j, n + 1) * d(i, n);
        const std::string what = tag("s^" + std::to_string(j) + " d^" + std::to_string(i), n);
        if (i < j) {
          expect(lhs, d(i, n - 1) * s(j - 1, n), what);
        } else if (i == j || i == j + 1) {
          expect(lhs, SparseRationalMatrix::identity(lhs.cols()), what);
        } else {
          expect(lhs, d(i - 1, n - 1) * s(j, n), what);
        }
      }
  return failures;
}

}  // namespace knotpi
