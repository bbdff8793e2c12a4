#include "knotpi/chords.hpp"

#include <stdexcept>

namespace knotpi {

Chord chord_of(int id) {
  if (id < 0) throw std::out_of_range("negative chord id");
  int i = 2;
  while (chord_id(i + 1, 1) <= id) ++i;
  return {i, id - chord_id(i, 1) + 1};
}

std::string chord_suffix(Chord c) {
  if (c.i < 10 && c.j < 10) return std::to_string(c.i) + std::to_string(c.j);
  return std::to_string(c.i) + "," + std::to_string(c.j);
}

std::vector<Chord> coface_on_chord(int i, int n, Chord c) {
  check_map_index(MapKind::Coface, i, n);
  if (i == 0) return {{c.i + 1, c.j + 1}};
  if (i == n + 1) return {c};
  auto shift = [i](int a) { return a > i ? a + 1 : a; };
  if (c.i == i) return {{i, c.j}, {i + 1, c.j}};
  if (c.j == i) return {{shift(c.i), i}, {shift(c.i), i + 1}};
  return {{shift(c.i), shift(c.j)}};
}

std::optional<Chord> codegeneracy_on_chord(int j, Chord c) {
  const int forgotten = j + 1;
  if (c.i == forgotten || c.j == forgotten) return std::nullopt;
  auto down = [forgotten](int a) { return a > forgotten ? a - 1 : a; };
  return Chord{down(c.i), down(c.j)};
}

void check_map_index(MapKind kind, int index, int n) {
  if (kind == MapKind::Coface) {
    if (n < 0 || index < 0 || index > n + 1)
      throw std::out_of_range("coface index " + std::to_string(index) + " out of range for level " + std::to_string(n));
  } else {
    if (n < 1 || index < 0 || index > n - 1)
      throw std::out_of_range("codegeneracy index " + std::to_string(index) + " out of range for level " +
                              std::to_string(n));
  }
}

}  // namespace knotpi
