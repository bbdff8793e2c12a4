#pragma once

// Chords (i,j), 1 <= j < i <= n, index the generators B_ij of chi(n) and the
// classes gamma_ij / A_ij of the configuration space. Both cosimplicial objects
// act on chords by the same doubling and forgetting rules, collected here.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace knotpi {

struct Chord {
  int i = 2;
  int j = 1;
  friend auto operator<=>(const Chord&, const Chord&) = default;
};

/// Number of chords on n points.
constexpr int chord_count(int n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Dense id; the chords of a fixed first index i are contiguous and ordered by j.
constexpr int chord_id(int i, int j) { return (i - 1) * (i - 2) / 2 + (j - 1); }
constexpr int chord_id(Chord c) { return chord_id(c.i, c.j); }
Chord chord_of(int id);

/// "21" for (2,1); "10,3" once an index has two digits.
std::string chord_suffix(Chord c);

/// Image of a chord under the coface d^i : n points -> n+1 points, as a sum of
/// chords with coefficient +1. d^0 shifts everything up, d^{n+1} is the
/// inclusion, and 1 <= i <= n doubles point i.
std::vector<Chord> coface_on_chord(int i, int n, Chord c);

/// Image of a chord under the codegeneracy s^j, which forgets point j+1.
std::optional<Chord> codegeneracy_on_chord(int j, Chord c);

enum class MapKind { Coface, Codegeneracy };

/// Target level of a structure map out of level n.
constexpr int target_level(MapKind kind, int n) { return kind == MapKind::Coface ? n + 1 : n - 1; }

/// Validates the index range of a structure map; throws std::out_of_range.
void check_map_index(MapKind kind, int index, int n);

}  // namespace knotpi
