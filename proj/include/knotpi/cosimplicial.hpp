#pragma once

// Cosimplicial chain complexes, their normalized bicomplexes, truncated
// totalizations and the Bousfield-Kan spectral sequence of the Tot filtration.
//
// Cosimplicial level s carries a chain complex with internal degree q. The
// bicomplex column s is N^s; the horizontal map N^s -> N^{s+1} keeps q. The
// total complex Tot^N has (Tot^N)_j = prod_{s<=N} N^s_{s+j} and differential
// D = d_v + (-1)^q d_h. Filtering by s >= s0 gives pages E_r^{s,q}, stored
// with p = -s <= 0 and d_r : (p, q) -> (p - r, q + r - 1).

#include "knotpi/chords.hpp"
#include "knotpi/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace knotpi {

/// Per-degree matrices; a missing degree means the zero map.
using GradedMatrix = std::map<int, SparseRationalMatrix>;

struct ChainComplexQ {
  std::map<int, LabeledBasis> bases;
  /// boundary[j] : C_j -> C_{j-1}
  GradedMatrix boundary;

  [[nodiscard]] std::size_t dimension(int j) const;
  [[nodiscard]] const LabeledBasis& basis(int j) const;
  /// Degrees with nonzero dimension, ascending.
  [[nodiscard]] std::vector<int> degrees() const;
  [[nodiscard]] SparseRationalMatrix boundary_at(int j) const;
  [[nodiscard]] bool has_zero_differential() const;
  [[nodiscard]] std::size_t homology(int j) const;
  /// Throws NotAComplex on d^2 != 0 and std::invalid_argument on bad shapes.
  void validate() const;
};

/// Matrix of a graded map in degree j, or the zero map of the given shape.
SparseRationalMatrix graded_at(const GradedMatrix& m, int j, std::size_t rows, std::size_t cols);

struct CosimplicialChainComplex {
  std::vector<ChainComplexQ> levels;                    // 0..N
  std::vector<std::vector<GradedMatrix>> cofaces;         // [n][i] : level n -> n+1, n < N
  std::vector<std::vector<GradedMatrix>> codegeneracies;  // [n][j] : level n -> n-1

  [[nodiscard]] int truncation() const { return static_cast<int>(levels.size()) - 1; }
  [[nodiscard]] SparseRationalMatrix coface(int i, int n, int j) const;
  [[nodiscard]] SparseRationalMatrix codegeneracy(int k, int n, int j) const;
  [[nodiscard]] SparseRationalMatrix map(MapKind kind, int index, int n, int j) const;
  /// Internal degrees occurring at any level.
  [[nodiscard]] std::vector<int> degrees() const;

  /// Cosimplicial identities and the chain-map property, as failure descriptions.
  [[nodiscard]] std::vector<std::string> identity_failures() const;

  /// Every level equals `c`, every structure map is the identity.
  static CosimplicialChainComplex constant(const ChainComplexQ& c, int truncation);
};

struct NormalizedColumn {
  ChainComplexQ complex;
  GradedMatrix inclusion;  // N^p_j -> V^p_j, columns are the chosen basis
};

/// N^p = V^p cap ker s^0 cap ... cap ker s^{p-1}, degreewise.
NormalizedColumn normalize(const CosimplicialChainComplex& v, int p);

struct Bicomplex {
  std::vector<ChainComplexQ> columns;   // s = 0..N
  std::vector<GradedMatrix> horizontal;  // [s] : column s -> column s+1, s < N

  [[nodiscard]] int truncation() const { return static_cast<int>(columns.size()) - 1; }
  [[nodiscard]] SparseRationalMatrix horizontal_at(int s, int q) const;
  /// d_h d_h = 0 and d_h d_v = d_v d_h, as failure descriptions.
  [[nodiscard]] std::vector<std::string> failures() const;
};

/// Sum_i (-1)^i d^i restricted to N^p -> N^{p+1}; needs p + 1 <= truncation.
GradedMatrix horizontal_differential(const CosimplicialChainComplex& v, int p);
GradedMatrix horizontal_differential(const CosimplicialChainComplex& v, int p, const NormalizedColumn& from,
                                     const NormalizedColumn& to);

Bicomplex normalized_bicomplex(const CosimplicialChainComplex& v);
/// Columns are the full levels, horizontal maps the alternating coface sums.
Bicomplex unnormalized_bicomplex(const CosimplicialChainComplex& v);

ChainComplexQ total_complex(const Bicomplex& b, int n);
ChainComplexQ total_complex(const CosimplicialChainComplex& v, int n);

struct PageEntry {
  std::size_t dimension = 0;
  bool stable = false;
};

struct SpectralSequencePage {
  int r = 1;
  int truncation = 0;
  /// Keyed by (p, q), p = -s. Every position with nonzero E^0 is present.
  std::map<std::pair<int, int>, PageEntry> entries;
  /// d_r out of (p, q), into (p - r, q + r - 1); only nonzero maps are stored.
  std::map<std::pair<int, int>, SparseRationalMatrix> differentials;

  [[nodiscard]] std::size_t dimension(int p, int q) const;
  [[nodiscard]] bool stable(int p, int q) const;
};

/// E_r^{s} agrees with the untruncated spectral sequence iff s + r - 1 <= N.
inline bool page_entry_stable(int s, int r, int truncation) { return s + r - 1 <= truncation; }

/// Pages E_1 .. E_{r_max} of the Tot^N filtration.
std::vector<SpectralSequencePage> bkss_pages(const Bicomplex& b, int r_max);
std::vector<SpectralSequencePage> bkss_pages(const CosimplicialChainComplex& v, int r_max);

struct CollapseReport {
  int r_max = 2;
  int truncation = 0;
  std::size_t compared = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Compares every stable entry of E_3..E_{r_max} with E_2. Requires zero vertical differentials.
CollapseReport formality_collapse_check(const Bicomplex& b, int r_max);
CollapseReport formality_collapse_check(const CosimplicialChainComplex& v, int r_max);
CollapseReport collapse_report(const std::vector<SpectralSequencePage>& pages);

}  // namespace knotpi
