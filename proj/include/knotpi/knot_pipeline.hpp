#pragma once

// From chi and H_*(K) to the spectral sequence of the long-knot space.
//
// Homotopy side: E^1_{-s,q} = pi_q(K(s)) (x) Q, i.e. chi(s) in internal degree
// q - 1, so weight w sits at q = w(d-2) + 1. The normalized column N^s of
// chi(s)_w is spanned by the Lie words in B_s1..B_{s,s-1} that use every one
// of those letters; in particular it vanishes for s > w + 1. The pipeline
// builds these columns directly and checks them against the generic
// codegeneracy-kernel normalization (verify_support_bound).
//
// Total degree convention: m = q - s, which is q + p for p = -s.

#include "knotpi/cosimplicial.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotpi {

class ResourceGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HomotopyE1 {
  int d = 4;
  int p_max = 0;
  int weight_max = 0;
  /// One bicomplex per weight, columns s = 0..p_max, all in degree q_of(w).
  std::map<int, Bicomplex> weights;

  [[nodiscard]] int q_of(int weight) const { return weight * (d - 2) + 1; }
  [[nodiscard]] std::size_t dimension(int s, int q) const;
  [[nodiscard]] LabeledBasis basis(int s, int q) const;
  /// d^1 : N^s -> N^{s+1} in the given weight.
  [[nodiscard]] SparseRationalMatrix differential(int s, int weight) const;
};

/// Normalized column N^s of chi(s)_w, labels of its basis.
LabeledBasis normalized_chi_column(int d, int s, int weight);
/// sum_i (-1)^i d^i : N^s -> N^{s+1} of chi in one weight.
SparseRationalMatrix normalized_chi_differential(int d, int s, int weight);

/// One weight of E1: columns s = 0..truncation in degree w(d-2)+1 with d^1.
Bicomplex homotopy_weight_bicomplex(int d, int weight, int truncation);
HomotopyE1 homotopy_e1(int d, int p_max, int weight_max);
/// Pages E_1..E_{r_max} of the homotopy side, all weights merged.
std::vector<SpectralSequencePage> homotopy_pages(const HomotopyE1& e1, int r_max);
SpectralSequencePage e2_page(const HomotopyE1& e1);

/// chi_w as a cosimplicial chain complex (degree w(d-2)+1, zero differential).
CosimplicialChainComplex chi_cosimplicial(int d, int weight, int truncation);
/// Reduced homology H_+(K(n)) in degrees k(d-1), k <= k_max.
CosimplicialChainComplex homology_cosimplicial(int d, int k_max, int truncation);

struct SupportBoundEntry {
  int weight = 0;
  int p = 0;
  std::size_t generic = 0;  // dim of the codegeneracy-kernel intersection
  std::size_t direct = 0;   // full-support row words
  bool direct_in_kernel = false;
};

struct SupportBoundReport {
  int d = 4;
  std::vector<SupportBoundEntry> entries;
  /// generic N^p_w = 0 whenever p > 2w
  [[nodiscard]] bool bound_2w() const;
  /// generic N^p_w = 0 whenever p > w + 1
  [[nodiscard]] bool bound_w1() const;
  /// the direct columns are the normalized columns
  [[nodiscard]] bool direct_agrees() const;
  [[nodiscard]] bool passed() const { return bound_2w() && bound_w1() && direct_agrees(); }
};

/// Generic normalization of chi(p)_w for all w <= weight_max, p <= n_max.
SupportBoundReport verify_support_bound(int d, int weight_max, int n_max);

struct PiContribution {
  int p = 0;  // cosimplicial, <= 0
  int q = 0;
  int weight = 0;
  std::size_t dimension = 0;
};

struct KnotPiRow {
  int m = 0;
  std::size_t dimension = 0;
  std::vector<PiContribution> contributions;
  bool complete = false;
};

struct PiTableLimits {
  int max_weight = 6;
  /// Weights are certified by generic normalization only while dim chi(w+2)_w stays below this.
  std::size_t certify_dimension_limit = 6000;
};

struct KnotPiTable {
  int d = 4;
  int m_max = 0;
  std::vector<KnotPiRow> rows;
  std::map<int, int> truncation;  // weight -> columns used
  std::map<int, bool> certified;  // weight -> support bound verified through the truncation
};

/// Weights that can contribute to pi_m: w(d-2) >= m + 1 and w(d-3) <= m.
std::pair<int, int> contributing_weights(int d, int m);

/// One weight of the table: E2 of its bicomplex truncated at w + 2.
struct PiWeightComponent {
  int weight = 0;
  int truncation = 0;
  SpectralSequencePage e2;
  bool certified = false;
};

/// Largest weight rows 0..m_max need; throws ResourceGuard above limits.max_weight.
int pi_table_top_weight(int d, int m_max, const PiTableLimits& limits = {});
PiWeightComponent pi_weight_component(int d, int weight, const PiTableLimits& limits = {});
/// components[w-1] must hold weight w for every w up to pi_table_top_weight.
KnotPiTable assemble_pi_table(int d, int m_max, const std::vector<PiWeightComponent>& components);

KnotPiTable knot_pi_table(int d, int m_max, const PiTableLimits& limits = {});

SpectralSequencePage homology_side_e2(int d, int p_max, int degree_max);
std::vector<SpectralSequencePage> homology_side_pages(int d, int p_max, int degree_max, int r_max);

struct HurewiczReport {
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Weight-1 homotopy d^1 against the degree-(d-1) homology d^1, gamma_ij <-> B_ij.
HurewiczReport hurewicz_check(int d, int p_max);

}  // namespace knotpi
