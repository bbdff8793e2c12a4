#pragma once

// The Quillen model L(H_*(K(n))) = (free graded Lie algebra on s^-1 H_+, d_2)
// and the comparison map phi: L(H_*(K(n))) -> chi(n).
//
// A generator s^-1 xi_M has weight k = |M| and degree k(d-1) - 1. The chains
// are bigraded by total weight w and bracket length b; the differential keeps
// w and raises b by one, so each weight is a finite complex
//   C_{w,1} -> C_{w,2} -> ... -> C_{w,w}
// with C_{w,b} in degree w(d-1) - b.

#include "knotpi/chords.hpp"
#include "knotpi/conf_homology.hpp"
#include "knotpi/free_lie.hpp"
#include "knotpi/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace knotpi {

struct QuillenGenerator {
  Monomial monomial;
  int weight = 1;
  std::size_t index = 0;  // position in the admissible basis of this length
  std::string label;
};

class QuillenDGL {
 public:
  QuillenDGL(int n, int d, int max_weight);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] int max_weight() const { return max_weight_; }
  [[nodiscard]] int degree(int weight, int length) const { return weight * (d_ - 1) - length; }

  [[nodiscard]] const FreeLieAlgebra& free() const { return free_; }
  [[nodiscard]] const std::vector<QuillenGenerator>& generators() const { return generators_; }
  /// Generator id of s^-1 xi_M; s^-1 gamma_c has id chord_id(c).
  [[nodiscard]] Letter generator_id(const Monomial& m) const { return ids_.at(m); }
  /// Id of the generator for the i-th admissible monomial of length k.
  [[nodiscard]] Letter generator_id(int k, std::size_t i) const {
    return static_cast<Letter>(offsets_.at(k) + i);
  }

  /// Basis of C_{w,b}.
  [[nodiscard]] const LieBasis& chains(int weight, int length) const;
  [[nodiscard]] std::size_t dimension(int weight, int length) const;

  /// d_2(s^-1 xi) as a Lie tensor.
  [[nodiscard]] const Tensor& differential_on_generator(Letter g) const { return on_generator_.at(g); }
  [[nodiscard]] LieElement differential(const LieElement& e) const;
  /// C_{w,b} -> C_{w,b+1}.
  [[nodiscard]] const SparseRationalMatrix& differential_matrix(int weight, int length) const;

 private:
  int n_;
  int d_;
  int max_weight_;
  std::vector<QuillenGenerator> generators_;
  std::map<Monomial, Letter> ids_;
  std::vector<std::size_t> offsets_;
  FreeLieAlgebra free_;
  std::vector<Tensor> on_generator_;
  std::map<std::pair<int, int>, SparseRationalMatrix> differentials_;
};

/// Builds the model through `max_weight` and checks d^2 = 0 in every bidegree
/// (std::logic_error otherwise). Shared instance per (n, d, max_weight); thread-safe.
const QuillenDGL& build_quillen_dgl(int n, int d, int max_weight);

struct QuillenHomologyEntry {
  int weight = 0;
  int length = 0;
  int degree = 0;
  std::size_t chains = 0;
  std::size_t dimension = 0;
};

std::vector<QuillenHomologyEntry> quillen_homology(const QuillenDGL& q);

/// phi in each weight w, on C_{w,w} (it vanishes on shorter brackets).
struct PhiMap {
  int n = 0;
  int d = 4;
  int max_weight = 1;
  std::map<int, SparseRationalMatrix> matrices;  // C_{w,w} -> chi(n)_w
  std::vector<std::string> chain_map_failures;   // labels of classes x with phi(dx) != 0
};

PhiMap phi_map(const QuillenDGL& q);
PhiMap phi_map(int n, int d, int max_weight);

/// The Lie map L(H_*(K(n))) -> L(H_*(K(m))) induced by a homology structure map, on C_{w,b}.
SparseRationalMatrix quillen_structure_matrix(const QuillenDGL& source, const QuillenDGL& target, MapKind kind,
                                              int index, int weight, int length);

struct QuasiIsoEntry {
  int weight = 0;
  int length = 0;
  int degree = 0;
  std::size_t source_homology = 0;
  std::size_t chi_dimension = 0;  // 0 off the diagonal b = w
  std::size_t rank = 0;           // rank of H(phi)
  bool pass = false;
};

struct QuasiIsoReport {
  int n = 0;
  int d = 4;
  int max_weight = 1;
  std::vector<QuasiIsoEntry> entries;
  std::vector<std::string> chain_map_failures;
  std::vector<std::string> naturality_failures;

  [[nodiscard]] bool passed() const;
};

QuasiIsoReport verify_quasi_iso(int n, int d, int max_weight);

}  // namespace knotpi
