#pragma once

#include "knotpi/chords.hpp"
#include "knotpi/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace knotpi {

/// Matrix of d^index or s^index out of level n, in one fixed grading component.
using StructureMatrixFn = std::function<SparseRationalMatrix(MapKind kind, int index, int n)>;

/// Checks every cosimplicial identity whose maps stay within levels 0..top_level
/// and returns a description of each failure (empty means all hold):
///   d^j d^i = d^i d^{j-1} (i < j),  s^j s^i = s^i s^{j+1} (i <= j),
///   s^j d^i = d^i s^{j-1} (i < j), = id (i = j, j+1), = d^{i-1} s^j (i > j+1).
std::vector<std::string> cosimplicial_identity_failures(const StructureMatrixFn& map, int top_level);

}  // namespace knotpi
