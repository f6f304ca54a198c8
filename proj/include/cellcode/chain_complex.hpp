#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcode/gf2.hpp"

namespace cellcode {

/// A finite chain complex over GF(2): cell counts per dimension and boundary
/// matrices boundary[k] of shape cell_count[k-1] x cell_count[k] composing to
/// zero. Lattice builders also attach per-cell coordinate labels and, where
/// the geometry makes them obvious, preferred generator cycles used to pin a
/// reproducible homology basis order.
struct ChainComplex {
  int dim = 0;
  std::vector<std::size_t> cell_count;                    // dim + 1 entries
  std::vector<GF2Matrix> boundary;                        // index 1..dim used
  std::vector<std::vector<std::string>> labels;             // per dimension, may be empty
  std::vector<std::vector<GF2Vector>> preferred_cycles;     // per dimension, may be empty
  std::vector<std::vector<GF2Vector>> preferred_cocycles;   // per dimension, may be empty

  const GF2Matrix& boundary_map(int k) const {
    if (k < 1 || k > dim) throw std::invalid_argument("boundary_map: dimension out of range");
    return boundary[static_cast<std::size_t>(k)];
  }

  /// Boundary map extended by the zero maps at both ends of the complex.
  GF2Matrix boundary_or_zero(int k) const {
    if (k == 0) return GF2Matrix(0, cell_count[0]);
    if (k == dim + 1) return GF2Matrix(cell_count[static_cast<std::size_t>(dim)], 0);
    return boundary_map(k);
  }

  /// Transpose of boundary[k]; shape cell_count[k] x cell_count[k-1].
  GF2Matrix coboundary(int k) const { return boundary_map(k).transposed(); }

  long long euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dim; ++k)
      chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(cell_count[static_cast<std::size_t>(k)]);
    return chi;
  }

  /// Exact check that boundary[k] * boundary[k+1] == 0 at every level.
  bool boundaries_compose_to_zero() const {
    for (int k = 1; k + 1 <= dim; ++k)
      if (!boundary_map(k).mul(boundary_map(k + 1)).is_zero()) return false;
    return true;
  }

  const std::string& label(int k, std::size_t cell) const {
    static const std::string empty;
    const auto& per_dim = labels[static_cast<std::size_t>(k)];
    return cell < per_dim.size() ? per_dim[cell] : empty;
  }
};

/// Plain-text listing of all boundary matrices: a header per matrix followed
/// by one "k row col" line per nonzero entry.
inline void dump_complex(const ChainComplex& x, std::ostream& out) {
  out << "cellcode-complex dim=" << x.dim << "\n";
  for (int k = 0; k <= x.dim; ++k) out << "cells " << k << " " << x.cell_count[static_cast<std::size_t>(k)] << "\n";
  for (int k = 1; k <= x.dim; ++k) {
    const GF2Matrix& b = x.boundary_map(k);
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < b.rows(); ++r) nnz += b.row(r).weight();
    out << "boundary " << k << " " << b.rows() << " " << b.cols() << " " << nnz << "\n";
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c : b.row(r).support()) out << k << " " << r << " " << c << "\n";
  }
}

}  // namespace cellcode
