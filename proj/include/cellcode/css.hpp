#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "cellcode/chain_complex.hpp"
#include "cellcode/gf2.hpp"
#include "cellcode/homology.hpp"

namespace cellcode {

enum class Pauli { X, Z };

/// CSS code carved out of a chain complex: qubits on the i-cells, Z-type
/// checks from the (i-1)-cells (coboundary stars), X-type checks from the
/// (i+1)-cells (boundaries). Logical X operators are homology cycle
/// representatives, logical Z operators the paired cocycles.
struct CssCode {
  std::size_t n = 0;
  int encode_dim = 0;
  std::size_t k = 0;
  GF2Matrix h_z;  // rows = (i-1)-cells
  GF2Matrix h_x;  // rows = (i+1)-cells
  std::vector<GF2Vector> logical_x;
  std::vector<GF2Vector> logical_z;

  HomologyBasis basis() const {
    HomologyBasis b;
    b.k = encode_dim;
    b.betti = k;
    b.cycle_reps = logical_x;
    b.cocycle_reps = logical_z;
    b.canonical = true;
    return b;
  }
};

inline CssCode build_code(const ChainComplex& x, int encode_dim) {
  if (encode_dim < 1 || encode_dim > x.dim - 1)
    throw std::invalid_argument("build_code: encode dimension must lie strictly inside the complex");
  const HomologyBasis basis = homology_basis(x, encode_dim);
  if (basis.betti == 0)
    throw std::invalid_argument(
        "build_code: no logical qubits, the homology group in the encode dimension is trivial");
  if (!basis.canonical)
    throw std::invalid_argument("build_code: homology pairing is degenerate on this complex");
  CssCode code;
  code.n = x.cell_count[static_cast<std::size_t>(encode_dim)];
  code.encode_dim = encode_dim;
  code.k = basis.betti;
  code.h_z = x.boundary_map(encode_dim);
  code.h_x = x.boundary_map(encode_dim + 1).transposed();
  code.logical_x = basis.cycle_reps;
  code.logical_z = basis.cocycle_reps;
  return code;
}

/// Histogram of check-row weights, per family.
struct CheckWeightHistogram {
  std::map<std::size_t, std::size_t> z_rows;
  std::map<std::size_t, std::size_t> x_rows;
};

inline CheckWeightHistogram check_weights(const CssCode& code) {
  CheckWeightHistogram h;
  for (std::size_t r = 0; r < code.h_z.rows(); ++r) ++h.z_rows[code.h_z.row(r).weight()];
  for (std::size_t r = 0; r < code.h_x.rows(); ++r) ++h.x_rows[code.h_x.row(r).weight()];
  return h;
}

/// Number of violated checks caused by a single-qubit error.
inline std::size_t single_error_defect_count(const CssCode& code, Pauli pauli, std::size_t qubit) {
  if (qubit >= code.n) throw std::invalid_argument("single_error_defect_count: qubit index out of range");
  return pauli == Pauli::X ? code.h_z.column(qubit).weight() : code.h_x.column(qubit).weight();
}

/// One side of the distance table: the minimum logical weight, whether it is
/// exact or a constructed upper bound, and the per-generator-class values.
struct DistanceInfo {
  std::size_t weight = 0;
  bool exact = false;
  std::vector<std::size_t> per_class;
};

struct CodeParameters {
  std::size_t n = 0;
  std::size_t k = 0;
  DistanceInfo d_x;
  DistanceInfo d_z;
};

/// Code distances. Exact wherever the logical operators are graph loops
/// (surface codes on both sides; the loop side of cubic codes); the sheet
/// side of cubic codes is reported as the constructed-representative upper
/// bound since minimum-weight two-dimensional sheets are not swept.
inline CodeParameters distances(const CssCode& code, const ChainComplex& x) {
  if (code.n != x.cell_count[static_cast<std::size_t>(code.encode_dim)])
    throw std::invalid_argument("distances: code was not built from this complex");
  CodeParameters params;
  params.n = code.n;
  params.k = code.k;
  const HomologyBasis basis = code.basis();

  auto bound_from_reps = [](const std::vector<GF2Vector>& reps) {
    DistanceInfo info;
    info.exact = false;
    info.weight = kNoRepresentative;
    for (const auto& r : reps) {
      info.per_class.push_back(r.weight());
      info.weight = std::min(info.weight, r.weight());
    }
    return info;
  };
  auto exact_from_sweep = [](const ClassWeights& w) {
    DistanceInfo info;
    info.exact = true;
    info.weight = w.overall_min;
    info.per_class = w.generator_min;
    return info;
  };

  if (x.dim == 2) {
    params.d_x = exact_from_sweep(min_cycle_class_weights(x, basis));
    params.d_z = exact_from_sweep(min_cocycle_class_weights(x, basis));
  } else if (x.dim == 3 && code.encode_dim == 1) {
    params.d_x = exact_from_sweep(min_cycle_class_weights(x, basis));
    params.d_z = bound_from_reps(code.logical_z);
  } else if (x.dim == 3 && code.encode_dim == 2) {
    params.d_x = bound_from_reps(code.logical_x);
    params.d_z = exact_from_sweep(min_cocycle_class_weights(x, basis));
  } else {
    throw std::invalid_argument("distances: unsupported complex/encode dimension combination");
  }
  return params;
}

}  // namespace cellcode
