#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cellcode/chain_complex.hpp"
#include "cellcode/gf2.hpp"
#include "cellcode/lattice.hpp"

namespace cellcode {

/// dim Ker(boundary_k) - rank(boundary_{k+1}) over GF(2).
inline std::size_t betti(const ChainComplex& x, int k) {
  if (k < 0 || k > x.dim) throw std::invalid_argument("betti: dimension out of range");
  const std::size_t cells = x.cell_count[static_cast<std::size_t>(k)];
  const std::size_t rank_down = rank(x.boundary_or_zero(k));
  const std::size_t rank_up = rank(x.boundary_or_zero(k + 1));
  return cells - rank_down - rank_up;
}

/// Homology and cohomology representatives in cell dimension k. After
/// canonicalization the pairing of cocycle i with cycle j is the identity,
/// which ties each logical-X class to its conjugate logical-Z class.
struct HomologyBasis {
  int k = 0;
  std::size_t betti = 0;
  std::vector<GF2Vector> cycle_reps;
  std::vector<GF2Vector> cocycle_reps;
  bool canonical = false;
};

/// Overlap-parity pairing matrix: entry (i, j) = <cocycle_i, cycle_j>.
inline GF2Matrix pairing_matrix(const std::vector<GF2Vector>& cocycles,
                                const std::vector<GF2Vector>& cycles) {
  GF2Matrix p(cocycles.size(), cycles.size());
  for (std::size_t i = 0; i < cocycles.size(); ++i)
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      if (cocycles[i].size() != cycles[j].size())
        throw std::invalid_argument("pairing_matrix: representative lengths differ");
      if (cocycles[i].dot(cycles[j])) p.set(i, j, true);
    }
  return p;
}

inline GF2Matrix pairing_matrix(const HomologyBasis& basis) {
  return pairing_matrix(basis.cocycle_reps, basis.cycle_reps);
}

/// True iff c is a cycle that is not a boundary.
inline bool is_nontrivial_cycle(const ChainComplex& x, int k, const GF2Vector& c) {
  if (k < 0 || k > x.dim) throw std::invalid_argument("is_nontrivial_cycle: dimension out of range");
  if (c.size() != x.cell_count[static_cast<std::size_t>(k)])
    throw std::invalid_argument("is_nontrivial_cycle: chain length mismatch");
  if (!x.boundary_or_zero(k).mul(c).is_zero()) return false;
  return !solve(x.boundary_or_zero(k + 1), c).has_value();
}

/// Compute a homology basis for dimension k. Cycle representatives start
/// from the complex's preferred generator cycles when present (so built
/// lattices report classes in a fixed geometric order) and are completed
/// from the kernel; cocycle representatives come from the coboundary kernel
/// and are then recombined so the pairing matrix becomes the identity.
inline HomologyBasis homology_basis(const ChainComplex& x, int k) {
  if (k < 0 || k > x.dim) throw std::invalid_argument("homology_basis: dimension out of range");
  HomologyBasis basis;
  basis.k = k;
  basis.betti = betti(x, k);

  const GF2Matrix down = x.boundary_or_zero(k);
  const GF2Matrix up = x.boundary_or_zero(k + 1);

  GF2Eliminator cycle_span;
  for (const auto& v : image_basis(up)) cycle_span.add(v);

  if (static_cast<std::size_t>(k) < x.preferred_cycles.size()) {
    for (const auto& c : x.preferred_cycles[static_cast<std::size_t>(k)]) {
      if (!down.mul(c).is_zero()) throw std::logic_error("homology_basis: preferred chain is not a cycle");
      if (cycle_span.add(c)) basis.cycle_reps.push_back(c);
    }
  }
  for (const auto& v : kernel_basis(down)) {
    if (basis.cycle_reps.size() == basis.betti) break;
    if (cycle_span.add(v)) basis.cycle_reps.push_back(v);
  }
  if (basis.cycle_reps.size() != basis.betti)
    throw std::logic_error("homology_basis: cycle basis extraction failed");

  GF2Eliminator cocycle_span;
  for (const auto& v : image_basis(down.transposed())) cocycle_span.add(v);
  if (static_cast<std::size_t>(k) < x.preferred_cocycles.size()) {
    for (const auto& s : x.preferred_cocycles[static_cast<std::size_t>(k)]) {
      if (!up.transposed().mul(s).is_zero())
        throw std::logic_error("homology_basis: preferred cochain is not a cocycle");
      if (cocycle_span.add(s)) basis.cocycle_reps.push_back(s);
    }
  }
  for (const auto& v : kernel_basis(up.transposed())) {
    if (basis.cocycle_reps.size() == basis.betti) break;
    if (cocycle_span.add(v)) basis.cocycle_reps.push_back(v);
  }
  if (basis.cocycle_reps.size() != basis.betti)
    throw std::logic_error("homology_basis: cocycle basis extraction failed");

  // Recombine cocycles so the pairing becomes the identity. A singular
  // pairing (possible only off closed manifolds) leaves the raw basis.
  const auto inv = inverse(pairing_matrix(basis.cocycle_reps, basis.cycle_reps));
  if (inv) {
    std::vector<GF2Vector> combined;
    combined.reserve(basis.betti);
    for (std::size_t i = 0; i < basis.betti; ++i) {
      GF2Vector s(x.cell_count[static_cast<std::size_t>(k)]);
      for (std::size_t j = 0; j < basis.betti; ++j)
        if (inv->get(i, j)) s ^= basis.cocycle_reps[j];
      combined.push_back(std::move(s));
    }
    basis.cocycle_reps = std::move(combined);
    basis.canonical = true;
  }
  return basis;
}

constexpr std::size_t kNoRepresentative = std::numeric_limits<std::size_t>::max() / 2;

/// Minimum weights of nontrivial classes, indexed by pairing signature
/// against a fixed functional basis. generator_min[i] is the weight of the
/// class dual to functional i.
struct ClassWeights {
  std::size_t basis_rank = 0;
  std::vector<std::size_t> min_weight;      // size 1 << basis_rank, [0] = 0
  std::vector<std::size_t> generator_min;   // size basis_rank
  std::size_t overall_min = kNoRepresentative;
};

/// Exact minimum weight of a graph cycle vector in every signature class.
///
/// Runs breadth-first search on the signature cover (node, signature):
/// traversing a link toggles the signature by the bits the functionals
/// assign to its cell. The shortest closed walk at signature s from any
/// start node gives the minimum weight of a connected cycle in class s;
/// a min-plus closure over signatures then accounts for representatives
/// with several connected components.
inline ClassWeights min_class_weights_on_graph(const AdjacencyGraph& graph,
                                               const std::vector<GF2Vector>& functionals) {
  ClassWeights out;
  out.basis_rank = functionals.size();
  const std::size_t nsig = std::size_t{1} << out.basis_rank;
  out.min_weight.assign(nsig, kNoRepresentative);
  out.min_weight[0] = 0;

  std::vector<std::size_t> link_sig(graph.links.size(), 0);
  for (std::size_t l = 0; l < graph.links.size(); ++l)
    for (std::size_t i = 0; i < functionals.size(); ++i)
      if (functionals[i].get(graph.links[l].cell)) link_sig[l] |= std::size_t{1} << i;

  std::vector<std::vector<std::pair<int, std::size_t>>> adj(graph.node_count);
  for (std::size_t l = 0; l < graph.links.size(); ++l) {
    adj[graph.links[l].a].push_back({graph.links[l].b, link_sig[l]});
    adj[graph.links[l].b].push_back({graph.links[l].a, link_sig[l]});
  }

  std::vector<std::size_t> dist(graph.node_count * nsig);
  for (std::size_t start = 0; start < graph.node_count; ++start) {
    std::fill(dist.begin(), dist.end(), kNoRepresentative);
    std::queue<std::size_t> queue;
    dist[start * nsig] = 0;
    queue.push(start * nsig);
    while (!queue.empty()) {
      const std::size_t state = queue.front();
      queue.pop();
      const std::size_t node = state / nsig, sig = state % nsig;
      for (const auto& [next, lsig] : adj[node]) {
        const std::size_t next_state = static_cast<std::size_t>(next) * nsig + (sig ^ lsig);
        if (dist[next_state] > dist[state] + 1) {
          dist[next_state] = dist[state] + 1;
          queue.push(next_state);
        }
      }
    }
    for (std::size_t sig = 1; sig < nsig; ++sig)
      out.min_weight[sig] = std::min(out.min_weight[sig], dist[start * nsig + sig]);
  }

  // Disconnected representatives: class s may be realized as a union of
  // closed walks whose signatures add up to s.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 1; a < nsig; ++a)
      for (std::size_t b = a; b < nsig; ++b) {
        const std::size_t w = out.min_weight[a] + out.min_weight[b];
        if (w < out.min_weight[a ^ b]) {
          out.min_weight[a ^ b] = w;
          changed = true;
        }
      }
  }

  out.generator_min.resize(out.basis_rank);
  for (std::size_t i = 0; i < out.basis_rank; ++i)
    out.generator_min[i] = out.min_weight[std::size_t{1} << i];
  for (std::size_t sig = 1; sig < nsig; ++sig)
    out.overall_min = std::min(out.overall_min, out.min_weight[sig]);
  return out;
}

/// Exact per-class minimum weights of 1-cycles (k = 1), classified by the
/// canonical cocycle signature. Primal-graph breadth-first sweep.
inline ClassWeights min_cycle_class_weights(const ChainComplex& x, const HomologyBasis& basis) {
  if (basis.k != 1) throw std::invalid_argument("min_cycle_class_weights: needs a k=1 basis");
  return min_class_weights_on_graph(adjacency_graph(x, false), basis.cocycle_reps);
}

/// Exact per-class minimum weights of (dim-1)-cocycles, classified by the
/// canonical cycle signature. Cocycles in the top-but-one dimension are the
/// cycle vectors of the dual graph.
inline ClassWeights min_cocycle_class_weights(const ChainComplex& x, const HomologyBasis& basis) {
  if (basis.k != x.dim - 1)
    throw std::invalid_argument("min_cocycle_class_weights: needs a basis in dimension dim-1");
  return min_class_weights_on_graph(adjacency_graph(x, true), basis.cycle_reps);
}

}  // namespace cellcode
