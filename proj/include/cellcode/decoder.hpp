#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cellcode/css.hpp"
#include "cellcode/gf2.hpp"
#include "cellcode/lattice.hpp"
#include "cellcode/matching.hpp"
#include "cellcode/rng.hpp"

namespace cellcode {

/// Which check family drives an experiment. Side Z decodes the defects of
/// the h_z (star) checks on the primal graph, so its residuals are cycles;
/// side X decodes h_x (boundary-check) defects on the dual graph, so its
/// residuals are cocycles.
enum class ExperimentSide { Z, X };

inline const char* side_name(ExperimentSide s) { return s == ExperimentSide::Z ? "z" : "x"; }

enum class NoiseKind { CodeCapacity, Phenomenological };

/// Per-qubit flip probability p each round; phenomenological runs also flip
/// each syndrome bit with probability p, except in the final round which is
/// read out perfectly.
struct NoiseModel {
  NoiseKind kind = NoiseKind::CodeCapacity;
  double p = 0.0;
  int rounds = 1;
};

struct PauliFrame {
  GF2Vector x_support;
  GF2Vector z_support;
};

struct Syndrome {
  std::vector<std::size_t> z_check_defects;
  std::vector<std::size_t> x_check_defects;
};

/// One qubit flip per qubit with probability p, on the support matching the
/// requested side (side Z errors are seen by h_z, side X errors by h_x).
inline PauliFrame sample_error(const CssCode& code, const NoiseModel& model, ExperimentSide side,
                               TrialRng& rng) {
  if (model.p < 0.0 || model.p > 1.0) throw std::invalid_argument("sample_error: p must lie in [0, 1]");
  PauliFrame frame{GF2Vector(code.n), GF2Vector(code.n)};
  GF2Vector& support = side == ExperimentSide::Z ? frame.x_support : frame.z_support;
  for (std::size_t q = 0; q < code.n; ++q)
    if (rng.bernoulli(model.p)) support.set(q, true);
  return frame;
}

inline Syndrome extract_syndrome(const CssCode& code, const PauliFrame& frame) {
  if (frame.x_support.size() != code.n || frame.z_support.size() != code.n)
    throw std::invalid_argument("extract_syndrome: frame does not fit the code");
  Syndrome s;
  s.z_check_defects = code.h_z.mul(frame.x_support).support();
  s.x_check_defects = code.h_x.mul(frame.z_support).support();
  return s;
}

struct SpacetimeDefect {
  int check = 0;
  int round = 0;
  friend bool operator==(const SpacetimeDefect&, const SpacetimeDefect&) = default;
};

/// Decoding graph for one side of a code: checks are nodes, qubits are unit
/// links, and all-pairs breadth-first distances are precomputed. With a
/// phenomenological model the nodes conceptually replicate once per round
/// and (check, t)-(check, t+1) time links carry unit weight, so spacetime
/// distances separate into spatial distance plus round difference.
class MatchingGraph {
 public:
  MatchingGraph(const CssCode& code, ExperimentSide side, const NoiseModel& model)
      : side_(side), rounds_(model.kind == NoiseKind::Phenomenological ? model.rounds : 1),
        qubit_count_(code.n) {
    if (model.kind == NoiseKind::Phenomenological && model.rounds < 2)
      throw std::invalid_argument("MatchingGraph: phenomenological decoding needs at least 2 rounds");
    const GF2Matrix& checks = side == ExperimentSide::Z ? code.h_z : code.h_x;
    graph_ = detail::graph_from_incidence(checks);  // rejects non-pairable check families
    for (auto& nbrs : graph_.neighbors) std::sort(nbrs.begin(), nbrs.end());

    qubit_checks_.assign(code.n, {});
    for (const auto& link : graph_.links) {
      qubit_checks_[link.cell].push_back(link.a);
      qubit_checks_[link.cell].push_back(link.b);
    }

    const std::size_t n = graph_.node_count;
    dist_.assign(n, std::vector<std::uint16_t>(n, kUnreachable));
    for (std::size_t start = 0; start < n; ++start) {
      auto& row = dist_[start];
      std::queue<int> queue;
      row[start] = 0;
      queue.push(static_cast<int>(start));
      while (!queue.empty()) {
        const int node = queue.front();
        queue.pop();
        for (const auto& [next, cell] : graph_.neighbors[node]) {
          (void)cell;
          if (row[next] == kUnreachable) {
            row[next] = static_cast<std::uint16_t>(row[node] + 1);
            queue.push(next);
          }
        }
      }
    }
  }

  ExperimentSide side() const { return side_; }
  int rounds() const { return rounds_; }
  std::size_t check_count() const { return graph_.node_count; }
  std::size_t node_count() const { return graph_.node_count * static_cast<std::size_t>(rounds_); }
  std::size_t qubit_count() const { return qubit_count_; }
  const AdjacencyGraph& space_graph() const { return graph_; }
  const std::vector<int>& checks_of_qubit(std::size_t q) const { return qubit_checks_[q]; }

  int spatial_distance(int a, int b) const { return dist_[a][b]; }

  int distance(const SpacetimeDefect& a, const SpacetimeDefect& b) const {
    return dist_[a.check][b.check] + std::abs(a.round - b.round);
  }

  /// XOR the qubits along a deterministic shortest path between two checks.
  void xor_path(GF2Vector& correction, int from, int to) const {
    int cur = from;
    while (cur != to) {
      int best_node = -1;
      std::size_t best_cell = 0;
      for (const auto& [next, cell] : graph_.neighbors[cur]) {
        if (dist_[next][to] + 1 == dist_[cur][to]) {
          best_node = next;
          best_cell = cell;
          break;  // neighbors are sorted, first hit is the canonical choice
        }
      }
      if (best_node < 0) throw std::logic_error("MatchingGraph::xor_path: no descent step");
      correction.flip(best_cell);
      cur = best_node;
    }
  }

 private:
  static constexpr std::uint16_t kUnreachable = 0xffff;

  ExperimentSide side_;
  int rounds_;
  std::size_t qubit_count_;
  AdjacencyGraph graph_;
  std::vector<std::vector<int>> qubit_checks_;
  std::vector<std::vector<std::uint16_t>> dist_;
};

/// Minimum-weight perfect matching of the defects; the correction flips the
/// qubits along a shortest spatial path for every matched pair (time-like
/// displacement contributes no data correction).
inline GF2Vector mwpm_decode(const MatchingGraph& graph, const std::vector<SpacetimeDefect>& defects,
                             BlossomMatcher& matcher) {
  GF2Vector correction(graph.qubit_count());
  if (defects.empty()) return correction;
  if (defects.size() % 2 != 0)
    throw std::invalid_argument("mwpm_decode: odd defect count; closed complexes pair defects");
  const int m = static_cast<int>(defects.size());
  if (m == 2) {
    graph.xor_path(correction, defects[0].check, defects[1].check);
    return correction;
  }
  std::vector<std::vector<std::int64_t>> w(m, std::vector<std::int64_t>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) w[i][j] = w[j][i] = graph.distance(defects[i], defects[j]);
  const std::vector<int> mate = matcher.min_weight_perfect_matching(w);
  for (int i = 0; i < m; ++i)
    if (mate[i] > i) graph.xor_path(correction, defects[i].check, defects[mate[i]].check);
  return correction;
}

/// Detection events from a round-by-round syndrome history (the final entry
/// being the perfect readout): an event wherever a check's outcome differs
/// from the previous round, with round -1 taken as all clear.
inline std::vector<SpacetimeDefect> detection_events(const std::vector<std::vector<std::uint8_t>>& measured) {
  std::vector<SpacetimeDefect> events;
  for (std::size_t t = 0; t < measured.size(); ++t)
    for (std::size_t c = 0; c < measured[t].size(); ++c) {
      const std::uint8_t prev = t == 0 ? 0 : measured[t - 1][c];
      if (measured[t][c] != prev) events.push_back({static_cast<int>(c), static_cast<int>(t)});
    }
  return events;
}

/// Post-decode verdict: the residual's pairing signature against the
/// conjugate logical operators, one flag per encoded qubit.
struct DecodeOutcome {
  GF2Vector correction;
  std::vector<bool> per_logical;
  bool any_failure = false;
};

inline DecodeOutcome judge(const CssCode& code, ExperimentSide side, const GF2Vector& error,
                           const GF2Vector& correction) {
  const GF2Matrix& checks = side == ExperimentSide::Z ? code.h_z : code.h_x;
  if (!(checks.mul(error) == checks.mul(correction)))
    throw std::invalid_argument("judge: correction does not reproduce the observed syndrome");
  const GF2Vector residual = error ^ correction;
  const auto& conjugates = side == ExperimentSide::Z ? code.logical_z : code.logical_x;
  DecodeOutcome outcome;
  outcome.correction = correction;
  for (const auto& logical : conjugates) {
    const bool flag = residual.dot(logical);
    outcome.per_logical.push_back(flag);
    outcome.any_failure = outcome.any_failure || flag;
  }
  return outcome;
}

/// One complete sample-extract-decode-judge trial.
inline DecodeOutcome run_trial(const CssCode& code, const MatchingGraph& graph, const NoiseModel& model,
                               TrialRng& rng, BlossomMatcher& matcher) {
  const ExperimentSide side = graph.side();
  if (model.kind == NoiseKind::CodeCapacity) {
    const PauliFrame frame = sample_error(code, model, side, rng);
    const GF2Vector& error = side == ExperimentSide::Z ? frame.x_support : frame.z_support;
    const GF2Matrix& checks = side == ExperimentSide::Z ? code.h_z : code.h_x;
    std::vector<SpacetimeDefect> defects;
    for (std::size_t c : checks.mul(error).support()) defects.push_back({static_cast<int>(c), 0});
    const GF2Vector correction = mwpm_decode(graph, defects, matcher);
    return judge(code, side, error, correction);
  }

  // Phenomenological: data errors accumulate each round, every round's
  // syndrome is read with per-check flip probability p, and the final
  // round is read perfectly.
  const int rounds = graph.rounds();
  GF2Vector error(code.n);
  std::vector<std::uint8_t> syndrome(graph.check_count(), 0);
  std::vector<std::vector<std::uint8_t>> measured;
  measured.reserve(rounds);
  for (int t = 0; t < rounds; ++t) {
    for (std::size_t q = 0; q < code.n; ++q)
      if (rng.bernoulli(model.p)) {
        error.flip(q);
        for (int c : graph.checks_of_qubit(q)) syndrome[c] ^= 1;
      }
    std::vector<std::uint8_t> readout = syndrome;
    if (t + 1 < rounds)
      for (std::size_t c = 0; c < readout.size(); ++c)
        if (rng.bernoulli(model.p)) readout[c] ^= 1;
    measured.push_back(std::move(readout));
  }
  const GF2Vector correction = mwpm_decode(graph, detection_events(measured), matcher);
  return judge(code, graph.side(), error, correction);
}

}  // namespace cellcode
