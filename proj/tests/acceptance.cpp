// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
//
// The statistical criteria fix their seeds, trial counts and probability
// grids here, so a run is a deterministic reproduction of the reported
// numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cellcode/css.hpp"
#include "cellcode/decoder.hpp"
#include "cellcode/experiment.hpp"
#include "cellcode/homology.hpp"
#include "cellcode/lattice.hpp"
#include "cellcode/matching.hpp"
#include "cellcode/rng.hpp"

using namespace cellcode;

namespace {

struct Reporter {
  int failures = 0;
  void report(int id, const std::string& name, bool pass, const std::string& detail,
              double seconds) {
    std::printf("%s  criterion %2d: %s [%s] (%.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  void run(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool pass = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      pass = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(id, name, pass, detail, secs);
  }
};

ExperimentConfig make_config(Topology kind, int size, ExperimentSide side, NoiseKind noise,
                             int rounds, std::vector<double> ps, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  if (kind == Topology::Torus3)
    cfg.topology = {kind, 0, 0, size, size, size};
  else
    cfg.topology = {kind, size, size, 0, 0, 0};
  cfg.encode_dim = 1;
  cfg.side = side;
  cfg.model = {noise, 0.0, rounds};
  cfg.p_values = std::move(ps);
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

bool criterion_homology_table(std::string& detail) {
  bool ok = true;
  std::ostringstream d;
  for (int l : {4, 5, 8}) {
    ok &= betti(build_surface({l, l, false, false}), 1) == 2;
    ok &= betti(build_surface({l, l, true, false}), 1) == 2;
  }
  ok &= betti(build_surface({4, 4, true, true}), 1) == 1;
  for (int n : {2, 3}) {
    const ChainComplex c = build_cubic({n, n, n});
    ok &= betti(c, 1) == 3 && betti(c, 2) == 3;
  }
  d << "b1(T2)=2, b1(K)=2, b1(RP2)=1, b1(T3)=b2(T3)=3";
  detail = d.str();
  return ok;
}

bool criterion_structural_invariants(std::string& detail) {
  std::vector<std::pair<ChainComplex, std::string>> complexes;
  for (int l = 2; l <= 8; ++l) {
    complexes.push_back({build_surface({l, l, false, false}), "torus " + std::to_string(l)});
    complexes.push_back({build_surface({l, l, true, false}), "klein " + std::to_string(l)});
    complexes.push_back({build_surface({l, l, true, true}), "rp2 " + std::to_string(l)});
  }
  for (int n = 2; n <= 3; ++n)
    complexes.push_back({build_cubic({n, n, n}), "torus3 " + std::to_string(n)});

  int checked = 0;
  for (const auto& [x, name] : complexes) {
    if (!x.boundaries_compose_to_zero()) {
      detail = name + ": boundary composition nonzero";
      return false;
    }
    for (int i = 1; i <= x.dim - 1; ++i) {
      const CssCode code = build_code(x, i);
      if (!code.h_x.mul(code.h_z.transposed()).is_zero()) {
        detail = name + ": checks do not commute";
        return false;
      }
      GF2Vector zs(code.n), xs(code.n);
      for (std::size_t r = 0; r < code.h_z.rows(); ++r) zs ^= code.h_z.row(r);
      for (std::size_t r = 0; r < code.h_x.rows(); ++r) xs ^= code.h_x.row(r);
      if (!zs.is_zero() || !xs.is_zero()) {
        detail = name + ": check family does not multiply to identity";
        return false;
      }
      if (!(pairing_matrix(code.basis()) == GF2Matrix::identity(code.k))) {
        detail = name + ": pairing not full rank";
        return false;
      }
      if (code.k != betti(x, i)) {
        detail = name + ": k != betti";
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " code families over " + std::to_string(complexes.size()) +
           " complexes";
  return true;
}

bool criterion_distance_table(std::string& detail) {
  for (int l = 4; l <= 8; ++l) {
    const ChainComplex t = build_surface({l, l, false, false});
    const CodeParameters pt = distances(build_code(t, 1), t);
    if (!(pt.d_x.exact && pt.d_z.exact && pt.d_x.weight == static_cast<std::size_t>(l) &&
          pt.d_z.weight == static_cast<std::size_t>(l))) {
      detail = "torus L=" + std::to_string(l);
      return false;
    }
    const ChainComplex k = build_surface({l, l, true, false});
    const CodeParameters pk = distances(build_code(k, 1), k);
    const std::size_t twisted = pk.d_x.per_class[0], untwisted = pk.d_x.per_class[1];
    const std::size_t want_twisted = l % 2 == 0 ? l + 1 : l;
    if (!(twisted == want_twisted && untwisted == static_cast<std::size_t>(l))) {
      detail = "klein L=" + std::to_string(l) + " cycle classes " + std::to_string(twisted) + "," +
               std::to_string(untwisted);
      return false;
    }
    if (pk.d_z.per_class != pt.d_z.per_class) {
      detail = "klein L=" + std::to_string(l) + " cocycle side differs from torus";
      return false;
    }
  }
  detail = "T2 d=L both sides; K twisted class L+1 (even L) / L (odd L); cocycle side equal";
  return true;
}

bool criterion_defect_counts(std::string& detail) {
  const ChainComplex c3 = build_cubic({3, 3, 3});
  const CssCode edges = build_code(c3, 1);
  const CssCode faces = build_code(c3, 2);
  for (std::size_t q = 0; q < edges.n; ++q) {
    if (single_error_defect_count(edges, Pauli::X, q) != 2 ||
        single_error_defect_count(edges, Pauli::Z, q) != 4) {
      detail = "edge encoding single-error defects";
      return false;
    }
    if (single_error_defect_count(faces, Pauli::X, q) != 4 ||
        single_error_defect_count(faces, Pauli::Z, q) != 2) {
      detail = "face encoding single-error defects";
      return false;
    }
  }
  const ChainComplex c4 = build_cubic({4, 4, 4});
  const CssCode e4 = build_code(c4, 1);
  auto eid = [](int x, int y, int z, int axis) {
    return 3 * (static_cast<std::size_t>(x) + 4 * (static_cast<std::size_t>(y) + 4 * z)) + axis;
  };
  GF2Vector collinear(e4.n);
  for (int i = 0; i < 3; ++i) collinear.flip(eid(i, 0, 0, 0));
  GF2Vector stacked(e4.n);
  stacked.flip(eid(0, 0, 0, 0));
  stacked.flip(eid(0, 1, 0, 0));
  const std::size_t vertex_defects = e4.h_z.mul(collinear).weight();
  const std::size_t face_defects = e4.h_x.mul(stacked).weight();
  detail = "singles 2/4 and 4/2; run of three -> " + std::to_string(vertex_defects) +
           " vertex defects, stacked pair -> " + std::to_string(face_defects) + " face defects";
  return vertex_defects == 2 && face_defects == 6;
}

bool criterion_half_distance(std::string& detail) {
  long long decoded = 0;
  for (int l : {4, 5}) {
    for (bool twist : {false, true}) {
      const ChainComplex x = build_surface({l, l, twist, false});
      const CssCode code = build_code(x, 1);
      const CodeParameters params = distances(code, x);
      BlossomMatcher matcher;
      for (ExperimentSide side : {ExperimentSide::Z, ExperimentSide::X}) {
        const MatchingGraph graph(code, side, {NoiseKind::CodeCapacity, 0.0, 1});
        const GF2Matrix& checks = side == ExperimentSide::Z ? code.h_z : code.h_x;
        const std::size_t d = side == ExperimentSide::Z ? params.d_x.weight : params.d_z.weight;
        const std::size_t max_w = (d - 1) / 2;
        std::vector<GF2Vector> errors;
        for (std::size_t a = 0; a < code.n; ++a) {
          GF2Vector e1(code.n);
          e1.set(a, true);
          if (max_w >= 1) errors.push_back(e1);
          if (max_w >= 2)
            for (std::size_t b = a + 1; b < code.n; ++b) {
              GF2Vector e2 = e1;
              e2.set(b, true);
              errors.push_back(e2);
            }
        }
        for (const auto& error : errors) {
          std::vector<SpacetimeDefect> defects;
          for (std::size_t c : checks.mul(error).support())
            defects.push_back({static_cast<int>(c), 0});
          const GF2Vector corr = mwpm_decode(graph, defects, matcher);
          if (judge(code, side, error, corr).any_failure) {
            detail = (twist ? "klein" : "torus") + std::string(" L=") + std::to_string(l);
            return false;
          }
          ++decoded;
        }
      }
    }
  }
  detail = std::to_string(decoded) + " errors of weight <= (d-1)/2, zero failures";
  return true;
}

bool criterion_matcher_optimality(std::string& detail) {
  const ChainComplex t = build_surface({6, 6, false, false});
  const CssCode code = build_code(t, 1);
  const MatchingGraph graph(code, ExperimentSide::Z, {NoiseKind::CodeCapacity, 0.0, 1});
  BlossomMatcher matcher;
  TrialRng rng(20250101, 0, 0);
  for (int it = 0; it < 1000; ++it) {
    const int m = 2 * (1 + static_cast<int>(rng.next_u64() % 4));  // 2, 4, 6 or 8 defects
    std::vector<int> checks;
    while (static_cast<int>(checks.size()) < m) {
      const int c = static_cast<int>(rng.next_u64() % graph.check_count());
      bool seen = false;
      for (int existing : checks) seen = seen || existing == c;
      if (!seen) checks.push_back(c);
    }
    std::vector<std::vector<std::int64_t>> w(m, std::vector<std::int64_t>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) w[i][j] = graph.spatial_distance(checks[i], checks[j]);
    const auto mate = matcher.min_weight_perfect_matching(w);
    if (matching_weight(mate, w) != exhaustive_min_pairing_weight(w)) {
      detail = "suboptimal matching at iteration " + std::to_string(it);
      return false;
    }
  }
  detail = "1000 random syndromes with <= 8 defects, all matchings optimal";
  return true;
}

std::string rate_string(const ExperimentRecord& r) {
  std::ostringstream os;
  os << format_plain(r.logical_rate) << "+-" << format_plain(r.sigma);
  return os.str();
}

bool criterion_even_d_improvement(std::string& detail) {
  const std::vector<double> ps{0.05, 0.08};
  bool all_leq = true;
  double best_z = 0.0;
  std::ostringstream d;
  for (int l : {4, 6}) {
    const auto torus = sweep(make_config(Topology::Torus, l, ExperimentSide::Z,
                                         NoiseKind::CodeCapacity, 1, ps, 5000, 101));
    const auto klein = sweep(make_config(Topology::Klein, l, ExperimentSide::Z,
                                         NoiseKind::CodeCapacity, 1, ps, 5000, 202));
    const auto z = compare(klein, torus);  // negative favors the Klein bottle
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (klein[i].logical_rate > torus[i].logical_rate) all_leq = false;
      best_z = std::min(best_z, z[i]);
      d << "d=" << l << " p=" << format_plain(ps[i]) << " K=" << rate_string(klein[i])
        << " T2=" << rate_string(torus[i]) << " z=" << std::round(z[i] * 100) / 100 << "; ";
    }
  }
  detail = d.str() + "min z=" + std::to_string(best_z);
  return all_leq && best_z <= -2.0;
}

bool criterion_odd_d_null(std::string& detail) {
  const std::vector<double> ps{0.05, 0.08};
  const auto torus = sweep(make_config(Topology::Torus, 5, ExperimentSide::Z,
                                       NoiseKind::CodeCapacity, 1, ps, 5000, 303));
  const auto klein = sweep(make_config(Topology::Klein, 5, ExperimentSide::Z,
                                       NoiseKind::CodeCapacity, 1, ps, 5000, 404));
  const auto z = compare(klein, torus);
  std::ostringstream d;
  bool ok = true;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ok &= std::abs(z[i]) <= 2.0;
    d << "p=" << format_plain(ps[i]) << " K=" << rate_string(klein[i])
      << " T2=" << rate_string(torus[i]) << " |z|=" << std::abs(std::round(z[i] * 100) / 100) << "; ";
  }
  detail = d.str();
  return ok;
}

bool criterion_phenomenological_degradation(std::string& detail) {
  const std::vector<double> ps{0.025};
  const auto capacity = sweep(make_config(Topology::Torus, 10, ExperimentSide::Z,
                                          NoiseKind::CodeCapacity, 1, ps, 5000, 505));
  const auto noisy = sweep(make_config(Topology::Torus, 10, ExperimentSide::Z,
                                       NoiseKind::Phenomenological, 10, ps, 5000, 606));
  const double z = compare(noisy, capacity)[0];
  detail = "phenomenological=" + rate_string(noisy[0]) + " capacity=" + rate_string(capacity[0]) +
           " z=" + std::to_string(z);
  return noisy[0].logical_rate > capacity[0].logical_rate && z >= 3.0;
}

bool criterion_x_side_null(std::string& detail) {
  const std::vector<double> ps{0.05, 0.08};
  std::ostringstream d;
  bool ok = true;
  for (int l : {7, 8}) {
    const auto torus = sweep(make_config(Topology::Torus, l, ExperimentSide::X,
                                         NoiseKind::CodeCapacity, 1, ps, 5000, 707));
    const auto klein = sweep(make_config(Topology::Klein, l, ExperimentSide::X,
                                         NoiseKind::CodeCapacity, 1, ps, 5000, 808));
    const auto z = compare(klein, torus);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      ok &= std::abs(z[i]) <= 2.0;
      d << "d=" << l << " p=" << format_plain(ps[i]) << " |z|="
        << std::abs(std::round(z[i] * 100) / 100) << "; ";
    }
  }
  detail = d.str();
  return ok;
}

}  // namespace

int main() {
  Reporter r;
  r.run(1, "homology table", criterion_homology_table);
  r.run(2, "structural invariants on all built complexes", criterion_structural_invariants);
  r.run(3, "distance table", criterion_distance_table);
  r.run(4, "single- and multi-error defect counts", criterion_defect_counts);
  r.run(5, "decoder half-distance guarantee", criterion_half_distance);
  r.run(6, "matcher optimality oracle", criterion_matcher_optimality);
  r.run(7, "Klein beats torus at even d (z side)", criterion_even_d_improvement);
  r.run(8, "no Klein-torus separation at odd d (z side)", criterion_odd_d_null);
  r.run(9, "noisy syndromes degrade the logical rate", criterion_phenomenological_degradation);
  r.run(10, "no Klein-torus separation on the x side", criterion_x_side_null);
  if (r.failures > 0) {
    std::printf("%d criterion(s) failed\n", r.failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
