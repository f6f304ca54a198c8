#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cellcode/css.hpp"
#include "cellcode/decoder.hpp"
#include "cellcode/lattice.hpp"
#include "cellcode/rng.hpp"

namespace cellcode {

enum class Topology { Torus, Klein, RP2, Torus3 };

struct TopologySpec {
  Topology kind = Topology::Torus;
  int lx = 0, ly = 0;          // surfaces
  int nx = 0, ny = 0, nz = 0;  // cubic

  std::string name() const {
    switch (kind) {
      case Topology::Torus: return "torus";
      case Topology::Klein: return "klein";
      case Topology::RP2: return "rp2";
      case Topology::Torus3: return "torus3";
    }
    return "?";
  }
  bool twist_x() const { return kind == Topology::Klein || kind == Topology::RP2; }
  bool twist_y() const { return kind == Topology::RP2; }
  int size_a() const { return kind == Topology::Torus3 ? nx : lx; }
  int size_b() const { return kind == Topology::Torus3 ? ny : ly; }
};

inline ChainComplex build_complex(const TopologySpec& spec) {
  if (spec.kind == Topology::Torus3) return build_cubic({spec.nx, spec.ny, spec.nz});
  return build_surface({spec.lx, spec.ly, spec.twist_x(), spec.twist_y()});
}

struct ExperimentConfig {
  TopologySpec topology;
  int encode_dim = 1;
  ExperimentSide side = ExperimentSide::Z;
  NoiseModel model;  // model.p is ignored; the sweep grid supplies p
  std::vector<double> p_values;
  int trials = 5000;
  std::uint64_t master_seed = 0;
};

struct ExperimentRecord {
  std::string topology;
  int lx_or_n = 0, ly = 0;
  bool twist_x = false, twist_y = false;
  int encode_dim = 1;
  std::string side;
  std::string noise_model;
  int rounds = 1;
  double p = 0.0;
  int trials = 0;
  long long failures_any = 0;
  std::vector<long long> failures_per_logical;
  double logical_rate = 0.0;
  double sigma = 0.0;
  std::uint64_t master_seed = 0;
  double wall_time_s = 0.0;  // not part of the CSV schema
};

/// Worker count: CELLCODE_THREADS overrides hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("CELLCODE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Everything a sweep reuses across points: the complex, the code and the
/// decoding graph. Immutable after construction and shared by all workers.
class ExperimentContext {
 public:
  explicit ExperimentContext(const ExperimentConfig& config)
      : complex_(build_complex(config.topology)), code_(build_code(complex_, config.encode_dim)),
        graph_(code_, config.side, config.model) {}

  const ChainComplex& complex() const { return complex_; }
  const CssCode& code() const { return code_; }
  const MatchingGraph& graph() const { return graph_; }

 private:
  ChainComplex complex_;
  CssCode code_;
  MatchingGraph graph_;
};

/// Run one (config, p) Monte Carlo point. Trials are scheduled dynamically
/// over the worker pool; every trial derives its random stream from
/// (master_seed, point_index, trial_index), so the aggregate is identical
/// for any worker count or interleaving.
inline ExperimentRecord run_point(const ExperimentContext& ctx, const ExperimentConfig& config,
                                  std::size_t point_index, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("run_point: p must lie in [0, 1]");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k = ctx.code().k;
  NoiseModel model = config.model;
  model.p = p;

  const int workers = std::min(worker_count(), std::max(1, config.trials));
  std::atomic<int> next_trial{0};
  std::vector<long long> any_counts(workers, 0);
  std::vector<std::vector<long long>> logical_counts(workers, std::vector<long long>(k, 0));
  std::vector<std::string> worker_errors(workers);

  auto work = [&](int w) {
    BlossomMatcher matcher;
    try {
      for (;;) {
        const int t = next_trial.fetch_add(1);
        if (t >= config.trials) break;
        TrialRng rng(config.master_seed, point_index, static_cast<std::uint64_t>(t));
        const DecodeOutcome outcome = run_trial(ctx.code(), ctx.graph(), model, rng, matcher);
        if (outcome.any_failure) ++any_counts[w];
        for (std::size_t i = 0; i < k; ++i)
          if (outcome.per_logical[i]) ++logical_counts[w][i];
      }
    } catch (const std::exception& e) {
      worker_errors[w] = e.what();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : worker_errors)
    if (!err.empty()) throw std::runtime_error("run_point: trial aborted: " + err);

  ExperimentRecord rec;
  rec.topology = config.topology.name();
  rec.lx_or_n = config.topology.size_a();
  rec.ly = config.topology.size_b();
  rec.twist_x = config.topology.twist_x();
  rec.twist_y = config.topology.twist_y();
  rec.encode_dim = config.encode_dim;
  rec.side = side_name(config.side);
  rec.noise_model = config.model.kind == NoiseKind::CodeCapacity ? "capacity" : "phenomenological";
  rec.rounds = config.model.kind == NoiseKind::CodeCapacity ? 1 : config.model.rounds;
  rec.p = p;
  rec.trials = config.trials;
  rec.failures_per_logical.assign(k, 0);
  for (int w = 0; w < workers; ++w) {
    rec.failures_any += any_counts[w];
    for (std::size_t i = 0; i < k; ++i) rec.failures_per_logical[i] += logical_counts[w][i];
  }
  rec.logical_rate = config.trials > 0 ? static_cast<double>(rec.failures_any) / config.trials : 0.0;
  rec.sigma = config.trials > 0
                  ? std::sqrt(rec.logical_rate * (1.0 - rec.logical_rate) / config.trials)
                  : 0.0;
  rec.master_seed = config.master_seed;
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Inclusive linear probability grid.
inline std::vector<double> probability_grid(double p_min, double p_max, int steps) {
  std::vector<double> grid;
  if (steps <= 0) return grid;
  if (steps == 1) return {p_min};
  for (int i = 0; i < steps; ++i) grid.push_back(p_min + (p_max - p_min) * i / (steps - 1));
  return grid;
}

class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual void emit(const ExperimentRecord& rec) = 0;
};

/// Run every point of the sweep in order, flushing each record to the sink
/// as soon as it is complete.
inline std::vector<ExperimentRecord> sweep(const ExperimentConfig& config, RecordSink* sink = nullptr) {
  std::vector<ExperimentRecord> records;
  if (config.trials < 1) throw std::invalid_argument("sweep: at least one trial per point");
  if (config.p_values.empty()) return records;
  const ExperimentContext ctx(config);
  for (std::size_t i = 0; i < config.p_values.size(); ++i) {
    records.push_back(run_point(ctx, config, i, config.p_values[i]));
    if (sink) sink->emit(records.back());
  }
  return records;
}

/// Per-point z-scores (r_a - r_b) / sqrt(sigma_a^2 + sigma_b^2).
inline std::vector<double> compare(const std::vector<ExperimentRecord>& a,
                                   const std::vector<ExperimentRecord>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compare: probability grids differ in size");
  std::vector<double> z;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].p != b[i].p) throw std::invalid_argument("compare: probability grids do not match");
    const double denom = std::sqrt(a[i].sigma * a[i].sigma + b[i].sigma * b[i].sigma);
    const double diff = a[i].logical_rate - b[i].logical_rate;
    if (denom == 0.0)
      z.push_back(diff == 0.0 ? 0.0 : (diff > 0 ? 1.0 : -1.0) * std::numeric_limits<double>::infinity());
    else
      z.push_back(diff / denom);
  }
  return z;
}

/// Plain decimal rendering (never scientific), trailing zeros trimmed.
inline std::string format_plain(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", value);
  std::string s(buf);
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    auto last = s.find_last_not_of('0');
    if (last == dot) last = dot - 1;
    s.erase(last + 1);
  }
  return s;
}

inline constexpr const char* kCsvHeader =
    "topology,lx_or_n,ly,twist_x,twist_y,encode_dim,side,noise_model,rounds,p,trials,"
    "failures_any,failures_q0,failures_q1,failures_q2,logical_rate,sigma,master_seed";

inline void write_csv_row(std::ostream& out, const ExperimentRecord& rec) {
  out << rec.topology << ',' << rec.lx_or_n << ',' << rec.ly << ',' << (rec.twist_x ? 1 : 0) << ','
      << (rec.twist_y ? 1 : 0) << ',' << rec.encode_dim << ',' << rec.side << ',' << rec.noise_model
      << ',' << rec.rounds << ',' << format_plain(rec.p) << ',' << rec.trials << ','
      << rec.failures_any;
  for (std::size_t i = 0; i < 3; ++i) {
    out << ',';
    if (i < rec.failures_per_logical.size()) out << rec.failures_per_logical[i];
  }
  out << ',' << format_plain(rec.logical_rate) << ',' << format_plain(rec.sigma) << ','
      << rec.master_seed << '\n';
}

class CsvSink : public RecordSink {
 public:
  explicit CsvSink(std::ostream& out) : out_(out) { out_ << kCsvHeader << '\n' << std::flush; }
  void emit(const ExperimentRecord& rec) override {
    write_csv_row(out_, rec);
    out_ << std::flush;
  }

 private:
  std::ostream& out_;
};

}  // namespace cellcode
