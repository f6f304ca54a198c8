#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cellcode/chain_complex.hpp"
#include "cellcode/css.hpp"
#include "cellcode/decoder.hpp"
#include "cellcode/experiment.hpp"
#include "cellcode/homology.hpp"
#include "cellcode/lattice.hpp"

namespace cellcode {

namespace cli_detail {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Topology parse_topology(const std::string& name) {
  if (name == "torus") return Topology::Torus;
  if (name == "klein") return Topology::Klein;
  if (name == "rp2") return Topology::RP2;
  if (name == "torus3") return Topology::Torus3;
  throw UsageError("unknown topology '" + name + "' (expected torus, klein, rp2 or torus3)");
}

inline TopologySpec parse_spec(const std::string& topology, const std::string& size) {
  TopologySpec spec;
  spec.kind = parse_topology(topology);
  std::vector<int> parts;
  std::string token;
  std::istringstream in(size);
  while (std::getline(in, token, 'x')) {
    try {
      parts.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw UsageError("bad --size component '" + token + "'");
    }
  }
  if (spec.kind == Topology::Torus3) {
    if (parts.size() == 1) parts = {parts[0], parts[0], parts[0]};
    if (parts.size() != 3) throw UsageError("torus3 needs --size N or NxNxN");
    spec.nx = parts[0];
    spec.ny = parts[1];
    spec.nz = parts[2];
  } else {
    if (parts.size() == 1) parts = {parts[0], parts[0]};
    if (parts.size() != 2) throw UsageError("surfaces need --size L or LxLy");
    spec.lx = parts[0];
    spec.ly = parts[1];
  }
  return spec;
}

inline std::vector<int> encode_dims(const ChainComplex& x) {
  std::vector<int> dims;
  for (int i = 1; i <= x.dim - 1; ++i) dims.push_back(i);
  return dims;
}

inline std::string weights_to_string(const std::vector<std::size_t>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(w[i]);
  }
  return s;
}

inline void print_homology(const TopologySpec& spec, std::ostream& out) {
  const ChainComplex x = build_complex(spec);
  out << "topology " << spec.name() << " size ";
  if (spec.kind == Topology::Torus3)
    out << spec.nx << "x" << spec.ny << "x" << spec.nz << "\n";
  else
    out << spec.lx << "x" << spec.ly << "\n";
  out << "cells";
  for (int k = 0; k <= x.dim; ++k) out << " " << x.cell_count[static_cast<std::size_t>(k)];
  out << "\neuler_characteristic " << x.euler_characteristic() << "\nbetti";
  for (int k = 0; k <= x.dim; ++k) out << " " << betti(x, k);
  out << "\n";
  for (int k : encode_dims(x)) {
    const HomologyBasis basis = homology_basis(x, k);
    out << "pairing_rank k=" << k << " " << rank(pairing_matrix(basis)) << "\n";
    if (k == 1) {
      const ClassWeights w = min_cycle_class_weights(x, basis);
      out << "cycle_min_weights k=1 " << weights_to_string(w.generator_min) << "\n";
    }
    if (k == x.dim - 1) {
      const ClassWeights w = min_cocycle_class_weights(x, basis);
      out << "cocycle_min_weights k=" << k << " " << weights_to_string(w.generator_min) << "\n";
    }
  }
}

inline void print_code_info(const TopologySpec& spec, int encode_dim, std::ostream& out) {
  const ChainComplex x = build_complex(spec);
  const CssCode code = build_code(x, encode_dim);
  const CodeParameters params = distances(code, x);
  out << "topology " << spec.name() << " encode_dim " << encode_dim << "\n";
  out << "n " << code.n << "\nk " << code.k << "\n";
  const CheckWeightHistogram hist = check_weights(code);
  out << "z_check_weights";
  for (const auto& [w, count] : hist.z_rows) out << " " << w << ":" << count;
  out << "\nx_check_weights";
  for (const auto& [w, count] : hist.x_rows) out << " " << w << ":" << count;
  out << "\n";
  auto print_side = [&out](const char* name, const DistanceInfo& d) {
    out << name << " " << d.weight << (d.exact ? " exact" : " upper_bound") << " per_class "
        << weights_to_string(d.per_class) << "\n";
  };
  print_side("d_x", params.d_x);
  print_side("d_z", params.d_z);
  for (std::size_t i = 0; i < code.k; ++i) {
    out << "logical_x[" << i << "]";
    for (std::size_t cell : code.logical_x[i].support()) out << " " << x.label(encode_dim, cell);
    out << "\nlogical_z[" << i << "]";
    for (std::size_t cell : code.logical_z[i].support()) out << " " << x.label(encode_dim, cell);
    out << "\n";
  }
}

inline int run_verify(const TopologySpec& spec, std::ostream& out) {
  const ChainComplex x = build_complex(spec);
  auto check = [&out](const std::string& name, bool ok) {
    out << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) throw std::runtime_error("verification failed: " + name);
  };
  check("boundary_squares_to_zero", x.boundaries_compose_to_zero());
  for (int i : encode_dims(x)) {
    const std::string tag = " (encode_dim " + std::to_string(i) + ")";
    const CssCode code = build_code(x, i);
    check("checks_commute" + tag, code.h_x.mul(code.h_z.transposed()).is_zero());
    GF2Vector z_sum(code.n), x_sum(code.n);
    for (std::size_t r = 0; r < code.h_z.rows(); ++r) z_sum ^= code.h_z.row(r);
    for (std::size_t r = 0; r < code.h_x.rows(); ++r) x_sum ^= code.h_x.row(r);
    check("check_products_are_identity" + tag, z_sum.is_zero() && x_sum.is_zero());
    check("k_equals_betti" + tag, code.k == betti(x, i));
    check("pairing_is_identity" + tag,
          pairing_matrix(code.basis()) == GF2Matrix::identity(code.k));
    bool even_defects = true;
    for (std::size_t q = 0; q < code.n && even_defects; ++q) {
      const std::size_t dz = single_error_defect_count(code, Pauli::X, q);
      const std::size_t dx = single_error_defect_count(code, Pauli::Z, q);
      even_defects = dz >= 2 && dx >= 2 && dz % 2 == 0 && dx % 2 == 0;
    }
    check("single_errors_make_even_defects" + tag, even_defects);
  }
  out << "all checks passed\n";
  return kExitOk;
}

inline nlohmann::json record_to_json(const ExperimentRecord& r) {
  nlohmann::json j;
  j["topology"] = r.topology;
  j["lx_or_n"] = r.lx_or_n;
  j["ly"] = r.ly;
  j["twist_x"] = r.twist_x ? 1 : 0;
  j["twist_y"] = r.twist_y ? 1 : 0;
  j["encode_dim"] = r.encode_dim;
  j["side"] = r.side;
  j["noise_model"] = r.noise_model;
  j["rounds"] = r.rounds;
  j["p"] = r.p;
  j["trials"] = r.trials;
  j["failures_any"] = r.failures_any;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string key = "failures_q" + std::to_string(i);
    if (i < r.failures_per_logical.size())
      j[key] = r.failures_per_logical[i];
    else
      j[key] = nullptr;
  }
  j["logical_rate"] = r.logical_rate;
  j["sigma"] = r.sigma;
  j["master_seed"] = r.master_seed;
  return j;
}

class JsonSink : public RecordSink {
 public:
  explicit JsonSink(std::ostream& out) : out_(out) {}
  void emit(const ExperimentRecord& rec) override { array_.push_back(record_to_json(rec)); }
  ~JsonSink() override { out_ << array_.dump(2) << "\n"; }

 private:
  std::ostream& out_;
  nlohmann::json array_ = nlohmann::json::array();
};

class ProgressSink : public RecordSink {
 public:
  ProgressSink(RecordSink& inner, std::ostream& err, std::size_t total)
      : inner_(inner), err_(err), total_(total) {}
  void emit(const ExperimentRecord& rec) override {
    inner_.emit(rec);
    ++done_;
    err_ << "point " << done_ << "/" << total_ << " p=" << format_plain(rec.p)
         << " rate=" << format_plain(rec.logical_rate) << " (" << rec.wall_time_s << "s)\n";
  }

 private:
  RecordSink& inner_;
  std::ostream& err_;
  std::size_t total_;
  std::size_t done_ = 0;
};

}  // namespace cli_detail

/// Command-line front end; returns the process exit code (0 success,
/// 1 runtime or verification failure, 2 usage error).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"topological code workbench: homology, CSS codes and matching-decoder experiments"};
  app.require_subcommand(1);

  std::string topology = "torus", size = "4";
  auto add_spec_flags = [&](CLI::App* cmd) {
    cmd->add_option("--topology", topology, "torus, klein, rp2 or torus3")->required();
    cmd->add_option("--size", size, "L, LxLy, or NxNxN for torus3")->required();
  };

  CLI::App* homology_cmd = app.add_subcommand("homology", "Betti numbers, pairing rank, class weights");
  add_spec_flags(homology_cmd);

  int encode_dim = 1;
  CLI::App* code_cmd = app.add_subcommand("code-info", "code parameters, check weights, logicals");
  add_spec_flags(code_cmd);
  code_cmd->add_option("--encode-dim", encode_dim, "cell dimension carrying the qubits (default 1)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the structural invariant suite");
  add_spec_flags(verify_cmd);

  CLI::App* dump_cmd = app.add_subcommand("dump", "plain-text listing of the boundary matrices");
  add_spec_flags(dump_cmd);
  std::string dump_out;
  dump_cmd->add_option("--out", dump_out, "output path (default: stdout)");

  std::string side_str = "z", noise_str = "capacity", out_path, format = "csv";
  int rounds = 0, trials = 5000, p_steps = 8;
  double p_single = -1.0, p_min = -1.0, p_max = -1.0;
  std::uint64_t seed = 0;
  auto add_common_sim_flags = [&](CLI::App* cmd) {
    add_spec_flags(cmd);
    cmd->add_option("--encode-dim", encode_dim, "cell dimension carrying the qubits (default 1)");
    cmd->add_option("--side", side_str, "z (star checks) or x (boundary checks); default z");
    cmd->add_option("--noise", noise_str, "capacity or phenomenological; default capacity");
    cmd->add_option("--rounds", rounds, "measurement rounds (phenomenological; default: lattice size)");
    cmd->add_option("--trials", trials, "Monte Carlo trials per point (default 5000)");
    cmd->add_option("--seed", seed, "master seed (default 0)");
    cmd->add_option("--out", out_path, "output path (default: stdout)");
    cmd->add_option("--format", format, "csv or json (default csv)");
  };

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "one Monte Carlo point");
  add_common_sim_flags(simulate_cmd);
  simulate_cmd->add_option("--p", p_single, "physical error probability")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over a probability grid");
  add_common_sim_flags(sweep_cmd);
  sweep_cmd->add_option("--p-min", p_min, "grid start")->required();
  sweep_cmd->add_option("--p-max", p_max, "grid end")->required();
  sweep_cmd->add_option("--p-steps", p_steps, "grid point count (default 8)");

  std::vector<std::string> argv_stor;
  argv_stor.push_back("cellcode");
  for (const auto& a : args) argv_stor.push_back(a);
  std::vector<const char*> argv;
  for (const auto& s : argv_stor) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // help requested
      out << app.help() << "\n";
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const TopologySpec spec = parse_spec(topology, size);

    if (homology_cmd->parsed()) {
      print_homology(spec, out);
      return kExitOk;
    }
    if (code_cmd->parsed()) {
      print_code_info(spec, encode_dim, out);
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      try {
        return run_verify(spec, out);
      } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return kExitRuntime;
      }
    }
    if (dump_cmd->parsed()) {
      const ChainComplex x = build_complex(spec);
      if (dump_out.empty()) {
        dump_complex(x, out);
      } else {
        std::ofstream file(dump_out);
        if (!file) throw std::runtime_error("cannot open output path " + dump_out);
        dump_complex(x, file);
      }
      return kExitOk;
    }

    // simulate / sweep
    ExperimentConfig config;
    config.topology = spec;
    config.encode_dim = encode_dim;
    if (side_str == "z")
      config.side = ExperimentSide::Z;
    else if (side_str == "x")
      config.side = ExperimentSide::X;
    else
      throw UsageError("--side must be z or x");

    if (noise_str == "capacity") {
      config.model.kind = NoiseKind::CodeCapacity;
      if (rounds != 0) throw UsageError("--rounds conflicts with --noise capacity");
      config.model.rounds = 1;
    } else if (noise_str == "phenomenological") {
      config.model.kind = NoiseKind::Phenomenological;
      config.model.rounds = rounds != 0 ? rounds : std::max(2, spec.size_a());
      if (config.model.rounds < 2) throw UsageError("--rounds must be at least 2");
    } else {
      throw UsageError("--noise must be capacity or phenomenological");
    }

    if (trials < 1) throw UsageError("--trials must be positive");
    config.trials = trials;
    config.master_seed = seed;
    if (spec.kind == Topology::Torus3 && !(spec.nx == spec.ny && spec.ny == spec.nz))
      throw UsageError("simulation on torus3 requires equal dimensions (the record schema echoes one size)");

    if (simulate_cmd->parsed()) {
      if (p_single < 0.0 || p_single > 1.0) throw UsageError("--p must lie in [0, 1]");
      config.p_values = {p_single};
    } else {
      if (p_min < 0.0 || p_max > 1.0 || p_min > p_max) throw UsageError("need 0 <= p-min <= p-max <= 1");
      if (p_steps < 0) throw UsageError("--p-steps must be nonnegative");
      config.p_values = probability_grid(p_min, p_max, p_steps);
    }

    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");

    std::ofstream file;
    std::ostream* data_out = &out;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::runtime_error("cannot open output path " + out_path);
      data_out = &file;
    }
    {
      std::unique_ptr<RecordSink> sink;
      if (format == "csv")
        sink = std::make_unique<CsvSink>(*data_out);
      else
        sink = std::make_unique<JsonSink>(*data_out);
      ProgressSink progress(*sink, err, config.p_values.size());
      sweep(config, &progress);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace cellcode
