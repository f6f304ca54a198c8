#include "cellcode/experiment.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

using namespace cellcode;

ExperimentConfig torus_config(int l, std::vector<double> ps, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.topology = {Topology::Torus, l, l, 0, 0, 0};
  cfg.encode_dim = 1;
  cfg.side = ExperimentSide::Z;
  cfg.model = {NoiseKind::CodeCapacity, 0.0, 1};
  cfg.p_values = std::move(ps);
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

TEST(Harness, ZeroErrorRateAtZeroP) {
  const auto records = sweep(torus_config(4, {0.0}, 200, 11));
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].failures_any, 0);
  EXPECT_EQ(records[0].logical_rate, 0.0);
  EXPECT_EQ(records[0].sigma, 0.0);
  EXPECT_EQ(records[0].failures_per_logical, (std::vector<long long>{0, 0}));
}

TEST(Harness, EmptyGridIsEmptyOutput) {
  std::ostringstream os;
  CsvSink sink(os);
  const auto records = sweep(torus_config(4, {}, 100, 1), &sink);
  EXPECT_TRUE(records.empty());
  EXPECT_EQ(os.str(), std::string(kCsvHeader) + "\n");
}

TEST(Harness, ProbabilityGrid) {
  const auto grid = probability_grid(0.03, 0.10, 8);
  ASSERT_EQ(grid.size(), 8u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.03);
  EXPECT_DOUBLE_EQ(grid.back(), 0.10);
  EXPECT_TRUE(probability_grid(0.1, 0.2, 0).empty());
  EXPECT_EQ(probability_grid(0.1, 0.2, 1), (std::vector<double>{0.1}));
}

TEST(Harness, ReproducibleRowsAcrossRuns) {
  const ExperimentConfig cfg = torus_config(4, {0.05, 0.08}, 400, 2024);
  std::ostringstream a, b;
  {
    CsvSink sink(a);
    sweep(cfg, &sink);
  }
  {
    CsvSink sink(b);
    sweep(cfg, &sink);
  }
  EXPECT_EQ(a.str(), b.str());
}

TEST(Harness, WorkerCountDoesNotChangeCounts) {
  const ExperimentConfig cfg = torus_config(4, {0.08}, 500, 77);
  setenv("CELLCODE_THREADS", "1", 1);
  const auto serial = sweep(cfg);
  setenv("CELLCODE_THREADS", "4", 1);
  const auto parallel = sweep(cfg);
  unsetenv("CELLCODE_THREADS");
  ASSERT_EQ(serial.size(), parallel.size());
  EXPECT_EQ(serial[0].failures_any, parallel[0].failures_any);
  EXPECT_EQ(serial[0].failures_per_logical, parallel[0].failures_per_logical);
}

TEST(Harness, CsvRowShape) {
  ExperimentRecord rec;
  rec.topology = "klein";
  rec.lx_or_n = 6;
  rec.ly = 6;
  rec.twist_x = true;
  rec.encode_dim = 1;
  rec.side = "z";
  rec.noise_model = "capacity";
  rec.rounds = 1;
  rec.p = 0.05;
  rec.trials = 5000;
  rec.failures_any = 123;
  rec.failures_per_logical = {100, 40};
  rec.logical_rate = 123.0 / 5000.0;
  rec.sigma = std::sqrt(rec.logical_rate * (1 - rec.logical_rate) / 5000);
  rec.master_seed = 9;
  std::ostringstream os;
  write_csv_row(os, rec);
  EXPECT_EQ(os.str(),
            "klein,6,6,1,0,1,z,capacity,1,0.05,5000,123,100,40,," + format_plain(rec.logical_rate) +
                "," + format_plain(rec.sigma) + ",9\n");
  EXPECT_EQ(format_plain(rec.logical_rate), "0.0246");
  EXPECT_EQ(format_plain(rec.sigma).substr(0, 7), "0.00219");
}

TEST(Harness, SigmaRecomputableFromRow) {
  const auto records = sweep(torus_config(4, {0.08}, 300, 5));
  const auto& r = records[0];
  EXPECT_DOUBLE_EQ(r.sigma, std::sqrt(r.logical_rate * (1 - r.logical_rate) / r.trials));
  EXPECT_DOUBLE_EQ(r.logical_rate, static_cast<double>(r.failures_any) / r.trials);
}

TEST(Harness, CompareContracts) {
  const auto a = sweep(torus_config(4, {0.05, 0.08}, 200, 3));
  const auto z_same = compare(a, a);
  EXPECT_EQ(z_same, (std::vector<double>{0.0, 0.0}));
  const auto b = sweep(torus_config(4, {0.05}, 200, 3));
  EXPECT_THROW(compare(a, b), std::invalid_argument);
  auto c = sweep(torus_config(4, {0.05, 0.09}, 200, 3));
  EXPECT_THROW(compare(a, c), std::invalid_argument);
}

TEST(Harness, SubPhysicalRateWellBelowThreshold) {
  // At p = 0.01 a distance-5 code corrects every weight-2 pattern, so the
  // logical rate sits far below the physical rate.
  const auto records = sweep(torus_config(5, {0.01}, 5000, 31));
  EXPECT_LT(records[0].logical_rate, 0.01);
}

TEST(Harness, SmallerCodeFailsMoreOftenBelowThreshold) {
  // Below threshold a larger lattice suppresses logical failures; at 5000
  // trials the separation is far outside joint noise.
  const auto small = sweep(torus_config(4, {0.05}, 5000, 21));
  const auto large = sweep(torus_config(8, {0.05}, 5000, 22));
  const double z = compare(large, small)[0];
  EXPECT_LT(z, -3.0);
}

TEST(Harness, RateOrderingInvertsAboveThreshold) {
  // Below the matching-decoder threshold (near p ~ 0.10 for these codes)
  // the larger lattice wins; far above it the ordering flips.
  const auto small_below = sweep(torus_config(4, {0.05}, 3000, 41));
  const auto large_below = sweep(torus_config(8, {0.05}, 3000, 42));
  EXPECT_LT(large_below[0].logical_rate, small_below[0].logical_rate);
  const auto small_above = sweep(torus_config(4, {0.16}, 3000, 43));
  const auto large_above = sweep(torus_config(8, {0.16}, 3000, 44));
  EXPECT_GT(large_above[0].logical_rate, small_above[0].logical_rate);
}

TEST(Harness, KleinPerLogicalAsymmetry) {
  // On the even Klein lattice the twisted class is one step longer, so the
  // untwisted logical fails more often on the z side.
  ExperimentConfig cfg;
  cfg.topology = {Topology::Klein, 6, 6, 0, 0, 0};
  cfg.side = ExperimentSide::Z;
  cfg.model = {NoiseKind::CodeCapacity, 0.0, 1};
  cfg.p_values = {0.08};
  cfg.trials = 5000;
  cfg.master_seed = 88;
  const auto rec = sweep(cfg)[0];
  ASSERT_EQ(rec.failures_per_logical.size(), 2u);
  EXPECT_LT(rec.failures_per_logical[0] * 5, rec.failures_per_logical[1] * 4);
}

TEST(Harness, ProjectivePlanePointRuns) {
  ExperimentConfig cfg;
  cfg.topology = {Topology::RP2, 4, 4, 0, 0, 0};
  cfg.side = ExperimentSide::X;
  cfg.model = {NoiseKind::CodeCapacity, 0.0, 1};
  cfg.p_values = {0.05};
  cfg.trials = 300;
  cfg.master_seed = 15;
  const auto rec = sweep(cfg)[0];
  EXPECT_EQ(rec.failures_per_logical.size(), 1u);
  EXPECT_EQ(rec.topology, "rp2");
  std::ostringstream os;
  write_csv_row(os, rec);
  // k = 1: the q1 and q2 columns stay empty.
  EXPECT_NE(os.str().find(",,," + format_plain(rec.logical_rate)), std::string::npos);
}

TEST(Harness, MonotonicInPUpToNoise) {
  const auto records = sweep(torus_config(4, {0.02, 0.06, 0.10, 0.14}, 2000, 12));
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double slack = 2 * std::sqrt(records[i - 1].sigma * records[i - 1].sigma +
                                       records[i].sigma * records[i].sigma);
    EXPECT_GE(records[i].logical_rate + slack, records[i - 1].logical_rate);
  }
}

TEST(Harness, FormatPlainNeverScientific) {
  EXPECT_EQ(format_plain(0.0), "0");
  EXPECT_EQ(format_plain(1.0), "1");
  EXPECT_EQ(format_plain(0.05), "0.05");
  EXPECT_EQ(format_plain(0.00002), "0.00002");
  EXPECT_EQ(format_plain(0.125), "0.125");
}

TEST(Harness, CubicFaceEncodingPointRuns) {
  ExperimentConfig cfg;
  cfg.topology = {Topology::Torus3, 0, 0, 2, 2, 2};
  cfg.encode_dim = 2;
  cfg.side = ExperimentSide::X;  // cube checks pair the defects of face qubits
  cfg.model = {NoiseKind::CodeCapacity, 0.0, 1};
  cfg.p_values = {0.0, 0.03};
  cfg.trials = 300;
  cfg.master_seed = 61;
  const auto records = sweep(cfg);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].failures_any, 0);
  EXPECT_EQ(records[1].failures_per_logical.size(), 3u);
}

TEST(Harness, PhenomenologicalPointRuns) {
  ExperimentConfig cfg = torus_config(3, {0.02}, 50, 8);
  cfg.model = {NoiseKind::Phenomenological, 0.0, 3};
  const auto records = sweep(cfg);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].noise_model, "phenomenological");
  EXPECT_EQ(records[0].rounds, 3);
}

}  // namespace
