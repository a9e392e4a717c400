#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ftt/tensor.hpp"

namespace ftt {

// One sparsity-sweep benchmark. Named experiments fill their subscripts
// and shapes; "custom" requires both explicitly.
struct ExperimentConfig {
  std::string experiment = "matmul";  // matmul | mpo | pepo | custom
  std::string subscripts;
  std::vector<Index> shape_a;
  std::vector<Index> shape_b;
  double sparsity_from = 0.5;
  double sparsity_to = 0.005;
  int grid_points = 7;
  int seeds = 3;  // repetitions per grid point; median wall time is kept
  std::uint64_t base_seed = 0x5eed5eed;
  bool include_dense_control = false;
  bool oracle_check = false;
  bool sweep_one_side = false;  // operand B pinned fully dense
};

// Fill empty subscripts/shapes for the named experiments:
//   matmul  "ab,bc->ac"                (256,256) x (256,256)
//   mpo     "ABab,BCcd->ACabcd"        (20,20,20,20) x (20,20,20,20)
//   pepo    "ABCDab,DEFGcd->ABCEFGabcd" (8,8,8,8,8,8) x (8,8,8,8,8,8)
void apply_experiment_defaults(ExperimentConfig& cfg);

struct BenchRow {
  std::string experiment;
  double sparsity = 0.0;  // realized: nnz_a / dense size of A
  long long nnz_a = 0;
  long long nnz_b = 0;
  long long mult_count = 0;
  double time_sparse_s = 0.0;
  double time_dense_s = std::numeric_limits<double>::quiet_NaN();
  std::string checksum;  // FNV-1a 64 of the rep-0 result, 16 hex digits
};

// Descending geometric interpolation from `from` to `to`, inclusive.
std::vector<double> sparsity_grid(double from, double to, int points);

// Run the sweep. Per grid point: operands regenerated per repetition from
// seeds derived from (base_seed, grid index, repetition, operand), one
// warm-up run discarded, median sparse kernel wall time over repetitions;
// mult_count and checksum come from repetition 0 and are wall-clock
// independent. The optional callback sees each row as it completes.
std::vector<BenchRow> run_experiment(
    const ExperimentConfig& cfg,
    const std::function<void(const BenchRow&)>& on_row = {});

// Least-squares slope of log y against log x. Entries must be positive.
double fit_loglog(std::span<const double> xs, std::span<const double> ys);

// Slope of log(time_sparse_s) vs log(sparsity) over rows whose time
// exceeds 10x the probed timer resolution; needs at least 5 such rows.
double fit_slope(std::span<const BenchRow> rows);

// Smallest positive step observed from the monotonic clock (cached).
double timer_resolution_s();

// FNV-1a 64 over rank, shape, index rows, and data bit patterns.
std::uint64_t tensor_checksum(const SparseTensor& t);

inline constexpr const char* kCsvHeader =
    "experiment,sparsity,nnz_a,nnz_b,mult_count,time_sparse_s,time_dense_s,"
    "checksum";

std::string format_csv_row(const BenchRow& row);
std::vector<BenchRow> read_csv(const std::string& path);

}  // namespace ftt
