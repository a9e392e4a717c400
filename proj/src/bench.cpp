#include "ftt/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ftt/contract.hpp"
#include "ftt/oracle.hpp"
#include "ftt/randgen.hpp"

namespace ftt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t grid,
                          std::uint64_t rep, std::uint64_t operand) {
  std::uint64_t s = base;
  for (const std::uint64_t v : {grid, rep, operand}) {
    s = SplitMix64(s ^ v).next();
  }
  return s;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

Index size_of(std::span<const Index> shape) {
  Index total = 1;
  for (const Index e : shape) total *= e;  // validated upstream
  return total;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.grid_points < 1) {
    throw std::invalid_argument("bench: grid_points must be >= 1");
  }
  if (cfg.seeds < 1) throw std::invalid_argument("bench: seeds must be >= 1");
  for (const double p : {cfg.sparsity_from, cfg.sparsity_to}) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("bench: sparsity must lie in (0, 1]");
    }
  }
  if (cfg.subscripts.empty() || cfg.shape_a.empty() || cfg.shape_b.empty()) {
    throw std::invalid_argument(
        "bench: custom experiments need subscripts and both shapes");
  }
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

void feed(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
}

}  // namespace

void apply_experiment_defaults(ExperimentConfig& cfg) {
  const auto fill = [&cfg](const char* subscripts, std::vector<Index> sa,
                           std::vector<Index> sb) {
    if (cfg.subscripts.empty()) cfg.subscripts = subscripts;
    if (cfg.shape_a.empty()) cfg.shape_a = std::move(sa);
    if (cfg.shape_b.empty()) cfg.shape_b = std::move(sb);
  };
  if (cfg.experiment == "matmul") {
    fill("ab,bc->ac", {256, 256}, {256, 256});
  } else if (cfg.experiment == "mpo") {
    fill("ABab,BCcd->ACabcd", {20, 20, 20, 20}, {20, 20, 20, 20});
  } else if (cfg.experiment == "pepo") {
    fill("ABCDab,DEFGcd->ABCEFGabcd", {8, 8, 8, 8, 8, 8}, {8, 8, 8, 8, 8, 8});
  } else if (cfg.experiment != "custom") {
    throw std::invalid_argument("bench: unknown experiment '" +
                                cfg.experiment + "'");
  }
}

std::vector<double> sparsity_grid(double from, double to, int points) {
  if (points < 1) throw std::invalid_argument("sparsity_grid: need a point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(from);
    return grid;
  }
  const double ratio = std::log(to / from) / (points - 1);
  for (int k = 0; k < points; ++k) {
    grid.push_back(from * std::exp(ratio * k));
  }
  grid.back() = to;  // pin the endpoint against rounding drift
  return grid;
}

std::uint64_t tensor_checksum(const SparseTensor& t) {
  std::uint64_t h = 14695981039346656037ull;
  feed(h, static_cast<std::uint64_t>(t.rank()));
  for (const Index e : t.shape) feed(h, static_cast<std::uint64_t>(e));
  feed(h, static_cast<std::uint64_t>(t.nnz()));
  for (std::size_t r = 0; r < t.indices.rows(); ++r) {
    for (std::size_t c = 0; c < t.indices.cols(); ++c) {
      feed(h, static_cast<std::uint64_t>(t.indices(r, c)));
    }
  }
  for (const double v : t.data) feed(h, std::bit_cast<std::uint64_t>(v));
  return h;
}

double timer_resolution_s() {
  static const double cached = [] {
    double best = 1.0;
    for (int trial = 0; trial < 64; ++trial) {
      const auto t0 = Clock::now();
      auto t1 = t0;
      while (t1 == t0) t1 = Clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  }();
  return cached;
}

std::vector<BenchRow> run_experiment(
    const ExperimentConfig& cfg,
    const std::function<void(const BenchRow&)>& on_row) {
  ExperimentConfig c = cfg;
  apply_experiment_defaults(c);
  validate(c);
  const ContractionPlan plan = make_plan(c.subscripts, c.shape_a, c.shape_b);

  const Index size_a = size_of(c.shape_a);
  const Index size_b = size_of(c.shape_b);
  const std::vector<double> grid =
      sparsity_grid(c.sparsity_from, c.sparsity_to, c.grid_points);

  // the dense reference is sparsity-independent, so it is timed once per
  // shape and replicated across rows; skipped when any tensor involved
  // would exceed the oracle guard
  Index out_size = 1;
  for (const char label : plan.output_labels) {
    out_size *= plan.extents.at(label);
  }
  const bool oracle_fits = size_a <= kOracleOperandLimit &&
                           size_b <= kOracleOperandLimit &&
                           out_size <= kOracleOperandLimit;
  double dense_time = std::numeric_limits<double>::quiet_NaN();

  std::vector<BenchRow> rows;
  rows.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double p = grid[k];
    const auto nnz_a = std::min<Index>(
        size_a, std::max<Index>(0, std::llround(p * static_cast<double>(size_a))));
    const auto nnz_b =
        c.sweep_one_side
            ? size_b
            : std::min<Index>(size_b,
                              std::max<Index>(0, std::llround(
                                  p * static_cast<double>(size_b))));

    BenchRow row;
    row.experiment = c.experiment;
    row.sparsity = static_cast<double>(nnz_a) / static_cast<double>(size_a);
    row.nnz_a = nnz_a;
    row.nnz_b = nnz_b;

    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(c.seeds));
    for (int rep = 0; rep < c.seeds; ++rep) {
      const SparseTensor a = random_sparse(
          c.shape_a, nnz_a, derive_seed(c.base_seed, k, rep, 0));
      const SparseTensor b = random_sparse(
          c.shape_b, nnz_b, derive_seed(c.base_seed, k, rep, 1));
      if (rep == 0) {
        contract_sparse_sparse(a, b, plan);  // warm-up, discarded

        ContractStats stats;
        const auto t0 = Clock::now();
        const SparseTensor result = contract_sparse_sparse(a, b, plan, &stats);
        times.push_back(seconds_since(t0));
        row.mult_count = stats.mult_count;
        row.checksum = hex16(tensor_checksum(result));

        if (c.oracle_check && oracle_fits) {
          const DenseTensor expect =
              dense_contract(to_dense(a), to_dense(b), plan);
          double scale = 1.0;
          for (const double v : expect.values) {
            scale = std::max(scale, std::abs(v));
          }
          if (max_abs_diff(to_dense(result), expect) > 1e-12 * scale) {
            throw std::runtime_error(
                "bench: oracle check failed at sparsity " + std::to_string(p));
          }
        }
        if (c.include_dense_control && oracle_fits && std::isnan(dense_time)) {
          const DenseTensor da = to_dense(a);
          const DenseTensor db = to_dense(b);
          const auto d0 = Clock::now();
          dense_contract(da, db, plan);
          dense_time = seconds_since(d0);
        }
      } else {
        const auto t0 = Clock::now();
        contract_sparse_sparse(a, b, plan);
        times.push_back(seconds_since(t0));
      }
    }
    row.time_sparse_s = median(std::move(times));
    row.time_dense_s = dense_time;
    rows.push_back(row);
    if (on_row) on_row(rows.back());
  }
  return rows;
}

double fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("fit_loglog: need two or more paired points");
  }
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("fit_loglog: entries must be positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog: x values coincide");
  return sxy / sxx;
}

double fit_slope(std::span<const BenchRow> rows) {
  const double floor = 10.0 * timer_resolution_s();
  std::vector<double> xs, ys;
  for (const BenchRow& row : rows) {
    if (row.time_sparse_s > floor && row.sparsity > 0.0) {
      xs.push_back(row.sparsity);
      ys.push_back(row.time_sparse_s);
    }
  }
  if (xs.size() < 5) {
    throw std::invalid_argument(
        "fit_slope: fewer than 5 rows above the timing floor");
  }
  return fit_loglog(xs, ys);
}

std::string format_csv_row(const BenchRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%.9e,%lld,%lld,%lld,%.9e,%.9e,%s",
                row.experiment.c_str(), row.sparsity, row.nnz_a, row.nnz_b,
                row.mult_count, row.time_sparse_s, row.time_dense_s,
                row.checksum.c_str());
  return buf;
}

std::vector<BenchRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("csv: unexpected header in " + path);
  }
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw std::runtime_error("csv: malformed row in " + path);
    }
    BenchRow row;
    row.experiment = cells[0];
    row.sparsity = std::stod(cells[1]);
    row.nnz_a = std::stoll(cells[2]);
    row.nnz_b = std::stoll(cells[3]);
    row.mult_count = std::stoll(cells[4]);
    row.time_sparse_s = std::stod(cells[5]);
    row.time_dense_s = std::stod(cells[6]);
    row.checksum = cells[7];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ftt
