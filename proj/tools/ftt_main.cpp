#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "ftt/bench.hpp"
#include "ftt/contract.hpp"
#include "ftt/io.hpp"

namespace {

int run_bench(const ftt::ExperimentConfig& cfg, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("bench: cannot open " + out_path);
  out << ftt::kCsvHeader << '\n';
  out.flush();
  // flush row by row so an interrupted sweep still leaves usable data
  ftt::run_experiment(cfg, [&out](const ftt::BenchRow& row) {
    out << ftt::format_csv_row(row) << '\n';
    out.flush();
  });
  return 0;
}

int run_contract(const std::string& spec, const std::string& a_path,
                 const std::string& b_path, const std::string& out_path) {
  const ftt::SparseTensor a = ftt::read_sten(a_path);
  const ftt::SparseTensor b = ftt::read_sten(b_path);
  const ftt::ContractionPlan plan = ftt::make_plan(spec, a.shape, b.shape);
  ftt::write_sten(ftt::contract_sparse_sparse(a, b, plan), out_path);
  return 0;
}

int run_slope(const std::string& in_path) {
  const std::vector<ftt::BenchRow> rows = ftt::read_csv(in_path);
  std::printf("%.6f\n", ftt::fit_slope(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse tensor partial-trace engine"};
  app.require_subcommand(1);

  ftt::ExperimentConfig cfg;
  std::string csv_out;
  CLI::App* bench = app.add_subcommand("bench", "run a sparsity sweep");
  bench->add_option("--experiment", cfg.experiment, "matmul|mpo|pepo|custom");
  bench->add_option("--subscripts", cfg.subscripts,
                    "two-operand subscripts such as ab,bc->ac");
  bench->add_option("--shape-a", cfg.shape_a, "extents of operand A");
  bench->add_option("--shape-b", cfg.shape_b, "extents of operand B");
  bench->add_option("--sparsity-from", cfg.sparsity_from, "grid start");
  bench->add_option("--sparsity-to", cfg.sparsity_to, "grid end");
  bench->add_option("--grid-points", cfg.grid_points, "grid size");
  bench->add_option("--seeds", cfg.seeds, "repetitions per grid point");
  bench->add_option("--base-seed", cfg.base_seed, "seed for operand streams");
  bench->add_flag("--dense-control", cfg.include_dense_control,
                  "also time the dense reference once per shape");
  bench->add_flag("--oracle-check", cfg.oracle_check,
                  "validate each grid point against the dense oracle");
  bench->add_flag("--sweep-one-side", cfg.sweep_one_side,
                  "keep operand B fully dense");
  bench->add_option("--out", csv_out, "CSV output path")->required();

  std::string spec, a_path, b_path, c_path;
  CLI::App* contract =
      app.add_subcommand("contract", "contract two .sten tensors");
  contract->add_option("--spec", spec, "subscripts")->required();
  contract->add_option("--a", a_path, "operand A path")->required();
  contract->add_option("--b", b_path, "operand B path")->required();
  contract->add_option("--out", c_path, "result path")->required();

  std::string csv_in;
  CLI::App* slope =
      app.add_subcommand("slope", "fit the log-log time slope of a sweep");
  slope->add_option("--in", csv_in, "CSV produced by bench")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bench->parsed()) return run_bench(cfg, csv_out);
    if (contract->parsed()) return run_contract(spec, a_path, b_path, c_path);
    return run_slope(csv_in);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
