#include "bratu_cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

#include <bratu/errors.hpp>
#include <bratu/sampling.hpp>

namespace bratu::cli {

namespace {

// Writes via a temporary file and rename so a failed run leaves no partial output.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << text;
    if (!file) throw InputError("cannot write '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot write '" + path + "': " + ec.message());
}

struct GenArgs {
  std::string type;
  int n = 0;
  int r = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::string output;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  if (args.type != "bdi" && args.type != "ci") throw InputError("gen: --type must be bdi or ci");
  if (args.n < 1 || args.n > 64) throw InputError("gen: --n must lie in [1, 64]");
  if (args.type == "bdi" && (args.r < 0 || args.r > 64)) throw InputError("gen: --r must lie in [0, 64]");
  if (!(args.scale > 0.0) || !std::isfinite(args.scale)) throw InputError("gen: --scale must be positive");
  const Instance inst = args.type == "bdi"
                            ? Instance::from(random_generator_bdi(args.n, args.r, args.seed, args.scale), args.seed)
                            : Instance::from(random_generator_ci(args.n, args.seed, args.scale), args.seed);
  emit(dump_instance(inst), args.output, out);
  return exit_pass;
}

struct SolveArgs {
  std::string instance = "-";
  SolveOptions opts;
  std::string normalization = "tilde";
  std::string format = "csv";
  double tol = 1e-8;
  std::string output;
};

int cmd_solve(SolveArgs args, std::istream& in, std::ostream& out, std::ostream& err) {
  args.opts.normalization = args.normalization == "delta" ? Normalization::delta : Normalization::tilde;
  const Instance inst = read_instance(args.instance, in);
  const Trajectory traj = solve_trajectory(inst, args.opts);
  const std::string text =
      args.format == "json" ? format_json(inst, args.opts, traj) : format_csv(inst, args.opts, traj);
  emit(text, args.output, out);
  const double worst = traj.max_residual();
  if (!(worst <= args.tol)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "solve: max residual %.3e exceeds --tol %.3e\n", worst, args.tol);
    err << buf;
    return exit_numerical;
  }
  return exit_pass;
}

struct VerifyArgs {
  std::string instance = "-";
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_verify(const VerifyArgs& args, std::istream& in, std::ostream& out) {
  const Instance inst = read_instance(args.instance, in);
  const auto checks = verify_suite(inst, args.suite, args.seed);
  emit(format_report(inst, args.suite, checks), args.output, out);
  for (const auto& c : checks) {
    if (!c.pass) return exit_numerical;
  }
  return exit_pass;
}

struct SeriesArgs {
  std::string instance = "-";
  int order = 12;
  std::vector<double> at;
  std::string output;
};

int cmd_series(const SeriesArgs& args, std::istream& in, std::ostream& out) {
  const Instance inst = read_instance(args.instance, in);
  emit(series_report(inst, args.order, args.at), args.output, out);
  return exit_pass;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential solutions of the matrix-valued Bratu equation"};
  app.name("bratu");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--type", gen.type, "bdi or ci")->required()->check(CLI::IsMember({"bdi", "ci"}));
  gen_cmd->add_option("--n", gen.n, "Block size n")->required();
  gen_cmd->add_option("--r", gen.r, "Block size r (bdi)")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--scale", gen.scale, "Entries drawn from [-scale, scale]")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Sample h(s) with residual columns");
  solve_cmd->add_option("instance", solve.instance, "Instance file, '-' for stdin")->capture_default_str();
  solve_cmd->add_option("--s-max", solve.opts.s_max, "Grid end point")->capture_default_str();
  solve_cmd->add_option("--steps", solve.opts.steps, "Grid intervals")->capture_default_str();
  solve_cmd->add_option("--normalization", solve.normalization, "tilde or delta")
      ->check(CLI::IsMember({"tilde", "delta"}))
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve.tol, "Residual tolerance for exit code")->capture_default_str();
  solve_cmd->add_option("-o,--output", solve.output, "Output file (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run identity checks and report JSON");
  verify_cmd->add_option("instance", verify.instance, "Instance file, '-' for stdin")->capture_default_str();
  verify_cmd->add_option("--suite", verify.suite, "all|gauss|lagrangian|domain|series|oracle")
      ->check(CLI::IsMember({"all", "gauss", "lagrangian", "domain", "series", "oracle"}))
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed for randomized checks")->capture_default_str();
  verify_cmd->add_option("-o,--output", verify.output, "Output file (default stdout)");

  SeriesArgs series;
  auto* series_cmd = app.add_subcommand("series", "Power-series coefficients of h(s)");
  series_cmd->add_option("instance", series.instance, "Instance file, '-' for stdin")->capture_default_str();
  series_cmd->add_option("--order", series.order, "Highest power")->capture_default_str();
  series_cmd->add_option("--at", series.at, "Evaluate the truncated series at these s");
  series_cmd->add_option("-o,--output", series.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (solve_cmd->parsed()) return cmd_solve(solve, in, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, in, out);
    if (series_cmd->parsed()) return cmd_series(series, in, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_usage;
}

}  // namespace bratu::cli
