// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <bratu/bdi_domain.hpp>
#include <bratu/ci.hpp>
#include <bratu/oracle.hpp>
#include <bratu/sampling.hpp>
#include <bratu/variational.hpp>

#include "bratu_cli/commands.hpp"
#include "oracles.hpp"

using namespace bratu;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates "label=value (tol)" fragments and the overall verdict.
class Gate {
 public:
  void le(const char* label, double value, double tol) {
    const bool ok = value <= tol;
    pass_ = pass_ && ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s%s=%.2e<=%.0e%s", text_.empty() ? "" : " ", label, value, tol, ok ? "" : "!");
    text_ += buf;
  }
  void in_range(const char* label, double value, double lo, double hi) {
    const bool ok = value >= lo && value <= hi;
    pass_ = pass_ && ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s%s=%.2f in [%g,%g]%s", text_.empty() ? "" : " ", label, value, lo, hi,
                  ok ? "" : "!");
    text_ += buf;
  }
  void flag(const char* label, bool ok) {
    pass_ = pass_ && ok;
    text_ += std::string(text_.empty() ? "" : " ") + label + (ok ? "=ok" : "=FAILED");
  }
  Outcome done() const { return {pass_, text_}; }

 private:
  bool pass_ = true;
  std::string text_;
};

Index dim_n(std::uint64_t seed) { return 1 + static_cast<Index>(seed % 6); }
Index dim_r(std::uint64_t seed) { return static_cast<Index>(seed % 4); }

GeneratorBDI twist_free(Index n, Index r, std::uint64_t seed, double scale = 1.0) {
  const auto g = random_generator_bdi(n, r, seed, scale);
  return GeneratorBDI::make(g.b(), g.a(), Matrix::Zero(n, n));
}

Outcome exponential_solution() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = twist_free(dim_n(seed), dim_r(seed), 1000 + seed);
    worst = std::max(worst, bratu_solution(gen, uniform_grid(-2.0, 2.0, 20)).max_residual("bratu"));
  }
  Gate g;
  g.le("max_residual", worst, 1e-9);
  return g.done();
}

Outcome scalar_closed_form() {
  const auto gen = GeneratorBDI::make(Matrix::Zero(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1));
  const Matrix big = gen.embed();
  double oracle_gap = max_abs(big * big * big - 2.0 * big);
  double gap = 0.0;
  for (double s : uniform_grid(0.0, 1.0, 101)) {
    oracle_gap = std::max(oracle_gap, max_abs(test::cubic_expm(big, s) - oracle::series_expm(s * big)));
    gap = std::max(gap, std::abs(exp_trajectory(gen, s).matrix()(0, 0) - test::scalar_bdi_tilde(s)));
  }
  Gate g;
  g.le("closed_form_vs_series_expm", oracle_gap, 1e-12);
  g.le("h_vs_cosh2", gap, 1e-10);
  return g.done();
}

Outcome block_gauss_bijectivity() {
  double bdi = 0.0, ci = 0.0, constraint = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto point = random_omega_bdi(dim_n(seed), dim_r(seed), 2000 + seed);
    const auto f = block_gauss(point);
    bdi = std::max(bdi, test::rel(max_abs(gauss_compose(f).matrix() - point.matrix()), point.matrix()));
    const auto again = block_gauss(gauss_compose(f));
    bdi = std::max({bdi, test::rel(max_abs(again.n1() - f.n1()), f.n1()),
                    test::rel(max_abs(again.n2() - f.n2()), f.n2())});
    const Matrix rhs = -f.n1() * f.n1().transpose();
    constraint = std::max(constraint, test::rel(max_abs(f.n2() + f.n2().transpose() - rhs), rhs));

    const auto cpoint = random_omega_ci(dim_n(seed), 3000 + seed);
    const auto cf = block_gauss_ci(cpoint);
    ci = std::max(ci, test::rel(max_abs(gauss_compose_ci(cf).matrix() - cpoint.matrix()), cpoint.matrix()));
    const auto cagain = block_gauss_ci(gauss_compose_ci(cf));
    ci = std::max(ci, test::rel(max_abs(cagain.n1() - cf.n1()), cf.n1()));
  }
  Gate g;
  g.le("bdi_round_trip", bdi, 1e-11);
  g.le("ci_round_trip", ci, 1e-11);
  g.le("n2_constraint", constraint, 1e-10);
  return g.done();
}

Outcome lagrangian_identities() {
  double gap = 0.0, total = 0.0, ci_gap = 0.0, ci_total = 0.0, orth = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = random_generator_bdi(1 + seed % 5, dim_r(seed), 4000 + seed);
    const Matrix big = gen.embed();
    const auto cgen = random_generator_ci(1 + seed % 5, 5000 + seed);
    const Matrix cbig = cgen.embed();
    for (double s : uniform_grid(-1.0, 1.0, 9)) {
      const auto parts = lagrangian_breakdown(gen, s);
      gap = std::max(gap, std::abs(parts.identity_gap()));
      total = std::max(total, std::abs(parts.total - 0.5 * (big * big).trace()));
      const auto cparts = lagrangian_ci_identity(cgen, s);
      ci_gap = std::max(ci_gap, std::abs(cparts.identity_gap()));
      ci_total = std::max(ci_total, std::abs(cparts.total - 0.5 * (cbig * cbig).trace()));
    }
  }
  Rng rng(6000);
  for (int k = 0; k < 1000; ++k) {
    const Index n = 1 + k % 6, r = k % 4;
    orth = std::max(orth, std::abs(trace_orthogonality(random_block_lower(n, r, false, rng),
                                                       random_block_lower(n, r, true, rng), n, r)));
  }
  Gate g;
  g.le("bdi_decomposition", gap, 1e-9);
  g.le("bdi_total", total, 1e-10);
  g.le("ci_decomposition", ci_gap, 1e-9);
  g.le("ci_total", ci_total, 1e-10);
  g.flag("trace_orthogonality_exact_zero", orth == 0.0);
  return g.done();
}

Outcome el_system_and_conservation() {
  double el = 0.0, deviation = 0.0, drift = 0.0;
  int twisted = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = random_generator_bdi(dim_n(seed), dim_r(seed), 7000 + seed);
    if (!gen.twist_free()) ++twisted;
    el = std::max(el, el_system_residuals(gen, uniform_grid(0.0, 2.0, 21)).max());
    const auto q = conserved_quantities(gen, uniform_grid(0.0, 2.0, 201));
    deviation = std::max(deviation, q.deviation);
    drift = std::max(drift, q.drift);
  }
  Gate g;
  g.le("el_residual", el, 1e-9);
  g.le("recovered_a_c", deviation, 1e-9);
  g.le("drift", drift, 1e-9);
  g.flag("twisted_instances_present", twisted > 0);
  return g.done();
}

Outcome domain_identities() {
  double half_pi = 0.0, psi_gap = 0.0, taylor1 = 0.0, taylor2 = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index n = dim_n(seed), r = dim_r(seed);
    const auto g1 = random_omega_bdi(n, r, 8000 + seed);
    const auto g2 = random_omega_bdi(n, r, 8500 + seed);
    const auto u1 = f_map(g1), u2 = f_map(g2);
    const Matrix half = 0.5 * pi_map(g1).matrix();
    half_pi = std::max(half_pi, test::rel(max_abs(half - inverse(delta(u1, u1))), half));
    const Matrix k = delta(u1, u2);
    psi_gap = std::max(psi_gap, test::rel(max_abs(psi(cayley(u1), cayley(u2)) - k), k));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gen = random_generator_bdi(1 + seed % 4, dim_r(seed), 8800 + seed);
    const auto fit = taylor_delta_fit(gen);
    taylor1 = std::max(taylor1, max_abs(fit.order1 + gen.c()));
    const Matrix second = gen.a() * gen.a().transpose() - gen.b() * gen.c() - gen.c() * gen.b();
    taylor2 = std::max(taylor2, max_abs(fit.order2 - second));
  }
  Gate g;
  g.le("half_pi", half_pi, 1e-10);
  g.le("psi_cayley", psi_gap, 1e-10);
  g.le("taylor_s", taylor1, 1e-4);
  g.le("taylor_s2", taylor2, 1e-4);
  return g.done();
}

Outcome factor_two() {
  double fd = 0.0, half = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto traj = delta_bratu_solution(twist_free(dim_n(seed), dim_r(seed), 9000 + seed), uniform_grid(0.0, 1.0, 11));
    fd = std::max(fd, traj.max_residual("bratu2"));
    half = std::max(half, traj.max_residual("half_tilde"));
  }
  Gate g;
  g.le("fd_residual", fd, 1e-8);
  g.le("half_tilde", half, 1e-10);
  return g.done();
}

Outcome closed_form_and_series() {
  double psi_gap = 0.0, series = 0.0;
  std::vector<BoundedGenerator> gens;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    gens.push_back(BoundedGenerator::from_bdi(random_generator_bdi(dim_n(seed), dim_r(seed), 10000 + seed)));
  }
  gens.push_back(BoundedGenerator::from_block(Matrix::Zero(5, 2), 2, 3));
  Matrix repeated = Matrix::Zero(5, 2);
  repeated.bottomRows(2) = 0.8 * Matrix::Identity(2, 2);
  gens.push_back(BoundedGenerator::from_block(repeated, 2, 3));
  Matrix rank_one = Matrix::Zero(4, 3);
  rank_one.col(1) = test::lcg_matrix(4, 1, 5);
  gens.push_back(BoundedGenerator::from_block(rank_one, 3, 1));
  for (const auto& gen : gens) {
    psi_gap = std::max(psi_gap, closed_form_h(gen, uniform_grid(-1.0, 1.0, 9)).max_residual("psi_gap"));
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto gen = BoundedGenerator::from_bdi(random_generator_bdi(dim_n(seed), dim_r(seed), 11000 + seed, 0.5));
    const auto f = svd_factors(gen);
    const auto terms = power_series_h(f, 12);
    for (double s : uniform_grid(-0.5, 0.5, 11)) {
      series = std::max(series, max_abs(evaluate_series(terms, s) - closed_form_h(f, s)));
    }
  }
  Gate g;
  g.le("closed_form_vs_psi", psi_gap, 1e-9);
  g.le("order12_series", series, 1e-8);
  return g.done();
}

Outcome ci_suite() {
  double membership = 0.0, residual = 0.0, half = 0.0, scalar = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = random_generator_ci(dim_n(seed), 12000 + seed);
    for (double s : uniform_grid(-2.0, 2.0, 9)) {
      membership = std::max(membership, symplectic_group_gap(exp_trajectory_ci(gen, s).matrix()));
    }
    residual = std::max(residual, bratu_ci_solution(gen, uniform_grid(0.0, 1.0, 11)).max_residual("ci"));
    if (seed < 20) {
      half = std::max(half, prop_ci_solution(gen, uniform_grid(0.0, 1.0, 6)).max_residual("half_tilde"));
    }
  }
  const auto unit = GeneratorCI::make(Matrix::Zero(1, 1), Matrix::Ones(1, 1));
  for (double s : uniform_grid(0.0, 1.0, 21)) {
    scalar = std::max(scalar, std::abs(prop_ci_h(unit, s)(0, 0) - Complex(0.5 * std::cosh(2.0 * s), 0.0)));
  }
  Gate g;
  g.le("symplectic", membership, 1e-10);
  g.le("ci_residual", residual, 1e-9);
  g.le("prop_half_tilde", half, 1e-10);
  g.le("scalar_half_cosh", scalar, 1e-10);
  return g.done();
}

double scalar_rk4_error(double step) {
  const Matrix one = Matrix::Identity(1, 1);
  const auto traj = oracle::integrate_bratu_bdi(one, Matrix::Zero(1, 1), one, {0.0, 1.0}, step);
  return std::abs(traj.samples.back().h(0, 0) - test::scalar_bdi_tilde(traj.samples.back().s));
}

Outcome independent_oracle() {
  double bdi = 0.0, ci = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Index n = 1 + seed % 3;
    const auto gen = twist_free(n, 1 + seed % 2, 13000 + seed);
    const auto traj = oracle::integrate_bratu_bdi(Matrix::Identity(n, n), gen.b(), gen.a(), {0.0, 1.0}, 1e-3);
    for (const auto& s : traj.samples) {
      bdi = std::max(bdi, max_abs(s.h - exp_trajectory(gen, s.s).matrix().topLeftCorner(n, n)));
    }
    const auto cgen = random_generator_ci(n, 14000 + seed);
    const auto ctraj = oracle::integrate_bratu_ci(Matrix::Identity(n, n), cgen.b(), cgen.c(), {0.0, 1.0}, 1e-3);
    for (const auto& s : ctraj.samples) {
      ci = std::max(ci, max_abs(s.h - exp_trajectory_ci(cgen, s.s).matrix().topLeftCorner(n, n)));
    }
  }
  const double e1 = scalar_rk4_error(0.1), e2 = scalar_rk4_error(0.05), e3 = scalar_rk4_error(0.025);
  Gate g;
  g.le("rk4_bdi", bdi, 1e-6);
  g.le("rk4_ci", ci, 1e-6);
  g.le("rk4_scalar_step1e-3", scalar_rk4_error(1e-3), 1e-6);
  g.in_range("halving_ratio_1", e1 / e2, 12.0, 20.0);
  g.in_range("halving_ratio_2", e2 / e3, 12.0, 20.0);
  return g.done();
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "bratu");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str()};
}

Outcome cli_contract() {
  Gate g;
  const auto a = cli({"gen", "--type", "bdi", "--n", "1", "--r", "1", "--seed", "7"});
  const auto b = cli({"gen", "--type", "bdi", "--n", "1", "--r", "1", "--seed", "7"});
  g.flag("gen_deterministic", a.code == 0 && a.out == b.out);
  const auto s1 = cli({"solve", "-", "--steps", "100", "--s-max", "1"}, a.out);
  const auto s2 = cli({"solve", "-", "--steps", "100", "--s-max", "1"}, a.out);
  g.flag("solve_deterministic", s1.out == s2.out);
  g.flag("exit0_pass", s1.code == 0);
  g.flag("exit1_tolerance", cli({"solve", "-", "--tol", "1e-30"}, a.out).code == 1);
  g.flag("exit2_bad_dims", cli({"gen", "--type", "bdi", "--n", "0"}).code == 2);
  g.flag("exit2_parse", cli({"solve", "-"}, "{not json").code == 2);
  int passed = 0;
  for (const char* type : {"bdi", "ci"}) {
    for (int seed = 1; seed <= 10; ++seed) {
      const auto inst = cli({"gen", "--type", type, "--n", std::to_string(1 + seed % 4), "--r",
                             std::to_string(seed % 3), "--seed", std::to_string(seed)});
      const auto rep = cli({"verify", "-", "--suite", "all"}, inst.out);
      if (rep.code == 0 && nlohmann::json::parse(rep.out)["pass"].get<bool>()) ++passed;
    }
  }
  g.flag("verify_all_20_instances", passed == 20);
  return g.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exponential solution correctness", exponential_solution},
      {"scalar closed form", scalar_closed_form},
      {"block-Gauss bijectivity", block_gauss_bijectivity},
      {"Lagrangian identities", lagrangian_identities},
      {"E-L system and conservation", el_system_and_conservation},
      {"domain identities", domain_identities},
      {"factor-2 proposition", factor_two},
      {"SVD closed form and series", closed_form_and_series},
      {"CI suite", ci_suite},
      {"independent RK4 oracle", independent_oracle},
      {"CLI contract", cli_contract},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, body] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d %s (%.2fs): %s\n", outcome.pass ? "PASS" : "FAIL", index, name, secs,
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
