#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <json.hpp>

#include <bratu/bdi_domain.hpp>
#include <bratu/oracle.hpp>
#include <bratu/sampling.hpp>
#include <bratu/variational.hpp>

#include "bratu_cli/commands.hpp"

namespace bratu::cli {

namespace {

using Checks = std::vector<Check>;

void add(Checks& out, const std::string& name, double tolerance, const std::function<double()>& body) {
  Check check;
  check.name = name;
  check.tolerance = tolerance;
  try {
    check.residual = body();
    check.pass = check.residual <= tolerance;
  } catch (const std::exception& e) {
    check.residual = std::numeric_limits<double>::infinity();
    check.pass = false;
    check.error = e.what();
  }
  out.push_back(std::move(check));
}

double relative(double gap, const Matrix& ref) { return gap / std::max(1.0, max_abs(ref)); }

const std::vector<double>& sym_grid() {
  static const std::vector<double> grid = uniform_grid(-1.0, 1.0, 9);
  return grid;
}

Matrix random_right_factor(Index n, Rng& rng) {
  // I + 0.3 R keeps the condition number far below 1e3
  return Matrix::Identity(n, n) + rng.matrix(n, n, 0.3 / std::max<Index>(1, n));
}

// ---- bdi ----

void gauss_bdi(const GeneratorBDI& gen, Checks& out) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix j = omega_involution(n, r);
  add(out, "omega_membership", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const Matrix g = exp_trajectory(gen, s).matrix();
      worst = std::max(worst, max_abs(j * g * j * g - Matrix::Identity(g.rows(), g.cols())));
    }
    return worst;
  });
  add(out, "gauss_round_trip", 1e-11, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto point = exp_trajectory(gen, s);
      const auto f = block_gauss(point);
      worst = std::max(worst, relative(max_abs(gauss_compose(f).matrix() - point.matrix()), point.matrix()));
      const auto again = block_gauss(gauss_compose(f));
      worst = std::max({worst, relative(max_abs(again.h().matrix() - f.h().matrix()), f.h().matrix()),
                        relative(max_abs(again.n1() - f.n1()), f.n1()),
                        relative(max_abs(again.n2() - f.n2()), f.n2())});
    }
    return worst;
  });
  add(out, "nilpotent_constraint", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto f = block_gauss(exp_trajectory(gen, s));
      const Matrix lhs = f.n2() + f.n2().transpose();
      const Matrix rhs = -f.n1() * f.n1().transpose();
      worst = std::max(worst, relative(max_abs(lhs - rhs), rhs));
    }
    return worst;
  });
  add(out, "log_derivative", 1e-11, [&] {
    double worst = 0.0;
    const Matrix big = gen.embed();
    for (double s : sym_grid()) {
      const auto jet = gauss_jet(gen, s);
      worst = std::max(worst, relative(max_abs(jet.dg * inverse(jet.g) - big), big));
    }
    return worst;
  });
  add(out, "semigroup", 1e-10, [&] {
    double worst = 0.0;
    for (double s : {-0.7, 0.3, 0.9}) {
      for (double t : {-0.2, 0.4}) {
        const Matrix whole = exp_trajectory(gen, s + t).matrix();
        const Matrix prod = exp_trajectory(gen, s).matrix() * exp_trajectory(gen, t).matrix();
        worst = std::max(worst, relative(max_abs(prod - whole), whole));
      }
    }
    return worst;
  });
  const auto grid = uniform_grid(0.1, 1.0, 10);
  if (gen.twist_free()) {
    add(out, "bratu_residual", 1e-9, [&] { return bratu_solution(gen, grid).max_residual(); });
  } else {
    add(out, "el_system", 1e-9, [&] { return el_system_residuals(gen, grid).max(); });
  }
}

void lagrangian_bdi(const GeneratorBDI& gen, std::uint64_t seed, Checks& out) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix big = gen.embed();
  const double expected = 0.5 * (big * big).trace();
  add(out, "lagrangian_identity", 1e-9, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) worst = std::max(worst, std::abs(lagrangian_breakdown(gen, s).identity_gap()));
    return worst;
  });
  add(out, "lagrangian_total", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) worst = std::max(worst, std::abs(lagrangian_breakdown(gen, s).total - expected));
    return worst;
  });
  add(out, "trace_orthogonality", 0.0, [&] {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Matrix x1 = random_block_lower(n, r, false, rng);
      const Matrix x2 = random_block_lower(n, r, true, rng);
      worst = std::max(worst, std::abs(trace_orthogonality(x1, x2, n, r)));
    }
    return worst;
  });
  const auto grid = uniform_grid(0.0, 1.0, 11);
  add(out, "el_system", 1e-9, [&] { return el_system_residuals(gen, grid).max(); });
  const auto long_grid = uniform_grid(0.0, 2.0, 201);
  const auto conserved = conserved_quantities(gen, long_grid);
  add(out, "conserved_generator", 1e-9, [&] { return conserved.deviation; });
  add(out, "conserved_drift", 1e-9, [&] { return conserved.drift; });
  add(out, "geodesic", 1e-8, [&] { return geodesic_residual(gen, uniform_grid(0.0, 1.0, 101)); });
}

void domain_bdi(const GeneratorBDI& gen, std::uint64_t seed, Checks& out) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix a = cayley_matrix(n, r);
  add(out, "f_in_domain", 0.0, [&] {
    double failures = 0.0;
    for (double s : sym_grid()) {
      if (!siegel_membership(f_map(exp_trajectory(gen, s))).in_domain) failures += 1.0;
    }
    return failures;
  });
  add(out, "half_pi", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto point = exp_trajectory(gen, s);
      const auto u = f_map(point);
      const Matrix half = 0.5 * pi_map(point).matrix();
      worst = std::max(worst, relative(max_abs(half - inverse(delta(u, u))), half));
    }
    return worst;
  });
  add(out, "psi_cayley", 1e-10, [&] {
    double worst = 0.0;
    for (double s : {-0.8, 0.0, 0.5}) {
      for (double t : {-0.3, 0.7}) {
        const auto u1 = f_map(exp_trajectory(gen, s));
        const auto u2 = f_map(exp_trajectory(gen, t));
        const Matrix k = delta(u1, u2);
        const Matrix v = psi(DomainPoint::bounded(a * u1.representative(), n, r),
                             DomainPoint::bounded(a * u2.representative(), n, r));
        worst = std::max(worst, relative(max_abs(v - k), k));
      }
    }
    return worst;
  });
  add(out, "representative_independence", 1e-10, [&] {
    Rng rng(seed + 17);
    double worst = 0.0;
    for (double s : {-0.5, 0.5}) {
      const auto u = f_map(exp_trajectory(gen, s));
      const auto w = f_map(exp_trajectory(gen, -s / 2));
      const Matrix k = delta(u, w);
      const auto u_moved = DomainPoint::siegel(u.representative() * random_right_factor(n, rng), n, r);
      const auto w_moved = DomainPoint::siegel(w.representative() * random_right_factor(n, rng), n, r);
      worst = std::max(worst, relative(max_abs(delta(u_moved, w_moved) - k), k));
    }
    return worst;
  });
  const TaylorFit fit = taylor_delta_fit(gen);
  add(out, "taylor_order1", 1e-4, [&] { return max_abs(fit.order1 + gen.c()); });
  add(out, "taylor_order2", 1e-4, [&] {
    const Matrix expected = gen.a() * gen.a().transpose() - gen.b() * gen.c() - gen.c() * gen.b();
    return max_abs(fit.order2 - expected);
  });
  const auto grid = uniform_grid(0.0, 1.0, 11);
  if (gen.twist_free()) {
    const auto traj = delta_bratu_solution(gen, grid);
    add(out, "factor_two_fd", 1e-8, [&] { return traj.max_residual("bratu2"); });
    add(out, "factor_two_half_tilde", 1e-10, [&] { return traj.max_residual("half_tilde"); });
  } else {
    add(out, "factor_two_half_tilde", 1e-10, [&] {
      double worst = 0.0;
      for (double s : grid) {
        const Matrix tilde = expm(-2.0 * s * gen.embed()).topLeftCorner(n, n);
        worst = std::max(worst, relative(max_abs(delta_h(gen, s) - 0.5 * tilde), tilde));
      }
      return worst;
    });
  }
  add(out, "f_equivariance", 1e-10, [&] {
    Rng rng(seed + 29);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Matrix g = expm(0.5 * random_algebra_bdi(n, r, rng));
      const auto point = exp_trajectory(gen, 0.4 * (k - 1));
      const auto lhs = f_map(act(g, point));
      const auto rhs = act(g, f_map(point));
      worst = std::max(worst, relative(max_abs(lhs.normalized() - rhs.normalized()), lhs.normalized()));
    }
    return worst;
  });
}

void series_bdi(const GeneratorBDI& gen, Checks& out) {
  const auto bounded = BoundedGenerator::from_bdi(gen);
  const SvdFactors f = svd_factors(bounded);
  const auto grid = uniform_grid(-1.0, 1.0, 9);
  add(out, "closed_form_vs_psi", 1e-9, [&] { return closed_form_h(bounded, grid).max_residual("psi_gap"); });
  add(out, "closed_form_vs_delta", 1e-9, [&] {
    double worst = 0.0;
    for (double s : grid) worst = std::max(worst, max_abs(closed_form_h(f, s) - delta_h(gen, s)));
    return worst;
  });
  const int order = 12;
  const auto terms = power_series_h(f, order);
  const double sigma_max = f.sigma.size() > 0 ? f.sigma.maxCoeff() : 0.0;
  const double bound = std::max(1e-12, series_truncation_bound(sigma_max, 0.5, order));
  add(out, "series_order12", bound, [&] {
    double worst = 0.0;
    for (double s : uniform_grid(-0.5, 0.5, 11)) {
      worst = std::max(worst, max_abs(evaluate_series(terms, s) - closed_form_h(f, s)));
    }
    return worst;
  });
  add(out, "series_leading", 1e-15, [&] {
    return max_abs(terms.front().coefficient - 0.5 * Matrix::Identity(gen.n(), gen.n()));
  });
}

void oracle_common(const Matrix& big, Checks& out) {
  add(out, "expm_vs_series", 1e-10, [&] {
    const Matrix e = expm(big);
    return relative(max_abs(e - oracle::series_expm(big)), e);
  });
  add(out, "expm_inverse", 1e-11, [&] {
    return max_abs(expm(big) * expm(-big) - Matrix::Identity(big.rows(), big.cols()));
  });
}

double rk4_gap(const Trajectory& rk4, const std::function<Matrix(double)>& exact) {
  double worst = 0.0;
  for (const auto& sample : rk4.samples) {
    const Matrix ref = exact(sample.s);
    worst = std::max(worst, relative(max_abs(sample.h - ref), ref));
  }
  return worst;
}

void oracle_bdi(const GeneratorBDI& gen, Checks& out) {
  oracle_common(gen.embed(), out);
  if (!gen.twist_free()) return;
  const Index n = gen.n();
  add(out, "rk4_vs_exponential", 1e-6, [&] {
    const auto rk4 = oracle::integrate_bratu_bdi(Matrix::Identity(n, n), gen.b(), gen.a(), {0.0, 1.0}, 1e-3);
    return rk4_gap(rk4, [&](double s) { return Matrix(exp_trajectory(gen, s).matrix().topLeftCorner(n, n)); });
  });
}

// ---- ci ----

void gauss_ci(const GeneratorCI& gen, Checks& out) {
  const Index n = gen.n();
  add(out, "symplectic_membership", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) worst = std::max(worst, symplectic_group_gap(exp_trajectory_ci(gen, s).matrix()));
    return worst;
  });
  add(out, "gauss_round_trip", 1e-11, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto point = exp_trajectory_ci(gen, s);
      const auto f = block_gauss_ci(point);
      worst = std::max(worst, relative(max_abs(gauss_compose_ci(f).matrix() - point.matrix()), point.matrix()));
      const auto again = block_gauss_ci(gauss_compose_ci(f));
      worst = std::max({worst, relative(max_abs(again.h().matrix() - f.h().matrix()), f.h().matrix()),
                        relative(max_abs(again.n1() - f.n1()), f.n1())});
    }
    return worst;
  });
  add(out, "n1_symmetry", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto jet = gauss_jet_ci(gen, s);
      worst = std::max(worst, relative(max_abs(jet.n1 - jet.n1.transpose()), jet.n1));
    }
    return worst;
  });
  add(out, "semigroup", 1e-10, [&] {
    double worst = 0.0;
    for (double s : {-0.7, 0.3, 0.9}) {
      for (double t : {-0.2, 0.4}) {
        const Matrix whole = exp_trajectory_ci(gen, s + t).matrix();
        const Matrix prod = exp_trajectory_ci(gen, s).matrix() * exp_trajectory_ci(gen, t).matrix();
        worst = std::max(worst, relative(max_abs(prod - whole), whole));
      }
    }
    return worst;
  });
  add(out, "ci_residual", 1e-9, [&] { return bratu_ci_solution(gen, uniform_grid(0.0, 1.0, 11)).max_residual(); });
  (void)n;
}

void lagrangian_ci(const GeneratorCI& gen, Checks& out) {
  const Matrix big = gen.embed();
  const double expected = 0.5 * (big * big).trace();
  add(out, "lagrangian_identity", 1e-9, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) worst = std::max(worst, std::abs(lagrangian_ci_identity(gen, s).identity_gap()));
    return worst;
  });
  add(out, "lagrangian_total", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) worst = std::max(worst, std::abs(lagrangian_ci_identity(gen, s).total - expected));
    return worst;
  });
}

void domain_ci(const GeneratorCI& gen, std::uint64_t seed, Checks& out) {
  const Index n = gen.n();
  add(out, "f_in_domain", 0.0, [&] {
    double failures = 0.0;
    for (double s : sym_grid()) {
      if (!ci_membership(f_map_ci(exp_trajectory_ci(gen, s))).in_domain) failures += 1.0;
    }
    return failures;
  });
  add(out, "half_pi", 1e-10, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto point = exp_trajectory_ci(gen, s);
      const auto u = f_map_ci(point);
      const Matrix half = 0.5 * pi_map_ci(point).matrix();
      worst = std::max(worst, relative(max_abs(half.cast<Complex>() - inverse(delta_ci(u, u))), half));
    }
    return worst;
  });
  add(out, "delta_hermitian", 1e-12, [&] {
    double worst = 0.0;
    for (double s : sym_grid()) {
      const auto u = f_map_ci(exp_trajectory_ci(gen, s));
      const CMatrix k = delta_ci(u, u);
      worst = std::max(worst, max_abs(k - k.adjoint()) / std::max(1.0, max_abs(k)));
    }
    return worst;
  });
  const auto traj = prop_ci_solution(gen, uniform_grid(0.0, 1.0, 11));
  add(out, "prop_ci_fd", 1e-8, [&] { return traj.max_residual("ci_fd"); });
  add(out, "prop_ci_half_tilde", 1e-10, [&] { return traj.max_residual("half_tilde"); });
  add(out, "prop_ci_imag", 1e-10, [&] { return traj.max_residual("imag"); });
  add(out, "f_equivariance", 1e-10, [&] {
    Rng rng(seed + 31);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Matrix g = expm(0.5 * random_algebra_ci(n, rng));
      const auto point = exp_trajectory_ci(gen, 0.4 * (k - 1));
      const auto lhs = f_map_ci(act_ci(g, point));
      const auto rhs = act_ci(g, f_map_ci(point));
      worst = std::max(worst, max_abs(lhs.normalized() - rhs.normalized()) /
                                  std::max(1.0, max_abs(lhs.normalized())));
    }
    return worst;
  });
}

void oracle_ci(const GeneratorCI& gen, Checks& out) {
  oracle_common(gen.embed(), out);
  const Index n = gen.n();
  add(out, "rk4_vs_exponential", 1e-6, [&] {
    const auto rk4 = oracle::integrate_bratu_ci(Matrix::Identity(n, n), gen.b(), gen.c(), {0.0, 1.0}, 1e-3);
    return rk4_gap(rk4, [&](double s) { return Matrix(exp_trajectory_ci(gen, s).matrix().topLeftCorner(n, n)); });
  });
}

bool wants(const std::string& suite, const char* name) { return suite == "all" || suite == name; }

}  // namespace

std::vector<Check> verify_suite(const Instance& inst, const std::string& suite, std::uint64_t seed) {
  static const char* known[] = {"all", "gauss", "lagrangian", "domain", "series", "oracle"};
  if (std::find(std::begin(known), std::end(known), suite) == std::end(known)) {
    throw InputError("verify: unknown suite '" + suite + "'");
  }
  Checks out;
  if (inst.is_bdi()) {
    const auto gen = inst.bdi();
    if (wants(suite, "gauss")) gauss_bdi(gen, out);
    if (wants(suite, "lagrangian")) lagrangian_bdi(gen, seed, out);
    if (wants(suite, "domain")) domain_bdi(gen, seed, out);
    if (wants(suite, "series")) series_bdi(gen, out);
    if (wants(suite, "oracle")) oracle_bdi(gen, out);
  } else {
    if (suite == "series") throw InputError("verify: the series suite needs a bdi instance");
    const auto gen = inst.ci();
    if (wants(suite, "gauss")) gauss_ci(gen, out);
    if (wants(suite, "lagrangian")) lagrangian_ci(gen, out);
    if (wants(suite, "domain")) domain_ci(gen, seed, out);
    if (wants(suite, "oracle")) oracle_ci(gen, out);
  }
  return out;
}

std::string format_report(const Instance& inst, const std::string& suite, const std::vector<Check>& checks) {
  nlohmann::ordered_json doc;
  doc["type"] = type_name(inst.type);
  doc["n"] = inst.n;
  if (inst.is_bdi()) doc["r"] = inst.r;
  if (inst.seed) doc["seed"] = *inst.seed;
  doc["suite"] = suite;
  auto arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["residual"] = c.residual;
    item["tolerance"] = c.tolerance;
    item["pass"] = c.pass;
    if (!c.error.empty()) item["error"] = c.error;
    arr.push_back(std::move(item));
    all = all && c.pass;
  }
  doc["checks"] = std::move(arr);
  doc["pass"] = all;
  return doc.dump(2) + "\n";
}

}  // namespace bratu::cli
