#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <json.hpp>

#include <bratu/bdi_domain.hpp>
#include <bratu/variational.hpp>

#include "bratu_cli/commands.hpp"

namespace bratu::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

const char* normalization_name(Normalization n) { return n == Normalization::tilde ? "tilde" : "delta"; }

Trajectory el_trajectory(const GeneratorBDI& gen, std::span<const double> grid,
                         const std::function<Matrix(double)>& h_of) {
  const ElResiduals el = el_system_residuals(gen, grid);
  Trajectory out;
  out.residual_names = {"el_h", "el_n1", "el_n2"};
  out.samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.samples.push_back({grid[i], h_of(grid[i]), {el.h_equation[i], el.n1_equation[i], el.n2_equation[i]}});
  }
  return out;
}

ordered_json flat(const Matrix& m) {
  auto arr = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

}  // namespace

Trajectory solve_trajectory(const Instance& inst, const SolveOptions& opts) {
  if (!(opts.s_max > 0.0) || !std::isfinite(opts.s_max)) throw InputError("--s-max must be positive");
  if (opts.steps < 1) throw InputError("--steps must be at least 1");
  const auto grid = uniform_grid(0.0, opts.s_max, static_cast<std::size_t>(opts.steps) + 1);

  if (!inst.is_bdi()) {
    const auto gen = inst.ci();
    return opts.normalization == Normalization::tilde ? bratu_ci_solution(gen, grid)
                                                      : prop_ci_solution(gen, grid);
  }
  const auto gen = inst.bdi();
  const Index n = gen.n();
  if (opts.normalization == Normalization::tilde) {
    if (gen.twist_free()) return bratu_solution(gen, grid);
    return el_trajectory(gen, grid, [&](double s) {
      return Matrix(exp_trajectory(gen, s).matrix().topLeftCorner(n, n));
    });
  }
  if (gen.twist_free()) return delta_bratu_solution(gen, grid);
  // h = Delta^-1 equals half the h-tilde of the generator -2B.
  const auto doubled = gen.scaled(-2.0);
  Trajectory out = el_trajectory(doubled, grid, [&](double s) { return delta_h(gen, s); });
  out.residual_names.push_back("half_tilde");
  for (auto& sample : out.samples) {
    const Matrix tilde = exp_trajectory(doubled, sample.s).matrix().topLeftCorner(n, n);
    sample.residuals.push_back(max_abs(sample.h - 0.5 * tilde));
  }
  return out;
}

std::string format_csv(const Instance& inst, const SolveOptions& opts, const Trajectory& traj) {
  std::string text;
  auto meta = [&text](const std::string& key, const std::string& value) {
    text += "# " + key + ": " + value + "\n";
  };
  meta("type", type_name(inst.type));
  meta("n", std::to_string(inst.n));
  if (inst.is_bdi()) meta("r", std::to_string(inst.r));
  if (inst.seed) meta("seed", std::to_string(*inst.seed));
  meta("normalization", normalization_name(opts.normalization));
  meta("s_min", fmt(0.0));
  meta("s_max", fmt(opts.s_max));
  meta("points", std::to_string(traj.samples.size()));
  std::string echo = dump_instance(inst);
  std::string compact = ordered_json::parse(echo).dump();
  meta("instance", compact);

  text += "s";
  for (Index i = 0; i < inst.n; ++i) {
    for (Index j = 0; j < inst.n; ++j) text += ",h_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  }
  for (const auto& name : traj.residual_names) text += "," + name;
  text += "\n";
  for (const auto& sample : traj.samples) {
    text += fmt(sample.s);
    for (Index i = 0; i < sample.h.rows(); ++i) {
      for (Index j = 0; j < sample.h.cols(); ++j) text += "," + fmt(sample.h(i, j));
    }
    for (double v : sample.residuals) text += "," + fmt(v);
    text += "\n";
  }
  return text;
}

std::string format_json(const Instance& inst, const SolveOptions& opts, const Trajectory& traj) {
  ordered_json doc;
  doc["instance"] = ordered_json::parse(dump_instance(inst));
  doc["normalization"] = normalization_name(opts.normalization);
  doc["grid"] = {{"s_min", 0.0}, {"s_max", opts.s_max}, {"points", traj.samples.size()}};
  doc["residual_names"] = traj.residual_names;
  auto rows = ordered_json::array();
  for (const auto& sample : traj.samples) {
    ordered_json row;
    row["s"] = sample.s;
    row["h"] = flat(sample.h);
    row["residuals"] = sample.residuals;
    rows.push_back(std::move(row));
  }
  doc["samples"] = std::move(rows);
  doc["max_residual"] = traj.max_residual();
  return doc.dump(2) + "\n";
}

std::string series_report(const Instance& inst, int order, const std::vector<double>& at) {
  if (!inst.is_bdi()) throw InputError("series: instance must be of type bdi (Cayley image in p(L))");
  if (order < 0 || order > 170) throw InputError("series: --order must lie in [0, 170]");
  const auto bounded = BoundedGenerator::from_bdi(inst.bdi());
  const SvdFactors f = svd_factors(bounded);
  const auto terms = power_series_h(f, order);

  ordered_json doc;
  doc["type"] = "bdi";
  doc["n"] = inst.n;
  doc["r"] = inst.r;
  doc["order"] = order;
  doc["cayley_block"] = {{"rows", bounded.block().rows()}, {"cols", bounded.block().cols()},
                         {"entries", flat(bounded.block())}};
  doc["sigma"] = std::vector<double>(f.sigma.data(), f.sigma.data() + f.sigma.size());
  doc["q"] = flat(f.q);
  doc["p"] = flat(f.p);
  auto coeffs = ordered_json::array();
  for (const auto& term : terms) {
    coeffs.push_back({{"power", term.power}, {"parity", term.even() ? "even" : "odd"},
                      {"coefficient", flat(term.coefficient)}});
  }
  doc["coefficients"] = std::move(coeffs);
  if (!at.empty()) {
    const double sigma_max = f.sigma.size() > 0 ? f.sigma.maxCoeff() : 0.0;
    auto evals = ordered_json::array();
    for (double s : at) {
      const Matrix value = evaluate_series(terms, s);
      evals.push_back({{"s", s},
                       {"h", flat(value)},
                       {"closed_form_gap", max_abs(value - closed_form_h(f, s))},
                       {"truncation_bound", series_truncation_bound(sigma_max, s, order)}});
    }
    doc["evaluations"] = std::move(evals);
  }
  return doc.dump(2) + "\n";
}

}  // namespace bratu::cli
