#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fbr/analysis.hpp"
#include "fbr/errors.hpp"
#include "fbr/format.hpp"
#include "fbr/grid.hpp"
#include "fbr/harness.hpp"
#include "fbr/kernels.hpp"

namespace {

using namespace fbr;

constexpr int kProbeFailure = 1;
constexpr int kConfigFailure = 2;

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1.0)) throw ConfigError("p", "p must be a number >= 1 or inf, got " + text);
  return v;
}

// Flags that mirror RunConfig fields; any given flag overrides the file.
struct Overrides {
  std::optional<std::string> config;
  std::optional<double> nu, delta, R;
  std::optional<unsigned> r_delayed;
  std::optional<std::size_t> n_modes, grid_points, family_size, sweep_points;
  std::optional<int> quad_panels;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir, function, p, growth_kind;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON run configuration");
    cmd->add_option("--nu", nu, "Bessel order nu > -1");
    cmd->add_option("--delta", delta, "Riesz exponent delta > 0");
    cmd->add_option("--R", R, "Radius R");
    cmd->add_option("--r-delayed", r_delayed, "Delayed-means order r");
    cmd->add_option("--n-modes", n_modes, "Number of modes");
    cmd->add_option("--grid-points", grid_points, "Evaluation grid size");
    cmd->add_option("--quad-panels", quad_panels, "Quadrature panels per wavelength");
    cmd->add_option("--seed", seed, "Seed of the random families");
    cmd->add_option("--output-dir", output_dir, "Directory for run artefacts");
    cmd->add_option("--function", function, "one, x(1-x), psi:J, power:G or indicator:A:B");
    cmd->add_option("--p", p, "Lebesgue exponent (number or inf)");
    cmd->add_option("--family-size", family_size, "Members per random family");
    cmd->add_option("--sweep-points", sweep_points, "Kernel sweep grid size per axis");
  }

  RunConfig resolve() const {
    RunConfig c = config ? load_config(*config) : RunConfig{};
    if (nu) c.nu = *nu;
    if (delta) c.delta = *delta;
    if (R) c.R = *R;
    if (r_delayed) c.r_delayed = *r_delayed;
    if (n_modes) c.n_modes = *n_modes;
    if (grid_points) c.grid_points = *grid_points;
    if (quad_panels) c.quad_panels = *quad_panels;
    if (seed) c.seed = *seed;
    if (output_dir) c.output_dir = *output_dir;
    if (function) c.function = *function;
    if (p) c.p = parse_p(*p);
    if (growth_kind) c.growth_kind = *growth_kind;
    if (family_size) c.family_size = *family_size;
    if (sweep_points) c.sweep_points = *sweep_points;
    validate(c);
    return c;
  }
};

void emit(const CsvTable& table, const std::optional<std::string>& out) {
  if (out) {
    table.write_atomic(*out);
  } else {
    std::cout << table.text();
  }
}

int report_probe(const ProbeOutcome& outcome) {
  std::cerr << (outcome.passed ? "PASS: " : "FAIL: ") << outcome.message << "\n";
  return outcome.passed ? 0 : kProbeFailure;
}

int print_check(const ConditionCheck& check) {
  if (check.pass) {
    std::cout << "PASS\n";
    return 0;
  }
  std::cout << "FAIL";
  for (const auto& v : check.violations) std::cout << ' ' << v;
  std::cout << '\n';
  return kProbeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  const auto self = specfun_self_test();
  if (!self.passed) {
    std::cerr << "special-function self-test failed: branch gaps " << to_shortest(self.max_series_recurrence_gap)
              << ", " << to_shortest(self.max_recurrence_asymptotic_gap) << "\n";
    return kProbeFailure;
  }

  CLI::App app{"Fourier-Bessel expansions and Bochner-Riesz means"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));
  int status = 0;

  // zeros
  double z_nu = 0.0;
  std::size_t z_n = 10;
  std::optional<std::string> z_out;
  auto* zeros_cmd = app.add_subcommand("zeros", "First n zeros of J_nu and the normalisers |J_{nu+1}(s_j)|");
  zeros_cmd->add_option("--nu", z_nu, "Bessel order")->required();
  zeros_cmd->add_option("--count,--n", z_n, "How many zeros");
  zeros_cmd->add_option("--out", z_out, "CSV path (stdout when absent)");
  zeros_cmd->callback([&] {
    const auto table = ZeroTable::compute(Order(z_nu), z_n);
    CsvTable csv({"index", "zero", "normalizer"});
    for (std::size_t j = 1; j <= table.size(); ++j) {
      csv.add({std::to_string(j), to_shortest(table.zero(j)), to_shortest(table.normalizer(j))});
    }
    emit(csv, z_out);
    std::fprintf(stderr, "checksum %016llx\n", static_cast<unsigned long long>(table.checksum()));
  });

  // coeffs / riesz / delayed share the config-driven flags
  Overrides co, ri, de, sw, gr, wt, rn;
  std::optional<std::string> co_out, ri_out, de_out, sw_out, gr_out, wt_out;

  auto* coeffs_cmd = app.add_subcommand("coeffs", "Expansion coefficients a_j of the configured function");
  co.attach(coeffs_cmd);
  coeffs_cmd->add_option("--out", co_out, "CSV path (stdout when absent)");
  coeffs_cmd->callback([&] {
    const auto c = co.resolve();
    const auto table = ZeroTable::compute(Order(c.nu), c.n_modes);
    const auto f = test_function(c.function, table);
    QuadSpec q;
    q.panels_per_wavelength = c.quad_panels;
    const auto a = coefficients(f, table, c.n_modes, System::psi, q);
    CsvTable csv({"j", "coefficient"});
    for (std::size_t j = 1; j <= a.size(); ++j) csv.add({std::to_string(j), to_shortest(a(j))});
    emit(csv, co_out);
  });

  auto* riesz_cmd = app.add_subcommand("riesz", "B_R^delta f on the evaluation grid");
  ri.attach(riesz_cmd);
  riesz_cmd->add_option("--out", ri_out, "CSV path (stdout when absent)");
  riesz_cmd->callback([&] {
    const auto c = ri.resolve();
    const auto table = zeros_covering(Order(c.nu), c.R);
    const auto f = test_function(c.function, table);
    QuadSpec q;
    q.panels_per_wavelength = c.quad_panels;
    const RieszPlan plan(table, c.delta, c.R);
    if (plan.modes() == 0) throw ConfigError("R", "R is below the first zero; the means vanish identically");
    const auto a = coefficients(f, table, plan.modes(), System::psi, q);
    CsvTable csv({"x", "value"});
    for (const double x : evaluation_grid(c.grid_points)) {
      csv.add({to_shortest(x), to_shortest(bochner_riesz(a, table, plan, x))});
    }
    emit(csv, ri_out);
  });

  auto* delayed_cmd = app.add_subcommand("delayed", "Delayed means T_{r,R} f on the evaluation grid");
  de.attach(delayed_cmd);
  delayed_cmd->add_option("--out", de_out, "CSV path (stdout when absent)");
  delayed_cmd->callback([&] {
    const auto c = de.resolve();
    const DelayedMeansPlan plan(c.r_delayed, c.R);
    const auto table = zeros_covering(Order(c.nu), (c.r_delayed + 1.0) * c.R);
    const auto f = test_function(c.function, table);
    QuadSpec q;
    q.panels_per_wavelength = c.quad_panels;
    const std::size_t n = table.count_below((c.r_delayed + 1.0) * c.R);
    if (n == 0) throw ConfigError("R", "(r+1)R is below the first zero");
    const auto a = coefficients(f, table, n, System::psi, q);
    CsvTable csv({"x", "value"});
    for (const double x : evaluation_grid(c.grid_points)) {
      csv.add({to_shortest(x), to_shortest(delayed_means(a, table, plan, x))});
    }
    emit(csv, de_out);
  });

  // kernel at a point
  double k_nu = 0.0, k_delta = 1.0, k_R = 50.0, k_x = 0.5, k_y = 0.25;
  auto* kernel_cmd = app.add_subcommand("kernel", "K_R^delta(x,y) with its region and bound");
  kernel_cmd->add_option("--nu", k_nu)->required();
  kernel_cmd->add_option("--delta", k_delta)->required();
  kernel_cmd->add_option("--R", k_R)->required();
  kernel_cmd->add_option("--x", k_x)->required();
  kernel_cmd->add_option("--y", k_y)->required();
  kernel_cmd->callback([&] {
    const Order order(k_nu);
    const auto table = zeros_covering(order, k_R);
    const double value = kernel(table, k_delta, k_R, k_x, k_y);
    const double bound = kernel_bound(order, k_delta, k_R, k_x, k_y);
    std::cout << "value=" << to_shortest(value) << " bound=" << to_shortest(bound)
              << " region=" << region_name(classify_region(k_R, k_x, k_y))
              << " ratio=" << to_shortest(std::abs(value) / bound) << "\n";
  });

  auto* sweep_cmd = app.add_subcommand("kernel-sweep", "Per-region empirical constants of the kernel bound");
  sw.attach(sweep_cmd);
  sweep_cmd->add_option("--out", sw_out, "CSV path")->required();
  sweep_cmd->callback([&] { status = report_probe(run_probe(sw.resolve(), ExperimentKind::kernel_sweep, *sw_out)); });

  double kz_nu = 0.5, kz_delta = 1.0, kz_R = 50.0;
  std::size_t kz_points = 1000;
  std::optional<std::string> kz_out;
  auto* kz_cmd = app.add_subcommand("kernel-zero", "K_R(0,y): series, closed-form part, remainder, bound");
  kz_cmd->add_option("--nu", kz_nu)->required();
  kz_cmd->add_option("--delta", kz_delta)->required();
  kz_cmd->add_option("--R", kz_R)->required();
  kz_cmd->add_option("--grid-points", kz_points, "Uniform y samples");
  kz_cmd->add_option("--out", kz_out, "CSV path (stdout when absent)");
  kz_cmd->callback([&] {
    const Order order(kz_nu);
    const auto table = zeros_covering(order, kz_R);
    CsvTable csv({"y", "series", "leading", "remainder", "boundI"});
    for (const double y : uniform_grid(0.0, 1.0, kz_points)) {
      const double series = kernel_mu(table, kz_delta, kz_R, 0.0, y);
      const double leading = kernel_zero_leading(order, kz_delta, kz_R, y);
      csv.add({to_shortest(y), to_shortest(series), to_shortest(leading), to_shortest(series - leading),
               to_shortest(remainder_bound(order, kz_delta, kz_R, y))});
    }
    emit(csv, kz_out);
  });

  double e_nu = 0.0, e_delta = 1.0;
  auto* exp_cmd = app.add_subcommand("exponents", "Critical exponents p0 and p1");
  exp_cmd->add_option("--nu", e_nu)->required();
  exp_cmd->add_option("--delta", e_delta)->required();
  exp_cmd->callback([&] {
    const auto ce = critical_exponents(Order(e_nu), e_delta);
    std::cout << "p0=" << to_shortest(ce.p0) << " p1=" << to_shortest(ce.p1) << "\n";
  });

  double c_a = 0.0, c_A = 0.0, c_nu = 0.0, c_delta = 1.0;
  std::string c_p = "2";
  auto* cp_cmd = app.add_subcommand("cp-check", "c_p conditions on (a, A)");
  cp_cmd->add_option("--a", c_a)->required();
  cp_cmd->add_option("--A", c_A)->required();
  cp_cmd->add_option("--nu", c_nu)->required();
  cp_cmd->add_option("--delta", c_delta)->required();
  cp_cmd->add_option("--p", c_p, "number >= 1 or inf")->required();
  cp_cmd->callback([&] { status = print_check(cp_check(c_a, c_A, Order(c_nu), c_delta, parse_p(c_p))); });

  double b_b = 0.0, b_B = 0.0, b_nu = 0.0, b_delta = 1.0;
  std::string b_p = "2";
  auto* Cp_cmd = app.add_subcommand("Cp-check", "C_p conditions on (b, B)");
  Cp_cmd->add_option("--b", b_b)->required();
  Cp_cmd->add_option("--B", b_B)->required();
  Cp_cmd->add_option("--nu", b_nu)->required();
  Cp_cmd->add_option("--delta", b_delta)->required();
  Cp_cmd->add_option("--p", b_p, "number >= 1 or inf")->required();
  Cp_cmd->callback([&] { status = print_check(Cp_check(b_b, b_B, Order(b_nu), b_delta, parse_p(b_p))); });

  double n_nu = 0.5;
  std::string n_p = "4";
  std::size_t n_modes = 40;
  std::optional<std::string> n_out;
  auto* nc_cmd = app.add_subcommand("norm-curve", "||psi_j||_p for j = 1..modes with the log-log slope");
  nc_cmd->add_option("--nu", n_nu)->required();
  nc_cmd->add_option("--p", n_p, "number >= 1 or inf")->required();
  nc_cmd->add_option("--modes", n_modes, "Largest j");
  nc_cmd->add_option("--out", n_out, "CSV path (stdout when absent)");
  nc_cmd->callback([&] {
    const auto table = ZeroTable::compute(Order(n_nu), n_modes);
    std::vector<std::size_t> modes(n_modes);
    for (std::size_t j = 0; j < n_modes; ++j) modes[j] = j + 1;
    const auto curve = psi_norm_curve(table, parse_p(n_p), modes, probe_quad());
    CsvTable csv({"j", "norm"});
    for (std::size_t i = 0; i < curve.modes.size(); ++i) {
      csv.add({std::to_string(curve.modes[i]), to_shortest(curve.norms[i])});
    }
    emit(csv, n_out);
    std::cerr << "slope " << to_shortest(curve.fit.slope) << " expected " << to_shortest(curve.expected_slope) << "\n";
  });

  auto* growth_cmd = app.add_subcommand("growth", "Lower-bound growth probes against (log R)^{1/p0}");
  gr.attach(growth_cmd);
  growth_cmd->add_option("--kind", gr.growth_kind, "noweak, nostrong, weak or restricted")->required();
  growth_cmd->add_option("--out", gr_out, "CSV path")->required();
  growth_cmd->callback([&] { status = report_probe(run_probe(gr.resolve(), ExperimentKind::growth, *gr_out)); });

  auto* weak_cmd = app.add_subcommand("weak-type", "Weak-type ratios of the maximal operator");
  wt.attach(weak_cmd);
  weak_cmd->add_option("--out", wt_out, "CSV path")->required();
  weak_cmd->callback([&] { status = report_probe(run_probe(wt.resolve(), ExperimentKind::weak_type, *wt_out)); });

  std::optional<std::string> run_kind;
  auto* run_cmd = app.add_subcommand("run", "Config-driven experiment writing CSV and a JSON manifest");
  rn.attach(run_cmd);
  run_cmd->add_option("--kind", run_kind,
                      "orthonormality, kernel-sweep, kernel-zero, norm-curve, growth, weak-type, delayed, convergence");
  run_cmd->callback([&] {
    const auto c = rn.resolve();
    const auto name = run_kind ? run_kind : c.kind;
    if (!name) throw ConfigError("kind", "no experiment kind given (--kind or the config's kind)");
    const auto kind = parse_experiment(*name);
    if (!kind) throw ConfigError("kind", "unknown experiment kind " + *name);
    const auto result = run_experiment(c, *kind);
    std::cout << result.csv.string() << "\n" << result.manifest.string() << "\n";
    status = report_probe(result.outcome);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const NonConvergence& e) {
    std::cerr << "probe failure: " << e.what() << "\n";
    return kProbeFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProbeFailure;
  }
  return status;
}
