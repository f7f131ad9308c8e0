// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fbr/analysis.hpp"
#include "fbr/expansion.hpp"
#include "fbr/grid.hpp"
#include "fbr/harness.hpp"
#include "fbr/kernels.hpp"
#include "fbr/random.hpp"

namespace {

using namespace fbr;
using std::numbers::pi;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s criterion %2d %-28s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<CoefficientVector> padded_family(const ZeroTable& table, double radius, std::size_t reach,
                                             std::size_t count, std::uint64_t seed) {
  std::vector<CoefficientVector> out;
  for (const auto& m : band_limited_family(table, radius, count, seed)) {
    std::vector<double> a(m.values().begin(), m.values().end());
    a.resize(reach, 0.0);
    out.emplace_back(table.order(), System::psi, std::move(a));
  }
  return out;
}

Verdict orthonormality() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double nu : {-0.4, 0.0, 0.5, 1.3}) {
    const auto table = ZeroTable::compute(Order(nu), 20);
    for (std::size_t k = 1; k <= 20; ++k) {
      RadialFunction psi{[&table, k](double x) { return eval_psi(table, k, x); }, {}, table.zero(k)};
      const auto a = coefficients(psi, table, 20, System::psi);
      for (std::size_t j = 1; j <= 20; ++j) worst = std::max(worst, std::abs(a(j) - (j == k ? 1.0 : 0.0)));
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-8 && secs < 30.0, "max Gram error " + num(worst) + " (< 1e-8), " + num(secs) + "s (< 30s)"};
}

Verdict half_integer() {
  const auto table = ZeroTable::compute(Order(0.5), 50);
  double zero_err = 0.0, psi_err = 0.0;
  for (std::size_t j = 1; j <= 50; ++j) {
    zero_err = std::max(zero_err, std::abs(table.zero(j) - j * pi));
    for (double x : uniform_grid(0.0, 1.0, 500)) {
      psi_err = std::max(psi_err, std::abs(eval_psi(table, j, x) - std::numbers::sqrt2 * std::sin(j * pi * x) / x));
    }
  }
  return {zero_err < 1e-10 && psi_err < 1e-10,
          "max |s_j - j pi| " + num(zero_err) + ", max |psi_j - closed form| " + num(psi_err) + " (< 1e-10)"};
}

Verdict delayed() {
  const auto a1 = solve_delayed_coeffs(1);
  const double alpha_err = std::max(std::abs(a1[0] + 1.0 / 3.0), std::abs(a1[1] - 4.0 / 3.0));
  double worst = 0.0;
  const auto grid = evaluation_grid(512);
  for (double nu : {0.0, 0.5}) {
    for (double radius : {20.0, 50.0}) {
      for (unsigned r : {1u, 2u, 3u}) {
        const double top = (r + 1.0) * radius;
        const auto table = zeros_covering(Order(nu), top);
        const DelayedMeansPlan plan(r, radius);
        for (const auto& f : padded_family(table, radius, table.count_below(top), 20, 2026)) {
          for (double x : grid) {
            const double v = series_value(f, table, x);
            worst = std::max(worst, std::abs(delayed_means(f, table, plan, x) - v) / std::max(1.0, std::abs(v)));
          }
        }
      }
    }
  }
  return {worst < 1e-8 && alpha_err < 1e-12,
          "max |T f - f|/max(1,|f|) " + num(worst) + " (< 1e-8), alpha(r=1) error " + num(alpha_err)};
}

Verdict kernel_bound_stability() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0};
  const auto grid = evaluation_grid(160);
  double worst = 0.0;
  bool all_sampled = true;
  for (double nu : {0.0, 0.5, 1.5}) {
    const auto table = zeros_covering(Order(nu), radii.back());
    for (double delta : {0.3, 1.0}) {
      const auto sweep = bound_ratio_sweep(table, delta, radii, grid);
      for (std::size_t r = 0; r < kRegionCount; ++r) {
        const auto v = sweep.variation(static_cast<Region>(r));
        if (!v) {
          all_sampled = false;
          continue;
        }
        worst = std::max(worst, *v);
      }
    }
  }
  const double secs = seconds_since(t0);
  return {all_sampled && worst < 4.0 && secs < 300.0,
          "max per-region variation across R " + num(worst) + " (< 4), " + num(secs) + "s (< 300s)"};
}

Verdict remainder_scaling_check() {
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0, 400.0, 800.0, 1600.0};
  const auto grid = uniform_grid(0.0, 1.0, 4000);
  double margin = -INFINITY;
  std::string worst_case;
  for (double nu : {0.0, 0.5, 1.5}) {
    const auto table = zeros_covering(Order(nu), radii.back());
    for (double delta : {0.3, 1.0}) {
      const auto s = remainder_scaling(table, delta, radii, grid);
      const double limit = nu - delta + 0.5 + 0.15;
      if (s.far_fit.slope - limit > margin) {
        margin = s.far_fit.slope - limit;
        worst_case = "nu=" + num(nu) + " delta=" + num(delta) + " slope " + num(s.far_fit.slope) + " vs limit " +
                     num(limit);
      }
    }
  }
  return {margin <= 0.0, "tightest case " + worst_case};
}

Verdict growth() {
  const Order order(0.5);
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0, 400.0};
  const auto table = zeros_covering(order, radii.back());
  const auto report = growth_probe_noweak(table, 0.3, radii);
  std::string ratios;
  for (const auto& p : report.points) ratios += (ratios.empty() ? "" : " ") + num(p.ratio);
  return {report.spread() >= 0.25, "ratios " + ratios + ", min/max " + num(report.spread()) + " (>= 0.25)"};
}

Verdict exponents() {
  const auto a = critical_exponents(Order(0.5), 0.5);
  const auto b = critical_exponents(Order(-0.75), 0.3);
  const auto c = critical_exponents(Order(0.5), 2.0);
  bool ok = std::abs(a.p0 - 1.2) < 1e-12 && std::abs(a.p1 - 6.0) < 1e-12 && b.p0 == 1.0 && b.p1 == kInfinity &&
            c.p0 == 1.0 && c.p1 == kInfinity;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double nu = -0.45 + 0.35 * i;
    for (int k = 1; k <= 10; ++k) {
      const double delta = (nu + 0.5) * k / 11.0;
      const auto e = critical_exponents(Order(nu), delta);
      worst = std::max(worst, std::abs(1.0 / e.p0 + 1.0 / e.p1 - 1.0));
    }
  }
  ok = ok && worst <= 1e-12;
  return {ok, "examples exact, max |1/p0 + 1/p1 - 1| over 100 points " + num(worst)};
}

Verdict transfer() {
  const CounterRng rng(8);
  int disagreements = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double nu = rng.uniform(5 * k, -0.95, 3.0);
    const double delta = rng.uniform(5 * k + 1, 0.01, 3.0);
    const double p = k % 10 == 0 ? kInfinity : 1.0 + 9.0 * rng.uniform(5 * k + 2);
    const double b = rng.uniform(5 * k + 3, -3.0, 3.0), B = rng.uniform(5 * k + 4, -3.0, 3.0);
    const double shift = (nu + 0.5) * (2.0 / p - 1.0);
    if (Cp_check(b, B, Order(nu), delta, p).pass != cp_check(b + shift, B + shift, Order(nu), delta, p).pass) {
      ++disagreements;
    }
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements over 1000 tuples"};
}

Verdict nikolskii() {
  const std::vector<double> radii{20.0, 40.0, 80.0};
  const std::vector<double> ps{1.5, 2.0, 4.0};
  const auto grid = evaluation_grid(2048);
  double worst = 1.0;
  std::string detail;
  for (double nu : {0.0, 0.5}) {
    const auto table = zeros_covering(Order(nu), radii.back());
    // per R: sup over the 50 members of each ratio
    std::vector<std::vector<double>> sups(1 + ps.size());
    for (double radius : radii) {
      std::vector<double> best(1 + ps.size(), 0.0);
      for (const auto& f : band_limited_family(table, radius, 50, 12345)) {
        const auto r = nikolskii_ratios(f, table, radius, ps, grid);
        best[0] = std::max(best[0], r.l1_ratio);
        for (std::size_t i = 0; i < ps.size(); ++i) best[i + 1] = std::max(best[i + 1], r.weak_ratios[i]);
      }
      for (std::size_t i = 0; i < best.size(); ++i) sups[i].push_back(best[i]);
    }
    for (const auto& s : sups) {
      const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
      if (!std::isfinite(*hi)) worst = 0.0;
      worst = std::min(worst, *lo / *hi);
    }
  }
  return {worst >= 0.1, "smallest min/max across R " + num(worst) + " (>= 0.1)"};
}

Verdict convergence() {
  const Order order(0.0);
  const std::vector<double> radii{20.0, 40.0, 80.0, 160.0};
  const auto table = zeros_covering(order, radii.back());
  RadialFunction f{[](double x) { return x * (1.0 - x); }, {}, 0.0};
  const auto a = coefficients(f, table, table.count_below(radii.back()), System::psi);
  const auto grid = uniform_grid(0.05, 0.95, 181);
  std::vector<double> errors;
  for (double radius : radii) {
    const RieszPlan plan(table, 1.0, radius);
    double e = 0.0;
    for (double x : grid) e = std::max(e, std::abs(bochner_riesz(a, table, plan, x) - f(x)));
    errors.push_back(e);
  }
  bool ok = errors.back() < 1e-3;
  for (std::size_t i = 1; i < errors.size(); ++i) ok = ok && errors[i] < errors[i - 1];
  std::string list;
  for (double e : errors) list += (list.empty() ? "" : " ") + num(e);
  return {ok, "nu=0 errors " + list + " (decreasing, last < 1e-3)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  const auto base = std::filesystem::temp_directory_path() / "fbr_acceptance_determinism";
  std::filesystem::remove_all(base);
  RunConfig c;
  c.nu = 0.5;
  c.delta = 0.3;
  c.R = 20.0;
  c.R_grid = {20.0, 40.0, 2.0};
  c.grid_points = 256;
  c.family_size = 5;
  c.seed = 42;
  int compared = 0, differing = 0;
  for (auto kind : {ExperimentKind::orthonormality, ExperimentKind::delayed, ExperimentKind::weak_type,
                    ExperimentKind::growth}) {
    c.output_dir = (base / "a").string();
    const auto first = run_experiment(c, kind);
    c.output_dir = (base / "b").string();
    const auto second = run_experiment(c, kind);
    ++compared;
    if (slurp(first.csv) != slurp(second.csv) || slurp(first.csv).empty()) ++differing;
  }
  std::filesystem::remove_all(base);
  return {differing == 0, std::to_string(compared - differing) + "/" + std::to_string(compared) +
                              " experiment CSVs byte-identical across two runs"};
}

}  // namespace

int main() {
  criterion(1, "orthonormality", orthonormality);
  criterion(2, "half-integer exactness", half_integer);
  criterion(3, "delayed-means reproduction", delayed);
  criterion(4, "kernel bound stability", kernel_bound_stability);
  criterion(5, "closed-form remainder", remainder_scaling_check);
  criterion(6, "growth lower bound", growth);
  criterion(7, "critical exponents", exponents);
  criterion(8, "c_p/C_p transfer", transfer);
  criterion(9, "Nikolskii bounds", nikolskii);
  criterion(10, "convergence sanity", convergence);
  criterion(11, "determinism", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
