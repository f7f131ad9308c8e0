#include "fbr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "fbr/analysis.hpp"
#include "fbr/errors.hpp"
#include "fbr/format.hpp"
#include "fbr/grid.hpp"
#include "fbr/kernels.hpp"
#include "fbr/random.hpp"
#include "json.hpp"

#ifndef FBR_VERSION
#define FBR_VERSION "0.0.0"
#endif

namespace fbr {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) { return to_shortest(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

double number_field(const json& j, const std::string& name) {
  if (!j.is_number()) throw ConfigError(name, name + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(name, name + ": must be finite");
  return v;
}

std::uint64_t count_field(const json& j, const std::string& name) {
  if (!j.is_number_integer() || (j.is_number_integer() && j.get<long long>() < 0 && !j.is_number_unsigned())) {
    throw ConfigError(name, name + ": expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string string_field(const json& j, const std::string& name) {
  if (!j.is_string()) throw ConfigError(name, name + ": expected a string");
  return j.get<std::string>();
}

QuadSpec quad_of(const RunConfig& c) {
  QuadSpec q;
  q.panels_per_wavelength = c.quad_panels;
  return q;
}

QuadSpec probe_quad_of(const RunConfig& c) {
  QuadSpec q = probe_quad();
  q.panels_per_wavelength = std::max(q.panels_per_wavelength, c.quad_panels);
  return q;
}

// wrap module precondition failures as config errors on the field that fed them
template <typename F>
auto with_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
}

ProbeOutcome orthonormality(const RunConfig& c, const std::filesystem::path& csv) {
  const auto table = ZeroTable::compute(Order(c.nu), c.n_modes);
  CsvTable out({"j", "k", "value", "error"});
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  double worst = 0.0, offdiag = 0.0;
  for (std::size_t k = 1; k <= c.n_modes; ++k) {
    RadialFunction psi;
    psi.eval = [&table, k](double x) { return eval_psi(table, k, x); };
    psi.bandwidth = table.zero(k);
    const auto row = coefficients(psi, table, c.n_modes, System::psi, quad_of(c));
    for (std::size_t j = 1; j <= c.n_modes; ++j) {
      const double err = std::abs(row(j) - (j == k ? 1.0 : 0.0));
      worst = std::max(worst, err);
      if (j != k) offdiag = std::max(offdiag, std::abs(row(j)));
      out.add({fmt(j), fmt(k), fmt(row(j)), fmt(err)});
    }
  }
  out.write_atomic(csv);
  res.summary = {{"max_error", worst}, {"max_offdiagonal", offdiag}};
  res.passed = worst < 1e-8;
  res.message = "max |<psi_j, psi_k> - delta_jk| = " + fmt(worst);
  return res;
}

ProbeOutcome kernel_sweep(const RunConfig& c, const std::filesystem::path& csv) {
  const auto radii = radius_list(c);
  const auto table = zeros_covering(Order(c.nu), radii.back());
  const auto grid = evaluation_grid(c.sweep_points);
  const auto sweep = bound_ratio_sweep(table, c.delta, radii, grid, true);
  CsvTable out({"R", "x", "y", "region", "value", "bound", "ratio"});
  for (const auto& s : sweep.samples) {
    out.add({fmt(s.radius), fmt(s.x), fmt(s.y), std::string(region_name(s.region)), fmt(s.value), fmt(s.bound),
             fmt(std::abs(s.value) / s.bound)});
  }
  out.write_atomic(csv);
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  double worst = 1.0;
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    const auto region = static_cast<Region>(r);
    const std::string name(region_name(region));
    for (const auto& row : sweep.rows) {
      res.summary[name + "_C_R" + fmt(row.radius)] = row.regions[r].max_ratio;
    }
    if (const auto v = sweep.variation(region)) {
      res.summary[name + "_variation"] = *v;
      worst = std::max(worst, *v);
    }
  }
  res.summary["max_variation"] = worst;
  res.passed = worst < 4.0;
  res.message = "largest per-region variation of the empirical constant across R: " + fmt(worst);
  return res;
}

ProbeOutcome kernel_zero(const RunConfig& c, const std::filesystem::path& csv) {
  const Order order(c.nu);
  if (!(c.nu > -0.5)) throw ConfigError("nu", "kernel-zero needs nu > -1/2");
  const auto radii = radius_list(c);
  const auto table = zeros_covering(order, std::max(c.R, radii.back()));
  const auto ys = uniform_grid(0.0, 1.0, c.grid_points);
  CsvTable out({"y", "series", "leading", "remainder", "boundI"});
  for (const double y : ys) {
    const double series = kernel_mu(table, c.delta, c.R, 0.0, y);
    const double leading = kernel_zero_leading(order, c.delta, c.R, y);
    out.add({fmt(y), fmt(series), fmt(leading), fmt(series - leading), fmt(remainder_bound(order, c.delta, c.R, y))});
  }
  out.write_atomic(csv);
  const auto scaling = remainder_scaling(table, c.delta, radii, ys);
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  const double target = c.nu - c.delta + 0.5 + 0.15;
  res.summary = {{"fitted_exponent", scaling.far_fit.slope}, {"exponent_limit", target}};
  for (std::size_t i = 0; i < scaling.radii.size(); ++i) {
    res.summary["far_envelope_R" + fmt(scaling.radii[i])] = scaling.far[i];
  }
  res.passed = radii.size() < 2 || scaling.far_fit.slope <= target;
  res.message = "fitted R-exponent of the remainder " + fmt(scaling.far_fit.slope) + " (limit " + fmt(target) + ")";
  return res;
}

ProbeOutcome norm_curve(const RunConfig& c, const std::filesystem::path& csv) {
  const Order order(c.nu);
  const auto table = ZeroTable::compute(order, c.n_modes);
  double p = c.p;
  if (p == 0.0) p = critical_norm_exponent(order);
  std::vector<std::size_t> modes(c.n_modes);
  for (std::size_t j = 0; j < modes.size(); ++j) modes[j] = j + 1;
  const auto curve = psi_norm_curve(table, p, modes, probe_quad_of(c));
  CsvTable out({"j", "norm"});
  for (std::size_t i = 0; i < curve.modes.size(); ++i) out.add({fmt(curve.modes[i]), fmt(curve.norms[i])});
  out.write_atomic(csv);
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  res.summary = {{"p", p}, {"slope", curve.fit.slope}, {"expected_slope", curve.expected_slope}};
  if (curve.log_fit) res.summary["log_slope"] = curve.log_fit->slope;
  switch (curve.regime) {
    case NormRegime::above:
      res.passed = std::abs(curve.fit.slope - curve.expected_slope) <= 0.1;
      res.message = "power regime: slope " + fmt(curve.fit.slope) + " against " + fmt(curve.expected_slope);
      break;
    case NormRegime::below:
      res.passed = std::abs(curve.fit.slope) <= 0.1;
      res.message = "bounded regime: slope " + fmt(curve.fit.slope);
      break;
    case NormRegime::critical:
      res.passed = curve.log_fit && curve.log_fit->slope > 0.0 && curve.log_fit->slope <= 2.0 / p;
      res.message = "critical regime: slope in log j " + (curve.log_fit ? fmt(curve.log_fit->slope) : "n/a") +
                    " against 1/p = " + fmt(1.0 / p);
      break;
  }
  return res;
}

ProbeOutcome growth(const RunConfig& c, const std::filesystem::path& csv) {
  const auto kind = parse_growth_kind(c.growth_kind);
  if (!kind) throw ConfigError("growth_kind", "growth_kind must be noweak, nostrong, weak or restricted");
  const Order order(c.nu);
  with_field("delta", [&] {
    require_growth_hypothesis(order, c.delta);
    return 0;
  });
  const auto radii = radius_list(c);
  const auto table = zeros_covering(order, radii.back());
  const auto grid = evaluation_grid(c.grid_points);
  const auto report =
      with_field("growth_kind", [&] { return growth_probe(*kind, table, c.delta, radii, grid, probe_quad_of(c)); });
  CsvTable out({"R", "value", "normaliser", "ratio"});
  for (const auto& pt : report.points) out.add({fmt(pt.radius), fmt(pt.value), fmt(pt.normaliser), fmt(pt.ratio)});
  out.write_atomic(csv);
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  res.summary = {{"p0", report.p0}, {"p1", report.p1}, {"min_over_max", report.spread()}};
  res.passed = report.spread() >= 0.25;
  res.message = std::string(growth_kind_name(*kind)) + " ratio spread min/max = " + fmt(report.spread());
  return res;
}

ProbeOutcome weak_type(const RunConfig& c, const std::filesystem::path& csv) {
  const Order order(c.nu);
  const auto ce = with_field("delta", [&] { return critical_exponents(order, c.delta); });
  const auto table = zeros_covering(order, c.R);
  const auto grid = evaluation_grid(c.grid_points);
  const double start = 0.5 * table.zero(1);
  const auto coarse = geometric_radius_grid(start, c.R, 1.05);
  const auto fine = geometric_radius_grid(start, c.R, std::sqrt(1.05));
  const auto quad = probe_quad_of(c);

  struct Family {
    std::string name;
    double p;
    std::vector<RadialFunction> members;
  };
  std::vector<Family> families;
  {
    Family general{"general", c.p > 0.0 ? c.p : ce.p0, {}};
    const double gamma = 0.5 * (2.0 * c.nu + 2.0) / general.p;
    RadialFunction power;
    power.eval = [gamma](double x) { return std::pow(x, -gamma); };
    general.members.push_back(power);
    for (const auto& coeffs : band_limited_family(table, c.R, c.family_size, c.seed)) {
      general.members.push_back(series_function(coeffs, table));
    }
    families.push_back(std::move(general));
  }
  if (ce.p1 != kInfinity) {
    Family sets{"indicator", ce.p1, {}};
    for (int k = 1; k <= 9; ++k) sets.members.push_back(indicator({{0.0, 0.1 * k}}));
    for (int k = 1; k <= 8; ++k) sets.members.push_back(indicator({{0.1 * k, 0.1 * k + 0.1}}));
    families.push_back(std::move(sets));
  }

  CsvTable out({"family", "member", "p", "ratio_coarse", "ratio_fine"});
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  res.passed = true;
  for (const auto& fam : families) {
    const auto a = weak_type_probe(fam.members, table, c.delta, fam.p, coarse, grid, quad);
    const auto b = weak_type_probe(fam.members, table, c.delta, fam.p, fine, grid, quad);
    for (std::size_t i = 0; i < a.ratios.size(); ++i) {
      out.add({fam.name, fmt(i), fmt(fam.p), fmt(a.ratios[i]), fmt(b.ratios[i])});
    }
    res.summary[fam.name + "_p"] = fam.p;
    res.summary[fam.name + "_sup_coarse"] = a.sup;
    res.summary[fam.name + "_sup_fine"] = b.sup;
    const bool ok = std::isfinite(b.sup) && b.sup > 0.0 && b.sup <= 2.0 * a.sup;
    res.passed = res.passed && ok;
  }
  out.write_atomic(csv);
  res.message = res.passed ? "weak-type ratios finite and stable under radius-grid refinement"
                           : "weak-type ratio grew under radius-grid refinement";
  return res;
}

ProbeOutcome delayed(const RunConfig& c, const std::filesystem::path& csv) {
  const Order order(c.nu);
  const DelayedMeansPlan plan =
      with_field("r_delayed", [&] { return DelayedMeansPlan(c.r_delayed, c.R); });
  const auto table = zeros_covering(order, (c.r_delayed + 1.0) * c.R);
  // T reaches (r+1)R, so pad the band-limited coefficients with zeros
  const std::size_t reach = table.count_below((c.r_delayed + 1.0) * c.R);
  std::vector<CoefficientVector> family;
  for (const auto& member : band_limited_family(table, c.R, c.family_size, c.seed)) {
    std::vector<double> a(member.values().begin(), member.values().end());
    a.resize(reach, 0.0);
    family.emplace_back(order, System::psi, std::move(a));
  }
  const auto grid = evaluation_grid(c.grid_points);
  CsvTable out({"member", "x", "f", "T", "error"});
  double worst = 0.0;
  for (std::size_t m = 0; m < family.size(); ++m) {
    for (const double x : grid) {
      const double f = series_value(family[m], table, x);
      const double t = delayed_means(family[m], table, plan, x);
      const double scale = std::max(1.0, std::abs(f));
      worst = std::max(worst, std::abs(t - f) / scale);
      out.add({fmt(m), fmt(x), fmt(f), fmt(t), fmt(t - f)});
    }
  }
  out.write_atomic(csv);
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  res.summary["max_error"] = worst;
  for (std::size_t l = 0; l < plan.alphas().size(); ++l) res.summary["alpha_" + fmt(l + 1)] = plan.alphas()[l];
  res.passed = worst < 1e-8;
  res.message = "max |T f - f| / max(1, |f|) = " + fmt(worst);
  return res;
}

ProbeOutcome convergence(const RunConfig& c, const std::filesystem::path& csv) {
  const Order order(c.nu);
  const auto radii = radius_list(c);
  const auto table = zeros_covering(order, radii.back());
  const auto f = test_function(c.function, table);
  const auto coeffs = coefficients(f, table, table.count_below(radii.back()), System::psi, quad_of(c));
  const auto xs = uniform_grid(0.05, 0.95, 181);
  CsvTable out({"R", "max_error"});
  ProbeOutcome res;
  res.zero_checksum = table.checksum();
  res.passed = true;
  double previous = kInfinity;
  for (const double radius : radii) {
    const RieszPlan plan(table, c.delta, radius);
    double worst = 0.0;
    for (const double x : xs) worst = std::max(worst, std::abs(bochner_riesz(coeffs, table, plan, x) - f(x)));
    out.add({fmt(radius), fmt(worst)});
    res.summary["max_error_R" + fmt(radius)] = worst;
    res.passed = res.passed && worst < previous;
    previous = worst;
  }
  out.write_atomic(csv);
  res.message = res.passed ? "interior error decreases along the radius list" : "interior error did not decrease";
  return res;
}

json summary_json(const std::map<std::string, double>& summary) {
  json j = json::object();
  for (const auto& [k, v] : summary) {
    if (std::isfinite(v)) {
      j[k] = v;
    } else {
      j[k] = to_shortest(v);
    }
  }
  return j;
}

}  // namespace

std::string_view library_version() { return FBR_VERSION; }

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "config must be a JSON object");

  RunConfig c;
  bool saw_panels = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "nu") {
      c.nu = number_field(value, key);
    } else if (key == "delta") {
      c.delta = number_field(value, key);
    } else if (key == "R") {
      c.R = number_field(value, key);
    } else if (key == "r_delayed") {
      c.r_delayed = static_cast<unsigned>(count_field(value, key));
    } else if (key == "n_modes") {
      c.n_modes = count_field(value, key);
    } else if (key == "R_grid") {
      if (!value.is_object()) throw ConfigError(key, "R_grid: expected an object {min, max, ratio}");
      for (const auto& [sub, v] : value.items()) {
        const std::string field = "R_grid." + sub;
        if (sub == "min") {
          c.R_grid.min = number_field(v, field);
        } else if (sub == "max") {
          c.R_grid.max = number_field(v, field);
        } else if (sub == "ratio") {
          c.R_grid.ratio = number_field(v, field);
        } else {
          throw ConfigError(field, "unknown key " + field);
        }
      }
    } else if (key == "grid_points") {
      c.grid_points = count_field(value, key);
    } else if (key == "quad_panels" || key == "quad_panels_per_wavelength") {
      if (saw_panels) throw ConfigError(key, "give only one of quad_panels and quad_panels_per_wavelength");
      saw_panels = true;
      c.quad_panels = static_cast<int>(count_field(value, key));
    } else if (key == "seed") {
      c.seed = count_field(value, key);
    } else if (key == "output_dir") {
      c.output_dir = string_field(value, key);
    } else if (key == "kind") {
      c.kind = string_field(value, key);
    } else if (key == "p") {
      if (value.is_string() && value.get<std::string>() == "inf") {
        c.p = kInfinity;
      } else {
        c.p = number_field(value, key);
      }
    } else if (key == "growth_kind") {
      c.growth_kind = string_field(value, key);
    } else if (key == "function") {
      c.function = string_field(value, key);
    } else if (key == "family_size") {
      c.family_size = count_field(value, key);
    } else if (key == "sweep_points") {
      c.sweep_points = count_field(value, key);
    } else {
      throw ConfigError(key, "unknown key " + key);
    }
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<document>", "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const RunConfig& c) {
  if (!(c.nu > -1.0) || !std::isfinite(c.nu)) throw ConfigError("nu", "nu must be > -1");
  if (!(c.delta > 0.0) || !std::isfinite(c.delta)) throw ConfigError("delta", "delta must be > 0");
  if (!(c.R > 0.0) || !std::isfinite(c.R)) throw ConfigError("R", "R must be > 0");
  if (c.r_delayed > 12) throw ConfigError("r_delayed", "r_delayed must be <= 12");
  if (c.n_modes < 1) throw ConfigError("n_modes", "n_modes must be >= 1");
  if (!(c.R_grid.min > 0.0)) throw ConfigError("R_grid.min", "R_grid.min must be > 0");
  if (!(c.R_grid.max >= c.R_grid.min)) throw ConfigError("R_grid.max", "R_grid.max must be >= R_grid.min");
  if (!(c.R_grid.ratio > 1.0)) throw ConfigError("R_grid.ratio", "R_grid.ratio must be > 1");
  if (c.grid_points < 16) throw ConfigError("grid_points", "grid_points must be >= 16");
  if (c.quad_panels < 1) throw ConfigError("quad_panels", "quad_panels must be >= 1");
  if (c.output_dir.empty()) throw ConfigError("output_dir", "output_dir must not be empty");
  if (c.kind && !parse_experiment(*c.kind)) throw ConfigError("kind", "unknown experiment kind " + *c.kind);
  if (c.p != 0.0 && !(c.p >= 1.0)) throw ConfigError("p", "p must be >= 1, \"inf\", or 0 for the default");
  if (!parse_growth_kind(c.growth_kind)) {
    throw ConfigError("growth_kind", "growth_kind must be noweak, nostrong, weak or restricted");
  }
  if (c.family_size < 1) throw ConfigError("family_size", "family_size must be >= 1");
  if (c.sweep_points < 16) throw ConfigError("sweep_points", "sweep_points must be >= 16");
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["nu"] = c.nu;
  j["delta"] = c.delta;
  j["R"] = c.R;
  j["r_delayed"] = c.r_delayed;
  j["n_modes"] = c.n_modes;
  j["R_grid"] = {{"min", c.R_grid.min}, {"max", c.R_grid.max}, {"ratio", c.R_grid.ratio}};
  j["grid_points"] = c.grid_points;
  j["quad_panels"] = c.quad_panels;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  if (c.kind) j["kind"] = *c.kind;
  if (c.p == kInfinity) {
    j["p"] = "inf";
  } else {
    j["p"] = c.p;
  }
  j["growth_kind"] = c.growth_kind;
  j["function"] = c.function;
  j["family_size"] = c.family_size;
  j["sweep_points"] = c.sweep_points;
  return j.dump(2);
}

std::vector<double> radius_list(const RunConfig& c) {
  std::vector<double> out;
  for (double r = c.R_grid.min; r < c.R_grid.max * (1.0 - 1e-12); r *= c.R_grid.ratio) out.push_back(r);
  out.push_back(c.R_grid.max);
  return out;
}

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::orthonormality: return "orthonormality";
    case ExperimentKind::kernel_sweep: return "kernel-sweep";
    case ExperimentKind::kernel_zero: return "kernel-zero";
    case ExperimentKind::norm_curve: return "norm-curve";
    case ExperimentKind::growth: return "growth";
    case ExperimentKind::weak_type: return "weak-type";
    case ExperimentKind::delayed: return "delayed";
    case ExperimentKind::convergence: return "convergence";
  }
  return "?";
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) {
  for (const auto kind :
       {ExperimentKind::orthonormality, ExperimentKind::kernel_sweep, ExperimentKind::kernel_zero,
        ExperimentKind::norm_curve, ExperimentKind::growth, ExperimentKind::weak_type, ExperimentKind::delayed,
        ExperimentKind::convergence}) {
    if (experiment_name(kind) == name) return kind;
  }
  return std::nullopt;
}

ProbeOutcome run_probe(const RunConfig& config, ExperimentKind kind, const std::filesystem::path& csv) {
  validate(config);
  switch (kind) {
    case ExperimentKind::orthonormality: return orthonormality(config, csv);
    case ExperimentKind::kernel_sweep: return kernel_sweep(config, csv);
    case ExperimentKind::kernel_zero: return kernel_zero(config, csv);
    case ExperimentKind::norm_curve: return norm_curve(config, csv);
    case ExperimentKind::growth: return growth(config, csv);
    case ExperimentKind::weak_type: return weak_type(config, csv);
    case ExperimentKind::delayed: return delayed(config, csv);
    case ExperimentKind::convergence: return convergence(config, csv);
  }
  throw ConfigError("kind", "unknown experiment kind");
}

RunResult run_experiment(const RunConfig& config, ExperimentKind kind) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  RunResult result;
  const std::string name(experiment_name(kind));
  result.csv = dir / (name + ".csv");
  result.manifest = dir / (name + ".json");

  const auto t0 = std::chrono::steady_clock::now();
  result.outcome = run_probe(config, kind, result.csv);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json manifest;
  manifest["kind"] = name;
  manifest["version"] = std::string(library_version());
  manifest["config"] = json::parse(config_to_json(config));
  manifest["wall_time_s"] = wall;
  manifest["zero_table_checksum"] = hex64(result.outcome.zero_checksum);
  manifest["csv"] = result.csv.filename().string();
  manifest["status"] = result.outcome.passed ? "pass" : "fail";
  manifest["message"] = result.outcome.message;
  manifest["summary"] = summary_json(result.outcome.summary);
  write_text_atomic(result.manifest, manifest.dump(2) + "\n");
  result.exit_code = result.outcome.passed ? 0 : 1;
  return result;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvTable: header row is mandatory");
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::text() const {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write_atomic(const std::filesystem::path& path) const { write_text_atomic(path, text()); }

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

RadialFunction test_function(std::string_view spec, const ZeroTable& table) {
  const std::string s(spec);
  RadialFunction f;
  const auto number = [&s](const std::string& text) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("function", "bad number '" + text + "' in function " + s);
    }
  };
  if (s == "one") {
    f.eval = [](double) { return 1.0; };
  } else if (s == "x(1-x)") {
    f.eval = [](double x) { return x * (1.0 - x); };
  } else if (s.rfind("psi:", 0) == 0) {
    const double j = number(s.substr(4));
    if (!(j >= 1.0) || j != std::floor(j) || j > static_cast<double>(table.size())) {
      throw ConfigError("function", "psi:J needs an integer 1 <= J <= " + std::to_string(table.size()));
    }
    const auto mode = static_cast<std::size_t>(j);
    f.eval = [&table, mode](double x) { return eval_psi(table, mode, x); };
    f.bandwidth = table.zero(mode);
  } else if (s.rfind("power:", 0) == 0) {
    const double g = number(s.substr(6));
    f.eval = [g](double x) { return std::pow(x, -g); };
  } else if (s.rfind("indicator:", 0) == 0) {
    const auto rest = s.substr(10);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("function", "indicator needs indicator:A:B");
    const double a = number(rest.substr(0, colon));
    const double b = number(rest.substr(colon + 1));
    try {
      f = indicator({{a, b}});
    } catch (const DomainError& e) {
      throw ConfigError("function", e.what());
    }
  } else {
    throw ConfigError("function", "unknown function '" + s + "' (one, x(1-x), psi:J, power:G, indicator:A:B)");
  }
  return f;
}

}  // namespace fbr
