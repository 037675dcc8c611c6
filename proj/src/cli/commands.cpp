#include "lincheck/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "lincheck/cli/spec_file.hpp"
#include "lincheck/criteria/criteria2.hpp"
#include "lincheck/criteria/criteria3.hpp"
#include "lincheck/tensor/tensor.hpp"
#include "lincheck/verify/verify.hpp"

namespace lincheck::cli {

using json = nlohmann::ordered_json;
using criteria::CubicCoeffs;
using criteria::GeodesicCoeffs2;
using criteria::LinearizabilityReport;
using criteria::Verdict;
using sym::RationalExpr;

namespace {

constexpr double kDefaultTol = 1e-6;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::size_t kDefaultSamples = 20;

const char* const kCubicNames[] = {"P", "Q", "R", "S", "T", "U", "V", "W"};
const char* const kGeodesicNames[] = {"a", "b", "c", "d", "e", "f"};

json cubic_json(const CubicCoeffs& A) {
  json out = json::object();
  const auto f = A.fields();
  for (std::size_t i = 0; i < 8; ++i) out[kCubicNames[i]] = f[i]->to_string();
  return out;
}

std::array<const RationalExpr*, 6> geodesic_fields(const GeodesicCoeffs2& g) {
  return {&g.a, &g.b, &g.c, &g.d, &g.e, &g.f};
}

json geodesic_json(const GeodesicCoeffs2& g) {
  json out = json::object();
  const auto f = geodesic_fields(g);
  for (std::size_t i = 0; i < 6; ++i) out[kGeodesicNames[i]] = f[i]->to_string();
  return out;
}

std::string geodesic_line(const GeodesicCoeffs2& g) {
  std::string out;
  const auto f = geodesic_fields(g);
  for (std::size_t i = 0; i < 6; ++i) {
    if (i) out += ", ";
    out += std::string(kGeodesicNames[i]) + " = " + f[i]->to_string();
  }
  return out;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Linearizable:
    case Verdict::LinearizableNumeric:
      return kExitOk;
    case Verdict::NotLinearizable:
      return kExitNegative;
    case Verdict::Inconclusive:
      return kExitUndecided;
  }
  return kExitUndecided;
}

/// Geodesic coefficients of a second-order input; beta/alpha parts are an
/// input error because every command needs the geodesic type.
GeodesicCoeffs2 geodesic_input(const SystemSpec& spec) {
  try {
    return criteria::from_quadratic_system(spec.second);
  } catch (const NonGeodesicType& e) {
    throw InputError(0, 0, e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(0, 0, message);
}

struct Result {
  std::string verdict;
  int exit_code = kExitOk;
  json body = json::object();
  std::ostringstream text;
};

// ---- check --------------------------------------------------------------------

json report_json(const LinearizabilityReport& r) {
  json out = json::object();
  out["path"] = criteria::to_string(r.path);
  out["case_label"] = r.case_label ? json(*r.case_label) : json(nullptr);
  out["branches"] = json::array();
  for (const auto& g : r.branches) out["branches"].push_back(geodesic_json(g));
  out["failed_conditions"] = json::array();
  for (const auto& f : r.failed_conditions) out["failed_conditions"].push_back({{"name", f.name}, {"residual", f.residual}});
  out["notes"] = r.notes;
  return out;
}

void report_text(const LinearizabilityReport& r, std::ostream& os) {
  os << "path: " << criteria::to_string(r.path) << "\n";
  if (r.case_label) os << "case: " << *r.case_label << "\n";
  for (std::size_t i = 0; i < r.branches.size(); ++i) os << "branch " << i + 1 << ": " << geodesic_line(r.branches[i]) << "\n";
  for (const auto& f : r.failed_conditions) os << "failed: " << f.name << " = " << f.residual << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
}

void run_check(const SystemSpec& spec, Result& res) {
  LinearizabilityReport r;
  if (spec.kind == SystemKind::ThirdOrder) {
    r = criteria::check(spec.third);
  } else {
    require(spec.kind == SystemKind::SecondOrder, "check needs a [third_order] or [second_order] section");
    const GeodesicCoeffs2 g = geodesic_input(spec);
    r.path = criteria::CheckPath::VariableCase;
    const auto flat = criteria::flatness_residuals(g);
    for (std::size_t i = 0; i < 4; ++i)
      if (!flat[i].is_zero()) r.failed_conditions.push_back({"flatness " + std::to_string(i + 1), flat[i].to_string()});
    r.verdict = r.failed_conditions.empty() ? Verdict::Linearizable : Verdict::NotLinearizable;
    if (r.failed_conditions.empty()) r.branches.push_back(g);
    r.notes.push_back("second-order input: curvature of the associated connection");
  }
  res.verdict = criteria::to_string(r.verdict);
  res.exit_code = exit_for(r.verdict);
  res.body["report"] = report_json(r);
  res.text << "verdict: " << res.verdict << "\n";
  report_text(r, res.text);
}

// ---- build --------------------------------------------------------------------

void run_build(const SystemSpec& spec, Result& res) {
  require(spec.kind == SystemKind::SecondOrder, "build needs a [second_order] section");
  const CubicCoeffs A = criteria::build_cubic_2d(geodesic_input(spec));
  res.verdict = "Built";
  res.body["coefficients"] = cubic_json(A);
  const auto f = A.fields();
  for (std::size_t i = 0; i < 8; ++i) res.text << kCubicNames[i] << " = " << f[i]->to_string() << "\n";
}

// ---- verify -------------------------------------------------------------------

struct Candidate {
  std::string source;
  GeodesicCoeffs2 coeffs;
};

std::vector<Candidate> candidates_for(const SystemSpec& spec, json& notes) {
  if (spec.kind == SystemKind::SecondOrder) return {{"second_order", geodesic_input(spec)}};
  const LinearizabilityReport r = criteria::check(spec.third);
  notes.push_back("check verdict: " + std::string(criteria::to_string(r.verdict)));
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < r.branches.size(); ++i) out.push_back({"branch " + std::to_string(i + 1), r.branches[i]});
  if (out.empty() && r.verdict == Verdict::NotLinearizable && r.path == criteria::CheckPath::VariableCase) {
    try {
      out.push_back({"recovered (not linearizable)", criteria::recover_coeffs(spec.third)});
    } catch (const DeltaIdenticallyZero&) {
    }
  }
  if (out.empty()) notes.push_back("no exact geodesic coefficients to verify against");
  return out;
}

struct NumericConfig {
  double step, s_end, tol, cx, cy;
  std::size_t samples;
  std::uint64_t seed;
};

NumericConfig numeric_config(const SystemSpec& spec, const RunOptions& opts) {
  const NumericSettings& n = spec.numeric;
  return {n.step.value_or(verify::kDefaultStep),
          n.s_end.value_or(verify::kDefaultSEnd),
          opts.tol ? *opts.tol : n.tol.value_or(kDefaultTol),
          n.center_x.value_or(1.0),
          n.center_y.value_or(0.0),
          n.samples.value_or(kDefaultSamples),
          opts.seed ? *opts.seed : n.seed.value_or(kDefaultSeed)};
}

json verify_candidate(const Candidate& cand, const SystemSpec& spec, const NumericConfig& cfg, std::ostream& text,
                      bool& passed) {
  const verify::TransformPair& t = *spec.transform;
  json out = json::object();
  out["source"] = cand.source;
  out["coefficients"] = geodesic_json(cand.coeffs);
  text << cand.source << ": " << geodesic_line(cand.coeffs) << "\n";

  bool ok = true;
  json sym = json::object();
  const bool rational = !t.u.contains_transcendental() && !t.v.contains_transcendental();
  sym["applicable"] = rational;
  if (rational) {
    const auto q = verify::symbolic_linearization_residual(cand.coeffs, t, spec.constants);
    sym["u"] = q[0].to_string();
    sym["v"] = q[1].to_string();
    sym["zero"] = q[0].is_zero() && q[1].is_zero();
    ok = ok && q[0].is_zero() && q[1].is_zero();
    text << "  symbolic u'' = " << q[0].to_string() << "\n  symbolic v'' = " << q[1].to_string() << "\n";
  } else {
    text << "  symbolic: not applicable (transcendental transform)\n";
  }
  out["symbolic"] = sym;

  json trajs = json::array();
  double worst = 0.0;
  std::size_t failures = 0;
  const auto states = verify::seeded_initial_states(cfg.seed, cfg.samples, cfg.cx, cfg.cy);
  for (std::size_t k = 0; k < states.size(); ++k) {
    json row = json::object();
    row["index"] = k;
    json init = json::array();
    for (double v : states[k].values) init.push_back(decimal17(v));
    row["initial"] = init;
    try {
      const verify::Trajectory tr = verify::integrate_second(cand.coeffs, states[k], cfg.s_end, cfg.step);
      const auto pf = verify::pushforward(tr, t, spec.constants);
      std::vector<std::pair<double, double>> u, v;
      for (const auto& p : pf) {
        u.emplace_back(p.s, p.u);
        v.emplace_back(p.s, p.v);
      }
      const std::size_t expected = static_cast<std::size_t>(std::floor((cfg.s_end - states[k].s) / cfg.step + 1e-9)) + 1;
      const bool truncated = tr.samples.size() < expected;
      const double ru = verify::linearity_residual(u, 1), rv = verify::linearity_residual(v, 1);
      row["status"] = truncated ? "truncated" : "ok";
      row["samples"] = tr.samples.size();
      row["residual_u"] = decimal17(ru);
      row["residual_v"] = decimal17(rv);
      worst = std::max({worst, ru, rv});
      if (truncated || !(ru < cfg.tol) || !(rv < cfg.tol)) ++failures;
    } catch (const Error& e) {
      row["status"] = "error";
      row["error"] = e.what();
      ++failures;
    }
    trajs.push_back(row);
  }
  json num = json::object();
  num["step"] = decimal17(cfg.step);
  num["s_end"] = decimal17(cfg.s_end);
  num["tol"] = decimal17(cfg.tol);
  num["seed"] = cfg.seed;
  num["max_residual"] = decimal17(worst);
  num["failures"] = failures;
  num["trajectories"] = trajs;
  out["numeric"] = num;
  ok = ok && failures == 0;
  out["pass"] = ok;
  text << "  numeric: " << states.size() << " trajectories, max residual " << decimal17(worst) << ", tol "
       << decimal17(cfg.tol) << ", failures " << failures << "\n";
  passed = passed || ok;
  return out;
}

void run_verify(const SystemSpec& spec, const RunOptions& opts, Result& res) {
  require(spec.kind != SystemKind::Metric, "verify needs a [third_order] or [second_order] section");
  require(spec.transform.has_value(), "verify needs a [transform] section");
  json notes = json::array();
  const auto cands = candidates_for(spec, notes);
  const NumericConfig cfg = numeric_config(spec, opts);
  bool passed = false;
  json list = json::array();
  std::ostringstream detail;
  for (const auto& c : cands) list.push_back(verify_candidate(c, spec, cfg, detail, passed));
  res.verdict = passed ? "PASS" : "FAIL";
  res.exit_code = passed ? kExitOk : kExitNegative;
  json v = json::object();
  v["pass"] = passed;
  v["candidates"] = list;
  v["notes"] = notes;
  res.body["verification"] = v;
  res.text << "verdict: " << res.verdict << "\n" << detail.str();
  for (const auto& n : notes) res.text << "note: " << n.get<std::string>() << "\n";
}

// ---- tensor -------------------------------------------------------------------

std::string index_label(const std::string& head, std::size_t up, std::initializer_list<std::size_t> down) {
  std::string s = head + "^" + std::to_string(up + 1) + "_";
  for (std::size_t d : down) s += std::to_string(d + 1);
  return s;
}

void run_tensor(const SystemSpec& spec, const RunOptions& opts, Result& res) {
  require(spec.kind == SystemKind::Metric, "tensor needs a [metric] section");
  const tensor::Metric& g = *spec.metric;
  const std::size_t n = g.dim();
  const tensor::Christoffel G = tensor::christoffel_from_metric(g);
  json comps = json::object();
  res.verdict = "Computed";
  switch (opts.tensor_action) {
    case TensorAction::Christoffel:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = j; k < n; ++k) {
            const std::string label = index_label("Gamma", i, {j, k});
            comps[label] = G(i, j, k).to_string();
            res.text << label << " = " << G(i, j, k).to_string() << "\n";
          }
      res.body["tensor"] = {{"action", "christoffel"}, {"components", comps}};
      break;
    case TensorAction::Riemann: {
      const tensor::RiemannUp Rm = tensor::riemann_up(G);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l) {
              const std::string label = index_label("R", i, {j, k, l});
              comps[label] = Rm(i, j, k, l).to_string();
              res.text << label << " = " << Rm(i, j, k, l).to_string() << "\n";
            }
      res.body["tensor"] = {{"action", "riemann"}, {"components", comps}};
      break;
    }
    case TensorAction::Flat: {
      const bool flat = tensor::is_flat(G);
      res.text << "flat: " << (flat ? "true" : "false") << "\n";
      res.body["tensor"] = {{"action", "flat"}, {"flat", flat}};
      break;
    }
  }
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Check:
      return "check";
    case Command::Build:
      return "build";
    case Command::Verify:
      return "verify";
    case Command::Tensor:
      return "tensor";
  }
  return "?";
}

std::string decimal17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

json without_timings(const json& report) {
  json out = report;
  out.erase("timings");
  if (out.contains("documents"))
    for (auto& d : out["documents"]) d.erase("timings");
  return out;
}

CommandOutput run_on_text(Command cmd, std::string_view text, std::string_view name, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Result res;
  json error = nullptr;
  try {
    const SystemSpec spec = parse_system_spec(text);
    switch (cmd) {
      case Command::Check:
        run_check(spec, res);
        break;
      case Command::Build:
        run_build(spec, res);
        break;
      case Command::Verify:
        run_verify(spec, opts, res);
        break;
      case Command::Tensor:
        run_tensor(spec, opts, res);
        break;
    }
  } catch (const InputError& e) {
    res = Result{};
    res.verdict = "InputError";
    res.exit_code = kExitInput;
    error = {{"kind", "input"}, {"message", e.message()}, {"line", e.line()}, {"column", e.column()}};
    res.text << name << (e.line() ? ":" : ": ") << e.what() << "\n";
  } catch (const Error& e) {
    // Size caps and similar aborts: no verdict could be reached.
    res = Result{};
    res.verdict = "Inconclusive";
    res.exit_code = kExitUndecided;
    error = {{"kind", "computation"}, {"message", e.what()}};
    res.text << "verdict: Inconclusive\nerror: " << e.what() << "\n";
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  CommandOutput out;
  out.exit_code = res.exit_code;
  json& r = out.report;
  r["schema"] = kSchemaVersion;
  r["tool"] = {{"name", "lincheck"}, {"version", kToolVersion}};
  r["command"] = to_string(cmd);
  r["input"] = {{"name", std::string(name)}, {"sha256", sha256_hex(text)}};
  r["verdict"] = res.verdict;
  r["exit_code"] = res.exit_code;
  if (!error.is_null()) r["error"] = error;
  for (auto& [k, v] : res.body.items()) r[k] = v;
  r["timings"] = {{"total_ms", ms}};
  out.text = res.text.str();
  return out;
}

CommandOutput run_on_file(Command cmd, const std::filesystem::path& path, const RunOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    CommandOutput out;
    out.exit_code = kExitInput;
    json& r = out.report;
    r["schema"] = kSchemaVersion;
    r["tool"] = {{"name", "lincheck"}, {"version", kToolVersion}};
    r["command"] = to_string(cmd);
    r["input"] = {{"name", path.string()}, {"sha256", nullptr}};
    r["verdict"] = "InputError";
    r["exit_code"] = kExitInput;
    r["error"] = {{"kind", "input"}, {"message", "cannot read " + path.string()}, {"line", 0}, {"column", 0}};
    out.text = path.string() + ": cannot read file\n";
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_on_text(cmd, ss.str(), path.string(), opts);
}

}  // namespace lincheck::cli
