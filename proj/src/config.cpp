#include "muskat/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace muskat {

namespace {

using nlohmann::json;

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid run configuration";
  for (const std::string& issue : issues) out += "\n  " + issue;
  return out;
}

/// Reads the keys of one JSON object, recording every problem under its
/// dotted key path.
class Section {
 public:
  Section(const json* obj, std::string path, std::vector<std::string>& issues)
      : obj_(obj), path_(std::move(path)), issues_(issues) {}

  std::string key_path(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

  void issue(std::string_view key, std::string_view what) { issues_.push_back(key_path(key) + ": " + std::string(what)); }

  /// The value under key, or nullptr when absent (an issue is recorded if required).
  const json* find(std::string_view key, bool required) {
    known_.insert(std::string(key));
    if (obj_ == nullptr) return nullptr;
    const auto it = obj_->find(key);
    if (it == obj_->end()) {
      if (required) issue(key, "required key is missing");
      return nullptr;
    }
    return &*it;
  }

  void number(std::string_view key, double& out, bool required = false) {
    if (const json* v = find(key, required)) {
      if (v->is_number()) out = v->get<double>();
      else issue(key, "expected a number");
    }
  }

  void count(std::string_view key, std::size_t& out, bool required = false) {
    if (const json* v = find(key, required)) {
      if (v->is_number_unsigned()) out = v->get<std::size_t>();
      else issue(key, "expected a non-negative integer");
    }
  }

  void integer(std::string_view key, int& out, bool required = false) {
    if (const json* v = find(key, required)) {
      if (v->is_number_integer()) out = v->get<int>();
      else issue(key, "expected an integer");
    }
  }

  void boolean(std::string_view key, bool& out) {
    if (const json* v = find(key, false)) {
      if (v->is_boolean()) out = v->get<bool>();
      else issue(key, "expected true or false");
    }
  }

  std::optional<std::string> string(std::string_view key, bool required = false) {
    if (const json* v = find(key, required)) {
      if (v->is_string()) return v->get<std::string>();
      issue(key, "expected a string");
    }
    return std::nullopt;
  }

  Section child(std::string_view key, bool required) {
    const json* v = find(key, required);
    if (v != nullptr && !v->is_object()) {
      issue(key, "expected an object");
      v = nullptr;
    }
    return Section(v, key_path(key), issues_);
  }

  /// Rejects keys that were never asked for.
  void reject_unknown() {
    if (obj_ == nullptr) return;
    for (const auto& [key, value] : obj_->items()) {
      if (!known_.count(key)) issue(key, "unknown key");
    }
  }

 private:
  const json* obj_;
  std::string path_;
  std::vector<std::string>& issues_;
  std::set<std::string> known_;
};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError({"line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what});
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues_)
    : std::runtime_error(join_issues(issues_)), issues(std::move(issues_)) {}

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::gaussian:
      return "gaussian";
    case InitialKind::mode:
      return "mode";
    case InitialKind::bump_file:
      return "bump_file";
  }
  return "unknown";
}

RunConfig parse_config(std::string_view text) {
  const json doc = parse_json(text);
  std::vector<std::string> issues;
  if (!doc.is_object()) throw ConfigError({"document: expected a JSON object at the top level"});

  RunConfig cfg;
  Section root(&doc, "", issues);

  Section grid = root.child("grid", true);
  grid.number("L", cfg.L, true);
  grid.count("N", cfg.N, true);
  grid.reject_unknown();
  if (!(cfg.L > 0.0) || !std::isfinite(cfg.L)) grid.issue("L", "must be positive and finite");
  if (cfg.N < 16 || !is_power_of_two(cfg.N)) grid.issue("N", "must be a power of two >= 16");

  Section fluids = root.child("fluids", true);
  FluidParams& fp = cfg.fluids;
  fluids.number("mu_minus", fp.mu_minus, true);
  fluids.number("mu_plus", fp.mu_plus, true);
  fluids.number("rho_minus", fp.rho_minus, true);
  fluids.number("rho_plus", fp.rho_plus, true);
  fluids.number("k", fp.k, true);
  fluids.number("g", fp.g, true);
  fluids.number("V", fp.V);
  fluids.reject_unknown();
  if (!(fp.mu_minus > 0.0)) fluids.issue("mu_minus", "viscosity must be positive");
  if (!(fp.mu_plus > 0.0)) fluids.issue("mu_plus", "viscosity must be positive");
  if (!(fp.k > 0.0)) fluids.issue("k", "permeability must be positive");
  if (fp.mu_minus > 0.0 && fp.mu_plus > 0.0 && fp.k > 0.0) {
    try {
      (void)derive_constants(fp);
    } catch (const std::exception& e) {
      issues.push_back(std::string("fluids: ") + e.what());
    }
  }

  Section initial = root.child("initial", true);
  if (const auto kind = initial.string("kind", true)) {
    if (*kind == "gaussian") cfg.initial.kind = InitialKind::gaussian;
    else if (*kind == "mode") cfg.initial.kind = InitialKind::mode;
    else if (*kind == "bump_file") cfg.initial.kind = InitialKind::bump_file;
    else initial.issue("kind", "must be one of gaussian, mode, bump_file");
  }
  initial.number("amplitude", cfg.initial.amplitude);
  initial.number("width_or_wavenumber", cfg.initial.width_or_wavenumber);
  initial.number("noise", cfg.initial.noise);
  const auto path = initial.string("path", cfg.initial.kind == InitialKind::bump_file);
  if (path) cfg.initial.path = *path;
  initial.reject_unknown();
  if (cfg.initial.kind != InitialKind::bump_file && !(cfg.initial.width_or_wavenumber > 0.0)) {
    initial.issue("width_or_wavenumber", "must be positive");
  }
  if (!(cfg.initial.noise >= 0.0)) initial.issue("noise", "must be non-negative");

  Section stepper = root.child("stepper", false);
  StepperConfig& sc = cfg.stepper;
  if (const auto scheme = stepper.string("scheme")) {
    if (*scheme == "rk4") sc.scheme = Scheme::rk4;
    else if (*scheme == "imex") sc.scheme = Scheme::imex;
    else stepper.issue("scheme", "must be rk4 or imex");
  }
  stepper.number("dt", sc.dt);
  stepper.number("t_end", sc.t_end);
  stepper.count("record_every", sc.record_every);
  stepper.number("cfl_safety", sc.cfl_safety);
  stepper.boolean("stop_on_rt", sc.stop_on_rt);
  stepper.reject_unknown();
  if (!(sc.dt > 0.0)) stepper.issue("dt", "must be positive");
  if (!(sc.t_end >= 0.0)) stepper.issue("t_end", "must be non-negative");
  if (sc.record_every == 0) stepper.issue("record_every", "must be at least 1");
  if (!(sc.cfl_safety > 0.0 && sc.cfl_safety <= 1.0)) stepper.issue("cfl_safety", "must lie in (0, 1]");

  Section solver = root.child("solver", false);
  SolverConfig& so = cfg.solver;
  if (const auto method = solver.string("method")) {
    if (*method == "fixed_point") so.method = SolveMethod::fixed_point;
    else if (*method == "dense") so.method = SolveMethod::dense;
    else solver.issue("method", "must be fixed_point or dense");
  }
  solver.number("tol", so.tol);
  solver.integer("max_iter", so.max_iter);
  solver.count("dense_cap", so.dense_cap);
  solver.reject_unknown();
  if (!(so.tol > 0.0)) solver.issue("tol", "must be positive");
  if (so.max_iter < 1) solver.issue("max_iter", "must be at least 1");
  if (cfg.N > so.dense_cap && so.method == SolveMethod::dense) {
    solver.issue("dense_cap", "grid.N exceeds the dense cap required by method dense");
  }

  Section sobolev = root.child("sobolev", false);
  sobolev.number("s", cfg.sobolev.s);
  sobolev.number("p", cfg.sobolev.p);
  sobolev.reject_unknown();
  try {
    cfg.sobolev.validate();
  } catch (const std::exception& e) {
    issues.push_back(std::string("sobolev: ") + e.what());
  }

  Section output = root.child("output", false);
  if (const auto dir = output.string("dir")) cfg.output.dir = *dir;
  output.boolean("snapshots", cfg.output.snapshots);
  output.reject_unknown();

  root.reject_unknown();
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError({"cannot read config file " + path.string()});
  std::ostringstream ss;
  ss << is.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  // Relative bump files are resolved against the config file's directory.
  if (!cfg.initial.path.empty() && cfg.initial.path.is_relative()) {
    cfg.initial.path = path.parent_path() / cfg.initial.path;
  }
  return cfg;
}

}  // namespace muskat
