#include "subent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "subent/acceptance.hpp"
#include "subent/bipartite.hpp"
#include "subent/io.hpp"
#include "subent/optimizer.hpp"
#include "subent/symmetric.hpp"

namespace subent::cli {

std::string format_real(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.9g", v);
  return buf;
}

namespace {

std::string format_angles(const std::vector<double>& thetas) {
  std::string s;
  char buf[64];
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9f", thetas[i]);
    if (i) s += ';';
    s += buf;
  }
  return s;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void emit_scan(const std::vector<ScanRow>& rows, Format format, std::ostream& out) {
  if (rows.empty()) fail(ErrorCode::InvalidConfig, "scan produced no rows");
  if (format == Format::Json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const ScanRow& r : rows) {
      doc.push_back({{"F", r.F},
                     {"E_closed", optional_number(r.E_closed)},
                     {"E_numeric", r.E_numeric},
                     {"theta_stars", r.theta_stars},
                     {"gap", optional_number(r.gap)}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "F,E_closed,E_numeric,theta_stars,gap\n";
  for (const ScanRow& r : rows) {
    out << format_real(r.F) << ',' << (r.E_closed ? format_real(*r.E_closed) : "") << ','
        << format_real(r.E_numeric) << ',' << format_angles(r.theta_stars) << ','
        << (r.gap ? format_real(*r.gap) : "") << '\n';
  }
}

namespace {

double roof_chord(double f_lo, double e_lo, double e_hi, double fidelity) {
  return e_lo + (fidelity - f_lo) * (e_hi - e_lo) / (1.0 - f_lo);
}

double double_star(std::size_t d) {
  const double dd = static_cast<double>(d);
  return 4.0 * (dd - 1.0) / (dd * dd);
}

}  // namespace

std::optional<double> symmetric_closed_form(std::size_t d, double fidelity) {
  if (d < 2) fail(ErrorCode::DimensionTooSmall, "need d >= 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) fail(ErrorCode::FOutOfRange, "F = " + std::to_string(fidelity));
  if (d == 2) return case1_symmetric_entanglement(fidelity);
  const double ln_d = std::log(static_cast<double>(d));
  if (d == 3) {
    if (fidelity == 0.0) return std::numbers::ln2;
    if (fidelity < kFStar) return std::nullopt;
    if (fidelity <= kF89) return case2_entanglement(fidelity);
    return roof_chord(kF89, case2_entanglement(kF89), ln_d, fidelity);
  }
  const double f2 = f_double_star(d);
  if (fidelity < 1.0 / static_cast<double>(d)) return std::nullopt;
  if (fidelity <= f2) return prop23_entanglement(d, fidelity);
  return roof_chord(f2, prop23_entanglement(d, f2), ln_d, fidelity);
}

double isotropic_closed_form(std::size_t d, double fidelity) {
  if (d < 2) fail(ErrorCode::DimensionTooSmall, "need d >= 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) fail(ErrorCode::FOutOfRange, "F = " + std::to_string(fidelity));
  if (fidelity <= 1.0 / static_cast<double>(d)) return 0.0;
  const double f2 = double_star(d);
  if (fidelity <= f2) return prop23_entanglement(d, fidelity);
  return roof_chord(f2, prop23_entanglement(d, f2), std::log(static_cast<double>(d)), fidelity);
}

namespace {

// --- output records --------------------------------------------------------

struct Field {
  std::string key;
  nlohmann::json value;  // number, string, bool or null
};

class Record {
 public:
  void real(std::string key, double v) { fields_.push_back({std::move(key), v}); }
  void real(std::string key, const std::optional<double>& v) {
    fields_.push_back({std::move(key), optional_number(v)});
  }
  void integer(std::string key, long long v) { fields_.push_back({std::move(key), v}); }
  void flag(std::string key, bool v) { fields_.push_back({std::move(key), v}); }
  void angles(std::string key, const std::vector<double>& v) { fields_.push_back({std::move(key), v}); }
  void decomposition(const ExtremalDecomposition& dec) {
    decomposition_ = nlohmann::json::parse(decomposition_to_json(dec));
  }

  void write(Format format, std::ostream& out) const {
    if (format == Format::Json) {
      nlohmann::json doc = nlohmann::json::object();
      for (const Field& f : fields_) doc[f.key] = f.value;
      if (!decomposition_.is_null()) doc["decomposition"] = decomposition_;
      out << doc.dump(2) << '\n';
      return;
    }
    if (format == Format::Csv) {
      for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].key;
      out << '\n';
      for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << text(fields_[i].value);
      out << '\n';
      return;
    }
    for (const Field& f : fields_) out << f.key << " = " << text(f.value) << '\n';
  }

 private:
  static std::string text(const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_real(v.get<double>());
    if (v.is_array()) return format_angles(v.get<std::vector<double>>());
    return v.get<std::string>();
  }

  std::vector<Field> fields_;
  nlohmann::json decomposition_;
};

// --- arguments ---------------------------------------------------------------

struct Args {
  std::size_t d = 3;
  std::optional<double> F;
  double f_lo = 0.0;
  double f_hi = 1.0;
  std::size_t steps = 11;
  std::optional<double> a;
  double b_re = 0.0;
  double b_im = 0.0;
  std::string method = "closed";
  std::optional<std::size_t> length;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string out_path;
  std::string format;
  bool restricted = false;
  std::string state_path;
  std::vector<int> only;

  OptimizerConfig optimizer() const {
    OptimizerConfig cfg;
    cfg.length = length;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.diagonal_class = restricted;
    return cfg;
  }
  bool want_closed() const { return method != "numeric"; }
  bool want_numeric() const { return method != "closed"; }
};

void add_optimizer_flags(CLI::App* sub, Args& args) {
  sub->add_option("--method", args.method, "closed | numeric | both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}));
  sub->add_option("--length", args.length, "decomposition length (default d^2)")->check(CLI::Range(1, 100000));
  sub->add_option("--restarts", args.restarts, "optimizer restarts")->check(CLI::Range(1, 100000));
  sub->add_option("--seed", args.seed, "base seed for restart k = seed + k");
  sub->add_option("--tol", args.tol, "optimizer tolerance")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* sub, Args& args) {
  sub->add_option("--out", args.out_path, "write output to this file");
  sub->add_option("--format", args.format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
}

Format output_format(const Args& args, Format fallback) {
  if (args.format == "csv") return Format::Csv;
  if (args.format == "json") return Format::Json;
  if (args.format == "text") return Format::Text;
  return fallback;
}

/// Reports E for one method or E_closed / E_numeric / gap for both.
void put_values(Record& rec, const Args& args, const std::optional<double>& closed,
                const std::optional<double>& numeric) {
  if (args.method == "both") {
    rec.real("E_closed", closed);
    rec.real("E_numeric", numeric);
    rec.real("gap", closed && numeric ? std::optional<double>(*numeric - *closed) : std::nullopt);
  } else {
    rec.real("E", args.method == "closed" ? closed : numeric);
  }
}

void put_run(Record& rec, const OptimizationResult& res) {
  rec.flag("converged", res.converged);
  rec.real("restart_spread", res.restart_spread);
  rec.integer("best_restart", static_cast<long long>(res.best_restart));
}

double require_fidelity(const Args& args) {
  if (!args.F) fail(ErrorCode::InvalidConfig, "--F is required");
  return *args.F;
}

// --- commands ------------------------------------------------------------------

Record cmd_case1(const Args& args) {
  if (!args.a) fail(ErrorCode::InvalidConfig, "--a is required");
  const complex b(args.b_re, args.b_im);
  Record rec;
  std::optional<double> closed;
  std::optional<double> numeric;
  std::optional<Case1Solution> sol;
  std::optional<OptimizationResult> res;
  if (args.want_closed()) {
    sol = case1_optimal(*args.a, b);
    closed = sol->entanglement;
  }
  if (args.want_numeric()) {
    Matrix m(2, 2);
    m << *args.a, b, std::conj(b), 1.0 - *args.a;
    OptimizerConfig cfg = args.optimizer();
    res = minimize_objective(validate_density(m), SubalgebraSpec::diagonal(), cfg);
    numeric = res->value;
  }
  put_values(rec, args, closed, numeric);
  if (sol) rec.real("lambda", sol->lambda);
  if (res) put_run(rec, *res);
  rec.decomposition(res ? res->decomposition : sol->decomposition);
  return rec;
}

Record cmd_symmetric(const Args& args) {
  const double f = require_fidelity(args);
  Record rec;
  std::optional<double> closed;
  std::optional<double> numeric;
  std::optional<OptimizationResult> res;
  if (args.want_closed()) closed = symmetric_closed_form(args.d, f);
  if (args.want_numeric()) {
    res = minimize_objective(perm_symmetric_state(args.d, f), SubalgebraSpec::diagonal(), args.optimizer());
    numeric = res->value;
  }
  put_values(rec, args, closed, numeric);
  if (args.d == 3) {
    const OrbitMinimum orbit = s_of_f(f);
    rec.real("orbit_value", orbit.value);
    rec.angles("theta_stars", orbit.minimizers);
  }
  if (res) {
    put_run(rec, *res);
    rec.decomposition(res->decomposition);
  }
  return rec;
}

std::vector<double> scan_grid(const Args& args) {
  if (args.f_lo > args.f_hi) fail(ErrorCode::InvalidConfig, "--f-lo exceeds --f-hi");
  std::vector<double> grid(args.steps);
  for (std::size_t i = 0; i < args.steps; ++i) {
    grid[i] = args.steps == 1 ? args.f_lo
                              : args.f_lo + (args.f_hi - args.f_lo) * static_cast<double>(i) /
                                                static_cast<double>(args.steps - 1);
  }
  grid.back() = args.steps == 1 ? args.f_lo : args.f_hi;
  return grid;
}

std::vector<ScanRow> cmd_scan(const Args& args) {
  std::vector<ScanRow> rows;
  for (double f : scan_grid(args)) {
    ScanRow row;
    row.F = f;
    row.E_closed = symmetric_closed_form(args.d, f);
    if (args.d == 3) {
      const OrbitMinimum orbit = s_of_f(f);
      row.theta_stars = orbit.minimizers;
      row.E_numeric = orbit.value;
    }
    if (args.d != 3 || args.want_numeric()) {
      row.E_numeric =
          minimize_objective(perm_symmetric_state(args.d, f), SubalgebraSpec::diagonal(), args.optimizer()).value;
    }
    if (row.E_closed) row.gap = row.E_numeric - *row.E_closed;
    rows.push_back(std::move(row));
  }
  return rows;
}

Record cmd_bifurcate(const Args& args) {
  if (args.d != 3) fail(ErrorCode::InvalidConfig, "the orbit bifurcation is located for d = 3 only");
  const double f_star = find_bifurcation(args.f_lo, args.f_hi, args.tol);
  Record rec;
  rec.real("F*", f_star);
  rec.real("x*", fidelity_to_x(3, f_star));
  return rec;
}

Record cmd_eof_isotropic(const Args& args) {
  const double f = require_fidelity(args);
  Record rec;
  std::optional<double> closed;
  std::optional<double> numeric;
  std::optional<OptimizationResult> res;
  if (args.want_closed()) closed = isotropic_closed_form(args.d, f);
  if (args.want_numeric()) {
    res = eof(isotropic(args.d, f), args.optimizer());
    numeric = res->value;
  }
  put_values(rec, args, closed, numeric);
  if (res) {
    put_run(rec, *res);
    rec.decomposition(res->decomposition);
  }
  return rec;
}

Record cmd_double(const Args& args) {
  const DensityMatrix rho =
      args.state_path.empty() ? perm_symmetric_state(args.d, require_fidelity(args)) : read_state_file(args.state_path);
  const OptimizationResult doubled = eof(doubling(rho), args.optimizer());
  OptimizerConfig plain = args.optimizer();
  plain.diagonal_class = false;
  const OptimizationResult direct = minimize_objective(rho, SubalgebraSpec::diagonal(), plain);
  Record rec;
  rec.real("E_doubled", doubled.value);
  rec.real("E_diagonal", direct.value);
  rec.real("difference", doubled.value - direct.value);
  rec.flag("restricted", args.restricted);
  put_run(rec, doubled);
  rec.decomposition(doubled.decomposition);
  return rec;
}

Record cmd_embed(const Args& args) {
  if (args.d < 3) fail(ErrorCode::DimensionTooSmall, "embedding targets local dimension >= 3");
  const std::size_t n = args.d - 1;
  const Vector psi = maximally_entangled(args.d).amplitudes();
  auto fidelity = [&](const StateVector& w) { return std::norm(psi.dot(w.amplitudes())); };
  Record rec;
  rec.real("F**", f_double_star(args.d));
  if (!args.a) {
    // The pair built from the qubit vector (1/sqrt d, sqrt((d-1)/d)).
    const double z1 = 1.0 / std::sqrt(static_cast<double>(args.d));
    const double z2 = std::sqrt(1.0 - z1 * z1);
    rec.real("F_W1", fidelity(embed(z1, z2, n)));
    rec.real("F_W2", fidelity(embed(z2, z1, n)));
    return rec;
  }
  const Case1Solution sol = case1_optimal(*args.a, complex(args.b_re, args.b_im));
  std::vector<StateVector> lifted;
  for (const StateVector& w : sol.decomposition.decomposers()) lifted.push_back(embed(w[0], w[1], n));
  const ExtremalDecomposition dec(sol.decomposition.weights(), lifted);
  for (std::size_t j = 0; j < lifted.size(); ++j) rec.real("F_W" + std::to_string(j + 1), fidelity(lifted[j]));
  rec.real("lambda", sol.lambda);
  const BipartiteState mixture{args.d, reconstruct(dec)};
  rec.real("F_mixture", overlap(mixture.state, StateVector(psi)));
  rec.real("E_qubit", sol.entanglement);
  // Each embedded decomposer carries |z2|^2 ln n on top of its qubit entropy.
  const double closed = objective(dec, mixture.factor());
  std::optional<double> numeric;
  if (args.want_numeric()) {
    OptimizerConfig cfg = args.optimizer();
    cfg.diagonal_class = true;
    numeric = eof(mixture, cfg).value;
  }
  put_values(rec, args, closed, numeric);
  rec.decomposition(dec);
  return rec;
}

void write_output(const Args& args, std::ostream& out, const std::string& text) {
  if (args.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(args.out_path);
  if (!file) fail(ErrorCode::IoError, "cannot write " + args.out_path);
  file << text;
  if (!file) fail(ErrorCode::IoError, "write to " + args.out_path + " failed");
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement with respect to subalgebras: closed forms, numerical minimization, sweeps."};
  app.name(argv.empty() ? "subent" : argv.front());
  app.require_subcommand(1);
  Args args;

  auto* case1 = app.add_subcommand("case1", "qubit state [[a, b], [b*, 1-a]] w.r.t. the diagonal");
  case1->add_option("--a", args.a, "diagonal entry a")->required()->check(CLI::Range(0.0, 1.0));
  case1->add_option("--b-re", args.b_re, "Re b");
  case1->add_option("--b-im", args.b_im, "Im b");
  add_optimizer_flags(case1, args);
  add_output_flags(case1, args);

  auto* symmetric = app.add_subcommand("symmetric", "permutation-invariant state rho_F w.r.t. the diagonal");
  symmetric->add_option("--d", args.d, "dimension")->check(CLI::Range(2, 64));
  symmetric->add_option("--F", args.F, "fidelity with the uniform vector")->required()->check(CLI::Range(0.0, 1.0));
  add_optimizer_flags(symmetric, args);
  add_output_flags(symmetric, args);

  auto* scan = app.add_subcommand("scan", "sweep rho_F over a uniform grid of F");
  scan->add_option("--d", args.d, "dimension")->check(CLI::Range(2, 64));
  scan->add_option("--f-lo", args.f_lo, "first F")->check(CLI::Range(0.0, 1.0));
  scan->add_option("--f-hi", args.f_hi, "last F")->check(CLI::Range(0.0, 1.0));
  scan->add_option("--steps", args.steps, "number of rows")->check(CLI::Range(1, 100000));
  add_optimizer_flags(scan, args);
  add_output_flags(scan, args);

  auto* bifurcate = app.add_subcommand("bifurcate", "locate F* for d = 3 by bisection");
  bifurcate->add_option("--d", args.d, "dimension (3)");
  bifurcate->add_option("--f-lo", args.f_lo, "lower bracket end")->check(CLI::Range(0.0, 1.0));
  bifurcate->add_option("--f-hi", args.f_hi, "upper bracket end")->check(CLI::Range(0.0, 1.0));
  bifurcate->add_option("--tol", args.tol, "bracket width to stop at")->check(CLI::PositiveNumber);
  add_output_flags(bifurcate, args);

  auto* iso = app.add_subcommand("eof-isotropic", "entanglement of formation of isotropic states");
  iso->add_option("--d", args.d, "local dimension")->check(CLI::Range(2, 16));
  iso->add_option("--F", args.F, "fidelity with the maximally entangled vector")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  iso->add_flag("--restricted", args.restricted, "search diagonal-class decomposers only");
  add_optimizer_flags(iso, args);
  add_output_flags(iso, args);

  auto* dbl = app.add_subcommand("double", "compare E(rho; Diagonal) with the eof of its doubling");
  dbl->add_option("--state", args.state_path, "state JSON file (default: rho_F from --d/--F)");
  dbl->add_option("--d", args.d, "dimension")->check(CLI::Range(2, 8));
  dbl->add_option("--F", args.F, "fidelity")->check(CLI::Range(0.0, 1.0));
  dbl->add_flag("--restricted", args.restricted, "search diagonal-class decomposers only");
  add_optimizer_flags(dbl, args);
  add_output_flags(dbl, args);

  auto* emb = app.add_subcommand("embed", "embed the qubit optimal pair into C^d (x) C^d");
  emb->add_option("--d", args.d, "local dimension n + 1")->check(CLI::Range(3, 16));
  emb->add_option("--a", args.a, "qubit diagonal entry a")->check(CLI::Range(0.0, 1.0));
  emb->add_option("--b-re", args.b_re, "Re b");
  emb->add_option("--b-im", args.b_im, "Im b");
  add_optimizer_flags(emb, args);
  add_output_flags(emb, args);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--only", args.only, "criterion numbers to run (default all)");

  std::vector<const char*> raw;
  raw.reserve(argv.size() + 1);
  for (const std::string& a : argv) raw.push_back(a.c_str());
  if (raw.empty()) raw.push_back("subent");
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    std::ostringstream buf;
    if (verify->parsed()) return acceptance::run_suite(out, args.only) ? 0 : 1;
    if (scan->parsed()) {
      emit_scan(cmd_scan(args), output_format(args, Format::Csv), buf);
    } else {
      Record rec;
      if (case1->parsed()) rec = cmd_case1(args);
      if (symmetric->parsed()) rec = cmd_symmetric(args);
      if (bifurcate->parsed()) rec = cmd_bifurcate(args);
      if (iso->parsed()) rec = cmd_eof_isotropic(args);
      if (dbl->parsed()) rec = cmd_double(args);
      if (emb->parsed()) rec = cmd_embed(args);
      rec.write(output_format(args, Format::Text), buf);
    }
    write_output(args, out, buf.str());
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace subent::cli
