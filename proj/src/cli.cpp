#include "wavebranch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include "wavebranch/dispersion.hpp"
#include "wavebranch/error.hpp"
#include "wavebranch/expansion.hpp"
#include "wavebranch/sweeps.hpp"
#include "wavebranch/verify.hpp"

namespace wavebranch::cli {
namespace {

using io::json;

[[noreturn]] void invalid(const std::string& msg) {
  throw Error("cli", ErrorKind::Validation, msg);
}

struct KeyInfo {
  const char* key;
  const char* help;
};

constexpr KeyInfo kKeys[] = {
    {"omega", "vorticity coefficients [c0, c1, ...], increasing degree"},
    {"s", "surface shear of the uniform stream"},
    {"s_list", "list of surface shears [s1, s2, ...]"},
    {"R", "Bernoulli constant"},
    {"L", "half-length of the truncated strip"},
    {"k", "number of eigenvalues"},
    {"steps", "continuation steps"},
    {"damp", "initial Newton step fraction in (0, 1]"},
    {"da", "amplitude increment per continuation step"},
    {"n_samples", "stream profile samples"},
    {"tol_quad", "absolute quadrature tolerance"},
    {"tol_root", "root residual tolerance"},
    {"tol_newton", "Newton residual tolerance"},
    {"n_q", "hodograph grid points per period"},
    {"n_p", "hodograph grid intervals in p"},
    {"n_x", "physical grid intervals in X"},
    {"n_y", "physical grid intervals in the vertical"},
    {"n_interval", "interval spectrum grid size"},
    {"n_tau", "dispersion grid intervals"},
    {"tau_max", "upper end of the dispersion grid"},
    {"wave", "wave file (reconstruct output)"},
    {"branch", "branch file (branch output)"},
    {"point", "branch point index for reconstruct; negative counts from the end"},
    {"out", "directory for report files"},
};

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> t{
      {"stream", Command::Stream},         {"dispersion", Command::Dispersion},
      {"spectrum1d", Command::Spectrum1D}, {"spectrum2d", Command::Spectrum2D},
      {"branch", Command::Branch},         {"expansion", Command::Expansion},
      {"verify", Command::Verify},         {"reconstruct", Command::Reconstruct},
  };
  return t;
}

int to_int(const std::string& v, const char* key) {
  const long x = io::parse_integer(v, key);
  if (x < -1000000 || x > 1000000) invalid(std::string(key) + ": out of range");
  return static_cast<int>(x);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_grid(int n, const char* key, int lo, int hi) {
  if (!power_of_two(n) || n < lo || n > hi)
    invalid(std::string(key) + " must be a power of two in [" + std::to_string(lo) + ", " +
            std::to_string(hi) + "], got " + std::to_string(n));
}

void check_positive(double x, const char* key) {
  if (!(x > 0)) invalid(std::string(key) + " must be positive, got " + io::format_real(x));
}

quad::Tolerance quad_tol(const RunConfig& c) {
  return {.abs = c.tol_quad, .rel = 10 * c.tol_quad, .max_depth = 40};
}

VorticityModel model_of(const RunConfig& c) { return VorticityModel(c.omega); }

StreamSolution stream_of(const RunConfig& c, const VorticityModel& model) {
  if (c.s) return solve_stream(model, *c.s, c.n_samples, quad_tol(c));
  if (c.R) {
    const auto roots = invert_bernoulli(model, bernoulli_curve(model), *c.R, c.tol_root);
    if (!roots.s_plus)
      throw Error("stream", ErrorKind::NoSolution, "no subcritical stream for this R");
    return solve_stream(model, *roots.s_plus, c.n_samples, quad_tol(c));
  }
  invalid(std::string(to_string(c.command)) + " needs s or R");
}

void require_finite(const json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw Error("cli", ErrorKind::NonConvergence, "non-finite value in report at " + where);
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) require_finite(it.value(), where + "." + it.key());
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i)
      require_finite(j[i], where + "[" + std::to_string(i) + "]");
}

void require_finite(const std::vector<std::vector<double>>& rows, const std::string& where) {
  for (const auto& r : rows)
    for (double x : r)
      if (!std::isfinite(x))
        throw Error("cli", ErrorKind::NonConvergence, "non-finite value in " + where);
}

class Reporter {
 public:
  explicit Reporter(const RunConfig& c) : dir_(c.out) {}

  void write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir_);
    io::write_text((std::filesystem::path(dir_) / name).string(), content);
  }
  void write_json(const std::string& name, const json& j) {
    require_finite(j, name);
    write(name, io::dump(j));
  }
  void write_csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    require_finite(rows, name);
    write(name, io::csv(header, rows));
  }

 private:
  std::string dir_;
};

json stream_json(const StreamSolution& st) {
  return {{"s", st.s()}, {"d", st.d()}, {"R", st.R()}, {"F", st.F()}, {"kappa", st.kappa()},
          {"rho0", st.rho0()}};
}

// ---------------------------------------------------------------------------

int cmd_stream(const RunConfig& c, std::ostream& out) {
  const auto model = model_of(c);
  std::vector<double> s_list = c.s_list;
  if (c.s) s_list.insert(s_list.begin(), *c.s);
  if (c.R) {
    const auto roots = invert_bernoulli(model, bernoulli_curve(model), *c.R, c.tol_root);
    if (roots.s_plus) s_list.push_back(*roots.s_plus);
    if (roots.s_minus && (!roots.s_plus || *roots.s_minus != *roots.s_plus))
      s_list.push_back(*roots.s_minus);
  }
  if (s_list.empty()) invalid("stream needs s, s_list or R");
  std::vector<std::vector<double>> rows;
  for (const auto& r : stream_sweep(model, s_list, Exec::Parallel, c.n_samples))
    rows.push_back({r.s, r.d, r.R, r.F, r.kappa, r.rho0});
  const std::vector<std::string> header{"s", "d", "R", "F", "kappa", "rho0"};
  Reporter rep(c);
  rep.write_csv("stream.csv", header, rows);
  out << io::csv(header, rows);
  return 0;
}

int cmd_dispersion(const RunConfig& c, std::ostream& out) {
  const auto model = model_of(c);
  const auto st = stream_of(c, model);
  const auto ts = tau_star(st);
  const double tmax = c.tau_max ? *c.tau_max : (ts.tau_star ? 2 * *ts.tau_star : 5.0);
  std::vector<double> taus(c.n_tau + 1);
  for (int i = 0; i <= c.n_tau; ++i) taus[i] = tmax * i / c.n_tau;
  const auto sig = sigma_sweep(st, taus);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= c.n_tau; ++i) rows.push_back({taus[i], sig[i]});
  const auto id = sigma_zero_identity(st);
  json summary{{"stream", stream_json(st)},
               {"tau_star", ts.tau_star ? json(*ts.tau_star) : json(nullptr)},
               {"Lambda0", ts.Lambda0 ? json(*ts.Lambda0) : json(nullptr)},
               {"sigma0", ts.sigma0},
               {"sigma0_identity",
                {{"direct", id.direct}, {"stated", id.rhs}, {"defect", id.defect}}}};
  Reporter rep(c);
  rep.write_csv("dispersion.csv", {"tau", "sigma"}, rows);
  rep.write_json("dispersion.json", summary);
  out << io::dump(summary);
  return 0;
}

int cmd_spectrum1d(const RunConfig& c, std::ostream& out) {
  const auto model = model_of(c);
  const auto st = stream_of(c, model);
  const auto rep1 = interval_spectrum(st, c.k, c.n_interval);
  json j{{"stream", stream_json(st)}, {"spectrum", io::to_json(rep1)}};
  Reporter rep(c);
  rep.write_json("spectrum1d.json", j);
  json brief = j;
  brief["spectrum"].erase("eigenvectors");
  brief["spectrum"].erase("grid");
  out << io::dump(brief);
  return 0;
}

std::vector<double> stations(const PhysicalWave& w, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = w.L * i / (n - 1);
  return x;
}

json wave_diagnostics(const PhysicalWave& w) {
  const auto S = flow_force(w, stations(w, 8));
  const auto [lo, hi] = std::minmax_element(S.begin(), S.end());
  const auto rc = robin_coefficient(w);
  double rho_defect = 0;
  for (std::size_t i = 0; i < rc.rho.size() && i < w.rho_exact.size(); ++i)
    rho_defect = std::max(rho_defect, std::abs(rc.rho[i] - w.rho_exact[i]));
  return {{"flow_force", S[0]},
          {"flow_force_spread", *hi - *lo},
          {"flow_force_printed", flow_force_printed(w, {0.0})[0]},
          {"psi_x_residual", psi_x_residual(w)},
          {"rho_defect", rho_defect}};
}

int cmd_spectrum2d(const RunConfig& c, std::ostream& out) {
  PhysicalWave w;
  if (!c.wave.empty()) {
    w = io::wave_from_json(json::parse(io::read_text(c.wave)));
  } else {
    const auto model = model_of(c);
    const auto st = stream_of(c, model);
    w = uniform_wave(st, c.L ? *c.L : default_truncation(st), c.n_x, c.n_y);
  }
  const auto sp = physical_spectrum(w, c.k);
  json spec = io::to_json(sp);
  spec.erase("eigenvectors");
  json j{{"L", w.L},
         {"n_x", w.n_x()},
         {"n_y", w.n_y()},
         {"spectrum", spec},
         {"diagnostics", wave_diagnostics(w)}};
  Reporter rep(c);
  rep.write_json("spectrum2d.json", j);
  out << io::dump(j);
  return 0;
}

int cmd_branch(const RunConfig& c, std::ostream& out) {
  if (!c.R) invalid("branch needs R");
  const auto model = model_of(c);
  const auto setup = make_branch_setup(model, *c.R, c.n_q, c.n_p);
  NewtonOptions opt;
  opt.tol = c.tol_newton;
  opt.damping = c.damp;
  auto state = branch_extend(setup, branch_start(setup), c.da, c.steps, opt);
  std::vector<std::vector<double>> rows;
  for (const auto& p : state.points) rows.push_back({p.amplitude, p.lambda, p.Lambda, p.mu0, p.mu1});
  json summary{{"R", setup.R},
               {"tau_star", setup.tau_star},
               {"Lambda0", setup.grid.Lambda0},
               {"points", static_cast<int>(state.points.size())},
               {"stopped", state.stopped},
               {"stop_reason", state.stop_reason}};
  if (state.points.size() >= 3) {
    const auto fit = fit_lambda2(setup, state);
    summary["fit"] = {{"c2", fit.c2}, {"c4", fit.c4}, {"lambda2", fit.lambda2}};
  }
  Reporter rep(c);
  rep.write_json("branch.json", io::to_json(setup, state));
  rep.write_csv("branch.csv", {"amplitude", "lambda", "Lambda", "mu0", "mu1"}, rows);
  rep.write_json("branch_summary.json", summary);
  out << io::dump(summary);
  if (state.stopped) {
    throw Error("continuation", ErrorKind::NonConvergence,
                "branch stopped after " + std::to_string(state.points.size()) +
                    " points: " + state.stop_reason);
  }
  return 0;
}

int cmd_reconstruct(const RunConfig& c, std::ostream& out) {
  if (c.branch.empty()) invalid("reconstruct needs branch");
  const auto b = io::branch_from_json(json::parse(io::read_text(c.branch)));
  const int n = static_cast<int>(b.state.points.size());
  const int i = c.point < 0 ? n + c.point : c.point;
  if (i < 0 || i >= n) invalid("point index out of range");
  const auto w = reconstruct_physical(b.setup, b.state.points[i].field, c.n_x, c.n_y);
  json summary{{"point", i},
               {"amplitude", b.state.points[i].amplitude},
               {"L", w.L},
               {"lambda", w.lambda},
               {"diagnostics", wave_diagnostics(w)}};
  Reporter rep(c);
  rep.write_json("wave.json", io::to_json(w));
  out << io::dump(summary);
  return 0;
}

int cmd_expansion(const RunConfig& c, std::ostream& out) {
  const auto model = model_of(c);
  const auto st = stream_of(c, model);
  const auto ex = expand(st, c.n_interval);
  const auto pb = plug_back(st, ex, {1e-2, 5e-3, 2.5e-3});
  json j{{"stream", stream_json(st)},
         {"tau_star", ex.tau_star},
         {"c1", ex.c1},
         {"lambda2", ex.lambda2},
         {"mu2", ex.mu2},
         {"lambda2_leading", ex.lambda2_leading},
         {"lambda2_corrected", ex.lambda2_corrected},
         {"residual_diagnostics",
          {{"kernel_residual", ex.kernel_residual},
           {"closed_form_defect", ex.closed_form_defect},
           {"solve_residual", ex.solve_residual},
           {"plug_back_t", pb.t},
           {"plug_back_residual", pb.residual},
           {"plug_back_exponent", pb.exponent}}}};
  Reporter rep(c);
  rep.write_json("expansion.json", j);
  out << io::dump(j);
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  std::vector<VorticityModel> models;
  if (c.omega_given)
    models.push_back(model_of(c));
  else
    models = builtin_models();
  const auto report = verify_models(models);
  const json j = verify_json(report);
  Reporter rep(c);
  rep.write_json("verify.json", j);
  for (const auto& ch : report.checks)
    out << (ch.pass ? "PASS " : "FAIL ") << ch.model << " " << ch.name << " "
        << io::format_real(ch.value) << "\n";
  for (const auto& d : report.discrepancies)
    out << "NOTE " << d.model << " " << d.name << " " << io::format_real(d.value) << "\n";
  if (!report.all_pass()) {
    throw Error("verify", ErrorKind::NonConvergence,
                std::to_string(report.failures()) + " invariant(s) failed");
  }
  return 0;
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name.c_str();
  return "?";
}

RunConfig config_from(Command command, const io::KeyValues& kv) {
  RunConfig c;
  c.command = command;
  for (const auto& [key, v] : kv) {
    if (key == "omega") {
      c.omega = io::parse_list(v, key);
      c.omega_given = true;
    } else if (key == "s") c.s = io::parse_real(v, key);
    else if (key == "s_list") c.s_list = io::parse_list(v, key);
    else if (key == "R") c.R = io::parse_real(v, key);
    else if (key == "L") c.L = io::parse_real(v, key);
    else if (key == "k") c.k = to_int(v, "k");
    else if (key == "steps") c.steps = to_int(v, "steps");
    else if (key == "damp") c.damp = io::parse_real(v, key);
    else if (key == "da") c.da = io::parse_real(v, key);
    else if (key == "n_samples") c.n_samples = to_int(v, "n_samples");
    else if (key == "tol_quad") c.tol_quad = io::parse_real(v, key);
    else if (key == "tol_root") c.tol_root = io::parse_real(v, key);
    else if (key == "tol_newton") c.tol_newton = io::parse_real(v, key);
    else if (key == "n_q") c.n_q = to_int(v, "n_q");
    else if (key == "n_p") c.n_p = to_int(v, "n_p");
    else if (key == "n_x") c.n_x = to_int(v, "n_x");
    else if (key == "n_y") c.n_y = to_int(v, "n_y");
    else if (key == "n_interval") c.n_interval = to_int(v, "n_interval");
    else if (key == "n_tau") c.n_tau = to_int(v, "n_tau");
    else if (key == "tau_max") c.tau_max = io::parse_real(v, key);
    else if (key == "wave") c.wave = v;
    else if (key == "branch") c.branch = v;
    else if (key == "point") c.point = to_int(v, "point");
    else if (key == "out") c.out = v;
    else invalid("unknown config key '" + key + "'");
  }
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  if (c.omega.empty()) invalid("omega must have at least one coefficient");
  if (static_cast<int>(c.omega.size()) > VorticityModel::kMaxDegree + 1)
    invalid("omega has degree above " + std::to_string(VorticityModel::kMaxDegree));
  check_positive(c.tol_quad, "tol_quad");
  check_positive(c.tol_root, "tol_root");
  check_positive(c.tol_newton, "tol_newton");
  check_grid(c.n_q, "n_q", 16, 1024);
  check_grid(c.n_p, "n_p", 16, 1024);
  check_grid(c.n_x, "n_x", 16, 1024);
  check_grid(c.n_y, "n_y", 16, 1024);
  check_grid(c.n_interval, "n_interval", 16, 65536);
  if (c.n_samples < 16 || c.n_samples > 1 << 20) invalid("n_samples must be in [16, 2^20]");
  if (c.n_tau < 2 || c.n_tau > 100000) invalid("n_tau must be in [2, 100000]");
  if (c.k < 1 || c.k > 64) invalid("k must be in [1, 64]");
  if (c.steps < 1 || c.steps > 1000) invalid("steps must be in [1, 1000]");
  if (!(c.damp > 0 && c.damp <= 1)) invalid("damp must be in (0, 1]");
  check_positive(c.da, "da");
  if (c.s) check_positive(*c.s, "s");
  for (double s : c.s_list) check_positive(s, "s_list entry");
  if (c.L) check_positive(*c.L, "L");
  if (c.tau_max) check_positive(*c.tau_max, "tau_max");
  if (c.out.empty()) invalid("out must not be empty");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    switch (c.command) {
      case Command::Stream: return cmd_stream(c, out);
      case Command::Dispersion: return cmd_dispersion(c, out);
      case Command::Spectrum1D: return cmd_spectrum1d(c, out);
      case Command::Spectrum2D: return cmd_spectrum2d(c, out);
      case Command::Branch: return cmd_branch(c, out);
      case Command::Expansion: return cmd_expansion(c, out);
      case Command::Verify: return cmd_verify(c, out);
      case Command::Reconstruct: return cmd_reconstruct(c, out);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    if (e.kind() == ErrorKind::Validation) return 1;
    try {
      Reporter(c).write_json("error.json", json{{"error", e.name()}, {"message", e.what()}});
    } catch (...) {
    }
    return 2;
  } catch (const json::exception& e) {
    err << "error: cli.validation: malformed input file: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"wavebranch: uniform streams, dispersion, spectra and small-amplitude branches"};
  app.require_subcommand(1);
  std::map<std::string, std::string> given;
  std::string config_file;
  for (const auto& [name, cmd] : command_table()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "flat key = value config file");
    for (const auto& k : kKeys) sub->add_option(std::string("--") + k.key, given[k.key], k.help);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  Command command = Command::Verify;
  std::string command_name;
  for (auto* sub : app.get_subcommands()) command_name = sub->get_name();
  command = command_table().at(command_name);

  io::KeyValues kv;
  try {
    if (!config_file.empty()) kv = io::read_key_values(config_file);
    for (auto* sub : app.get_subcommands())
      for (const auto& k : kKeys)
        if (sub->count(std::string("--") + k.key) > 0) kv[k.key] = given[k.key];
    const auto c = config_from(command, kv);
    return run(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? 1 : 2;
  }
}

}  // namespace wavebranch::cli
