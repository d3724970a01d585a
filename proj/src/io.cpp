#include "wavebranch/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wavebranch/error.hpp"

namespace wavebranch::io {
namespace {

[[noreturn]] void invalid(const std::string& msg) {
  throw Error("cli", ErrorKind::Validation, msg);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json matrix_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Eigen::MatrixXd matrix_from(const json& j) {
  const int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
  const auto& d = j.at("data");
  if (static_cast<int>(d.size()) != r * c) invalid("matrix data size mismatch");
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = d[i * c + k].get<double>();
  return m;
}

std::vector<double> vec(const json& j) { return j.get<std::vector<double>>(); }

void dump_into(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_real(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      invalid("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(l.substr(0, eq));
    const auto val = trim(l.substr(eq + 1));
    if (key.empty()) invalid("config line " + std::to_string(lineno) + ": empty key");
    kv[std::string(key)] = std::string(val);
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) { return parse_key_values(read_text(path)); }

double parse_real(std::string_view text, std::string_view key) {
  text = trim(text);
  double x = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || p != text.data() + text.size() || !std::isfinite(x))
    invalid(std::string(key) + ": not a real number: '" + std::string(text) + "'");
  return x;
}

long parse_integer(std::string_view text, std::string_view key) {
  text = trim(text);
  long x = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || p != text.data() + text.size())
    invalid(std::string(key) + ": not an integer: '" + std::string(text) + "'");
  return x;
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    invalid(std::string(key) + ": expected a bracketed list [a, b, ...]");
  text = trim(text.substr(1, text.size() - 2));
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto c = text.find(',', start);
    out.push_back(parse_real(text.substr(start, c == std::string_view::npos ? c : c - start), key));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

std::string format_real(double x) {
  if (x == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_real(r[i]);
    out += '\n';
  }
  return out;
}

std::string dump(const json& j) {
  std::string out;
  dump_into(j, out);
  out += '\n';
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) invalid("cannot open '" + path + "' for writing");
  f << content;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) invalid("cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json to_json(const SpectrumReport& r) {
  json j;
  j["problem_tag"] = to_string(r.problem_tag);
  j["eigenvalues"] = r.eigenvalues;
  j["residuals"] = r.residuals;
  j["negative_count"] = r.negative_count;
  j["nu0_reference"] = r.nu0_reference ? json(*r.nu0_reference) : json(nullptr);
  j["grid_points"] = r.grid_points;
  j["truncation_warning"] = r.truncation_warning;
  if (!r.grid.empty()) j["grid"] = r.grid;
  j["eigenvectors"] = r.eigenvectors;
  return j;
}

json to_json(const BranchSetup& setup, const BranchState& state) {
  json j;
  j["omega"] = setup.model.coeffs();
  j["R"] = setup.R;
  j["s"] = setup.stream.s();
  j["n_q"] = setup.grid.n_q;
  j["n_p"] = setup.grid.N;
  j["tau_star"] = setup.tau_star;
  j["tau_star_h"] = setup.tau_star_h;
  j["Lambda0"] = setup.grid.Lambda0;
  j["stopped"] = state.stopped;
  j["stop_reason"] = state.stop_reason;
  json pts = json::array();
  for (const auto& p : state.points) {
    json q;
    q["amplitude"] = p.amplitude;
    q["lambda"] = p.lambda;
    q["Lambda"] = p.Lambda;
    q["mu0"] = p.mu0;
    q["mu1"] = p.mu1;
    q["spectrum_done"] = p.spectrum_done;
    q["status"] = p.status;
    q["iterations"] = p.field.iterations;
    q["final_residual"] = p.field.final_residual;
    q["residual_history"] = p.field.residual_history;
    q["h"] = matrix_json(p.field.h);
    pts.push_back(q);
  }
  j["points"] = pts;
  return j;
}

LoadedBranch branch_from_json(const json& j) {
  try {
    LoadedBranch b;
    const VorticityModel model(vec(j.at("omega")));
    b.setup = make_branch_setup(model, j.at("R").get<double>(), j.at("n_q").get<int>(),
                                j.at("n_p").get<int>());
    b.state.stopped = j.at("stopped").get<bool>();
    b.state.stop_reason = j.at("stop_reason").get<std::string>();
    for (const auto& q : j.at("points")) {
      BranchPoint p;
      p.amplitude = q.at("amplitude").get<double>();
      p.lambda = q.at("lambda").get<double>();
      p.Lambda = q.at("Lambda").get<double>();
      p.mu0 = q.at("mu0").is_null() ? NAN : q.at("mu0").get<double>();
      p.mu1 = q.at("mu1").is_null() ? NAN : q.at("mu1").get<double>();
      p.spectrum_done = q.at("spectrum_done").get<bool>();
      p.status = q.at("status").get<std::string>();
      p.field.h = matrix_from(q.at("h"));
      p.field.lambda = p.lambda;
      p.field.R = b.setup.R;
      p.field.amplitude = p.amplitude;
      p.field.iterations = q.at("iterations").get<int>();
      p.field.final_residual = q.at("final_residual").get<double>();
      p.field.residual_history = vec(q.at("residual_history"));
      if (p.field.h.rows() != b.setup.grid.M + 1 || p.field.h.cols() != b.setup.grid.N + 1)
        invalid("branch file: h has the wrong shape for n_q, n_p");
      b.state.points.push_back(std::move(p));
    }
    return b;
  } catch (const json::exception& e) {
    invalid(std::string("branch file: ") + e.what());
  }
}

json to_json(const PhysicalWave& w) {
  json j;
  j["omega"] = w.model().coeffs();
  j["s"] = w.stream_limit.s();
  j["R"] = w.R;
  j["lambda"] = w.lambda;
  j["L"] = w.L;
  j["periodic"] = w.periodic;
  j["n_x"] = w.n_x();
  j["n_y"] = w.n_y();
  j["X"] = w.X;
  j["eta"] = w.eta;
  j["xi"] = w.xi;
  j["xi_x"] = w.xi_x;
  j["rho_exact"] = w.rho_exact;
  j["psi"] = matrix_json(w.psi);
  j["psi_X"] = matrix_json(w.psi_X);
  j["psi_Y"] = matrix_json(w.psi_Y);
  j["psi_XY"] = matrix_json(w.psi_XY);
  j["psi_YY"] = matrix_json(w.psi_YY);
  return j;
}

PhysicalWave wave_from_json(const json& j) {
  try {
    PhysicalWave w;
    const VorticityModel model(vec(j.at("omega")));
    w.stream_limit = solve_stream(model, j.at("s").get<double>());
    w.R = j.at("R").get<double>();
    w.lambda = j.at("lambda").get<double>();
    w.L = j.at("L").get<double>();
    w.periodic = j.at("periodic").get<bool>();
    w.X = vec(j.at("X"));
    w.eta = vec(j.at("eta"));
    w.xi = vec(j.at("xi"));
    w.xi_x = vec(j.at("xi_x"));
    w.rho_exact = vec(j.at("rho_exact"));
    w.psi = matrix_from(j.at("psi"));
    w.psi_X = matrix_from(j.at("psi_X"));
    w.psi_Y = matrix_from(j.at("psi_Y"));
    w.psi_XY = matrix_from(j.at("psi_XY"));
    w.psi_YY = matrix_from(j.at("psi_YY"));
    const auto nx = static_cast<long>(w.X.size()), ny = static_cast<long>(w.eta.size());
    for (const auto* m : {&w.psi, &w.psi_X, &w.psi_Y, &w.psi_XY, &w.psi_YY})
      if (m->rows() != nx || m->cols() != ny) invalid("wave file: field shape mismatch");
    if (static_cast<long>(w.xi.size()) != nx || static_cast<long>(w.xi_x.size()) != nx)
      invalid("wave file: surface arrays have the wrong length");
    return w;
  } catch (const json::exception& e) {
    invalid(std::string("wave file: ") + e.what());
  }
}

}  // namespace wavebranch::io
