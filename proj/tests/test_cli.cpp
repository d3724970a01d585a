#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "wavebranch/cli.hpp"
#include "wavebranch/io.hpp"

using namespace wavebranch;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "wavebranch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("wavebranch_cli_test_" + name);
  fs::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("stream --s 2 gives R = 2.5 and F = 2 sqrt 2") {
  const auto dir = scratch("stream");
  const auto r = call({"stream", "--s", "2", "--out", dir});
  CHECK(r.code == 0);
  CHECK(r.out.find("2,0.50000000000000022,2.5,2.828427124746189") != std::string::npos);
  CHECK(io::read_text(dir + "/stream.csv") == r.out);
}

TEST_CASE("negative tolerance is a validation failure") {
  const auto r = call({"stream", "--s", "2", "--tol_quad", "-1e-9"});
  CHECK(r.code == 1);
  CHECK(r.err.find("tol_quad must be positive") != std::string::npos);
}

TEST_CASE("config file with command-line override") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  io::write_text(dir + "/run.cfg", "omega = [0]\ns = 3\nn_samples = 256\n");
  const auto r = call({"stream", "--config", dir + "/run.cfg", "--s", "2", "--out", dir});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n2,") != std::string::npos);
  io::write_text(dir + "/bad.cfg", "colour = blue\n");
  CHECK(call({"stream", "--config", dir + "/bad.cfg"}).code == 1);
}

TEST_CASE("grid sizes must be powers of two") {
  CHECK(call({"branch", "--R", "1.51", "--n_q", "48"}).code == 1);
  CHECK(call({"branch", "--R", "1.51", "--n_p", "2048"}).code == 1);
}

TEST_CASE("numerical failure exits 2 with the module error name") {
  const auto dir = scratch("fail");
  const auto r = call({"stream", "--R", "1.0", "--out", dir});
  CHECK(r.code == 2);
  CHECK(r.err.find("stream.no_solution") != std::string::npos);
  CHECK(io::read_text(dir + "/error.json").find("stream.no_solution") != std::string::npos);
}

TEST_CASE("verify with zero vorticity passes") {
  const auto dir = scratch("verify");
  const auto r = call({"verify", "--omega", "[0]", "--out", dir});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("NOTE omega = [0] froude_printed_exponent") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical reports") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(call({"branch", "--R", "1.51", "--steps", "2", "--n_q", "16", "--n_p", "16", "--out", dir}).code == 0);
    REQUIRE(call({"dispersion", "--s", "0.5", "--n_tau", "50", "--out", dir}).code == 0);
  }
  for (const char* f : {"branch.json", "branch.csv", "dispersion.csv", "dispersion.json"})
    CHECK(io::read_text(a + "/" + f) == io::read_text(b + "/" + f));
}

TEST_CASE("branch, reconstruct and spectrum2d chain through files") {
  const auto dir = scratch("chain");
  REQUIRE(call({"branch", "--R", "1.52", "--steps", "3", "--da", "0.01", "--out", dir}).code == 0);
  REQUIRE(call({"reconstruct", "--branch", dir + "/branch.json", "--out", dir}).code == 0);
  const auto r = call({"spectrum2d", "--wave", dir + "/wave.json", "--k", "2", "--out", dir});
  CHECK(r.code == 0);
  const auto j = io::json::parse(io::read_text(dir + "/spectrum2d.json"));
  CHECK(j["spectrum"]["negative_count"].get<int>() == 1);
  CHECK(j["diagnostics"]["flow_force_spread"].get<double>() <= 1e-5 * j["diagnostics"]["flow_force"].get<double>());
}

TEST_CASE("expansion report fields") {
  const auto dir = scratch("expansion");
  const auto r = call({"expansion", "--R", "1.51", "--out", dir});
  REQUIRE(r.code == 0);
  const auto j = io::json::parse(io::read_text(dir + "/expansion.json"));
  for (const char* k : {"tau_star", "c1", "lambda2", "mu2", "residual_diagnostics"}) CHECK(j.contains(k));
  CHECK(j["lambda2"].get<double>() < 0);
}

TEST_CASE("missing inputs are validation failures") {
  CHECK(call({"branch"}).code == 1);
  CHECK(call({"reconstruct"}).code == 1);
  CHECK(call({"dispersion"}).code == 1);
  CHECK(call({"spectrum2d", "--wave", "/nonexistent/wave.json"}).code == 1);
  CHECK(call({}).code == 1);
}
