#include <doctest.h>

#include <cmath>

#include "wavebranch/error.hpp"
#include "wavebranch/io.hpp"

using namespace wavebranch;

TEST_CASE("key-value parsing") {
  const auto kv = io::parse_key_values("# comment\nomega = [1, -2]  # trailing\n\n s=2\nout = dir/x\n");
  CHECK(kv.size() == 3);
  CHECK(kv.at("s") == "2");
  CHECK(io::parse_list(kv.at("omega"), "omega") == std::vector<double>{1.0, -2.0});
  CHECK(io::parse_list("[]", "x").empty());
  CHECK_THROWS_AS(io::parse_key_values("just words"), Error);
  CHECK_THROWS_AS(io::parse_list("1, 2", "x"), Error);
  CHECK_THROWS_AS(io::parse_list("[1, two]", "x"), Error);
  CHECK_THROWS_AS(io::parse_real("1.5x", "x"), Error);
  CHECK_THROWS_AS(io::parse_integer("2.5", "x"), Error);
}

TEST_CASE("17 significant digits round-trip") {
  for (double x : {M_PI, 1.0 / 3.0, 2.5, -1e-300, 6.02214076e23}) {
    const auto s = io::format_real(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::csv({"a", "b"}, {{1.0, 0.5}}) == "a,b\n1,0.5\n");
}

TEST_CASE("json dump prints floats at 17 digits and integers plainly") {
  io::json j{{"x", 0.1}, {"n", 3}, {"flag", true}, {"v", {1.5, 2.0}}, {"s", "a\"b"}};
  CHECK(io::dump(j) == "{\"x\":0.10000000000000001,\"n\":3,\"flag\":true,\"v\":[1.5,2],\"s\":\"a\\\"b\"}\n");
  io::json bad{{"x", NAN}};
  CHECK(io::dump(bad) == "{\"x\":null}\n");
}

TEST_CASE("wave and branch files round-trip") {
  const auto m = VorticityModel::zero();
  const auto setup = make_branch_setup(m, bernoulli_curve(m).R_c + 0.01, 16, 16);
  const auto state = branch_extend(setup, branch_start(setup), 1e-3, 2, {}, false);
  const auto text = io::dump(io::to_json(setup, state));
  const auto back = io::branch_from_json(io::json::parse(text));
  CHECK(io::dump(io::to_json(back.setup, back.state)) == text);
  CHECK(back.state.points.back().field.h == state.points.back().field.h);

  const auto w = reconstruct_physical(setup, state.points.back().field, 16, 16);
  const auto wt = io::dump(io::to_json(w));
  const auto w2 = io::wave_from_json(io::json::parse(wt));
  CHECK(io::dump(io::to_json(w2)) == wt);
  CHECK(w2.psi == w.psi);

  auto broken = io::json::parse(wt);
  broken["psi"]["rows"] = 3;
  CHECK_THROWS_AS(io::wave_from_json(broken), Error);
}
