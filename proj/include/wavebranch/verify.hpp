#pragma once

#include <string>
#include <vector>

#include "wavebranch/io.hpp"
#include "wavebranch/vorticity.hpp"

namespace wavebranch {

/// The vorticities 0, 1 - 2p, 0.3p and -0.5.
std::vector<VorticityModel> builtin_models();

struct InvariantCheck {
  std::string model, name;
  double value = 0.0;      // measured quantity
  double tolerance = 0.0;  // bound the quantity is compared with
  bool pass = false;
};

/// A reported, not asserted, mismatch between two stated forms of one quantity.
struct Discrepancy {
  std::string model, name;
  double value = 0.0;
  std::string note;
};

struct VerifyReport {
  std::vector<InvariantCheck> checks;
  std::vector<Discrepancy> discrepancies;
  int failures() const;
  bool all_pass() const { return failures() == 0; }
};

VerifyReport verify_models(const std::vector<VorticityModel>& models);

io::json verify_json(const VerifyReport& r);

}  // namespace wavebranch
