#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wavebranch/io.hpp"

namespace wavebranch::cli {

enum class Command { Stream, Dispersion, Spectrum1D, Spectrum2D, Branch, Expansion, Verify, Reconstruct };

const char* to_string(Command c);

struct RunConfig {
  Command command = Command::Verify;
  std::vector<double> omega{0.0};
  bool omega_given = false;  // verify: explicit omega replaces the built-in matrix
  std::optional<double> s, R, L;
  std::vector<double> s_list;
  int k = 4;
  int steps = 5;
  double damp = 1.0;
  double da = 1e-3;  // amplitude increment per branch step
  int n_samples = 512;
  double tol_quad = 1e-14;
  double tol_root = 1e-12;
  double tol_newton = 1e-10;
  int n_q = 64, n_p = 64, n_x = 64, n_y = 64;
  int n_interval = 2048;
  int n_tau = 200;
  std::optional<double> tau_max;
  std::string wave, branch;
  int point = -1;  // branch point for reconstruct; negative counts from the end
  std::string out = ".";
};

/// Builds a config from key-value pairs; unknown keys and out-of-range values throw
/// an Error of kind Validation.
RunConfig config_from(Command command, const io::KeyValues& kv);

void validate(const RunConfig& c);

/// Executes the pipeline. Report files go to `c.out`; a summary goes to `out`.
/// Returns 0 on success, 1 on validation failure, 2 on numerical failure.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command-line entry: `wavebranch <command> [--config FILE] [--key value ...]`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wavebranch::cli
