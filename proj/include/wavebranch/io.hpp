#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wavebranch/continuation.hpp"
#include "wavebranch/physical.hpp"
#include "wavebranch/spectra.hpp"

namespace wavebranch::io {

using json = nlohmann::ordered_json;

/// Flat `key = value` text; `#` starts a comment. Arrays are `[a, b, ...]`.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::string& path);

double parse_real(std::string_view text, std::string_view key);
long parse_integer(std::string_view text, std::string_view key);
std::vector<double> parse_list(std::string_view text, std::string_view key);

/// 17 significant digits; both zeros print as 0, non-finite values as nan/inf.
std::string format_real(double x);

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows);

/// Serialises with every float at 17 significant digits and non-finite floats as null.
std::string dump(const json& j);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

json to_json(const SpectrumReport& r);

// Branch file: setup parameters plus every point; h arrays are row-major (M + 1) x (N + 1).
json to_json(const BranchSetup& setup, const BranchState& state);
struct LoadedBranch {
  BranchSetup setup;
  BranchState state;
};
LoadedBranch branch_from_json(const json& j);

// Wave file: stream-limit parameters plus grid arrays; 2D arrays row-major (n_x + 1) x (n_y + 1).
json to_json(const PhysicalWave& w);
PhysicalWave wave_from_json(const json& j);

}  // namespace wavebranch::io
