#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmlkit {

/// Runs one verb; returns 0, 1 on domain errors, 2 on parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckLine {
  std::string name;
  long passed = 0;
  long failed = 0;
  std::vector<std::string> failures;  // first few only
  bool ok() const { return failed == 0 && passed > 0; }
  std::string str() const;
};

/// Ratio rows and arc rows against the golden files in data_dir.
CheckLine check_ratio_table(const std::string& data_dir, int max_period);
CheckLine check_arc_tables(const std::string& data_dir);

/// I^abar(theta) is among the rewrites of I^alpha(theta), theta = j/(2^k-1).
CheckLine sweep_oracle(int max_period, int max_k);

/// phi twice is the identity on classes, and phi commutes with the shift.
CheckLine sweep_involution(int max_period, int samples, std::uint64_t seed);
CheckLine sweep_shift(int max_period, int samples, std::uint64_t seed);

/// Graph route against the direct route, as class maps.
CheckLine sweep_graph_agreement(int max_period, int max_pre, int max_per);

std::string default_data_dir();

}  // namespace qmlkit
