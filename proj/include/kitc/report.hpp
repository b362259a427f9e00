#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kitc {

/// One treecode run. Field names match the CSV columns.
struct RunReport {
  int example = 0;
  std::string kernel;
  std::size_t N = 0;
  double theta = 0.0;
  int n = 0;
  std::size_t N0 = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;
  double E = 0.0;
  double t_tree_s = 0.0;
  double t_moments_s = 0.0;
  double t_treecode_s = 0.0;  // tree + moments + traversal
  double t_direct_s = 0.0;
  double speedup = 0.0;
  std::uint64_t kernel_evals = 0;
  std::uint64_t moment_scalars = 0;
  bool sampled = false;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Column order of the CSV schema.
const std::vector<std::string>& report_columns();

std::string csv_header();
std::string to_csv_row(const RunReport& r);
/// Throws std::invalid_argument on a malformed row.
RunReport from_csv_row(const std::string& row);

std::string to_json(const RunReport& r);
std::string to_json(const std::vector<RunReport>& reports);
/// Accepts a single object. Throws std::invalid_argument on bad input.
RunReport from_json(const std::string& text);

}  // namespace kitc
