#pragma once

// Batch evaluation over grids, random samples and rays, with CSV / JSON export.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptdomain/chain_model.hpp"
#include "ptdomain/criteria.hpp"
#include "ptdomain/geometry.hpp"

namespace ptdomain {

enum class ScanMode { Criteria, Oracle, Both };
enum class OutputFormat { Csv, Json };

ScanMode parse_scan_mode(const std::string& text);
OutputFormat parse_output_format(const std::string& text);
std::string to_string(ScanMode mode);
std::string to_string(OutputFormat format);

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;  // 1 pins the axis at `min`

  double at(int i) const noexcept;
};

/// "lo:hi:steps" or a single value "x" (one step).
AxisRange parse_axis_range(const std::string& text);

struct ScanConfig {
  int dimension = 2;
  std::vector<AxisRange> grid;             // one range per coupling
  std::vector<std::vector<double>> rays;   // boundary campaigns
  ScanMode mode = ScanMode::Both;
  double epsilon = 1e-9;
  std::string output;                      // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 0;
  int random_points = 0;                   // > 0 replaces the grid by box samples
  int threads = 1;
  bool spectrum = false;
  double tolerance = 1e-10;                // boundary bisection width
};

/// Throws InvalidInput when the config is not usable.
void validate(const ScanConfig& config);

/// Reads the JSON mirror of ScanConfig on top of `base`; throws InvalidInput.
ScanConfig config_from_json(const nlohmann::json& doc, ScanConfig base = {});

struct ScanRecord {
  std::size_t index = 0;
  int dimension = 0;
  std::vector<double> couplings;
  std::string verdict;         // criteria verdict, or the oracle's in oracle mode
  double margin = 0.0;
  std::string witness;
  std::string oracle_verdict;  // empty unless the oracle ran
  bool mismatch = false;
  std::optional<double> min_root;
  std::optional<double> min_root_gap;
};

/// Classifies one point according to the mode.
ScanRecord evaluate_point(const CouplingVector& couplings, ScanMode mode, const Tolerance& tol, bool spectrum);

/// The grid points (or seeded box samples) of a config, in record order.
std::vector<CouplingVector> scan_points(const ScanConfig& config);

/// Uniform samples g_k^2 = 1.2 (N-k) k m / 2^20 with integer m.
std::vector<CouplingVector> random_box_points(int dimension, int count, std::uint64_t seed);

/// Evaluates every point with a static partition over `threads` workers;
/// the result is ordered by point index.
std::vector<ScanRecord> run_scan(const ScanConfig& config);

struct BoundaryRecord {
  std::size_t index = 0;
  int dimension = 0;
  std::vector<double> direction;
  std::optional<BoundaryPoint> point;
  std::string error;
};

std::vector<BoundaryRecord> run_boundary(const ScanConfig& config);

/// Evenly spread unit directions in the positive orthant (J = 1, 2) or
/// seeded random positive directions (J >= 3).
std::vector<std::vector<double>> positive_rays(int dimension, int count, std::uint64_t seed);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);
/// Shortest round-trip decimal form.
std::string format_number(double value);

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records);
void write_json(std::ostream& out, const std::vector<ScanRecord>& records);
void write_csv(std::ostream& out, const std::vector<BoundaryRecord>& records);
void write_json(std::ostream& out, const std::vector<BoundaryRecord>& records);

nlohmann::json to_json(const ScanRecord& record);
nlohmann::json to_json(const BoundaryRecord& record);

}  // namespace ptdomain
