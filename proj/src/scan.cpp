#include "ptdomain/scan.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "ptdomain/errors.hpp"
#include "ptdomain/oracle.hpp"

namespace ptdomain {

ScanMode parse_scan_mode(const std::string& text) {
  if (text == "criteria") return ScanMode::Criteria;
  if (text == "oracle") return ScanMode::Oracle;
  if (text == "both") return ScanMode::Both;
  throw InvalidInput("unknown mode '" + text + "' (criteria, oracle, both)");
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw InvalidInput("unknown format '" + text + "' (csv, json)");
}

std::string to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::Criteria:
      return "criteria";
    case ScanMode::Oracle:
      return "oracle";
    case ScanMode::Both:
      return "both";
  }
  return "?";
}

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

double AxisRange::at(int i) const noexcept {
  if (steps <= 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw InvalidInput("not a finite number: '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

AxisRange parse_axis_range(const std::string& text) {
  const auto parts = split(text, ':');
  AxisRange range;
  if (parts.size() == 1) {
    range.min = range.max = parse_double(parts[0]);
    range.steps = 1;
    return range;
  }
  if (parts.size() != 3) throw InvalidInput("range must be lo:hi:steps, got '" + text + "'");
  range.min = parse_double(parts[0]);
  range.max = parse_double(parts[1]);
  const double steps = parse_double(parts[2]);
  if (steps != std::floor(steps) || steps < 1 || steps > 1e8) {
    throw InvalidInput("steps must be a positive integer in '" + text + "'");
  }
  range.steps = static_cast<int>(steps);
  if (range.min > range.max) throw InvalidInput("range minimum exceeds maximum in '" + text + "'");
  return range;
}

void validate(const ScanConfig& config) {
  require_supported_dimension(config.dimension);
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) throw InvalidInput("epsilon must be positive");
  if (config.threads < 1) throw InvalidInput("threads must be at least 1");
  if (config.random_points < 0) throw InvalidInput("random point count must be non-negative");
  if (!(config.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  const auto half = static_cast<std::size_t>(config.dimension / 2);
  if (config.random_points == 0 && config.rays.empty() && config.grid.size() != half) {
    throw InvalidInput("grid needs " + std::to_string(half) + " axis ranges, got " + std::to_string(config.grid.size()));
  }
  for (const auto& axis : config.grid) {
    if (axis.steps < 1) throw InvalidInput("steps must be at least 1");
    if (axis.min > axis.max) throw InvalidInput("axis minimum exceeds maximum");
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) throw InvalidInput("axis bounds must be finite");
  }
  for (const auto& ray : config.rays) {
    if (ray.size() != half) throw InvalidInput("ray needs " + std::to_string(half) + " components");
  }
}

ScanConfig config_from_json(const nlohmann::json& doc, ScanConfig base) {
  try {
    if (!doc.is_object()) throw InvalidInput("config must be a JSON object");
    if (doc.contains("N")) base.dimension = doc.at("N").get<int>();
    if (doc.contains("grid")) {
      base.grid.clear();
      for (const auto& axis : doc.at("grid")) {
        AxisRange r;
        r.min = axis.at("min").get<double>();
        r.max = axis.at("max").get<double>();
        r.steps = axis.value("steps", 1);
        base.grid.push_back(r);
      }
    }
    if (doc.contains("rays")) base.rays = doc.at("rays").get<std::vector<std::vector<double>>>();
    if (doc.contains("mode")) base.mode = parse_scan_mode(doc.at("mode").get<std::string>());
    if (doc.contains("epsilon")) base.epsilon = doc.at("epsilon").get<double>();
    if (doc.contains("output")) {
      const auto& out = doc.at("output");
      if (out.is_string()) {
        base.output = out.get<std::string>();
      } else {
        if (out.contains("path")) base.output = out.at("path").get<std::string>();
        if (out.contains("format")) base.format = parse_output_format(out.at("format").get<std::string>());
      }
    }
    if (doc.contains("format")) base.format = parse_output_format(doc.at("format").get<std::string>());
    if (doc.contains("seed")) base.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("random_points")) base.random_points = doc.at("random_points").get<int>();
    if (doc.contains("threads")) base.threads = doc.at("threads").get<int>();
    if (doc.contains("spectrum")) base.spectrum = doc.at("spectrum").get<bool>();
    if (doc.contains("tolerance")) base.tolerance = doc.at("tolerance").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad config: ") + e.what());
  }
  return base;
}

ScanRecord evaluate_point(const CouplingVector& couplings, ScanMode mode, const Tolerance& tol, bool spectrum) {
  ScanRecord record;
  record.dimension = couplings.dimension();
  record.couplings = couplings.couplings();
  std::optional<Verdict> criteria;
  std::optional<Verdict> oracle;
  if (mode != ScanMode::Oracle) criteria = dispatch(couplings, tol);
  if (mode != ScanMode::Criteria) oracle = oracle_verdict(couplings);

  const Verdict& primary = criteria ? *criteria : *oracle;
  record.verdict = std::string(to_string(primary.state));
  record.margin = primary.margin;
  record.witness = primary.witness;
  if (oracle) record.oracle_verdict = std::string(to_string(oracle->state));
  if (criteria && oracle) {
    record.mismatch = criteria->state != Membership::BoundaryBand && criteria->state != oracle->state;
  }
  if (spectrum) {
    const auto report = numeric_spectrum(couplings);
    record.min_root = report.min_root;
    record.min_root_gap = report.min_root_gap;
  }
  return record;
}

std::vector<CouplingVector> random_box_points(int dimension, int count, std::uint64_t seed) {
  require_supported_dimension(dimension);
  std::mt19937_64 rng(seed);
  constexpr std::int64_t kSteps = std::int64_t{1} << 20;
  std::uniform_int_distribution<std::int64_t> dist(0, kSteps);
  std::vector<CouplingVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> squares;
    for (int k = 1; k <= dimension / 2; ++k) {
      const Rational bound = Rational(6 * (dimension - k) * k) / 5;
      squares.push_back(bound * Rational(static_cast<long>(dist(rng))) / Rational(static_cast<long>(kSteps)));
    }
    out.push_back(CouplingVector::from_squares(dimension, std::move(squares)));
  }
  return out;
}

std::vector<CouplingVector> scan_points(const ScanConfig& config) {
  validate(config);
  if (config.random_points > 0) return random_box_points(config.dimension, config.random_points, config.seed);
  std::size_t total = 1;
  for (const auto& axis : config.grid) total *= static_cast<std::size_t>(axis.steps);
  std::vector<CouplingVector> out;
  out.reserve(total);
  std::vector<int> index(config.grid.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    // Last axis varies fastest.
    std::size_t rest = n;
    for (std::size_t a = config.grid.size(); a-- > 0;) {
      const auto steps = static_cast<std::size_t>(config.grid[a].steps);
      index[a] = static_cast<int>(rest % steps);
      rest /= steps;
    }
    std::vector<double> g;
    for (std::size_t a = 0; a < config.grid.size(); ++a) g.push_back(config.grid[a].at(index[a]));
    out.push_back(CouplingVector::from_couplings(config.dimension, g));
  }
  return out;
}

std::vector<ScanRecord> run_scan(const ScanConfig& config) {
  const auto points = scan_points(config);
  std::vector<ScanRecord> records(points.size());
  const Tolerance tol{config.epsilon};
  parallel_for(points.size(), config.threads, [&](std::size_t i) {
    records[i] = evaluate_point(points[i], config.mode, tol, config.spectrum);
    records[i].index = i;
  });
  return records;
}

std::vector<std::vector<double>> positive_rays(int dimension, int count, std::uint64_t seed) {
  require_supported_dimension(dimension);
  if (count < 1) throw InvalidInput("ray count must be positive");
  const int half = dimension / 2;
  std::vector<std::vector<double>> rays;
  if (half == 1) return {{1.0}};
  if (half == 2) {
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
      const double angle = t * std::numbers::pi / 2;
      rays.push_back({std::cos(angle), std::sin(angle)});
    }
    return rays;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    std::vector<double> d(static_cast<std::size_t>(half));
    double norm = 0;
    for (auto& x : d) {
      x = std::abs(normal(rng));
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : d) x /= norm;
    rays.push_back(std::move(d));
  }
  return rays;
}

std::vector<BoundaryRecord> run_boundary(const ScanConfig& config) {
  validate(config);
  std::vector<BoundaryRecord> records(config.rays.size());
  parallel_for(config.rays.size(), config.threads, [&](std::size_t i) {
    BoundaryRecord& r = records[i];
    r.index = i;
    r.dimension = config.dimension;
    r.direction = config.rays[i];
    try {
      r.point = boundary_bisect(config.dimension, config.rays[i], config.tolerance);
    } catch (const NoBoundaryFound& e) {
      r.error = e.what();
    } catch (const InvalidInput& e) {
      r.error = e.what();
    }
  });
  return records;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

namespace {

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ';';
    out += format_number(values[k]);
  }
  return out;
}

std::string optional_number(const std::optional<double>& value) { return value ? format_number(*value) : ""; }

nlohmann::json optional_json(const std::optional<double>& value) {
  if (!value || !std::isfinite(*value)) return nullptr;
  return *value;
}

}  // namespace

nlohmann::json to_json(const ScanRecord& r) {
  nlohmann::json j;
  j["index"] = r.index;
  j["N"] = r.dimension;
  j["couplings"] = r.couplings;
  j["verdict"] = r.verdict;
  j["margin"] = optional_json(r.margin);
  j["witness"] = r.witness;
  j["oracle_verdict"] = r.oracle_verdict.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.oracle_verdict);
  j["mismatch"] = r.mismatch;
  j["min_root"] = optional_json(r.min_root);
  j["min_root_gap"] = optional_json(r.min_root_gap);
  return j;
}

nlohmann::json to_json(const BoundaryRecord& r) {
  nlohmann::json j;
  j["index"] = r.index;
  j["N"] = r.dimension;
  j["direction"] = r.direction;
  if (r.point) {
    j["radius"] = r.point->radius;
    j["couplings"] = r.point->point.couplings();
    j["inside_radius"] = r.point->inside_radius;
    j["outside_radius"] = r.point->outside_radius;
    j["root_gap"] = optional_json(r.point->root_gap);
  } else {
    j["radius"] = nullptr;
    j["couplings"] = nullptr;
    j["inside_radius"] = nullptr;
    j["outside_radius"] = nullptr;
    j["root_gap"] = nullptr;
  }
  j["error"] = r.error;
  return j;
}

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
  out << "index,N,couplings,verdict,margin,witness,oracle_verdict,mismatch,min_root,min_root_gap\n";
  for (const auto& r : records) {
    out << r.index << ',' << r.dimension << ',' << csv_field(join_numbers(r.couplings)) << ',' << csv_field(r.verdict)
        << ',' << format_number(r.margin) << ',' << csv_field(r.witness) << ',' << csv_field(r.oracle_verdict) << ','
        << (r.mismatch ? "true" : "false") << ',' << optional_number(r.min_root) << ','
        << optional_number(r.min_root_gap) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ScanRecord>& records) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : records) doc.push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

void write_csv(std::ostream& out, const std::vector<BoundaryRecord>& records) {
  out << "index,N,direction,radius,couplings,inside_radius,outside_radius,root_gap,error\n";
  for (const auto& r : records) {
    out << r.index << ',' << r.dimension << ',' << csv_field(join_numbers(r.direction)) << ',';
    if (r.point) {
      out << format_number(r.point->radius) << ',' << csv_field(join_numbers(r.point->point.couplings())) << ','
          << format_number(r.point->inside_radius) << ',' << format_number(r.point->outside_radius) << ','
          << format_number(r.point->root_gap);
    } else {
      out << ",,,,";
    }
    out << ',' << csv_field(r.error) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<BoundaryRecord>& records) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : records) doc.push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

}  // namespace ptdomain
