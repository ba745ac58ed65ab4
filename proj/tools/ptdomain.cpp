// Command-line front end for membership checks, scans and boundary reports.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ptdomain/criteria.hpp"
#include "ptdomain/errors.hpp"
#include "ptdomain/geometry.hpp"
#include "ptdomain/oracle.hpp"
#include "ptdomain/scan.hpp"

using namespace ptdomain;
using nlohmann::json;

namespace {

enum ExitCode { kInside = 0, kOutside = 1, kBoundary = 2, kUsage = 64, kData = 65, kInternal = 70 };

// Unreadable config, unwritable output.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  double epsilon = 1e-9;
  std::string format;  // empty: text for reports, csv for tables
  std::string output;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string config;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) throw InvalidInput("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(value)) {
      throw InvalidInput("not a finite number: '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

CouplingVector read_couplings(int dimension, const std::string& decimal, const std::string& exact) {
  if (!exact.empty()) {
    std::vector<Rational> squares;
    for (const auto& item : split_list(exact)) squares.push_back(parse_rational(item));
    return CouplingVector::from_squares(dimension, squares);
  }
  if (decimal.empty()) throw InvalidInput("couplings required: -g or --exact");
  return CouplingVector::from_couplings(dimension, parse_doubles(decimal));
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DataError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw DataError("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
};

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json aux_json(const AuxInvariants& aux) {
  return {{"B", optional_json(aux.B)}, {"q", optional_json(aux.q)}, {"C", optional_json(aux.C)},
          {"D", optional_json(aux.D)}, {"G", optional_json(aux.G)}};
}

json complex_list(const std::vector<std::complex<double>>& values) {
  json out = json::array();
  for (const auto& z : values) out.push_back({z.real(), z.imag()});
  return out;
}

json spectrum_json(const SpectrumReport& r) {
  return {{"s_roots", complex_list(r.s_roots)},
          {"energies", complex_list(r.energies)},
          {"classification", to_string(r.classification)},
          {"degeneracy_pattern", r.degeneracy_pattern},
          {"min_root", r.min_root},
          {"min_root_gap", std::isfinite(r.min_root_gap) ? json(r.min_root_gap) : json(nullptr)},
          {"max_residual", r.max_residual}};
}

std::string complex_text(const std::complex<double>& z) {
  if (z.imag() == 0.0) return format_number(z.real());
  return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
}

void print_spectrum_text(std::ostream& out, const SpectrumReport& r) {
  out << "classification: " << to_string(r.classification) << '\n';
  out << "s roots:";
  for (const auto& s : r.s_roots) out << ' ' << complex_text(s);
  out << "\nenergies:";
  for (const auto& e : r.energies) out << ' ' << complex_text(e);
  out << "\ndegeneracy pattern:";
  for (int m : r.degeneracy_pattern) out << ' ' << m;
  out << "\nmin |s|: " << format_number(r.min_root) << "\nmin root gap: " << format_number(r.min_root_gap) << '\n';
}

int exit_for(Membership state) {
  switch (state) {
    case Membership::Inside:
      return kInside;
    case Membership::Outside:
      return kOutside;
    case Membership::BoundaryBand:
      return kBoundary;
  }
  return kInternal;
}

std::string squares_text(const CouplingVector& c) {
  std::string out;
  for (std::size_t k = 0; k < c.squares().size(); ++k) {
    if (k) out += ", ";
    out += c.squares()[k].get_str();
  }
  return out;
}

int cmd_check(const Globals& g, int dimension, const std::string& decimal, const std::string& exact, bool spectrum) {
  const auto couplings = read_couplings(dimension, decimal, exact);
  const Verdict v = dispatch(couplings, Tolerance{g.epsilon});
  std::optional<SpectrumReport> report;
  if (spectrum) report = numeric_spectrum(couplings);
  Sink sink(g.output);
  auto& out = sink.stream();
  if (g.format == "json") {
    json doc{{"N", dimension},
             {"couplings", couplings.couplings()},
             {"squares", squares_text(couplings)},
             {"verdict", std::string(to_string(v.state))},
             {"witness", v.witness},
             {"margin", v.margin},
             {"delegated", v.delegated},
             {"notes", v.notes}};
    if (v.aux) doc["aux"] = aux_json(*v.aux);
    if (report) doc["spectrum"] = spectrum_json(*report);
    out << doc.dump(2) << '\n';
  } else if (g.format.empty() || g.format == "text") {
    out << "N = " << dimension << "\ncouplings = ";
    for (std::size_t k = 0; k < couplings.couplings().size(); ++k) {
      out << (k ? ", " : "") << format_number(couplings.couplings()[k]);
    }
    out << "\nsquares = " << squares_text(couplings) << "\nverdict: " << to_string(v.state) << '\n';
    if (!v.witness.empty()) out << "witness: " << v.witness << '\n';
    out << "margin: " << format_number(v.margin) << '\n';
    if (v.aux) {
      const auto& a = *v.aux;
      for (auto [name, value] : {std::pair{"B", a.B}, {"q", a.q}, {"C", a.C}, {"D", a.D}, {"G", a.G}}) {
        if (value) out << name << " = " << format_number(*value) << '\n';
      }
    }
    for (const auto& n : v.notes) out << "note: " << n << '\n';
    if (report) print_spectrum_text(out, *report);
  } else {
    throw InvalidInput("check supports text or json output");
  }
  sink.close();
  return exit_for(v.state);
}

int cmd_spectrum(const Globals& g, int dimension, const std::string& decimal, const std::string& exact) {
  const auto couplings = read_couplings(dimension, decimal, exact);
  const auto report = numeric_spectrum(couplings);
  Sink sink(g.output);
  if (g.format == "json") {
    sink.stream() << spectrum_json(report).dump(2) << '\n';
  } else {
    print_spectrum_text(sink.stream(), report);
  }
  sink.close();
  return kInside;
}

ScanConfig load_config(const Globals& g) {
  ScanConfig config;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw DataError("cannot read config file '" + g.config + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
      config = config_from_json(doc, config);
    } catch (const InvalidInput& e) {
      throw DataError(e.what());
    }
  }
  return config;
}

struct Overrides {
  const CLI::App* app = nullptr;
  bool given(const std::string& name) const {
    for (const CLI::App* scope : {app, static_cast<const CLI::App*>(app->get_parent())}) {
      const auto* opt = scope->get_option_no_throw(name);
      if (opt != nullptr && opt->count() > 0) return true;
    }
    return false;
  }
};

void apply_globals(ScanConfig& config, const Globals& g, const Overrides& o) {
  if (o.given("--epsilon")) config.epsilon = g.epsilon;
  if (o.given("--format")) config.format = parse_output_format(g.format);
  if (o.given("--output")) config.output = g.output;
  if (o.given("--seed")) config.seed = g.seed;
  if (o.given("--threads")) config.threads = g.threads;
}

int cmd_scan(const Globals& g, const Overrides& o, int dimension, const std::vector<std::string>& grid, int random,
             const std::string& mode, bool spectrum) {
  ScanConfig config = load_config(g);
  apply_globals(config, g, o);
  if (o.given("-N")) config.dimension = dimension;
  if (!grid.empty()) {
    config.grid.clear();
    for (const auto& axis : grid) config.grid.push_back(parse_axis_range(axis));
  }
  if (o.given("--random")) config.random_points = random;
  if (o.given("--mode")) config.mode = parse_scan_mode(mode);
  if (spectrum) config.spectrum = true;
  const auto records = run_scan(config);
  Sink sink(config.output);
  if (config.format == OutputFormat::Json) {
    write_json(sink.stream(), records);
  } else {
    write_csv(sink.stream(), records);
  }
  sink.close();
  std::size_t mismatches = 0;
  for (const auto& r : records) mismatches += r.mismatch ? 1 : 0;
  if (mismatches > 0) {
    std::cerr << mismatches << " criteria/oracle mismatch(es) outside the boundary band\n";
    return kInternal;
  }
  return kInside;
}

int cmd_boundary(const Globals& g, const Overrides& o, int dimension, const std::vector<std::string>& rays, int ray_count,
                 double tol) {
  ScanConfig config = load_config(g);
  apply_globals(config, g, o);
  if (o.given("-N")) config.dimension = dimension;
  if (o.given("--tol")) config.tolerance = tol;
  if (!rays.empty()) {
    config.rays.clear();
    for (const auto& r : rays) config.rays.push_back(parse_doubles(r));
  } else if (o.given("--rays") || config.rays.empty()) {
    config.rays = positive_rays(config.dimension, ray_count, config.seed);
  }
  const auto records = run_boundary(config);
  Sink sink(config.output);
  if (config.format == OutputFormat::Json) {
    write_json(sink.stream(), records);
  } else {
    write_csv(sink.stream(), records);
  }
  sink.close();
  return kInside;
}

int cmd_eep(const Globals& g, int dimension, bool all) {
  std::vector<int> dims;
  if (all) {
    for (int n = kMinDimension; n <= kMaxDimension; ++n) dims.push_back(n);
  } else {
    dims.push_back(dimension);
  }
  Sink sink(g.output);
  auto& out = sink.stream();
  json doc = json::array();
  if (g.format == "csv") out << "N,squares,couplings,literal_products,secular_form\n";
  for (int n : dims) {
    const auto eep = eep_point(n);
    const auto form = secular_form(eep.couplings);
    const std::string poly = form.polynomial().to_string("s");
    if (g.format == "json") {
      std::vector<std::string> squares;
      for (const auto& s : eep.couplings.squares()) squares.push_back(s.get_str());
      doc.push_back({{"N", n},
                     {"squares", squares},
                     {"couplings", eep.couplings.couplings()},
                     {"literal_products", eep.literal_values},
                     {"secular_form", poly},
                     {"all_coefficients_zero", true}});
    } else if (g.format == "csv") {
      std::string sq, cp, lit;
      for (std::size_t k = 0; k < eep.literal_values.size(); ++k) {
        const char* sep = k ? ";" : "";
        sq += sep + eep.couplings.squares()[k].get_str();
        cp += sep + format_number(eep.couplings.couplings()[k]);
        lit += sep + std::to_string(eep.literal_values[k]);
      }
      out << n << ',' << sq << ',' << cp << ',' << lit << ',' << csv_field(poly) << '\n';
    } else {
      out << "N=" << n << "  g^2 = (" << squares_text(eep.couplings) << ")  g = (";
      for (std::size_t k = 0; k < eep.couplings.couplings().size(); ++k) {
        out << (k ? ", " : "") << format_number(eep.couplings.couplings()[k]);
      }
      out << ")  secular form " << poly << "  [all coefficients exactly zero]\n";
    }
  }
  if (g.format == "json") out << doc.dump(2) << '\n';
  sink.close();
  return kInside;
}

int cmd_dep(const Globals& g, const std::string& range_text) {
  const AxisRange range = parse_axis_range(range_text);
  Sink sink(g.output);
  auto& out = sink.stream();
  json doc = json::array();
  const bool csv = g.format.empty() || g.format == "csv";
  if (csv) out << "c,status,a,b,z,s_double,degeneracy_pattern,r_exact_zero,second_residual,inequality_slack,reason\n";
  int found = 0;
  for (int i = 0; i < range.steps; ++i) {
    const double c = range.at(i);
    std::string reason;
    const auto p = dep_solve_n6(c, &reason);
    std::string pattern;
    if (p) {
      ++found;
      for (std::size_t k = 0; k < p->spectrum.degeneracy_pattern.size(); ++k) {
        pattern += (k ? ";" : "") + std::to_string(p->spectrum.degeneracy_pattern[k]);
      }
    }
    if (csv) {
      out << format_number(c) << ',' << (p ? "valid" : "none");
      if (p) {
        out << ',' << format_number(p->a) << ',' << format_number(p->b) << ',' << format_number(p->z) << ','
            << format_number(p->s_double) << ',' << pattern << ',' << (p->r_vanishes_exactly ? "true" : "false") << ','
            << format_number(p->second_residual) << ',' << format_number(p->inequality_slack) << ",";
      } else {
        out << ",,,,,,,,," << csv_field(reason);
      }
      out << '\n';
    } else {
      json row{{"c", c}, {"valid", p.has_value()}};
      if (p) {
        row.update({{"a", p->a},
                    {"b", p->b},
                    {"z", p->z},
                    {"s_double", p->s_double},
                    {"degeneracy_pattern", p->spectrum.degeneracy_pattern},
                    {"energies", complex_list(p->spectrum.energies)},
                    {"r_exact_zero", p->r_vanishes_exactly},
                    {"second_residual", p->second_residual},
                    {"inequality_slack", p->inequality_slack},
                    {"notes", p->notes}});
      } else {
        row["reason"] = reason;
      }
      doc.push_back(row);
    }
  }
  if (!csv) out << doc.dump(2) << '\n';
  sink.close();
  std::cerr << found << " of " << range.steps << " value(s) of c gave a valid point\n";
  return found > 0 ? kInside : kOutside;
}

int cmd_verify(const Globals& g, int dimension, int points) {
  std::vector<int> dims;
  if (dimension == 0) {
    for (int n = kMinDimension; n <= kMaxDimension; ++n) dims.push_back(n);
  } else {
    dims.push_back(dimension);
  }
  Sink sink(g.output);
  auto& out = sink.stream();
  std::size_t total_mismatches = 0;
  for (int n : dims) {
    ScanConfig config;
    config.dimension = n;
    config.random_points = points;
    config.seed = g.seed + static_cast<std::uint64_t>(n);
    config.epsilon = g.epsilon;
    config.threads = g.threads;
    config.mode = ScanMode::Both;
    const auto records = run_scan(config);
    std::size_t band = 0, mismatches = 0, agree = 0;
    for (const auto& r : records) {
      if (r.verdict == "boundary") ++band;
      if (r.mismatch) ++mismatches;
      if (!r.mismatch && r.verdict != "boundary") ++agree;
    }
    total_mismatches += mismatches;
    out << "N=" << n << " points=" << records.size() << " agree=" << agree << " band=" << band
        << " mismatches=" << mismatches << '\n';
  }
  sink.close();
  return total_mismatches == 0 ? kInside : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership, boundary and degeneracy tools for PT-symmetric chain Hamiltonians"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--epsilon", g.epsilon, "Boundary-band width")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--output", g.output, "Output file (default stdout)");
  app.add_option("--seed", g.seed, "Seed for randomized campaigns");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--config", g.config, "JSON config mirroring the scan settings");

  int dimension = 0;
  std::string decimal, exact;
  bool spectrum = false;

  auto* check = app.add_subcommand("check", "Classify one coupling vector");
  check->add_option("-N", dimension, "Matrix dimension")->required();
  check->add_option("-g", decimal, "Couplings, comma separated");
  check->add_option("--exact", exact, "Exact squared couplings, e.g. \"5,8,9\"");
  check->add_flag("--spectrum", spectrum, "Also report the spectrum");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Numerical spectrum of one coupling vector");
  spectrum_cmd->add_option("-N", dimension, "Matrix dimension")->required();
  spectrum_cmd->add_option("-g", decimal, "Couplings, comma separated");
  spectrum_cmd->add_option("--exact", exact, "Exact squared couplings");

  std::vector<std::string> grid;
  int random = 0;
  std::string mode = "both";
  auto* scan = app.add_subcommand("scan", "Classify a grid or random sample");
  scan->add_option("-N", dimension, "Matrix dimension");
  scan->add_option("--grid", grid, "Axis range lo:hi:steps, once per coupling");
  scan->add_option("--random", random, "Number of random box samples instead of a grid");
  scan->add_option("--mode", mode, "criteria, oracle or both");
  scan->add_flag("--spectrum", spectrum, "Add min root and min root gap columns");

  std::vector<std::string> rays;
  int ray_count = 16;
  double tol = 1e-10;
  auto* boundary = app.add_subcommand("boundary", "Bisect rays from the origin to the boundary");
  boundary->add_option("-N", dimension, "Matrix dimension");
  boundary->add_option("--ray", rays, "Direction, comma separated (repeatable)");
  boundary->add_option("--rays", ray_count, "Number of positive-orthant rays")->check(CLI::PositiveNumber);
  boundary->add_option("--tol", tol, "Bisection width")->check(CLI::PositiveNumber);

  bool all = false;
  auto* eep = app.add_subcommand("eep", "Corner exceptional points");
  eep->add_option("-N", dimension, "Matrix dimension");
  eep->add_flag("--all", all, "Every N from 2 to 11");

  std::string c_range = "1:2.2:7";
  auto* dep = app.add_subcommand("dep", "N=6 double-degeneracy points");
  dep->add_option("--c-range", c_range, "lo:hi:steps for the first coupling");

  int points = 10000;
  auto* verify = app.add_subcommand("verify", "Compare criteria with the exact oracle on random samples");
  verify->add_option("-N", dimension, "Matrix dimension (default: all)");
  verify->add_option("--points", points, "Samples per N")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*check) return cmd_check(g, dimension, decimal, exact, spectrum);
    if (*spectrum_cmd) return cmd_spectrum(g, dimension, decimal, exact);
    if (*scan) return cmd_scan(g, Overrides{scan}, dimension, grid, random, mode, spectrum);
    if (*boundary) return cmd_boundary(g, Overrides{boundary}, dimension, rays, ray_count, tol);
    if (*eep) {
      if (!all && dimension == 0) throw InvalidInput("eep needs -N or --all");
      return cmd_eep(g, dimension, all);
    }
    if (*dep) return cmd_dep(g, c_range);
    if (*verify) return cmd_verify(g, dimension, points);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return kInternal;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
