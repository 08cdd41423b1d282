#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gltkit/acs.hpp"
#include "gltkit/asymptotics.hpp"
#include "gltkit/batteries.hpp"
#include "gltkit/fem.hpp"
#include "gltkit/glt.hpp"
#include "gltkit/io.hpp"
#include "gltkit/sampling.hpp"
#include "gltkit/shuffle.hpp"
#include "gltkit/toeplitz.hpp"

namespace gltkit::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kKinds = {"toeplitz-tensor", "sampling-tensor", "glt-tensor",
                                         "acs-tensor",      "distribution",    "fem-poisson",
                                         "permutation-audit"};

// Field checking -----------------------------------------------------------

void check_fields(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

std::uint64_t get_uint(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ConfigError(std::string("field '") + key + "': expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double get_double(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>()))
    throw ConfigError(std::string("field '") + key + "': expected a finite number");
  return v.get<double>();
}

std::string get_string(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string("field '") + key + "': expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(std::string("field '") + key + "': expected true or false");
  return v.get<bool>();
}

std::size_t positive(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw ConfigError(what + ": expected a positive integer");
  return v.get<std::size_t>();
}

std::vector<std::size_t> size_list(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.empty())
    throw ConfigError(std::string("field '") + key + "': expected a non-empty array");
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(positive(e, std::string("field '") + key + "'"));
  return out;
}

// A schedule is a list of sizes (isotropic over `levels`) or a list of multi-indices.
std::vector<MultiIndex> schedule_of(const json& j, std::size_t levels) {
  const auto& v = j.at("schedule");
  if (!v.is_array() || v.empty()) throw ConfigError("field 'schedule': expected a non-empty array");
  std::vector<MultiIndex> out;
  for (const auto& e : v) {
    if (e.is_array()) {
      if (e.size() != levels)
        throw ConfigError("field 'schedule': entry " + e.dump() + " does not have " +
                          std::to_string(levels) + " levels");
      std::vector<MultiIndex::value_type> c;
      for (const auto& x : e) c.push_back(static_cast<MultiIndex::value_type>(positive(x, "field 'schedule'")));
      out.emplace_back(std::move(c));
    } else {
      out.push_back(MultiIndex::filled(levels, static_cast<MultiIndex::value_type>(
                                                   positive(e, "field 'schedule'"))));
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i - 1] < out[i])) throw ConfigError("field 'schedule': must be ascending");
  return out;
}

void check_dense(const std::vector<MultiIndex>& schedule, std::size_t block) {
  for (const auto& n : schedule)
    if (n_of(n) * block > kMaxDenseDim)
      throw ConfigError("schedule entry " + to_string(n) + " gives a matrix beyond the " +
                        std::to_string(kMaxDenseDim) + " dense limit");
}

SpectralMode mode_of(const std::string& s) {
  if (s == "sv") return SpectralMode::Singular;
  if (s == "eig") return SpectralMode::Eigen;
  throw ConfigError("field 'mode': expected \"sv\" or \"eig\"");
}

// Formatting ----------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string index_text(const MultiIndex& n) {
  std::string s;
  for (std::size_t k = 0; k < n.size(); ++k) s += (k ? ";" : "") + std::to_string(n[k]);
  return s;
}

template <class T>
std::string joined(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ";" : "") << v[k];
  return os.str();
}

json doubles(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return a;
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

// Kinds ----------------------------------------------------------------------

struct Kind {
  std::set<std::string> fields;
  std::function<void(json&)> defaults;
  std::function<void(const json&, RunResult&)> run;
};

void battery_rows(std::ostringstream& csv, const std::string& name, const BatteryResult& r) {
  for (std::size_t k = 0; k < r.labels.size(); ++k)
    csv << name << ',' << k + 1 << ',' << csv_field(r.labels[k]) << ',' << format_double(r.devs[k])
        << '\n';
}

void distribution_rows(std::ostringstream& csv, const DistributionReport& r) {
  for (const auto& row : r.rows)
    csv << to_string(r.mode) << ',' << index_text(row.n) << ',' << row.size << ',' << row.f_index
        << ',' << csv_field(r.battery.functions[row.f_index].describe()) << ','
        << format_double(row.empirical) << ',' << format_double(row.reference) << ','
        << format_double(row.abs_diff) << '\n';
}

json distribution_json(const DistributionReport& r) {
  json sched = json::array();
  for (const auto& n : r.schedule) sched.push_back(index_text(n));
  return {{"mode", to_string(r.mode)},
          {"schedule", sched},
          {"delta", doubles(r.delta)},
          {"battery_range", {r.battery.lo, r.battery.hi}},
          {"test_functions", r.battery.functions.size()},
          {"decreasing", r.decreasing()},
          {"verdict", verdict(r.pass)}};
}

const std::string kBatteryHeader = "battery,case,label,deviation\n";
const std::string kDistributionHeader =
    "mode,n,size,f_index,test_function,empirical,reference,abs_diff\n";

void run_toeplitz(const json& c, RunResult& r) {
  const auto res = toeplitz_battery(get_uint(c, "seed"), positive(c.at("count"), "field 'count'"));
  const double tol = get_double(c, "tolerance");
  std::ostringstream csv;
  csv << kBatteryHeader;
  battery_rows(csv, "all", res.all);
  battery_rows(csv, "scalar", res.scalar);
  r.pass = res.all.max_dev <= tol && res.scalar.max_dev == 0.0;
  r.csv = csv.str();
  r.summary["max_deviation"] = res.all.max_dev;
  r.summary["scalar_max_deviation"] = res.scalar.max_dev;
  r.summary["cases"] = res.all.cases + res.scalar.cases;
}

void run_sampling(const json& c, RunResult& r) {
  const auto res = sampling_battery(get_uint(c, "seed"), positive(c.at("count"), "field 'count'"));
  std::ostringstream csv;
  csv << kBatteryHeader;
  battery_rows(csv, "all", res);
  r.pass = res.max_dev <= get_double(c, "tolerance");
  r.csv = csv.str();
  r.summary["max_deviation"] = res.max_dev;
  r.summary["cases"] = res.cases;
}

void run_glt_tensor(const json& c, RunResult& r) {
  if (!c.contains("factors")) {
    const auto res = glt_structural_battery(get_uint(c, "seed"), positive(c.at("count"), "field 'count'"));
    std::ostringstream csv;
    csv << kBatteryHeader;
    battery_rows(csv, "structural", res);
    r.pass = res.max_dev <= get_double(c, "tolerance");
    r.csv = csv.str();
    r.summary["max_deviation"] = res.max_dev;
    r.summary["cases"] = res.cases;
    return;
  }
  const auto& fs = c.at("factors");
  if (!fs.is_array() || fs.size() < 2) throw ConfigError("field 'factors': expected at least two symbols");
  std::vector<GltOperand> ops;
  std::size_t block = 1;
  for (const auto& f : fs) {
    const GltSymbol kappa = symbol_from_json(f);
    auto schedule = schedule_of(c, kappa.levels());
    block *= n_of(schedule.back()) * std::max(kappa.block_rows(), kappa.block_cols());
    ops.push_back(glt_from_symbol(kappa, std::move(schedule)));
  }
  if (block > kMaxDenseDim)
    throw ConfigError("tensored matrices exceed the " + std::to_string(kMaxDenseDim) + " dense limit");
  const GltOperand tensored = glt_tensor(ops);
  const auto v = verify_glt(tensored, get_double(c, "tolerance"));
  std::ostringstream csv;
  csv << kDistributionHeader;
  distribution_rows(csv, v.sv);
  if (v.eig) distribution_rows(csv, *v.eig);
  r.pass = v.pass;
  r.csv = csv.str();
  r.summary["sv"] = distribution_json(v.sv);
  if (v.eig)
    r.summary["eig"] = distribution_json(*v.eig);
  else
    r.summary["eig_skipped"] = v.eig_skipped;
}

void run_acs(const json& c, RunResult& r) {
  const auto sizes = size_list(c, "schedule");
  const auto ms = size_list(c, "ms");
  const std::string kind = get_string(c, "pair");
  const bool tensor = get_bool(c, "tensor");
  for (auto n : sizes)
    if ((tensor ? n * n : n) > kMaxDenseDim)
      throw ConfigError("schedule entry " + std::to_string(n) + " exceeds the dense limit");
  AcsPair pair;
  if (kind == "staircase")
    pair = staircase_pair(sizes, ms);
  else if (kind == "identity-zero")
    pair = identity_zero_pair(sizes, ms);
  else
    throw ConfigError("field 'pair': expected \"staircase\" or \"identity-zero\"");
  const double tol = get_double(c, "tolerance");
  const AcsReport rep = tensor ? acs_tensor_check(pair, pair, tol) : acs_check(pair, tol);

  std::ostringstream csv;
  csv << "m,n,rho\n";
  for (std::size_t a = 0; a < rep.ms.size(); ++a)
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      const double rho = rep.rho[a][b];
      if (std::isnan(rho)) continue;
      csv << rep.ms[a] << ',' << (tensor ? std::to_string(sizes[b]) + ";" + std::to_string(sizes[b])
                                         : std::to_string(sizes[b]))
          << ',' << format_double(rho) << '\n';
    }
  r.pass = rep.pass;
  r.csv = csv.str();
  r.summary["rho_hat"] = doubles(rep.rho_hat);
  r.summary["hypothesis_met"] = rep.hypothesis_met;
  if (!rep.note.empty()) r.summary["note"] = rep.note;
}

void run_distribution(const json& c, RunResult& r) {
  if (!c.contains("symbol")) throw ConfigError("field 'symbol' is required");
  const GltSymbol kappa = symbol_from_json(c.at("symbol"));
  auto schedule = schedule_of(c, kappa.levels());
  check_dense(schedule, std::max(kappa.block_rows(), kappa.block_cols()));
  const GltOperand op = glt_from_symbol(kappa, std::move(schedule));
  const auto rep = distribution_report(op.family, op.symbol, mode_of(get_string(c, "mode")),
                                       get_double(c, "tolerance"));
  std::ostringstream csv;
  csv << kDistributionHeader;
  distribution_rows(csv, rep);
  r.pass = rep.pass;
  r.csv = csv.str();
  r.summary["report"] = distribution_json(rep);
}

void run_fem(const json& c, RunResult& r) {
  const auto degrees = size_list(c, "degrees");
  std::vector<MultiIndex::value_type> pv;
  for (auto p : degrees) {
    if (p > kMaxSplineDegree) throw ConfigError("field 'degrees': at most " + std::to_string(kMaxSplineDegree));
    pv.push_back(static_cast<MultiIndex::value_type>(p));
  }
  const MultiIndex ps(pv);
  const auto sizes = size_list(c, "schedule");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i - 1] >= sizes[i]) throw ConfigError("field 'schedule': must be ascending");
  for (auto m : sizes) {
    std::size_t total = 1;
    for (auto p : degrees) {
      if (m < p + 1) throw ConfigError("schedule entry " + std::to_string(m) + " needs at least degree + 1 cells");
      total *= m + p - 2;
    }
    if (total > kMaxDenseDim) throw ConfigError("schedule entry " + std::to_string(m) + " exceeds the dense limit");
  }
  const auto rep = verify_poisson(ps, sizes, get_double(c, "tolerance"));
  std::ostringstream csv;
  csv << kDistributionHeader;
  distribution_rows(csv, rep.sv);
  distribution_rows(csv, rep.eig);
  r.pass = rep.pass;
  r.csv = csv.str();
  r.summary["sv"] = distribution_json(rep.sv);
  r.summary["eig"] = distribution_json(rep.eig);
  r.summary["hermitian"] = rep.hermitian;
}

void run_audit(const json& c, RunResult& r) {
  const std::size_t max_total = positive(c.at("max_total"), "field 'max_total'");
  if (max_total > 8) throw ConfigError("field 'max_total': exhaustive search is limited to 8");
  const auto entries = permutation_audit(max_total);
  std::ostringstream csv;
  csv << "sizes,sigma,candidates,matches,unique,gamma\n";
  bool all = true;
  for (const auto& e : entries) {
    const bool unique = e.search.unique_and_equals_gamma;
    all = all && unique;
    std::string g = to_string(gamma(e.sizes, e.sigma));
    for (auto& ch : g)
      if (ch == ',') ch = ';';
    std::string sigma = to_string(e.sigma);
    for (auto& ch : sigma)
      if (ch == ',') ch = ';';
    csv << joined(e.sizes) << ',' << sigma << ',' << e.search.candidates << ','
        << e.search.matches << ',' << (unique ? "true" : "false") << ',' << g << '\n';
  }
  r.pass = all && !entries.empty();
  r.csv = csv.str();
  r.summary["pairs"] = entries.size();
  r.summary["unique"] = all;
}

const std::map<std::string, Kind>& kinds() {
  static const std::map<std::string, Kind> table = [] {
    const std::set<std::string> common = {"kind", "seed", "tolerance", "output"};
    auto with = [&](std::initializer_list<std::string> extra) {
      auto s = common;
      s.insert(extra);
      return s;
    };
    auto set_default = [](json& c, const char* key, json value) {
      if (!c.contains(key)) c[key] = std::move(value);
    };
    std::map<std::string, Kind> t;
    t["toeplitz-tensor"] = {with({"count"}),
                            [=](json& c) {
                              set_default(c, "count", 20);
                              set_default(c, "tolerance", 1e-12);
                            },
                            run_toeplitz};
    t["sampling-tensor"] = {with({"count"}),
                            [=](json& c) {
                              set_default(c, "count", 20);
                              set_default(c, "tolerance", 0.0);
                            },
                            run_sampling};
    t["glt-tensor"] = {with({"count", "factors", "schedule"}),
                       [=](json& c) {
                         if (c.contains("factors")) {
                           if (c.contains("count"))
                             throw ConfigError("'count' and 'factors' are mutually exclusive");
                           if (!c.contains("schedule")) throw ConfigError("field 'schedule' is required with 'factors'");
                           set_default(c, "tolerance", 0.05);
                         } else {
                           if (c.contains("schedule")) throw ConfigError("field 'schedule' needs 'factors'");
                           set_default(c, "count", 10);
                           set_default(c, "tolerance", 1e-12);
                         }
                       },
                       run_glt_tensor};
    t["acs-tensor"] = {with({"pair", "schedule", "ms", "tensor"}),
                       [=](json& c) {
                         set_default(c, "pair", "staircase");
                         set_default(c, "tensor", true);
                         set_default(c, "schedule", json::array({12, 24, 48}));
                         set_default(c, "ms", json::array({1, 2, 4, 8}));
                         set_default(c, "tolerance", 0.2);
                       },
                       run_acs};
    t["distribution"] = {with({"symbol", "schedule", "mode"}),
                         [=](json& c) {
                           if (!c.contains("schedule")) throw ConfigError("field 'schedule' is required");
                           set_default(c, "mode", "sv");
                           set_default(c, "tolerance", 0.05);
                         },
                         run_distribution};
    t["fem-poisson"] = {with({"degrees", "schedule"}),
                        [=](json& c) {
                          set_default(c, "degrees", json::array({1, 1}));
                          set_default(c, "schedule", json::array({12, 24, 48}));
                          set_default(c, "tolerance", 0.05);
                        },
                        run_fem};
    t["permutation-audit"] = {with({"max_total"}),
                              [=](json& c) {
                                set_default(c, "max_total", 8);
                                set_default(c, "tolerance", 0.0);
                              },
                              run_audit};
    for (auto& [name, k] : t) {
      auto d = k.defaults;
      k.defaults = [=](json& c) {
        set_default(c, "seed", 1);
        set_default(c, "output", ".");
        d(c);
      };
    }
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v == 0 || item.front() == '-')
      throw ConfigError("'" + text + "' is not a comma-separated list of positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty() || text.back() == ',')
    throw ConfigError("'" + text + "' is not a comma-separated list of positive integers");
  return out;
}

json normalize_config(json config, const Overrides& overrides) {
  if (!config.is_object()) throw ConfigError("config: expected a JSON object");
  if (!config.contains("kind")) throw ConfigError("config: field 'kind' is required");
  const std::string kind = get_string(config, "kind");
  const auto it = kinds().find(kind);
  if (it == kinds().end()) {
    std::string list;
    for (const auto& k : kKinds) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("config: unknown kind '" + kind + "' (expected one of " + list + ")");
  }
  if (overrides.seed) config["seed"] = *overrides.seed;
  if (overrides.tol) config["tolerance"] = *overrides.tol;
  if (overrides.out) config["output"] = *overrides.out;
  if (overrides.schedule) config["schedule"] = *overrides.schedule;

  check_fields(config, it->second.fields, "config (" + kind + ")");
  it->second.defaults(config);
  get_uint(config, "seed");
  if (get_double(config, "tolerance") < 0) throw ConfigError("field 'tolerance': must be >= 0");
  get_string(config, "output");
  return config;
}

RunResult run_experiment(const json& raw, const Overrides& overrides) {
  const json config = normalize_config(raw, overrides);
  RunResult r;
  r.kind = config["kind"].get<std::string>();
  const auto start = std::chrono::steady_clock::now();
  try {
    kinds().at(r.kind).run(config, r);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
  json inputs = config;
  inputs.erase("output");
  r.summary["kind"] = r.kind;
  r.summary["inputs"] = inputs;
  r.summary["verdict"] = verdict(r.pass);
  r.summary["wall_time_seconds"] = wall.count();
  return r;
}

std::string gnuplot_hints(const std::string& kind) {
  std::ostringstream os;
  os << "# " << kind << ".csv: comma-separated, one header line\n";
  if (kind == "toeplitz-tensor" || kind == "sampling-tensor" ||
      kind == "glt-tensor-structural") {
    os << "#  1 battery    sub-battery name\n"
          "#  2 case       case number within the sub-battery\n"
          "#  3 label      case description\n"
          "#  4 deviation  max |lhs - rhs| over the case\n"
          "# set datafile separator ','; plot '"
       << (kind == "glt-tensor-structural" ? "glt-tensor" : kind)
       << ".csv' every ::1 using 2:4 with points\n";
  } else if (kind == "acs-tensor") {
    os << "#  1 m    approximant index\n"
          "#  2 n    size (levels joined by ';')\n"
          "#  3 rho  splitting modulus of A_n - B_{n,m}\n"
          "# set datafile separator ','; plot 'acs-tensor.csv' every ::1 using 1:3 with points\n";
  } else if (kind == "permutation-audit") {
    os << "#  1 sizes       factor sizes joined by ';'\n"
          "#  2 sigma       factor order joined by ';'\n"
          "#  3 candidates  permutations searched\n"
          "#  4 matches     permutations satisfying the identity\n"
          "#  5 unique      true when the single match equals gamma\n"
          "#  6 gamma       one-line gamma(sizes, sigma) joined by ';'\n";
  } else {
    os << "#  1 mode            sv or eig\n"
          "#  2 n               size (levels joined by ';')\n"
          "#  3 size            N(n)\n"
          "#  4 f_index         test function number\n"
          "#  5 test_function   test function description\n"
          "#  6 empirical       average of F over the spectrum\n"
          "#  7 reference       average of F over the symbol\n"
          "#  8 abs_diff        |empirical - reference|\n"
          "# set datafile separator ','; plot '"
       << kind << ".csv' every ::1 using 3:8 with points\n";
  }
  return os.str();
}

namespace {

// Runs a config and writes <out>/<kind>.csv and <out>/<kind>.json.
int execute(const json& raw, const Overrides& overrides, bool hints, std::ostream& out) {
  const json config = normalize_config(raw, overrides);
  const RunResult r = run_experiment(config);
  const std::filesystem::path dir = config["output"].get<std::string>();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto csv_path = dir / (r.kind + ".csv");
  const auto json_path = dir / (r.kind + ".json");
  json summary = r.summary;
  summary["csv"] = csv_path.filename().string();
  write_file_atomic(csv_path, r.csv);
  write_file_atomic(json_path, summary.dump(2) + "\n");
  out << r.kind << ": " << verdict(r.pass) << " (" << csv_path.string() << ", "
      << json_path.string() << ")\n";
  if (hints) {
    const bool structural = r.kind == "glt-tensor" && !config.contains("factors");
    out << gnuplot_hints(structural ? "glt-tensor-structural" : r.kind);
  }
  return r.pass ? kExitPass : kExitFail;
}

json load_config(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": malformed JSON: " + e.what());
  }
}

json load_json(const std::string& path) { return load_config(path); }

MultiIndex index_arg(const std::string& text) {
  std::vector<MultiIndex::value_type> c;
  for (auto v : parse_size_list(text)) c.push_back(static_cast<MultiIndex::value_type>(v));
  return MultiIndex(std::move(c));
}

void emit_matrix(const ComplexMatrix& a, const std::string& name,
                 const std::optional<std::string>& out_dir, std::ostream& out) {
  const std::string text = matrix_to_text(a);
  if (!out_dir) {
    out << text;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(*out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + *out_dir + ": " + ec.message());
  const auto path = std::filesystem::path(*out_dir) / (name + ".txt");
  write_file_atomic(path, text);
  out << path.string() << '\n';
}

constexpr std::size_t kMaxPermutation = 1'000'000;

void check_perm_size(std::span<const std::size_t> sizes) {
  std::size_t total = 1;
  for (auto s : sizes) {
    if (total > kMaxPermutation / s) throw ConfigError("permutation size exceeds 1000000");
    total *= s;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured-matrix toolkit: Toeplitz, sampling and GLT tensor checks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Overrides ov;
  std::string config_path;
  std::string schedule_text;
  bool hints = false;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", config_path, "JSON experiment config");
    if (config_required) c->required();
    sub->add_option("--seed", ov.seed, "seed for randomized batteries");
    sub->add_option("--tol", ov.tol, "tolerance");
    sub->add_option("--out", ov.out, "output directory");
    sub->add_option("--schedule", schedule_text, "size schedule a,b,c");
    sub->add_flag("--gnuplot-hints", hints, "print CSV column documentation");
  };

  auto* verify = app.add_subcommand("verify", "run any experiment config");
  add_common(verify, true);

  auto* spectrum = app.add_subcommand("spectrum", "distribution experiment for a symbol");
  add_common(spectrum, false);
  std::string symbol_path, mode = "sv";
  spectrum->add_option("--symbol", symbol_path, "symbol JSON (instead of --config)");
  spectrum->add_option("--mode", mode, "sv or eig (with --symbol)");

  auto* fem = app.add_subcommand("fem", "B-spline Poisson experiment");
  add_common(fem, false);
  std::string degrees_text;
  fem->add_option("--degrees", degrees_text, "spline degrees p1,...,pd (without --config)");

  auto* perm = app.add_subcommand("perm", "print a permutation in one-line notation");
  std::string perm_kind;
  std::vector<std::string> perm_args;
  perm->add_option("which", perm_kind, "p-shuffle | gamma | pi")->required();
  perm->add_option("args", perm_args, "p-shuffle n1 n2 | gamma sizes sigma | pi ps qs")->required();

  auto* matrix = app.add_subcommand("matrix", "export a dense matrix as text");
  matrix->require_subcommand(1);
  std::optional<std::string> matrix_out;
  std::string n_text, coeffs_path, a_text, m_text, p_text = "1";
  std::size_t block = 1;
  bool raw = false;
  auto* mt = matrix->add_subcommand("toeplitz", "T_n(f)");
  mt->add_option("--n", n_text, "sizes n1,...,nd")->required();
  mt->add_option("--coeffs", coeffs_path, "trigonometric polynomial JSON")->required();
  mt->add_option("--out", matrix_out, "output directory (default stdout)");
  auto* ms = matrix->add_subcommand("sampling", "D_n(a) (x) I_s");
  ms->add_option("--n", n_text, "sizes n1,...,nd")->required();
  ms->add_option("--a", a_text, "coefficient expression in x1..xd")->required();
  ms->add_option("--s", block, "identity block size");
  ms->add_option("--out", matrix_out, "output directory (default stdout)");
  auto* mg = matrix->add_subcommand("glt", "sum_i D_n(a_i I) T_n(f_i)");
  mg->add_option("--n", n_text, "sizes n1,...,nd")->required();
  mg->add_option("--symbol", symbol_path, "symbol JSON")->required();
  mg->add_option("--out", matrix_out, "output directory (default stdout)");
  auto* mp = matrix->add_subcommand("poisson", "B-spline Poisson matrix");
  mp->add_option("--m", m_text, "intervals m1,...,md")->required();
  mp->add_option("--p", p_text, "degrees p1,...,pd");
  mp->add_flag("--raw", raw, "unnormalised stiffness and mass");
  mp->add_option("--out", matrix_out, "output directory (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (!schedule_text.empty()) ov.schedule = parse_size_list(schedule_text);

    if (verify->parsed()) return execute(load_config(config_path), ov, hints, out);

    if (spectrum->parsed()) {
      json config;
      if (!config_path.empty()) {
        if (!symbol_path.empty()) throw ConfigError("--config and --symbol are mutually exclusive");
        config = load_config(config_path);
        const auto kind = config.value("kind", std::string());
        if (kind != "distribution" && kind != "glt-tensor")
          throw ConfigError("spectrum runs distribution or glt-tensor configs, not '" + kind + "'");
      } else {
        if (symbol_path.empty()) throw ConfigError("spectrum needs --config or --symbol");
        config = {{"kind", "distribution"}, {"symbol", load_json(symbol_path)}, {"mode", mode}};
      }
      return execute(config, ov, hints, out);
    }

    if (fem->parsed()) {
      json config;
      if (!config_path.empty()) {
        if (!degrees_text.empty()) throw ConfigError("--config and --degrees are mutually exclusive");
        config = load_config(config_path);
        if (config.value("kind", std::string()) != "fem-poisson")
          throw ConfigError("fem runs fem-poisson configs only");
      } else {
        config = {{"kind", "fem-poisson"}};
        if (!degrees_text.empty()) config["degrees"] = parse_size_list(degrees_text);
      }
      return execute(config, ov, hints, out);
    }

    if (perm->parsed()) {
      Permutation p;
      if (perm_kind == "p-shuffle") {
        if (perm_args.size() != 2) throw ConfigError("usage: perm p-shuffle n1 n2");
        const auto n1 = parse_size_list(perm_args[0]), n2 = parse_size_list(perm_args[1]);
        if (n1.size() != 1 || n2.size() != 1) throw ConfigError("usage: perm p-shuffle n1 n2");
        const std::size_t sizes[] = {n1[0], n2[0]};
        check_perm_size(sizes);
        p = p_shuffle(n1[0], n2[0]);
      } else if (perm_kind == "gamma") {
        if (perm_args.size() != 2) throw ConfigError("usage: perm gamma n1,...,nd s1,...,sd");
        const auto sizes = parse_size_list(perm_args[0]);
        check_perm_size(sizes);
        p = gamma(sizes, Permutation(parse_size_list(perm_args[1])));
      } else if (perm_kind == "pi") {
        if (perm_args.size() != 2) throw ConfigError("usage: perm pi p1,...,pd q1,...,qd");
        const auto ps = parse_size_list(perm_args[0]), qs = parse_size_list(perm_args[1]);
        auto all = ps;
        all.insert(all.end(), qs.begin(), qs.end());
        check_perm_size(all);
        p = pi(ps, qs);
      } else {
        throw ConfigError("perm: unknown permutation '" + perm_kind + "' (p-shuffle, gamma, pi)");
      }
      out << to_string(p) << '\n';
      return kExitPass;
    }

    if (mt->parsed()) {
      const ToeplitzSpec spec{index_arg(n_text), trig_from_json(load_json(coeffs_path))};
      emit_matrix(toeplitz(spec), "toeplitz", matrix_out, out);
    } else if (ms->parsed()) {
      const MultiIndex n = index_arg(n_text);
      if (block < 1) throw ConfigError("--s must be positive");
      emit_matrix(diag_sampling({n, CoeffFn::parse(a_text, n.size()), block}), "sampling",
                  matrix_out, out);
    } else if (mg->parsed()) {
      emit_matrix(assemble(symbol_from_json(load_json(symbol_path)), index_arg(n_text)), "glt",
                  matrix_out, out);
    } else if (mp->parsed()) {
      emit_matrix(poisson_matrix(index_arg(m_text), index_arg(p_text), !raw), "poisson",
                  matrix_out, out);
    }
    return kExitPass;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace gltkit::cli
