#include "gltkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace gltkit {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& what) {
  if (!j.is_object()) throw FormatError(what + " must be a JSON object");
  std::set<std::string> known;
  for (const char* k : required) {
    if (!j.contains(k)) throw FormatError(what + " is missing \"" + k + "\"");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw FormatError(what + " has unknown field \"" + key + "\"");
}

std::size_t positive(const json& j, const char* key, const std::string& what) {
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 1)
    throw FormatError(what + ": \"" + key + "\" must be a positive integer");
  return j.at(key).get<std::size_t>();
}

// Reads an s x t real block given as a nested array, or a number when s = t = 1.
std::vector<double> read_block(const json& j, std::size_t s, std::size_t t,
                               const std::string& what) {
  if (j.is_number()) {
    if (s != 1 || t != 1) throw FormatError(what + ": scalar given for a block coefficient");
    return {j.get<double>()};
  }
  if (!j.is_array() || j.size() != s) throw FormatError(what + ": expected " + std::to_string(s) + " rows");
  std::vector<double> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != t)
      throw FormatError(what + ": expected rows of length " + std::to_string(t));
    for (const auto& v : row) {
      if (!v.is_number()) throw FormatError(what + ": block entries must be numbers");
      out.push_back(v.get<double>());
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  for (int digits = 1; digits <= 17; ++digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const TrigPoly& f) {
  json coeffs = json::array();
  for (const auto& [k, block] : f.coeffs()) {
    json re = json::array(), im = json::array();
    for (std::size_t a = 0; a < block.rows(); ++a) {
      json rr = json::array(), ii = json::array();
      for (std::size_t b = 0; b < block.cols(); ++b) {
        rr.push_back(block(a, b).real());
        ii.push_back(block(a, b).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    coeffs.push_back({{"k", std::vector<std::int64_t>(k.begin(), k.end())}, {"re", re}, {"im", im}});
  }
  return {{"levels", f.levels()}, {"s", f.block_rows()}, {"t", f.block_cols()}, {"coeffs", coeffs}};
}

TrigPoly trig_from_json(const json& j) {
  const std::string what = "trigonometric polynomial";
  require_keys(j, {"levels", "coeffs"}, {"s", "t"}, what);
  const std::size_t d = positive(j, "levels", what);
  const std::size_t s = j.contains("s") ? positive(j, "s", what) : 1;
  const std::size_t t = j.contains("t") ? positive(j, "t", what) : 1;
  if (!j.at("coeffs").is_array()) throw FormatError(what + ": \"coeffs\" must be an array");
  TrigPoly f(d, s, t);
  for (const auto& c : j.at("coeffs")) {
    require_keys(c, {"k", "re"}, {"im"}, "coefficient");
    const auto& kj = c.at("k");
    if (!kj.is_array() || kj.size() != d)
      throw FormatError("coefficient: \"k\" must list " + std::to_string(d) + " integers");
    std::vector<std::int64_t> k;
    for (const auto& v : kj) {
      if (!v.is_number_integer()) throw FormatError("coefficient: \"k\" must list integers");
      k.push_back(v.get<std::int64_t>());
    }
    const auto re = read_block(c.at("re"), s, t, "coefficient \"re\"");
    const auto im = c.contains("im") ? read_block(c.at("im"), s, t, "coefficient \"im\"")
                                     : std::vector<double>(s * t, 0.0);
    ComplexMatrix block(s, t);
    for (std::size_t e = 0; e < s * t; ++e) block.data()[e] = Complex(re[e], im[e]);
    f.add_to(MultiIndex(std::move(k)), block);
  }
  return f;
}

json to_json(const GltSymbol& kappa) {
  json terms = json::array();
  for (const auto& term : kappa.terms())
    terms.push_back({{"a", term.a.to_string()}, {"f", to_json(term.f)}});
  return {{"levels", kappa.levels()},
          {"s", kappa.block_rows()},
          {"t", kappa.block_cols()},
          {"terms", terms}};
}

GltSymbol symbol_from_json(const json& j) {
  const std::string what = "symbol";
  require_keys(j, {"levels", "terms"}, {"s", "t"}, what);
  const std::size_t d = positive(j, "levels", what);
  const std::size_t s = j.contains("s") ? positive(j, "s", what) : 1;
  const std::size_t t = j.contains("t") ? positive(j, "t", what) : 1;
  if (!j.at("terms").is_array()) throw FormatError(what + ": \"terms\" must be an array");
  GltSymbol kappa(d, s, t);
  for (const auto& term : j.at("terms")) {
    require_keys(term, {"f"}, {"a"}, "symbol term");
    CoeffFn a = CoeffFn::constant(d, 1.0);
    if (term.contains("a")) {
      if (!term.at("a").is_string()) throw FormatError("symbol term: \"a\" must be a string");
      a = CoeffFn::parse(term.at("a").get<std::string>(), d);
    }
    kappa.add_term(std::move(a), trig_from_json(term.at("f")));
  }
  return kappa;
}

std::string matrix_to_text(const ComplexMatrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", a(i, j).real(), a(i, j).imag());
      if (j) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ComplexMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw FormatError("matrix text: missing \"rows cols\" header");
  ComplexMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::string pair;
      if (!(in >> pair)) throw FormatError("matrix text: too few entries");
      const auto comma = pair.find(',');
      if (comma == std::string::npos) throw FormatError("matrix text: entry without \"re,im\"");
      a(i, j) = Complex(std::strtod(pair.substr(0, comma).c_str(), nullptr),
                        std::strtod(pair.substr(comma + 1).c_str(), nullptr));
    }
  return a;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace gltkit
