#include "speccomm/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "speccomm/rng.hpp"

namespace speccomm {

// ---------------------------------------------------------------- theta

Vector ThetaSpec::realize(int n, std::uint64_t seed) const {
  validate();
  switch (kind) {
    case Kind::Constant: return theta_constant(n, params[0]);
    case Kind::Uniform: return theta_uniform(n, params[0], params[1], seed);
    case Kind::Power: return theta_power(n, params[0], params[1], params[2]);
    case Kind::Step: return theta_step(n, params[0], params[1]);
  }
  throw std::logic_error("unreachable");
}

void ThetaSpec::validate() const {
  const std::size_t want = kind == Kind::Constant ? 1
                           : kind == Kind::Power  ? 3
                                                  : 2;
  if (params.size() != want)
    throw std::invalid_argument("theta params: expected " +
                                std::to_string(want) + " value(s)");
}

Labels MembershipSpec::realize(int n, int k, std::uint64_t seed) const {
  if (kind == Kind::UniformRandom) return sample_membership(n, k, seed);
  if (static_cast<int>(list.size()) != n)
    throw std::invalid_argument("membership list length != n");
  return list;
}

ModelSpec ModelConfig::realize(std::uint64_t seed) const {
  ModelSpec spec;
  spec.n = n;
  spec.k = k;
  spec.p = p;
  spec.kind = kind;
  spec.noise = noise;
  spec.membership = membership.realize(n, k, derive_seed(seed, 0xA11CEULL));
  spec.theta = kind == ModelKind::BM
                   ? Vector::Ones(n)
                   : theta.realize(n, derive_seed(seed, 0x7E7AULL));
  spec.validate();
  return spec;
}

// ------------------------------------------------------------- parsing

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Removes a trailing # comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

struct TomlValue {
  enum class Type { Number, String, Array } type = Type::Number;
  double number = 0.0;
  std::string text;
  std::vector<double> array;
  int line = 0;
};

double parse_number(const std::string& tok, int line) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": expected number, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": trailing characters after number in '" +
                                tok + "'");
  return v;
}

TomlValue parse_value(const std::string& raw, int line) {
  TomlValue v;
  v.line = line;
  const std::string s = strip(raw);
  if (s.empty())
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": missing value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw std::invalid_argument("line " + std::to_string(line) +
                                  ": unterminated string");
    v.type = TomlValue::Type::String;
    v.text = s.substr(1, s.size() - 2);
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']')
      throw std::invalid_argument("line " + std::to_string(line) +
                                  ": unterminated array");
    v.type = TomlValue::Type::Array;
    std::string body = s.substr(1, s.size() - 2);
    std::string tok;
    std::stringstream ss(body);
    while (std::getline(ss, tok, ',')) {
      tok = strip(tok);
      if (tok.empty()) continue;
      v.array.push_back(parse_number(tok, line));
    }
    return v;
  }
  v.type = TomlValue::Type::Number;
  v.number = parse_number(s, line);
  return v;
}

using Section = std::map<std::string, TomlValue>;

std::map<std::string, Section> parse_toml_subset(const std::string& text) {
  std::map<std::string, Section> doc;
  std::string current;  // "" = top level
  doc[current];
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = strip(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": malformed section header");
      current = strip(line.substr(1, line.size() - 2));
      if (current.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": empty section name");
      doc[current];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": empty key");
    if (doc[current].count(key))
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    doc[current][key] = parse_value(line.substr(eq + 1), lineno);
  }
  return doc;
}

const TomlValue& require(const Section& sec, const std::string& key,
                         const std::string& where) {
  auto it = sec.find(key);
  if (it == sec.end())
    throw std::invalid_argument("missing required key '" + key + "'" + where);
  return it->second;
}

int as_int(const TomlValue& v, const std::string& key) {
  if (v.type != TomlValue::Type::Number ||
      v.number != std::floor(v.number))
    throw std::invalid_argument("line " + std::to_string(v.line) + ": '" +
                                key + "' must be an integer");
  return static_cast<int>(v.number);
}

void reject_unknown(const Section& sec, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, val] : sec)
    if (!allowed.count(key))
      throw std::invalid_argument("line " + std::to_string(val.line) +
                                  ": unknown key '" + key + "'" + where);
}

}  // namespace

ModelConfig parse_model_config(const std::string& text) {
  const auto doc = parse_toml_subset(text);
  for (const auto& [name, sec] : doc)
    if (name != "" && name != "theta" && name != "membership" &&
        name != "noise")
      throw std::invalid_argument("unknown section [" + name + "]");

  ModelConfig cfg;
  const Section& top = doc.at("");
  reject_unknown(top, {"n", "k", "p", "model"}, "");
  cfg.n = as_int(require(top, "n", ""), "n");
  cfg.k = as_int(require(top, "k", ""), "k");
  const TomlValue& model = require(top, "model", "");
  if (model.type != TomlValue::Type::String)
    throw std::invalid_argument("'model' must be a string");
  cfg.kind = model_kind_from_string(model.text);

  const TomlValue& p = require(top, "p", "");
  if (p.type != TomlValue::Type::Array ||
      static_cast<int>(p.array.size()) != cfg.k * cfg.k)
    throw std::invalid_argument("'p' must be a row-major array of k*k numbers");
  cfg.p = Matrix(cfg.k, cfg.k);
  for (int r = 0; r < cfg.k; ++r)
    for (int c = 0; c < cfg.k; ++c) cfg.p(r, c) = p.array[r * cfg.k + c];

  if (auto it = doc.find("theta"); it != doc.end() && !it->second.empty()) {
    const Section& sec = it->second;
    reject_unknown(sec, {"kind", "params"}, " in [theta]");
    const TomlValue& kind = require(sec, "kind", " in [theta]");
    if (kind.type != TomlValue::Type::String)
      throw std::invalid_argument("theta kind must be a string");
    if (kind.text == "constant") cfg.theta.kind = ThetaSpec::Kind::Constant;
    else if (kind.text == "uniform") cfg.theta.kind = ThetaSpec::Kind::Uniform;
    else if (kind.text == "power") cfg.theta.kind = ThetaSpec::Kind::Power;
    else if (kind.text == "step") cfg.theta.kind = ThetaSpec::Kind::Step;
    else
      throw std::invalid_argument("unknown theta kind: " + kind.text);
    const TomlValue& params = require(sec, "params", " in [theta]");
    if (params.type != TomlValue::Type::Array)
      throw std::invalid_argument("theta params must be an array");
    cfg.theta.params = params.array;
    cfg.theta.validate();
  } else if (cfg.kind != ModelKind::BM) {
    throw std::invalid_argument("[theta] section required for model '" +
                                to_string(cfg.kind) + "'");
  } else {
    cfg.theta = {ThetaSpec::Kind::Constant, {1.0}};
  }

  if (auto it = doc.find("membership"); it != doc.end() && !it->second.empty()) {
    const Section& sec = it->second;
    reject_unknown(sec, {"kind", "list"}, " in [membership]");
    if (auto lt = sec.find("list"); lt != sec.end()) {
      if (lt->second.type != TomlValue::Type::Array)
        throw std::invalid_argument("membership list must be an array");
      cfg.membership.kind = MembershipSpec::Kind::Explicit;
      for (double v : lt->second.array) {
        if (v != std::floor(v))
          throw std::invalid_argument("membership list must hold integers");
        cfg.membership.list.push_back(static_cast<int>(v));
      }
    } else {
      const TomlValue& kind = require(sec, "kind", " in [membership]");
      if (kind.type != TomlValue::Type::String ||
          kind.text != "uniform-random")
        throw std::invalid_argument(
            "membership kind must be \"uniform-random\" (or give list = [...])");
      cfg.membership.kind = MembershipSpec::Kind::UniformRandom;
    }
  }

  if (auto it = doc.find("noise"); it != doc.end() && !it->second.empty()) {
    const Section& sec = it->second;
    reject_unknown(sec, {"kind", "params"}, " in [noise]");
    const TomlValue& kind = require(sec, "kind", " in [noise]");
    if (kind.type != TomlValue::Type::String)
      throw std::invalid_argument("noise kind must be a string");
    if (kind.text == "gaussian") cfg.noise.kind = NoiseSpec::Kind::Gaussian;
    else if (kind.text == "two-point") cfg.noise.kind = NoiseSpec::Kind::TwoPoint;
    else
      throw std::invalid_argument("unknown noise kind: " + kind.text);
    if (auto pt = sec.find("params"); pt != sec.end()) {
      if (pt->second.type != TomlValue::Type::Array ||
          pt->second.array.size() != 1)
        throw std::invalid_argument("noise params must be [spread]");
      cfg.noise.spread = pt->second.array[0];
    }
  }

  if (cfg.n <= 0 || cfg.k <= 0 || cfg.k > cfg.n)
    throw std::invalid_argument("need 0 < k <= n");
  return cfg;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

// -------------------------------------------------------------- digest

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t ModelConfig::digest() const {
  // Canonical rendering: fixed key order, normalized numbers; whitespace and
  // input key order cannot influence it.
  std::string s;
  s += "k=" + std::to_string(k) + ";";
  s += "membership=";
  if (membership.kind == MembershipSpec::Kind::UniformRandom) {
    s += "uniform-random";
  } else {
    for (int v : membership.list) s += std::to_string(v) + ",";
  }
  s += ";model=" + to_string(kind) + ";n=" + std::to_string(n) + ";";
  if (kind == ModelKind::General) {
    s += "noise=";
    s += noise.kind == NoiseSpec::Kind::Gaussian ? "gaussian" : "two-point";
    s += "," + num(noise.spread) + ";";
  }
  s += "p=";
  for (int r = 0; r < p.rows(); ++r)
    for (int c = 0; c < p.cols(); ++c) s += num(p(r, c)) + ",";
  s += ";theta=";
  switch (theta.kind) {
    case ThetaSpec::Kind::Constant: s += "constant"; break;
    case ThetaSpec::Kind::Uniform: s += "uniform"; break;
    case ThetaSpec::Kind::Power: s += "power"; break;
    case ThetaSpec::Kind::Step: s += "step"; break;
  }
  for (double v : theta.params) s += "," + num(v);
  return fnv1a(s);
}

// ----------------------------------------------------------- edge list

Matrix read_edge_list(const std::string& path, int index_base, bool force_ones,
                      int declared_n) {
  if (index_base != 0 && index_base != 1)
    throw std::invalid_argument("index base must be 0 or 1");
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list: " + path);

  std::vector<std::pair<int, int>> edges;
  int max_idx = -1;
  std::string line;
  int lineno = 0;
  bool any_token = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(strip_comment(line));
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tu, tv, extra;
    ss >> tu >> tv;
    if (tv.empty())
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected two indices");
    if (ss >> extra)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": unexpected trailing token '" + extra + "'");
    any_token = true;
    long u, v;
    try {
      std::size_t pu = 0, pv = 0;
      u = std::stol(tu, &pu);
      v = std::stol(tv, &pv);
      if (pu != tu.size() || pv != tv.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": non-integer token");
    }
    u -= index_base;
    v -= index_base;
    if (u < 0 || v < 0)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": negative node index after rebasing");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_idx = std::max(max_idx, static_cast<int>(std::max(u, v)));
  }
  if (!any_token) throw std::invalid_argument("empty edge list: " + path);

  const int n = declared_n > 0 ? declared_n : max_idx + 1;
  if (max_idx >= n)
    throw std::invalid_argument("node index " + std::to_string(max_idx) +
                                " exceeds declared node count " +
                                std::to_string(n));
  Matrix a = Matrix::Zero(n, n);
  for (auto [u, v] : edges) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  if (force_ones)
    for (int i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

void write_edge_list(const Matrix& a, const std::string& path, int index_base) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  const int n = static_cast<int>(a.rows());
  out << "# nodes: " << n << "\n";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) >= 0.5)
        out << (i + index_base) << " " << (j + index_base) << "\n";
}

LabelFile read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open label file: " + path);
  LabelFile lf;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(strip_comment(line));
    if (line.empty()) continue;
    try {
      std::size_t pos = 0;
      const long v = std::stol(line, &pos);
      if (pos != line.size()) throw std::invalid_argument("");
      lf.labels.push_back(static_cast<int>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": non-integer label");
    }
  }
  if (lf.labels.empty())
    throw std::invalid_argument("empty label file: " + path);

  // Compact to 1..K preserving numeric order.
  std::set<int> uniq(lf.labels.begin(), lf.labels.end());
  std::map<int, int> remap;
  int next = 1;
  for (int v : uniq) remap[v] = next++;
  for (int& v : lf.labels) {
    if (remap[v] != v) lf.remapped = true;
    v = remap[v];
  }
  return lf;
}

void write_labels_csv(const Labels& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write labels: " + path);
  out << "node_id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << "," << labels[i] << "\n";
}

std::pair<Matrix, std::vector<int>> largest_component(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> comp(n, -1);
  int best_root = -1, best_size = 0, n_comp = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int size = 0;
    stack.push_back(s);
    comp[s] = n_comp;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++size;
      for (int v = 0; v < n; ++v)
        if (v != u && a(u, v) > 0.0 && comp[v] < 0) {
          comp[v] = n_comp;
          stack.push_back(v);
        }
    }
    if (size > best_size) {
      best_size = size;
      best_root = n_comp;
    }
    ++n_comp;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (comp[i] == best_root) keep.push_back(i);
  Matrix sub(best_size, best_size);
  for (int i = 0; i < best_size; ++i)
    for (int j = 0; j < best_size; ++j) sub(i, j) = a(keep[i], keep[j]);
  return {sub, keep};
}

}  // namespace speccomm
