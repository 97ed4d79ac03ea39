#include "plbvp/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "plbvp/errors.hpp"

namespace plbvp {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Scalar parse_number(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  char* end = nullptr;
  const Scalar v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ConfigError("config: invalid number for '" + key + "': " + t);
  return v;
}

std::vector<Scalar> parse_number_list(const std::string& s,
                                      const std::string& key) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw ConfigError("config: '" + key + "' must be a [a, b, ...] list");
  std::vector<Scalar> out;
  std::string inner = t.substr(1, t.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_number(item, key));
  if (out.empty())
    throw ConfigError("config: '" + key + "' must not be empty");
  return out;
}

std::string format_number(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PolyNonlinearity ProblemConfig::nonlinearity() const {
  Array c(static_cast<Index>(coeffs.size()));
  for (size_t i = 0; i < coeffs.size(); ++i) c[static_cast<Index>(i)] = coeffs[i];
  return PolyNonlinearity(std::move(c), gamma);
}

ProblemConfig parse_config(const std::string& text) {
  ProblemConfig cfg;
  std::set<std::string> seen;
  std::string section;

  std::stringstream stream(text);
  std::string raw;
  size_t line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "tolerances")
        throw ConfigError("config: unknown section [" + section + "]");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " +
                        std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!seen.insert(qualified).second)
      throw ConfigError("config: duplicate key '" + qualified + "'");

    if (section.empty()) {
      if (key == "p")
        cfg.p = parse_number(value, key);
      else if (key == "gamma")
        cfg.gamma = parse_number(value, key);
      else if (key == "coeffs")
        cfg.coeffs = parse_number_list(value, key);
      else if (key == "u_max")
        cfg.u_max = parse_number(value, key);
      else
        throw ConfigError("config: unknown key '" + key + "'");
    } else {
      if (key == "quad_rel_tol")
        cfg.tolerances.quad_rel_tol = parse_number(value, key);
      else if (key == "rk_tol")
        cfg.tolerances.rk_tol = parse_number(value, key);
      else if (key == "profile_tol")
        cfg.tolerances.profile_tol = parse_number(value, key);
      else
        throw ConfigError("config: unknown key 'tolerances." + key + "'");
    }
  }

  if (!seen.count("p")) throw ConfigError("config: missing key 'p'");
  if (!seen.count("coeffs")) throw ConfigError("config: missing key 'coeffs'");
  if (!seen.count("gamma")) throw ConfigError("config: missing key 'gamma'");
  if (!(cfg.p > 1)) throw ConfigError("config: p must be > 1");
  if (!(cfg.gamma > 0)) throw ConfigError("config: gamma must be > 0");
  if (cfg.u_max && !(*cfg.u_max > cfg.gamma))
    throw ConfigError("config: u_max must exceed gamma");
  return cfg;
}

std::string serialize_config(const ProblemConfig& cfg) {
  std::string out;
  out += "p = " + format_number(cfg.p) + "\n";
  out += "gamma = " + format_number(cfg.gamma) + "\n";
  out += "coeffs = [";
  for (size_t i = 0; i < cfg.coeffs.size(); ++i) {
    if (i) out += ", ";
    out += format_number(cfg.coeffs[i]);
  }
  out += "]\n";
  if (cfg.u_max) out += "u_max = " + format_number(*cfg.u_max) + "\n";
  out += "\n[tolerances]\n";
  out += "quad_rel_tol = " + format_number(cfg.tolerances.quad_rel_tol) + "\n";
  out += "rk_tol = " + format_number(cfg.tolerances.rk_tol) + "\n";
  out += "profile_tol = " + format_number(cfg.tolerances.profile_tol) + "\n";
  return out;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace plbvp
