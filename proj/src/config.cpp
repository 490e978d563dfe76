#include "trivext/config.hpp"

#include <fstream>
#include <sstream>

#include "trivext/errors.hpp"

namespace trivext {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::load_file(const std::string& path) {
  Config cfg;
  cfg.apply_file(path);
  return cfg;
}

void Config::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Usage, path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    uint64_t num = 0;
    try {
      num = std::stoull(val);
    } catch (...) {
      fail(ErrorKind::Usage, path + ":" + std::to_string(lineno) + ": bad number " + val);
    }
    if (key == "depth") depth = static_cast<int>(num);
    else if (key == "budget") budget = num;
    else if (key == "axiom_check_cutoff") axiom_check_cutoff = num;
    else if (key == "table_cutoff") table_cutoff = num;
    else if (key == "ideal_enum_cutoff") ideal_enum_cutoff = num;
    else if (key == "iso_search_cutoff") iso_search_cutoff = num;
    else if (key == "quotient_cutoff") quotient_cutoff = num;
    else if (key == "seed") seed = num;
    else if (key == "lcg_multiplier") lcg_multiplier = num;
    else if (key == "lcg_increment") lcg_increment = num;
    else fail(ErrorKind::Usage, path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
}

}  // namespace trivext
