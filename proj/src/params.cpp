#include "ghsim/params.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ghsim {

ParameterSet ParameterSet::preset(const std::string& name) {
  ParameterSet p;
  p.name = name;
  if (name == "C0") {
    p.uld_ac_gse = 7.1;
    p.uld_gse_tb = 45.0;
    p.icu_general = 5.0;
    p.p463l_ac_gse = 7.5;
    p.board_civ = 60.0;
    p.board_mil = 30.0;
  } else if (name == "C3") {
    // boarding and military pallet rates recalibrated, civilian cargo rates kept
    p.uld_ac_gse = 7.1;
    p.uld_gse_tb = 45.0;
    p.icu_general = 5.0;
    p.p463l_ac_gse = 10.0;
    p.board_civ = 47.0;
    p.board_mil = 22.5;
  } else if (name == "C6") {
    p.uld_ac_gse = 5.7;
    p.uld_gse_tb = 40.0;
    p.icu_general = 4.5;
    p.p463l_ac_gse = 10.0;
    p.board_civ = 47.0;
    p.board_mil = 22.5;
  } else {
    throw SimError("unknown parameter preset: " + name + " (expected C0, C3 or C6)");
  }
  return p;
}

ParameterSet ParameterSet::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("cannot read parameter file: " + path);
  ParameterSet p;
  p.name = path;
  std::map<std::string, double*> fields = {
      {"uld_ac_gse", &p.uld_ac_gse},     {"uld_gse_tb", &p.uld_gse_tb},
      {"icu_general", &p.icu_general},   {"p463l_ac_gse", &p.p463l_ac_gse},
      {"board_civ", &p.board_civ},       {"board_mil", &p.board_mil},
  };
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "name") {
      p.name = val;
      continue;
    }
    auto it = fields.find(key);
    if (it == fields.end()) throw SimError("unknown parameter key: " + key);
    *it->second = std::stod(val);
  }
  for (auto& [k, v] : fields)
    if (*v <= 0.0) throw SimError("parameter " + k + " must be positive");
  return p;
}

void ParameterSet::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw SimError("cannot write parameter file: " + path);
  out << "name = " << name << "\n";
  out << "uld_ac_gse = " << uld_ac_gse << "\n";
  out << "uld_gse_tb = " << uld_gse_tb << "\n";
  out << "icu_general = " << icu_general << "\n";
  out << "p463l_ac_gse = " << p463l_ac_gse << "\n";
  out << "board_civ = " << board_civ << "\n";
  out << "board_mil = " << board_mil << "\n";
}

}  // namespace ghsim
