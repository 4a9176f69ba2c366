#include "elements.hpp"

#include <unordered_map>
#include <unordered_set>

namespace chemiq::detail {

namespace {

const std::unordered_set<std::string>& element_set() {
  static const std::unordered_set<std::string> s = {
      "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
      "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
      "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
      "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
      "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
      "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
      "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
      "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
      "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
      "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};
  return s;
}

}  // namespace

bool is_known_element(const std::string& symbol) {
  return symbol == "*" || element_set().count(symbol) > 0;
}

const std::vector<int>& valence_list(const std::string& symbol) {
  static const std::vector<int> kB = {3};
  static const std::vector<int> kC = {4};
  static const std::vector<int> kN = {3, 5};
  static const std::vector<int> kO = {2};
  static const std::vector<int> kP = {3, 5};
  static const std::vector<int> kS = {2, 4, 6};
  static const std::vector<int> kHal = {1};
  static const std::vector<int> kNone = {};
  if (symbol == "B") return kB;
  if (symbol == "C") return kC;
  if (symbol == "N") return kN;
  if (symbol == "O") return kO;
  if (symbol == "P") return kP;
  if (symbol == "S") return kS;
  if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I") return kHal;
  return kNone;
}

bool organic_subset(const std::string& symbol) {
  return !valence_list(symbol).empty();
}

bool aromatic_organic(const std::string& symbol) {
  return symbol == "b" || symbol == "c" || symbol == "n" || symbol == "o" ||
         symbol == "p" || symbol == "s";
}

std::optional<std::string> bracket_aromatic_to_element(const std::string& lower) {
  if (lower == "b") return "B";
  if (lower == "c") return "C";
  if (lower == "n") return "N";
  if (lower == "o") return "O";
  if (lower == "p") return "P";
  if (lower == "s") return "S";
  if (lower == "se") return "Se";
  if (lower == "as") return "As";
  if (lower == "te") return "Te";
  return std::nullopt;
}

std::optional<double> atomic_weight(const std::string& symbol) {
  static const std::unordered_map<std::string, double> w = {
      {"H", 1.008},    {"He", 4.0026},  {"Li", 6.94},    {"Be", 9.0122},
      {"B", 10.81},    {"C", 12.011},   {"N", 14.007},   {"O", 15.999},
      {"F", 18.998},   {"Ne", 20.180},  {"Na", 22.990},  {"Mg", 24.305},
      {"Al", 26.982},  {"Si", 28.085},  {"P", 30.974},   {"S", 32.06},
      {"Cl", 35.45},   {"Ar", 39.95},   {"K", 39.098},   {"Ca", 40.078},
      {"Ti", 47.867},  {"Cr", 51.996},  {"Mn", 54.938},  {"Fe", 55.845},
      {"Co", 58.933},  {"Ni", 58.693},  {"Cu", 63.546},  {"Zn", 65.38},
      {"Ga", 69.723},  {"Ge", 72.630},  {"As", 74.922},  {"Se", 78.971},
      {"Br", 79.904},  {"Kr", 83.798},  {"Rb", 85.468},  {"Sr", 87.62},
      {"Zr", 91.224},  {"Mo", 95.95},   {"Ru", 101.07},  {"Rh", 102.91},
      {"Pd", 106.42},  {"Ag", 107.87},  {"Cd", 112.41},  {"In", 114.82},
      {"Sn", 118.71},  {"Sb", 121.76},  {"Te", 127.60},  {"I", 126.90},
      {"Xe", 131.29},  {"Cs", 132.91},  {"Ba", 137.33},  {"W", 183.84},
      {"Pt", 195.08},  {"Au", 196.97},  {"Hg", 200.59},  {"Tl", 204.38},
      {"Pb", 207.2},   {"Bi", 208.98}};
  auto it = w.find(symbol);
  if (it == w.end()) return std::nullopt;
  return it->second;
}

}  // namespace chemiq::detail
