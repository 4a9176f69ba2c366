#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "chemiq/grade.hpp"

namespace chemiq {
namespace {

struct NumberToken {
  std::string text;
  bool has_fraction = false;
};

// All [-+]?digits[.digits] runs, in order of appearance.
std::vector<NumberToken> number_tokens(const std::string& text) {
  std::vector<NumberToken> out;
  size_t i = 0;
  while (i < text.size()) {
    size_t start = i;
    if ((text[i] == '+' || text[i] == '-') && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      ++i;
    }
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      bool frac = false;
      if (i + 1 < text.size() && text[i] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        frac = true;
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      out.push_back({text.substr(start, i - start), frac});
    } else {
      i = start + 1;
    }
  }
  return out;
}

std::optional<std::string> last_integer(const std::string& text) {
  const auto tokens = number_tokens(text);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it)
    if (!it->has_fraction) return it->text;
  return std::nullopt;
}

std::optional<std::string> last_number(const std::string& text) {
  const auto tokens = number_tokens(text);
  if (tokens.empty()) return std::nullopt;
  return tokens.back().text;
}

std::vector<std::pair<int, int>> find_pairs(const std::string& text) {
  static const std::regex pair_re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::vector<std::pair<int, int>> pairs;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), pair_re);
       it != std::sregex_iterator(); ++it)
    pairs.emplace_back(std::stoi((*it)[1]), std::stoi((*it)[2]));
  return pairs;
}

std::string render_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::string out = "[";
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(pairs[i].first) + ", " + std::to_string(pairs[i].second) + ")";
  }
  out += "]";
  return out;
}

// The last bracketed span holding at least one (i, j) pair, normalized onto a
// single line; bracket-free responses fall back to every pair in the text.
std::optional<std::string> tuple_list(const std::string& text) {
  size_t open = text.rfind('[');
  while (open != std::string::npos) {
    const size_t close = text.find(']', open);
    if (close != std::string::npos) {
      const auto pairs = find_pairs(text.substr(open, close - open + 1));
      if (!pairs.empty()) return render_pairs(pairs);
    }
    if (open == 0) break;
    open = text.rfind('[', open - 1);
  }
  const auto pairs = find_pairs(text);
  if (!pairs.empty()) return render_pairs(pairs);
  return std::nullopt;
}

bool is_smiles_char(char c, bool bracketed) {
  static const std::string specials = "()[]=#$%+-@/\\.:0123456789*";
  if (specials.find(c) != std::string::npos) return true;
  if (bracketed) return std::isalpha(static_cast<unsigned char>(c)) != 0;
  static const std::string letters = "BCNOPSFIHbcnopslr";  // elements + Cl/Br tails
  return letters.find(c) != std::string::npos;
}

bool has_atom_letter(const std::string& s) {
  static const std::string atoms = "BCNOPSFIbcnops";
  for (char c : s)
    if (atoms.find(c) != std::string::npos) return true;
  return false;
}

// Strips quoting and prose punctuation a model may wrap around a SMILES
// string, leaving structural characters alone.
std::string strip_token(std::string t) {
  auto drop_front = [&](char c) { return c == '`' || c == '"' || c == '\'' || c == '*' || c == '_'; };
  while (!t.empty() && drop_front(t.front())) t.erase(t.begin());
  bool changed = true;
  while (changed && !t.empty()) {
    changed = false;
    char back = t.back();
    if (back == '`' || back == '"' || back == '\'' || back == '*' || back == '_' ||
        back == '.' || back == ',' || back == ';' || back == ':' || back == '!' ||
        back == '?') {
      t.pop_back();
      changed = true;
    } else if (back == ')' || back == ']') {
      // only trim wrapping punctuation, never a balanced SMILES branch/bracket
      const char open = back == ')' ? '(' : '[';
      long depth = 0;
      for (char c : t) {
        if (c == open) ++depth;
        if (c == back) --depth;
      }
      if (depth < 0) {
        t.pop_back();
        changed = true;
      }
    }
  }
  // prose-style wrapping as in "(CCO)": peel only when the opening paren
  // matches the final character
  while (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
    long depth = 0;
    bool wraps = true;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') --depth;
      if (depth == 0 && i + 1 < t.size()) {
        wraps = false;
        break;
      }
    }
    if (!wraps) break;
    t = t.substr(1, t.size() - 2);
  }
  return t;
}

bool looks_like_smiles(const std::string& t) {
  if (t.empty() || !has_atom_letter(t)) return false;
  if (t == "I") return false;  // far more likely the pronoun than iodine
  const bool bracketed = t.find('[') != std::string::npos;
  for (char c : t)
    if (!is_smiles_char(c, bracketed)) return false;
  return true;
}

std::optional<std::string> last_smiles_token(const std::string& text) {
  const auto tokens = split_ws(text);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const std::string t = strip_token(*it);
    if (looks_like_smiles(t)) return t;
  }
  return std::nullopt;
}

std::optional<std::string> trailing_line(const std::string& text) {
  size_t end = text.size();
  while (end > 0) {
    size_t start = text.rfind('\n', end - 1);
    const size_t from = (start == std::string::npos) ? 0 : start + 1;
    std::string line = trim(text.substr(from, end - from));
    if (starts_with(line, "- ")) line.erase(0, 2);
    while (!line.empty() && (line.front() == '`' || line.front() == '*' || line.front() == '"'))
      line.erase(line.begin());
    while (!line.empty() &&
           (line.back() == '`' || line.back() == '*' || line.back() == '"' || line.back() == '.'))
      line.pop_back();
    line = trim(line);
    if (!line.empty()) return line;
    if (start == std::string::npos) break;
    end = start;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> extract_answer(const std::string& text, AnswerSpec::Kind kind) {
  switch (kind) {
    case AnswerSpec::Kind::ExactInteger:
      return last_integer(text);
    case AnswerSpec::Kind::NumericRange:
      return last_number(text);
    case AnswerSpec::Kind::TupleMapping:
      return tuple_list(text);
    case AnswerSpec::Kind::SmilesEquivalent:
      return last_smiles_token(text);
    case AnswerSpec::Kind::IupacParsesTo:
      return trailing_line(text);
  }
  return std::nullopt;
}

}  // namespace chemiq
