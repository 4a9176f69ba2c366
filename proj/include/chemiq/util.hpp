#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace chemiq {

uint64_t fnv1a64(std::string_view data);
uint64_t splitmix64(uint64_t x);

// Deterministic random source. All draws go through hand-rolled primitives so
// that output is reproducible across standard libraries; std::*_distribution
// is implementation-defined and must not be used with this engine.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed)
      : eng_(splitmix64(seed)), base_seed_(seed) {}

  uint64_t seed() const { return base_seed_; }
  uint64_t next() { return eng_(); }

  // unbiased integer in [0, n), n >= 1
  int uniform_below(int n);
  // inclusive range
  int uniform_int(int lo, int hi) { return lo + uniform_below(hi - lo + 1); }
  double uniform01();
  // Box-Muller, one value per call
  double gaussian(double mean, double sd);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_below(static_cast<int>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream for a named sub-task; depends only on the seed
  // this source was constructed with, not on draws made so far.
  RandomSource fork(std::string_view label) const {
    return RandomSource(base_seed_ ^ fnv1a64(label));
  }

 private:
  std::mt19937_64 eng_;
  uint64_t base_seed_;
};

// text helpers
std::vector<std::string> split_ws(const std::string& s);
std::string trim(const std::string& s);
bool starts_with(const std::string& s, const std::string& prefix);
bool ends_with(const std::string& s, const std::string& suffix);

// Shortest decimal rendering: 7.6 -> "7.6", 21.0 -> "21", 138.07 -> "138.07".
std::string format_shift(double v);
// Fixed one-decimal rendering used by report percentages.
std::string format_pct(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::vector<std::string> read_lines(const std::string& path);

// Minimal CSV, one record per line. csv_field quotes when the value contains
// a comma, quote, or newline; parse_csv_line undoes it.
std::string csv_field(const std::string& value);
std::vector<std::string> parse_csv_line(const std::string& line);

}  // namespace chemiq
