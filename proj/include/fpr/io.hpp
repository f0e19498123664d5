#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fpr/core.hpp"

namespace fpr {

// Parse failure with the offending 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Profile text format (ASCII, LF newlines, single spaces, no trailing
// whitespace; lines starting with '#' and blank lines are ignored):
//
//   <m>
//   <id> <label>          x m, ids 1..m in order
//   <n> <n_groups>
//   <count>: <id_1> ... <id_m>   x n_groups, most preferred first
//
// Group multiplicities must sum to n. Agents are numbered in file order.
PreferenceProfile read_profile(std::istream& in);
PreferenceProfile read_profile_file(const std::string& path);

// Canonical form: identical consecutive rankings are grouped; equal profiles
// serialize to identical bytes.
void write_profile(const PreferenceProfile& profile, std::ostream& out);
std::string write_profile_string(const PreferenceProfile& profile);
void write_profile_file(const PreferenceProfile& profile, const std::string& path,
                        const std::string& comment = {});

// PSF file: one line of m space-separated nonincreasing integers ending in 0.
ScoringFunction read_psf(std::istream& in);
ScoringFunction read_psf_file(const std::string& path);
std::string write_psf_string(const ScoringFunction& psf);

struct ResultRecord {
  std::string algorithm;
  std::string rule;
  std::string psf;
  int m = 0;
  int n = 0;
  int k = 0;
  std::optional<int> d;
  std::optional<int> samples;
  std::uint64_t seed = 0;
  Satisfaction satisfaction = 0;
  Satisfaction c_ideal = 0;
  double ratio_ideal = 0.0;
  std::optional<Satisfaction> c_opt;
  std::optional<double> ratio_opt;
  double time_ms = 0.0;

  bool operator==(const ResultRecord&) const = default;
};

extern const char* const kResultsCsvHeader;

// Header plus one line per record; ratios at 6 decimal places, times at 3,
// optional fields empty.
std::string write_results_csv(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_results_csv(std::istream& in);

std::string format_ratio(double value);

}  // namespace fpr
