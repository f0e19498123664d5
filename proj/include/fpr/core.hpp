#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fpr {

// Satisfaction totals are 64-bit: desk-scale inputs (n <= 1e6, alpha <= 1e6)
// cannot overflow.
using Satisfaction = long long;

// The null alternative: an unrepresented agent scores as if matched to its
// last-ranked alternative.
inline constexpr int kNullAlternative = 0;

enum class Rule { kMonroe, kCC };

const char* to_string(Rule rule);
Rule rule_from_string(const std::string& name);

// Raised when an instance exceeds a configured enumeration limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strict preference orders of n agents over m alternatives. Agent ids are
// 1..n and alternative ids 1..m. Immutable after construction.
class PreferenceProfile {
 public:
  // `rankings[i]` lists agent i+1's alternatives most-preferred first and
  // must be a permutation of 1..m. Labels default to "a1".."am".
  PreferenceProfile(int m, std::vector<std::vector<int>> rankings,
                    std::vector<std::string> labels = {});

  int alternative_count() const { return m_; }
  int agent_count() const { return static_cast<int>(rankings_.size()); }

  // Rank of `alt` in `agent`'s order, 1 = most preferred. The null
  // alternative ranks m.
  int position(int agent, int alt) const;

  // Alternative at `rank` (1-based) in `agent`'s order.
  int alternative_at(int agent, int rank) const;

  const std::vector<int>& ranking(int agent) const;
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const PreferenceProfile& other) const;
  bool operator!=(const PreferenceProfile& other) const { return !(*this == other); }

 private:
  void check_agent(int agent) const;

  int m_ = 0;
  std::vector<std::vector<int>> rankings_;   // [agent-1][rank-1] = alternative
  std::vector<std::vector<int>> positions_;  // [agent-1][alt-1] = rank
  std::vector<std::string> labels_;
};

// Positional scoring function: nonincreasing nonnegative integers with
// alpha(m) = 0.
class ScoringFunction {
 public:
  explicit ScoringFunction(std::vector<Satisfaction> alpha);

  // Borda: alpha(i) = m - i.
  static ScoringFunction borda(int m);

  int size() const { return static_cast<int>(alpha_.size()); }
  Satisfaction at(int rank) const;
  Satisfaction top() const { return alpha_.front(); }
  bool is_borda() const;
  const std::vector<Satisfaction>& values() const { return alpha_; }

  bool operator==(const ScoringFunction& other) const { return alpha_ == other.alpha_; }

 private:
  std::vector<Satisfaction> alpha_;
};

// A (possibly partial) representation function: rep[i] is agent i+1's
// alternative, or kNullAlternative.
struct Assignment {
  Rule rule = Rule::kCC;
  int committee_size = 0;  // K
  std::vector<int> rep;
  std::vector<int> winners;  // sorted distinct assigned alternatives

  Assignment() = default;
  Assignment(Rule rule, int committee_size, std::vector<int> rep);

  bool complete() const;
  // Load of every alternative 1..m under this assignment.
  std::vector<int> loads(int m) const;
};

// Per-alternative load bounds. cap[a-1] = 0 excludes alternative a. When
// floor_required is set the Monroe lower bound floor(n/K) applies as well;
// this is only meaningful for the uniform ceil(n/K) capacities of a full
// K-member committee.
struct CapacityFunction {
  std::vector<int> cap;
  bool floor_required = false;

  static CapacityFunction uniform(int m, const std::vector<int>& members, int bound,
                                  bool floor_required = false);
};

Satisfaction satisfaction(const PreferenceProfile& profile, const ScoringFunction& psf,
                          const Assignment& assignment);

// n * alpha(1): the satisfaction if every agent got its top choice.
Satisfaction ideal_satisfaction(const PreferenceProfile& profile, const ScoringFunction& psf);

struct MonroeValidity {
  bool ok = false;
  bool partial = false;
  std::vector<std::string> violations;
};

// Diagnostic check of the Monroe load constraints. Complete assignments must
// have exactly K winners, each serving between floor(n/K) and ceil(n/K)
// agents; partial assignments are checked against the upper bound only.
MonroeValidity validate_monroe(const Assignment& assignment, int n, int committee_size);

}  // namespace fpr
