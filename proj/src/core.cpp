#include "fpr/core.hpp"

#include <algorithm>
#include <set>

namespace fpr {

const char* to_string(Rule rule) {
  return rule == Rule::kMonroe ? "monroe" : "cc";
}

Rule rule_from_string(const std::string& name) {
  if (name == "monroe") return Rule::kMonroe;
  if (name == "cc") return Rule::kCC;
  throw std::invalid_argument("unknown rule: " + name);
}

PreferenceProfile::PreferenceProfile(int m, std::vector<std::vector<int>> rankings,
                                     std::vector<std::string> labels)
    : m_(m), rankings_(std::move(rankings)), labels_(std::move(labels)) {
  if (m_ < 1) throw std::invalid_argument("profile: m must be >= 1");
  if (rankings_.empty()) throw std::invalid_argument("profile: n must be >= 1");
  positions_.assign(rankings_.size(), std::vector<int>(m_, 0));
  for (std::size_t i = 0; i < rankings_.size(); ++i) {
    const auto& order = rankings_[i];
    if (static_cast<int>(order.size()) != m_)
      throw std::invalid_argument("profile: agent " + std::to_string(i + 1) +
                                  ": ranking length differs from m");
    auto& pos = positions_[i];
    for (int r = 0; r < m_; ++r) {
      int alt = order[r];
      if (alt < 1 || alt > m_)
        throw std::invalid_argument("profile: agent " + std::to_string(i + 1) +
                                    ": alternative id out of range");
      if (pos[alt - 1] != 0)
        throw std::invalid_argument("profile: agent " + std::to_string(i + 1) +
                                    ": ranking is not a permutation");
      pos[alt - 1] = r + 1;
    }
  }
  if (labels_.empty()) {
    labels_.reserve(m_);
    for (int a = 1; a <= m_; ++a) labels_.push_back("a" + std::to_string(a));
  } else if (static_cast<int>(labels_.size()) != m_) {
    throw std::invalid_argument("profile: label count differs from m");
  }
}

void PreferenceProfile::check_agent(int agent) const {
  if (agent < 1 || agent > agent_count())
    throw std::invalid_argument("profile: agent id out of range");
}

int PreferenceProfile::position(int agent, int alt) const {
  check_agent(agent);
  if (alt == kNullAlternative) return m_;
  if (alt < 1 || alt > m_)
    throw std::invalid_argument("profile: alternative id out of range");
  return positions_[agent - 1][alt - 1];
}

int PreferenceProfile::alternative_at(int agent, int rank) const {
  check_agent(agent);
  if (rank < 1 || rank > m_) throw std::invalid_argument("profile: rank out of range");
  return rankings_[agent - 1][rank - 1];
}

const std::vector<int>& PreferenceProfile::ranking(int agent) const {
  check_agent(agent);
  return rankings_[agent - 1];
}

bool PreferenceProfile::operator==(const PreferenceProfile& other) const {
  return m_ == other.m_ && rankings_ == other.rankings_ && labels_ == other.labels_;
}

ScoringFunction::ScoringFunction(std::vector<Satisfaction> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw std::invalid_argument("psf: must have at least one entry");
  if (alpha_.back() != 0) throw std::invalid_argument("psf: alpha(m) must be 0");
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] < 0) throw std::invalid_argument("psf: entries must be nonnegative");
    if (i > 0 && alpha_[i] > alpha_[i - 1])
      throw std::invalid_argument("psf: entries must be nonincreasing");
  }
}

ScoringFunction ScoringFunction::borda(int m) {
  if (m < 1) throw std::invalid_argument("psf: m must be >= 1");
  std::vector<Satisfaction> alpha(m);
  for (int i = 0; i < m; ++i) alpha[i] = m - i - 1;
  return ScoringFunction(std::move(alpha));
}

Satisfaction ScoringFunction::at(int rank) const {
  if (rank < 1 || rank > size()) throw std::invalid_argument("psf: rank out of range");
  return alpha_[rank - 1];
}

bool ScoringFunction::is_borda() const {
  for (std::size_t i = 0; i < alpha_.size(); ++i)
    if (alpha_[i] != static_cast<Satisfaction>(alpha_.size() - i - 1)) return false;
  return true;
}

Assignment::Assignment(Rule rule, int committee_size, std::vector<int> rep_in)
    : rule(rule), committee_size(committee_size), rep(std::move(rep_in)) {
  if (committee_size < 0) throw std::invalid_argument("assignment: K must be >= 0");
  std::set<int> distinct;
  for (int alt : rep) {
    if (alt < 0) throw std::invalid_argument("assignment: bad alternative id");
    if (alt != kNullAlternative) distinct.insert(alt);
  }
  winners.assign(distinct.begin(), distinct.end());
  if (static_cast<int>(winners.size()) > committee_size)
    throw std::invalid_argument("assignment: more winners than committee seats");
  if (rule == Rule::kCC && !winners.empty() && !complete())
    throw std::invalid_argument("assignment: CC assignments must be complete");
}

bool Assignment::complete() const {
  return std::none_of(rep.begin(), rep.end(),
                      [](int alt) { return alt == kNullAlternative; });
}

std::vector<int> Assignment::loads(int m) const {
  std::vector<int> load(m, 0);
  for (int alt : rep) {
    if (alt == kNullAlternative) continue;
    if (alt > m) throw std::invalid_argument("assignment: alternative id exceeds m");
    ++load[alt - 1];
  }
  return load;
}

CapacityFunction CapacityFunction::uniform(int m, const std::vector<int>& members, int bound,
                                           bool floor_required) {
  if (bound < 0) throw std::invalid_argument("capacity: bound must be >= 0");
  CapacityFunction caps;
  caps.cap.assign(m, 0);
  for (int alt : members) {
    if (alt < 1 || alt > m) throw std::invalid_argument("capacity: alternative id out of range");
    caps.cap[alt - 1] = bound;
  }
  caps.floor_required = floor_required;
  return caps;
}

Satisfaction satisfaction(const PreferenceProfile& profile, const ScoringFunction& psf,
                          const Assignment& assignment) {
  if (psf.size() != profile.alternative_count())
    throw std::invalid_argument("satisfaction: psf length differs from m");
  if (static_cast<int>(assignment.rep.size()) != profile.agent_count())
    throw std::invalid_argument("satisfaction: assignment length differs from n");
  Satisfaction total = 0;
  for (int i = 1; i <= profile.agent_count(); ++i)
    total += psf.at(profile.position(i, assignment.rep[i - 1]));
  return total;
}

Satisfaction ideal_satisfaction(const PreferenceProfile& profile, const ScoringFunction& psf) {
  if (psf.size() != profile.alternative_count())
    throw std::invalid_argument("ideal_satisfaction: psf length differs from m");
  return static_cast<Satisfaction>(profile.agent_count()) * psf.top();
}

MonroeValidity validate_monroe(const Assignment& assignment, int n, int committee_size) {
  if (assignment.rule != Rule::kMonroe)
    throw std::invalid_argument("validate_monroe: assignment is not a Monroe assignment");
  if (committee_size < 1) throw std::invalid_argument("validate_monroe: K must be >= 1");
  if (static_cast<int>(assignment.rep.size()) != n)
    throw std::invalid_argument("validate_monroe: assignment length differs from n");

  MonroeValidity report;
  report.partial = !assignment.complete();
  int floor_load = n / committee_size;
  int ceil_load = (n + committee_size - 1) / committee_size;

  std::vector<int> counted;
  for (int alt : assignment.rep)
    if (alt != kNullAlternative) {
      if (static_cast<int>(counted.size()) < alt) counted.resize(alt, 0);
      ++counted[alt - 1];
    }
  for (std::size_t a = 0; a < counted.size(); ++a) {
    int load = counted[a];
    if (load == 0) continue;
    if (load > ceil_load)
      report.violations.push_back("alternative " + std::to_string(a + 1) + ": load " +
                                  std::to_string(load) + " exceeds ceil(n/K) = " +
                                  std::to_string(ceil_load));
    if (!report.partial && load < floor_load)
      report.violations.push_back("alternative " + std::to_string(a + 1) + ": load " +
                                  std::to_string(load) + " below floor(n/K) = " +
                                  std::to_string(floor_load));
  }
  if (static_cast<int>(assignment.winners.size()) > committee_size)
    report.violations.push_back("winner count exceeds K");
  if (!report.partial && static_cast<int>(assignment.winners.size()) != committee_size)
    report.violations.push_back("complete assignment uses " +
                                std::to_string(assignment.winners.size()) +
                                " winners, expected K = " + std::to_string(committee_size));
  report.ok = report.violations.empty();
  return report;
}

}  // namespace fpr
