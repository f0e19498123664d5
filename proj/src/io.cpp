#include "fpr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fpr {

namespace {

// Reads the next content line, skipping blanks and '#' comments. Returns
// false at end of input; `line_no` tracks the physical line number.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) fields.push_back(token);
  return fields;
}

long long parse_int(const std::string& token, int line_no, const char* what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected integer for ") + what);
  }
  if (used != token.size())
    throw ParseError(line_no, std::string("expected integer for ") + what);
  return value;
}

}  // namespace

PreferenceProfile read_profile(std::istream& in) {
  int line_no = 0;
  std::string line;

  if (!next_content_line(in, line, line_no)) throw ParseError(line_no + 1, "missing m");
  auto fields = split_fields(line);
  if (fields.size() != 1) throw ParseError(line_no, "expected a single integer m");
  int m = static_cast<int>(parse_int(fields[0], line_no, "m"));
  if (m < 1) throw ParseError(line_no, "m must be >= 1");

  std::vector<std::string> labels;
  labels.reserve(m);
  for (int a = 1; a <= m; ++a) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no + 1, "missing label line for alternative " + std::to_string(a));
    std::size_t space = line.find(' ');
    if (space == std::string::npos)
      throw ParseError(line_no, "expected '<id> <label>'");
    long long id = parse_int(line.substr(0, space), line_no, "alternative id");
    if (id != a)
      throw ParseError(line_no, "alternative ids must appear in order 1..m");
    std::string label = line.substr(space + 1);
    if (label.empty()) throw ParseError(line_no, "empty label");
    labels.push_back(label);
  }

  if (!next_content_line(in, line, line_no)) throw ParseError(line_no + 1, "missing vote counts");
  fields = split_fields(line);
  if (fields.size() != 2) throw ParseError(line_no, "expected '<n> <n_groups>'");
  long long n = parse_int(fields[0], line_no, "n");
  long long n_groups = parse_int(fields[1], line_no, "n_groups");
  if (n < 1) throw ParseError(line_no, "n must be >= 1");
  if (n_groups < 1 || n_groups > n) throw ParseError(line_no, "n_groups out of range");

  std::vector<std::vector<int>> rankings;
  rankings.reserve(n);
  long long counted = 0;
  for (long long group = 1; group <= n_groups; ++group) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no + 1, "missing vote group " + std::to_string(group));
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(line_no, "expected '<count>: <ranking>'");
    long long count = parse_int(line.substr(0, colon), line_no, "group count");
    if (count < 1) throw ParseError(line_no, "group count must be >= 1");
    fields = split_fields(line.substr(colon + 1));
    if (static_cast<int>(fields.size()) != m)
      throw ParseError(line_no, "ranking in group " + std::to_string(group) +
                                    " must list all " + std::to_string(m) + " alternatives");
    std::vector<int> ranking;
    ranking.reserve(m);
    std::vector<char> seen(m + 1, 0);
    for (const auto& token : fields) {
      long long alt = parse_int(token, line_no, "alternative id");
      if (alt < 1 || alt > m)
        throw ParseError(line_no, "alternative id out of range in group " +
                                      std::to_string(group));
      if (seen[alt])
        throw ParseError(line_no, "ranking in group " + std::to_string(group) +
                                      " repeats alternative " + std::to_string(alt));
      seen[alt] = 1;
      ranking.push_back(static_cast<int>(alt));
    }
    counted += count;
    if (counted > n)
      throw ParseError(line_no, "group multiplicities exceed n");
    for (long long copy = 0; copy < count; ++copy) rankings.push_back(ranking);
  }
  if (counted != n)
    throw ParseError(line_no, "group multiplicities sum to " + std::to_string(counted) +
                                  ", expected n = " + std::to_string(n));
  if (next_content_line(in, line, line_no))
    throw ParseError(line_no, "unexpected content after vote groups");

  return PreferenceProfile(m, std::move(rankings), std::move(labels));
}

PreferenceProfile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  return read_profile(in);
}

void write_profile(const PreferenceProfile& profile, std::ostream& out) {
  const int m = profile.alternative_count();
  const int n = profile.agent_count();
  out << m << "\n";
  for (int a = 1; a <= m; ++a) out << a << " " << profile.labels()[a - 1] << "\n";

  int n_groups = 0;
  for (int i = 1; i <= n; ++i)
    if (i == 1 || profile.ranking(i) != profile.ranking(i - 1)) ++n_groups;
  out << n << " " << n_groups << "\n";

  int i = 1;
  while (i <= n) {
    int j = i;
    while (j < n && profile.ranking(j + 1) == profile.ranking(i)) ++j;
    out << (j - i + 1) << ":";
    for (int alt : profile.ranking(i)) out << " " << alt;
    out << "\n";
    i = j + 1;
  }
}

std::string write_profile_string(const PreferenceProfile& profile) {
  std::ostringstream out;
  write_profile(profile, out);
  return out.str();
}

void write_profile_file(const PreferenceProfile& profile, const std::string& path,
                        const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (!comment.empty()) out << "# " << comment << "\n";
  write_profile(profile, out);
}

ScoringFunction read_psf(std::istream& in) {
  int line_no = 0;
  std::string line;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no + 1, "missing psf line");
  auto fields = split_fields(line);
  std::vector<Satisfaction> alpha;
  alpha.reserve(fields.size());
  for (const auto& token : fields) alpha.push_back(parse_int(token, line_no, "psf entry"));
  try {
    return ScoringFunction(std::move(alpha));
  } catch (const std::invalid_argument& error) {
    throw ParseError(line_no, error.what());
  }
}

ScoringFunction read_psf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open psf file: " + path);
  return read_psf(in);
}

std::string write_psf_string(const ScoringFunction& psf) {
  std::ostringstream out;
  for (int i = 1; i <= psf.size(); ++i) {
    if (i > 1) out << " ";
    out << psf.at(i);
  }
  out << "\n";
  return out.str();
}

const char* const kResultsCsvHeader =
    "algorithm,rule,psf,m,n,K,d,samples,seed,satisfaction,c_ideal,ratio_ideal,c_opt,"
    "ratio_opt,time_ms";

std::string format_ratio(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

namespace {

std::string format_time(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

}  // namespace

std::string write_results_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  out << kResultsCsvHeader << "\n";
  for (const auto& record : records) {
    out << record.algorithm << "," << record.rule << "," << record.psf << "," << record.m
        << "," << record.n << "," << record.k << ",";
    if (record.d) out << *record.d;
    out << ",";
    if (record.samples) out << *record.samples;
    out << "," << record.seed << "," << record.satisfaction << "," << record.c_ideal << ","
        << format_ratio(record.ratio_ideal) << ",";
    if (record.c_opt) out << *record.c_opt;
    out << ",";
    if (record.ratio_opt) out << format_ratio(*record.ratio_opt);
    out << "," << format_time(record.time_ms) << "\n";
  }
  return out.str();
}

std::vector<ResultRecord> read_results_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing csv header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsCsvHeader) throw ParseError(line_no, "unexpected csv header");

  std::vector<ResultRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 15) throw ParseError(line_no, "expected 15 csv fields");
    ResultRecord record;
    record.algorithm = fields[0];
    record.rule = fields[1];
    record.psf = fields[2];
    record.m = static_cast<int>(parse_int(fields[3], line_no, "m"));
    record.n = static_cast<int>(parse_int(fields[4], line_no, "n"));
    record.k = static_cast<int>(parse_int(fields[5], line_no, "K"));
    if (!fields[6].empty())
      record.d = static_cast<int>(parse_int(fields[6], line_no, "d"));
    if (!fields[7].empty())
      record.samples = static_cast<int>(parse_int(fields[7], line_no, "samples"));
    record.seed = static_cast<std::uint64_t>(parse_int(fields[8], line_no, "seed"));
    record.satisfaction = parse_int(fields[9], line_no, "satisfaction");
    record.c_ideal = parse_int(fields[10], line_no, "c_ideal");
    record.ratio_ideal = std::stod(fields[11]);
    if (!fields[12].empty()) record.c_opt = parse_int(fields[12], line_no, "c_opt");
    if (!fields[13].empty()) record.ratio_opt = std::stod(fields[13]);
    record.time_ms = std::stod(fields[14]);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace fpr
