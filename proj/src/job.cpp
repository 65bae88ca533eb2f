#include "sphtrop/job.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sphtrop {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

const std::set<std::string> kKeys = {"space",    "mode",  "matrix",    "vector",   "family",    "parameters",
                                     "generators", "box", "draws",     "seed",     "precision", "threads",
                                     "query",    "enumerate", "rep",   "coords",   "generator"};

const std::set<std::string> kModes = {"point", "ideal-check", "family-sweep", "horn", "cone", "classify"};

}  // namespace

const std::string& Job::require(const std::string& key) const {
  auto it = fields.find(key);
  if (it == fields.end()) throw JobError(0, "job is missing '" + key + "'");
  return it->second;
}

std::size_t Job::line_of(const std::string& key) const {
  auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

Job parse_job(std::string_view text) {
  Job job;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::string block_key;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const bool indented = std::isspace(static_cast<unsigned char>(line[0]));
    if (indented) {
      if (block_key.empty()) throw JobError(line_no, "indented line outside a block");
      std::string& value = job.fields[block_key];
      if (!value.empty()) value += "\n";
      value += trim(line);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw JobError(line_no, "expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    if (!kKeys.count(key)) throw JobError(line_no, "unknown key '" + key + "'");
    if (job.fields.count(key)) throw JobError(line_no, "duplicate key '" + key + "'");
    std::string value = trim(line.substr(colon + 1));
    job.fields[key] = value;
    job.lines[key] = line_no;
    block_key = value.empty() ? key : std::string();
  }
  for (const auto& [key, value] : job.fields) {
    if (value.empty()) throw JobError(job.lines[key], "'" + key + "' has no value");
  }
  if (!job.has("mode")) throw JobError(0, "job must declare exactly one 'mode'");
  job.mode = job.fields["mode"];
  if (!kModes.count(job.mode)) throw JobError(job.lines["mode"], "unknown mode '" + job.mode + "'");
  return job;
}

std::vector<std::pair<int, int>> parse_box(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    auto colon = part.find(':', 1);
    if (colon == std::string::npos) throw std::invalid_argument("box range '" + part + "' is not lo:hi");
    try {
      std::size_t used_lo = 0, used_hi = 0;
      const std::string lo_text = trim(part.substr(0, colon));
      const std::string hi_text = trim(part.substr(colon + 1));
      int lo = std::stoi(lo_text, &used_lo);
      int hi = std::stoi(hi_text, &used_hi);
      if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument("trailing text");
      if (hi < lo) throw std::invalid_argument("empty range");
      out.emplace_back(lo, hi);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("box range '" + part + "' is not lo:hi with lo <= hi");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty box");
  return out;
}

std::vector<Rational> parse_tuple(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<Rational> out;
  std::string item;
  while (in >> item) out.push_back(parse_rational(item));
  return out;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ';' || c == '\n') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace sphtrop
