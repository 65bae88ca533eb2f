#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sphtrop/rational.hpp"

namespace sphtrop {

/// Malformed job input; `line` is 1-based (0 when not tied to a line).
class JobError : public std::runtime_error {
 public:
  JobError(std::size_t line, const std::string& message)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A single-file job:
///
///   # comment
///   space: GL 2
///   mode: family-sweep
///   parameters: s1
///   family:
///     s1 + 1, s1;
///     s1, 0
///   box: -4:4
///   draws: 4
///   seed: 1
///
/// A key with an empty value takes the following indented lines as its block.
struct Job {
  std::string mode;  ///< point | ideal-check | family-sweep | horn | cone | classify
  std::map<std::string, std::string> fields;
  std::map<std::string, std::size_t> lines;  ///< where each key was declared

  bool has(const std::string& key) const { return fields.count(key) != 0; }
  /// Throws JobError naming the key when absent.
  const std::string& require(const std::string& key) const;
  std::size_t line_of(const std::string& key) const;
};

Job parse_job(std::string_view text);

/// "lo:hi" or "lo:hi,lo:hi,...".
std::vector<std::pair<int, int>> parse_box(std::string_view text);

/// Whitespace- or comma-separated rationals, e.g. "1 0 0 -1" or "1, -1/2".
std::vector<Rational> parse_tuple(std::string_view text);

/// Non-empty items separated by ';' or newlines.
std::vector<std::string> split_list(std::string_view text);

}  // namespace sphtrop
