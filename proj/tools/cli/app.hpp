#pragma once

// Command layer of the k3mirror tool. Commands build a Report; rendering is
// separate so tests can inspect reports without going through a process.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace k3mirror::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, tsv, text };

struct RunConfig {
  int digits = 120;
  int order = 40;
  long pmax = 500;
  long quartic_bound = 101;
  Format format = Format::json;
  std::string output;  // empty: stdout
  int terms = 6;
  std::string lambda = "2";
  std::string path;  // JSON waypoints, or @file
  std::vector<std::string> ids;
  int grid = 20;
  bool timings = false;
};

// Bad flags or values: exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const RunConfig& config);

struct Entry {
  std::string kind;
  std::string id;
  bool pass = false;
  bool informational = false;
  Json data = Json::object();
  double seconds = 0;
};

struct Report {
  std::string command;
  RunConfig config;
  std::vector<Entry> entries;
  // Column names and rows for commands with a natural table form.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool pass() const;
};

const std::vector<std::string>& command_names();

// Throws UsageError for an unknown command or invalid config.
Report run(std::string_view command, const RunConfig& config);

std::string render(const Report& report, Format format);

const char* to_string(Format f);

}  // namespace k3mirror::cli
