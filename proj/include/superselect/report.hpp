#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace superselect::cli {

using nlohmann::json;

inline constexpr std::string_view kToolName = "superselect";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
/// Throws SchemaError when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// Machine-readable record of one CLI run. Everything except the timestamp
/// is a pure function of the command line and the input file contents;
/// the timestamp sits on a line of its own in the serialized form.
class RunReport {
 public:
  RunReport(std::vector<std::string> command, std::uint64_t seed);

  void add_input(const std::string& role, const std::filesystem::path& path);
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void set_exit_code(int code) { exit_code_ = code; }
  json& results() { return results_; }
  const json& results() const { return results_; }

  json to_json(bool with_timestamp = true) const;
  /// Pretty-printed JSON, one key per line, keys sorted.
  std::string dump(bool with_timestamp = true) const;

 private:
  std::vector<std::string> command_;
  std::uint64_t seed_;
  json inputs_ = json::object();
  json results_ = json::object();
  int exit_code_ = 0;
};

}  // namespace superselect::cli
