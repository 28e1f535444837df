#include "superselect/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "superselect/errors.hpp"

namespace superselect::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << int{digest[i]};
  return os.str();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

RunReport::RunReport(std::vector<std::string> command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {}

void RunReport::add_input(const std::string& role,
                          const std::filesystem::path& path) {
  inputs_[role] = {{"path", path.string()}, {"sha256", sha256_file(path)}};
}

json RunReport::to_json(bool with_timestamp) const {
  json j = {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", command_},
            {"inputs", inputs_},
            {"seed", seed_},
            {"exit_code", exit_code_},
            {"results", results_}};
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream os;
    os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    j["timestamp"] = os.str();
  }
  return j;
}

std::string RunReport::dump(bool with_timestamp) const {
  return to_json(with_timestamp).dump(2);
}

}  // namespace superselect::cli
