#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lfsrng {

/// Everything needed to rerun a command; written as JSON next to its output.
struct RunManifest {
  std::string command;
  std::optional<std::string> variant;  // canonical variant spec
  std::optional<std::uint64_t> bits;
  /// Flat parameter record: alpha, block sizes, scale, codec settings, ...
  std::map<std::string, std::string> parameters;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::uint64_t> seeds;
  std::string tool_version;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// `<output>.manifest.json`.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace lfsrng
