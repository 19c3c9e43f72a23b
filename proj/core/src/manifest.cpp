#include "lfsrng/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lfsrng/error.hpp"

namespace lfsrng {

using nlohmann::json;

std::string RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["variant"] = variant ? json(*variant) : json(nullptr);
  j["bits"] = bits ? json(*bits) : json(nullptr);
  j["parameters"] = parameters;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["seeds"] = seeds;
  j["tool_version"] = tool_version;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    if (!j.at("variant").is_null()) m.variant = j.at("variant").get<std::string>();
    if (!j.at("bits").is_null()) m.bits = j.at("bits").get<std::uint64_t>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    m.tool_version = j.at("tool_version").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  out << manifest.to_json();
  if (!out) throw IoError("cannot write manifest " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read manifest " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return RunManifest::from_json(text.str());
}

}  // namespace lfsrng
