#include "greeneval/hardware_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <json.hpp>

#include "greeneval/error.hpp"
#include "greeneval/text.hpp"

namespace greeneval::hardware {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

std::string key_of(std::string_view name) { return text::to_lower(text::trim(name)); }

[[noreturn]] void format_error(const std::string& message) {
  throw Error(ErrorCode::kParse, "catalog: " + message);
}

void reject_unknown_fields(const json& object, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) format_error(where + ": unknown field '" + key + "'");
  }
}

CatalogEntry entry_from_json(const json& j, std::size_t index) {
  const std::string where = "entry " + std::to_string(index);
  if (!j.is_object()) format_error(where + ": expected an object");
  reject_unknown_fields(j, {"name", "aliases", "max_power_watts", "provenance"}, where);

  CatalogEntry entry;
  if (!j.contains("name") || !j["name"].is_string()) format_error(where + ": 'name' must be a string");
  entry.name = j["name"].get<std::string>();
  if (text::trim(entry.name).empty()) format_error(where + ": 'name' must be non-empty");
  if (j.contains("aliases")) {
    if (!j["aliases"].is_array()) format_error(where + ": 'aliases' must be a list of strings");
    for (const auto& alias : j["aliases"]) {
      if (!alias.is_string()) format_error(where + ": 'aliases' must be a list of strings");
      entry.aliases.push_back(alias.get<std::string>());
    }
  }
  if (!j.contains("max_power_watts") || !j["max_power_watts"].is_number()) {
    format_error(where + ": 'max_power_watts' must be a number");
  }
  entry.max_power_watts = j["max_power_watts"].get<double>();
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) format_error(where + ": 'provenance' must be a string");
    entry.provenance = j["provenance"].get<std::string>();
  }
  return entry;
}

}  // namespace

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!(std::isfinite(e.max_power_watts) && e.max_power_watts > 0.0)) {
      throw Error(ErrorCode::kDomain, "catalog entry '" + e.name + "': max_power_watts must be > 0");
    }
    std::vector<std::string> keys{e.name};
    keys.insert(keys.end(), e.aliases.begin(), e.aliases.end());
    for (const auto& k : keys) {
      const std::string key = key_of(k);
      const auto [it, inserted] = index_.emplace(key, i);
      if (!inserted && it->second != i) {
        throw Error(ErrorCode::kDuplicate, "catalog: '" + k + "' of entry '" + e.name +
                                               "' collides with entry '" +
                                               entries_[it->second].name + "'");
      }
    }
  }
}

std::optional<CatalogEntry> Catalog::lookup(std::string_view name) const {
  const auto it = index_.find(key_of(name));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second];
}

std::vector<std::string> Catalog::nearest(std::string_view name, std::size_t limit) const {
  const std::string query = key_of(name);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& e : entries_) {
    std::size_t best = text::edit_distance(query, key_of(e.name));
    for (const auto& a : e.aliases) best = std::min(best, text::edit_distance(query, key_of(a)));
    scored.emplace_back(best, e.name);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

Catalog load_catalog(std::string_view document) {
  if (text::trim(document).empty()) return Catalog();

  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto pos = text::position_of(document, e.byte == 0 ? 0 : e.byte - 1);
    format_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                 ": malformed JSON");
  }
  if (!root.is_object()) format_error("top level must be an object");
  reject_unknown_fields(root, {"format_version", "entries"}, "top level");
  if (root.contains("format_version")) {
    if (!root["format_version"].is_number_integer() ||
        root["format_version"].get<int>() != kFormatVersion) {
      format_error("unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
    }
  }
  std::vector<CatalogEntry> entries;
  if (root.contains("entries")) {
    if (!root["entries"].is_array()) format_error("'entries' must be a list");
    std::size_t i = 0;
    for (const auto& item : root["entries"]) entries.push_back(entry_from_json(item, i++));
  }
  return Catalog(std::move(entries));
}

Catalog load_catalog_file(const std::string& path) { return load_catalog(text::read_file(path)); }

std::string serialize_catalog(const Catalog& catalog) {
  json entries = json::array();
  for (const auto& e : catalog.entries()) {
    entries.push_back(json{{"name", e.name},
                           {"aliases", e.aliases},
                           {"max_power_watts", e.max_power_watts},
                           {"provenance", e.provenance}});
  }
  json root{{"format_version", kFormatVersion}, {"entries", std::move(entries)}};
  return root.dump(2) + "\n";
}

const Catalog& builtin_catalog() {
  static const Catalog catalog = load_catalog(builtin_catalog_document());
  return catalog;
}

}  // namespace greeneval::hardware
