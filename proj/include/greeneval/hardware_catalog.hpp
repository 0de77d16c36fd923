#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greeneval::hardware {

struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  double max_power_watts = 0.0;
  // Where the power figure comes from (published table, vendor datasheet...).
  std::string provenance;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

// Immutable name -> accelerator lookup. Names and aliases match
// case-insensitively after trimming surrounding whitespace.
class Catalog {
 public:
  Catalog() = default;
  // Throws Error(kDuplicate) if two keys collide, kDomain on a bad power value.
  explicit Catalog(std::vector<CatalogEntry> entries);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<CatalogEntry> lookup(std::string_view name) const;

  // Canonical names closest to `name` by edit distance over names and
  // aliases, nearest first, ties broken by name.
  std::vector<std::string> nearest(std::string_view name, std::size_t limit = 3) const;

  friend bool operator==(const Catalog& a, const Catalog& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

// Catalog file format (JSON):
//   {"format_version": 1,
//    "entries": [{"name": "...", "aliases": ["..."], "max_power_watts": 300,
//                 "provenance": "..."}]}
// Unknown fields are rejected. An empty (whitespace-only) document is an
// empty catalog. Parse failures throw Error(kParse) with line and column.
Catalog load_catalog(std::string_view document);
Catalog load_catalog_file(const std::string& path);
std::string serialize_catalog(const Catalog& catalog);

// The seed catalog shipped in data/catalog.json, compiled in.
const Catalog& builtin_catalog();
std::string_view builtin_catalog_document();

}  // namespace greeneval::hardware
