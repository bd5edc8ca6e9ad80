#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liesym {

/// One `[name]` block of a key/value fixture file.
struct FixtureSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> find(std::string_view key) const;
  /// Throws InvalidArgument when the key is missing.
  std::string get(std::string_view key) const;
  double get_double(std::string_view key) const;
};

/// TOML-like fixture text: `[section]` headers, `key = "string"` or
/// `key = bare-token`, `#` comments. Entries before the first header belong
/// to a section with an empty name.
struct FixtureFile {
  std::vector<FixtureSection> sections;

  const FixtureSection* find(std::string_view name) const;
  const FixtureSection& get(std::string_view name) const;
  std::vector<const FixtureSection*> with_prefix(std::string_view prefix) const;
};

FixtureFile parse_fixture(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace liesym
