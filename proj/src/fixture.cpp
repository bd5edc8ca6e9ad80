#include "liesym/fixture.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "liesym/error.hpp"

namespace liesym {

std::optional<std::string> FixtureSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string FixtureSection::get(std::string_view key) const {
  auto v = find(key);
  if (!v) {
    throw Error(ErrorCode::InvalidArgument,
                "fixture section [" + name + "] has no key '" + std::string(key) + "'");
  }
  return *v;
}

double FixtureSection::get_double(std::string_view key) const {
  const std::string v = get(key);
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "fixture value for '" + std::string(key) + "' is not a number");
  }
}

const FixtureSection* FixtureFile::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const FixtureSection& FixtureFile::get(std::string_view name) const {
  const auto* s = find(name);
  if (!s) throw Error(ErrorCode::InvalidArgument, "missing fixture section [" + std::string(name) + "]");
  return *s;
}

std::vector<const FixtureSection*> FixtureFile::with_prefix(std::string_view prefix) const {
  std::vector<const FixtureSection*> out;
  for (const auto& s : sections) {
    if (s.name.rfind(prefix, 0) == 0) out.push_back(&s);
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

FixtureFile parse_fixture(std::string_view text) {
  FixtureFile file;
  file.sections.push_back(FixtureSection{"", {}});
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::Parse, "fixture line " + std::to_string(line_no) + ": " + what);
    };
    if (line[0] == '[') {
      if (line.back() != ']') fail("unterminated section header");
      file.sections.push_back(FixtureSection{trim(std::string_view(line).substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    std::string rest = trim(std::string_view(line).substr(eq + 1));
    std::string value;
    if (!rest.empty() && rest[0] == '"') {
      std::size_t i = 1;
      bool closed = false;
      for (; i < rest.size(); ++i) {
        if (rest[i] == '\\' && i + 1 < rest.size()) {
          value += rest[++i];
        } else if (rest[i] == '"') {
          closed = true;
          break;
        } else {
          value += rest[i];
        }
      }
      if (!closed) fail("unterminated string");
      const std::string tail = trim(std::string_view(rest).substr(i + 1));
      if (!tail.empty() && tail[0] != '#') fail("unexpected text after string");
    } else {
      const auto hash = rest.find('#');
      value = trim(std::string_view(rest).substr(0, hash));
    }
    if (key.empty()) fail("empty key");
    file.sections.back().entries.emplace_back(key, value);
  }
  return file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace liesym
