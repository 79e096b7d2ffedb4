#include "fvl/lattice_text.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fvl/error.hpp"

namespace fvl {

namespace detail {
// Generated at configure time from lattices/*.lat.
extern const std::vector<std::pair<std::string, std::string>> kBundledLattices;
}  // namespace detail

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

void parse_order_tokens(const Line& line, std::size_t first,
                        std::vector<std::pair<std::string, std::string>>& out) {
  for (std::size_t i = first; i < line.tokens.size(); ++i) {
    std::vector<std::string> chain;
    std::string part;
    std::istringstream s(line.tokens[i]);
    while (std::getline(s, part, '<')) chain.push_back(part);
    if (chain.size() < 2) fail_at(line.number, "order entry '" + line.tokens[i] + "' must look like a<b");
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (chain[k].empty() || chain[k + 1].empty()) fail_at(line.number, "empty name in '" + line.tokens[i] + "'");
      out.emplace_back(chain[k], chain[k + 1]);
    }
  }
}

}  // namespace

LatticeDescription parse_lattice_text(std::string_view text) {
  LatticeDescription d;
  const auto lines = tokenize(text);
  std::size_t i = 0;
  // Reads `count` table values from the following lines.
  auto read_values = [&](std::size_t count, std::size_t header_line) {
    std::vector<std::string> values;
    while (values.size() < count) {
      if (i >= lines.size()) fail_at(header_line, "table ended early");
      const Line& row = lines[i++];
      if (values.size() + row.tokens.size() > count) fail_at(row.number, "table row overruns the table");
      values.insert(values.end(), row.tokens.begin(), row.tokens.end());
    }
    return values;
  };
  while (i < lines.size()) {
    const Line& line = lines[i++];
    const std::string& key = line.tokens[0];
    if (key == "elements") {
      if (!d.elements.empty()) fail_at(line.number, "elements declared twice");
      d.elements.assign(line.tokens.begin() + 1, line.tokens.end());
      if (d.elements.empty()) fail_at(line.number, "no elements");
    } else if (key == "order") {
      parse_order_tokens(line, 1, d.order);
    } else if (key == "meet" || key == "join") {
      if (d.elements.empty()) fail_at(line.number, key + " table before elements");
      if (line.tokens.size() != 1) fail_at(line.number, key + " takes no arguments");
      const std::size_t n = d.elements.size();
      auto flat = read_values(n * n, line.number);
      auto& rows = key == "meet" ? d.meet : d.join;
      rows.assign(n, {});
      for (std::size_t r = 0; r < n; ++r) rows[r].assign(flat.begin() + r * n, flat.begin() + (r + 1) * n);
    } else if (key == "connective") {
      if (d.elements.empty()) fail_at(line.number, "connective before elements");
      if (line.tokens.size() != 3 && line.tokens.size() != 2)
        fail_at(line.number, "expected: connective <name> <polarity>");
      LatticeDescription::RawConnective c;
      c.name = line.tokens[1];
      c.polarity = line.tokens.size() == 3 ? line.tokens[2] : "";
      if (c.polarity == "0") c.polarity.clear();
      std::size_t count = 1;
      for (std::size_t k = 0; k < c.polarity.size(); ++k) count *= d.elements.size();
      c.values = read_values(count, line.number);
      d.connectives.push_back(std::move(c));
    } else if (key == "constant") {
      if (line.tokens.size() != 4 || line.tokens[2] != "=") fail_at(line.number, "expected: constant <name> = <element>");
      d.constants.emplace_back(line.tokens[1], line.tokens[3]);
    } else {
      fail_at(line.number, "unknown section '" + key + "'");
    }
  }
  if (d.elements.empty()) throw Error(ErrorCode::ParseError, "missing elements line");
  return d;
}

std::string render_lattice_text(const LatticeDescription& d) {
  std::ostringstream out;
  out << "elements";
  for (const auto& e : d.elements) out << ' ' << e;
  out << '\n';
  if (!d.meet.empty()) {
    for (const auto* table : {&d.meet, &d.join}) {
      out << (table == &d.meet ? "meet" : "join") << '\n';
      for (const auto& row : *table) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << row[k];
        out << '\n';
      }
    }
  } else if (!d.order.empty()) {
    out << "order";
    for (const auto& [lo, hi] : d.order) out << ' ' << lo << '<' << hi;
    out << '\n';
  }
  const std::size_t n = d.elements.size();
  for (const auto& c : d.connectives) {
    out << "connective " << c.name << ' ' << (c.polarity.empty() ? "0" : c.polarity) << '\n';
    for (std::size_t k = 0; k < c.values.size(); ++k) {
      out << c.values[k];
      out << ((k + 1) % n == 0 || k + 1 == c.values.size() ? '\n' : ' ');
    }
  }
  for (const auto& [name, value] : d.constants) out << "constant " << name << " = " << value << '\n';
  return out.str();
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Lattice load_lattice_file(const std::string& path) { return validate_lattice(parse_lattice_text(read_file(path))); }

KripkeFrame parse_frame_text(std::string_view text) {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& line : tokenize(text)) {
    if (line.tokens[0] == "worlds") {
      worlds.assign(line.tokens.begin() + 1, line.tokens.end());
    } else if (line.tokens[0] == "order") {
      parse_order_tokens(line, 1, order);
    } else {
      fail_at(line.number, "unknown section '" + line.tokens[0] + "'");
    }
  }
  return KripkeFrame(std::move(worlds), order);
}

KripkeFrame load_frame_file(const std::string& path) { return parse_frame_text(read_file(path)); }

std::vector<std::string> bundled_lattice_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : detail::kBundledLattices) names.push_back(name);
  return names;
}

const std::string* bundled_lattice_text(std::string_view name) {
  for (const auto& [n, text] : detail::kBundledLattices)
    if (n == name) return &text;
  return nullptr;
}

Lattice bundled_lattice(std::string_view name) {
  const std::string* text = bundled_lattice_text(name);
  if (!text) throw Error(ErrorCode::ParseError, "no bundled lattice named '" + std::string(name) + "'");
  return validate_lattice(parse_lattice_text(*text));
}

Lattice resolve_lattice(const std::string& path_or_name) {
  if (std::filesystem::is_regular_file(path_or_name)) return load_lattice_file(path_or_name);
  const std::string stem = std::filesystem::path(path_or_name).stem().string();
  if (bundled_lattice_text(stem)) return bundled_lattice(stem);
  throw Error(ErrorCode::ParseError, "no lattice file or bundled lattice '" + path_or_name + "'");
}

}  // namespace fvl
