#include "arrzeta/io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "arrzeta/error.hpp"

namespace arrzeta {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto sep = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']';
  };
  while (i < line.size()) {
    while (i < line.size() && sep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    if (line.substr(i, 6) == "label=") {
      j = line.size();
      while (j > i && std::isspace(static_cast<unsigned char>(line[j - 1]))) --j;
    } else {
      while (j < line.size() && !sep(line[j])) ++j;
    }
    out.push_back({std::string(line.substr(i, j - i)), offset + i + 1});
    i = j;
  }
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct RawHyperplane {
  RationalVector form;
  long mult;
  std::string label;
  std::size_t line;
};

}  // namespace

LoadedArrangement parse_arrangement(std::string_view text) {
  std::optional<std::size_t> dim;
  std::size_t dim_line = 0;
  std::vector<RawHyperplane> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (strip(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t colon = line.find(':');
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    if (colon == std::string_view::npos)
      throw ParseError("expected 'dim:' or 'hyperplane:'", line_no, lead + 1);
    const std::string key(strip(line.substr(0, colon)));
    auto tokens = tokenize(line.substr(colon + 1), colon + 1);
    if (key == "dim") {
      if (dim) throw ParseError("duplicate 'dim:' entry", line_no, lead + 1);
      if (tokens.size() != 1) throw ParseError("'dim:' takes one integer", line_no, colon + 2);
      const auto& t = tokens[0];
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(t.text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != t.text.size() || v < 1)
        throw ParseError("dimension must be a positive integer", line_no, t.column);
      dim = static_cast<std::size_t>(v);
      dim_line = line_no;
    } else if (key == "hyperplane") {
      if (!dim) throw ParseError("'dim:' must come before hyperplanes", line_no, lead + 1);
      RawHyperplane h{{}, 1, "", line_no};
      std::size_t i = 0;
      for (; i < tokens.size() && tokens[i].text != "x" && tokens[i].text.rfind("label=", 0) != 0;
           ++i) {
        try {
          h.form.push_back(Rational::parse(tokens[i].text));
        } catch (const std::exception&) {
          throw ParseError("malformed rational '" + tokens[i].text + "'", line_no, tokens[i].column);
        }
      }
      if (h.form.size() != *dim)
        throw ParseError("expected " + std::to_string(*dim) + " coefficients, found " +
                             std::to_string(h.form.size()),
                         line_no, colon + 2);
      if (i < tokens.size() && tokens[i].text == "x") {
        if (i + 1 >= tokens.size())
          throw ParseError("missing multiplicity after 'x'", line_no, tokens[i].column);
        const auto& t = tokens[i + 1];
        std::size_t used = 0;
        long m = 0;
        try {
          m = std::stol(t.text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != t.text.size() || m < 1)
          throw ParseError("multiplicity must be a positive integer", line_no, t.column);
        h.mult = m;
        i += 2;
      }
      if (i < tokens.size() && tokens[i].text.rfind("label=", 0) == 0) {
        h.label = tokens[i].text.substr(6);
        ++i;
      }
      if (i < tokens.size()) throw ParseError("unexpected token '" + tokens[i].text + "'", line_no, tokens[i].column);
      bool zero = true;
      for (const auto& c : h.form) zero = zero && c.is_zero();
      if (zero) throw ParseError("zero linear form", line_no, colon + 2);
      raw.push_back(std::move(h));
    } else {
      throw ParseError("unknown key '" + key + "'", line_no, lead + 1);
    }
    if (end == text.size()) break;
  }
  if (!dim) throw ParseError("missing 'dim:'", line_no, 1);
  if (raw.empty()) throw ParseError("no hyperplanes", dim_line, 1);

  LoadedArrangement out{Arrangement(1, {{Rational(1)}}), {}};
  std::vector<RationalVector> forms;
  std::vector<long> mult;
  std::vector<std::string> labels;
  std::vector<std::size_t> lines;
  for (auto& h : raw) {
    bool merged = false;
    for (std::size_t j = 0; j < forms.size(); ++j)
      if (proportional(forms[j], h.form)) {
        mult[j] += h.mult;
        out.warnings.push_back("line " + std::to_string(h.line) + ": hyperplane proportional to line " +
                               std::to_string(lines[j]) + "; multiplicities merged to " +
                               std::to_string(mult[j]));
        merged = true;
        break;
      }
    if (merged) continue;
    forms.push_back(std::move(h.form));
    mult.push_back(h.mult);
    labels.push_back(std::move(h.label));
    lines.push_back(h.line);
  }
  out.arrangement = Arrangement(*dim, std::move(forms), std::move(mult), std::move(labels));
  return out;
}

LoadedArrangement load_arrangement(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open arrangement file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_arrangement(ss.str());
}

std::string emit_arrangement(const Arrangement& a) {
  std::ostringstream os;
  os << "dim: " << a.dim() << "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << "hyperplane:";
    for (const auto& c : a.form(i)) os << ' ' << c.str();
    os << " x " << a.multiplicities()[i];
    if (i < a.labels().size() && !a.labels()[i].empty()) os << " label=" << a.labels()[i];
    os << "\n";
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(std::hash<std::string>{}(path + contents) % 1000000);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move report into place: " + ec.message());
  }
}

}  // namespace arrzeta
