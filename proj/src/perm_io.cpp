#include "dci/perm_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "dci/error.hpp"

namespace dci {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_number(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<std::size_t> parse_numbers(std::string_view s, std::size_t line) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
    if (end > pos) out.push_back(parse_number(s.substr(pos, end - pos), line));
    pos = end;
  }
  return out;
}

Permutation parse_cycles(std::string_view body, std::size_t degree, std::size_t line) {
  std::vector<std::vector<Point>> cycles;
  std::size_t pos = 0;
  while (true) {
    while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
    if (pos == body.size()) break;
    if (body[pos] != '(') throw ParseError("line " + std::to_string(line) + ": expected '('");
    auto close = body.find(')', pos);
    if (close == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line) + ": unterminated cycle");
    }
    std::vector<Point> cyc;
    for (std::size_t v : parse_numbers(body.substr(pos + 1, close - pos - 1), line)) {
      cyc.push_back(static_cast<Point>(v));
    }
    cycles.push_back(std::move(cyc));
    pos = close + 1;
  }
  try {
    return from_cycles(cycles, degree);
  } catch (const DomainError& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

GeneratorSet parse_generators(std::istream& in) {
  GeneratorSet set;
  bool degree_known = false;
  auto fix_degree = [&](std::size_t d, std::size_t line) {
    if (degree_known && d != set.degree) {
      throw ParseError("line " + std::to_string(line) + ": degree " + std::to_string(d) +
                       " conflicts with " + std::to_string(set.degree));
    }
    set.degree = d;
    degree_known = true;
  };

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    auto colon = s.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line) + ": missing ':'");
    }
    std::string_view key = trim(s.substr(0, colon));
    std::string_view body = s.substr(colon + 1);

    if (key == "degree") {
      auto nums = parse_numbers(body, line);
      if (nums.size() != 1) throw ParseError("line " + std::to_string(line) + ": bad degree");
      fix_degree(nums[0], line);
    } else if (key == "img") {
      std::vector<Point> img;
      for (std::size_t v : parse_numbers(body, line)) img.push_back(static_cast<Point>(v));
      if (img.empty()) throw ParseError("line " + std::to_string(line) + ": empty image list");
      fix_degree(img.size(), line);
      if (!is_bijection(img)) {
        throw ParseError("line " + std::to_string(line) + ": image list is not a bijection");
      }
      set.generators.emplace_back(std::move(img));
    } else if (key.starts_with("cyc(") && key.ends_with(")")) {
      std::size_t d = parse_number(key.substr(4, key.size() - 5), line);
      fix_degree(d, line);
      set.generators.push_back(parse_cycles(body, d, line));
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (set.generators.empty()) throw ParseError("no generators");
  if (set.degree == 0) throw ParseError("degree must be positive");
  return set;
}

GeneratorSet parse_generators_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_generators(in);
}

void write_generators(std::ostream& out, std::size_t degree, const std::vector<Permutation>& gens,
                      const std::vector<std::string>& names) {
  out << "degree: " << degree << '\n';
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (g < names.size() && !names[g].empty()) out << "# " << names[g] << '\n';
    out << "img:";
    for (Point x : gens[g].images()) out << ' ' << x;
    out << '\n';
  }
}

}  // namespace dci
