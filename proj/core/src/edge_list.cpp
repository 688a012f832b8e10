#include "offtarget/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "offtarget/errors.hpp"
#include "offtarget/generators.hpp"

namespace offtarget {
namespace {

struct RawLine {
  int line = 0;
  std::string a;
  std::string b;
  bool undirected = false;
};

std::optional<int> as_index(const std::string& s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) return std::nullopt;
  return value;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

NamedDag read_edge_list(std::istream& in, bool moralize) {
  std::optional<int> declared;
  std::vector<RawLine> raw;
  std::string text;
  int line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream tokens(text);
    std::vector<std::string> t;
    for (std::string tok; tokens >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    if (t[0] == "n") {
      if (t.size() != 2) fail(line_no, "expected 'n <count>'");
      if (declared) fail(line_no, "duplicate header");
      declared = as_index(t[1]);
      if (!declared) fail(line_no, "bad vertex count '" + t[1] + "'");
      continue;
    }
    if (t.size() == 2) {
      raw.push_back({line_no, t[0], t[1], false});
    } else if (t.size() == 3 && t[1] == "--") {
      raw.push_back({line_no, t[0], t[2], true});
    } else if (t.size() == 3 && t[1] == "->") {
      raw.push_back({line_no, t[0], t[2], false});
    } else {
      fail(line_no, "expected 'u v', 'u -> v' or 'u -- v'");
    }
  }

  bool numeric = true;
  for (const RawLine& r : raw) numeric = numeric && as_index(r.a) && as_index(r.b);

  NamedDag out;
  std::map<std::string, int> ids;
  auto resolve = [&](const std::string& token, int line) {
    if (numeric) {
      const int v = *as_index(token);
      if (v >= *declared) fail(line, "vertex " + token + " out of range");
      return v;
    }
    auto [it, inserted] = ids.emplace(token, static_cast<int>(out.names.size()));
    if (inserted) out.names.push_back(token);
    return it->second;
  };

  if (numeric && !declared) {
    if (raw.empty()) throw ParseError("empty edge list without an 'n' header");
    fail(raw.front().line, "integer vertex ids need an 'n <count>' header");
  }

  std::vector<Arc> arcs;
  for (const RawLine& r : raw) {
    const int a = resolve(r.a, r.line);
    const int b = resolve(r.b, r.line);
    if (a == b) fail(r.line, "self-loop on " + r.a);
    arcs.push_back(r.undirected ? Arc{std::min(a, b), std::max(a, b)} : Arc{a, b});
  }

  int n = numeric ? *declared : static_cast<int>(out.names.size());
  if (!numeric && declared) {
    if (*declared < n) throw ParseError("header declares fewer vertices than named");
    for (int v = n; v < *declared; ++v) out.names.push_back(std::to_string(v));
    n = *declared;
  }
  if (numeric) {
    for (int v = 0; v < n; ++v) out.names.push_back(std::to_string(v));
  }

  try {
    out.dag = Dag(n, std::move(arcs));
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
  if (moralize) out.dag = close_v_structures(out.dag);
  return out;
}

NamedDag read_edge_list_file(const std::string& path, bool moralize) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return read_edge_list(in, moralize);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Dag& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const Arc& a : g.arcs()) out << a.from << ' ' << a.to << '\n';
}

}  // namespace offtarget
