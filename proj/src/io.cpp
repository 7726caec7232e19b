#include "qsing/io.hpp"

#include <fstream>
#include <sstream>

namespace qsing {

namespace {

struct RawBlock {
  int k = 0;
  std::vector<int> dims;
  std::vector<int> arrows;
  std::vector<int> marked;
  bool have_alpha = false;
};

MarkedQuiverSetting finish(RawBlock& b) {
  if (!b.have_alpha) throw ParseError("setting block is missing an alpha line");
  return MarkedQuiverSetting(std::move(b.dims), std::move(b.arrows),
                             std::move(b.marked));
}

}  // namespace

std::vector<MarkedQuiverSetting> parse_settings(const std::string& text) {
  std::vector<MarkedQuiverSetting> out;
  RawBlock cur;
  bool open = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    auto need_int = [&](const char* what) {
      long long v;
      if (!(ls >> v)) fail(std::string("expected ") + what);
      return static_cast<int>(v);
    };

    if (word == "quiver") {
      if (open) out.push_back(finish(cur));
      cur = RawBlock{};
      open = true;
      cur.k = need_int("vertex count");
      if (cur.k < 1) fail("vertex count must be positive");
      cur.arrows.assign(static_cast<size_t>(cur.k) * cur.k, 0);
      cur.marked.assign(cur.k, 0);
      continue;
    }
    if (!open) fail("expected a quiver line first");

    if (word == "alpha") {
      cur.dims.clear();
      for (int i = 0; i < cur.k; ++i) {
        int a = need_int("dimension entry");
        if (a < 1) fail("vertex dimensions must be positive");
        cur.dims.push_back(a);
      }
      cur.have_alpha = true;
    } else if (word == "arrow") {
      int i = need_int("source vertex");
      int j = need_int("target vertex");
      int m = need_int("multiplicity");
      if (i < 1 || i > cur.k || j < 1 || j > cur.k) fail("vertex index out of range");
      if (i == j) fail("use a loops line for loops");
      if (m < 0) fail("negative multiplicity");
      cur.arrows[static_cast<size_t>(i - 1) * cur.k + (j - 1)] += m;
    } else if (word == "loops") {
      int v = need_int("vertex");
      int unm = need_int("unmarked count");
      int mk = need_int("marked count");
      if (v < 1 || v > cur.k) fail("vertex index out of range");
      if (unm < 0 || mk < 0) fail("negative loop count");
      cur.arrows[static_cast<size_t>(v - 1) * cur.k + (v - 1)] += unm;
      cur.marked[v - 1] += mk;
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (open) out.push_back(finish(cur));
  return out;
}

MarkedQuiverSetting parse_setting(const std::string& text) {
  auto all = parse_settings(text);
  if (all.empty()) throw ParseError("no setting found in input");
  return all.front();
}

std::string emit_setting(const MarkedQuiverSetting& s) {
  const auto c = canonical_form(s);
  const int k = c.vertex_count();
  std::ostringstream out;
  out << "quiver " << k << '\n';
  out << "alpha";
  for (int v = 0; v < k; ++v) out << ' ' << c.dim(v);
  out << '\n';
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && c.arrow(i, j) > 0)
        out << "arrow " << i + 1 << ' ' << j + 1 << ' ' << c.arrow(i, j) << '\n';
  for (int v = 0; v < k; ++v)
    if (c.loops(v) > 0)
      out << "loops " << v + 1 << ' ' << c.unmarked_loops(v) << ' '
          << c.marked_loops(v) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qsing
