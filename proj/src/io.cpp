#include "msens/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "msens/errors.hpp"

namespace msens {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& w, int line_no) {
  int v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) throw ParseError(line_no, "not an integer: " + w);
  return v;
}

int to_vertex(const std::string& w, int line_no, int n) {
  int v = to_int(w, line_no);
  if (v < 1 || v > n) throw ParseError(line_no, "vertex out of range: " + w);
  return v - 1;
}

}  // namespace

Multigraph parse_graph(std::istream& in) {
  std::optional<Multigraph> g;
  int expected = 0, line_no = 0, last = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    last = line_no;
    if (tok[0] == "p") {
      if (g) throw ParseError(line_no, "second header");
      if (tok.size() != 3) throw ParseError(line_no, "header needs 'p <n> <m>'");
      int n = to_int(tok[1], line_no);
      expected = to_int(tok[2], line_no);
      if (n < 1 || expected < 0) throw ParseError(line_no, "bad header counts");
      g.emplace(n);
      continue;
    }
    if (tok[0] != "e") throw ParseError(line_no, "unknown record: " + tok[0]);
    if (!g) throw ParseError(line_no, "edge before header");
    if (tok.size() != 3) throw ParseError(line_no, "edge needs 'e <u> <v>'");
    int u = to_vertex(tok[1], line_no, g->n());
    int v = to_vertex(tok[2], line_no, g->n());
    if (u == v) throw InvalidArgument("line " + std::to_string(line_no) + ": self-loop");
    if (g->m() == expected) throw ParseError(line_no, "more edges than the header declares");
    g->add_edge(u, v);
  }
  if (!g) throw ParseError(line_no, "missing header");
  if (g->m() != expected) throw ParseError(last, "fewer edges than the header declares");
  return *g;
}

Multigraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << "p " << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

std::optional<QueryRecord> parse_query(const std::string& line, int line_no, int n) {
  auto tok = tokens_of(line);
  if (tok.empty()) return std::nullopt;
  auto arity = [&](std::size_t k) {
    if (tok.size() != k) throw ParseError(line_no, tok[0] + " takes " + std::to_string(k - 1) + " arguments");
  };
  auto vtx = [&](std::size_t i) { return to_vertex(tok[i], line_no, n); };
  QueryRecord q;
  const std::string& kind = tok[0];
  if (kind == "ft" || kind == "in") {
    arity(5);
    q.kind = kind == "ft" ? QueryKind::Fail : QueryKind::Insert;
    q.s = vtx(1), q.t = vtx(2), q.x = vtx(3), q.y = vtx(4);
  } else if (kind == "ec") {
    if (tok.size() < 5) throw ParseError(line_no, "ec takes s t y and at least one neighbor");
    q.kind = QueryKind::EdgeContained;
    q.s = vtx(1), q.t = vtx(2), q.y = vtx(3);
    for (std::size_t i = 4; i < tok.size(); ++i) q.others.push_back(vtx(i));
  } else if (kind == "cn") {
    arity(4);
    q.kind = QueryKind::Nearest;
    q.s = vtx(1), q.t = vtx(2), q.y = vtx(3);
  } else if (kind == "ap") {
    arity(4);
    if (tok[1] == "fail") q.kind = QueryKind::AffectedFail;
    else if (tok[1] == "ins") q.kind = QueryKind::AffectedInsert;
    else throw ParseError(line_no, "ap needs 'fail' or 'ins'");
    q.x = vtx(2), q.y = vtx(3);
  } else {
    throw ParseError(line_no, "unknown query kind: " + kind);
  }
  return q;
}

}  // namespace msens
