#include "msens/serialize.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "msens/quadratic.hpp"

namespace msens {

void DumpReader::fail(const std::string& what) const { throw ParseError(line_, what); }

void DumpReader::expect(const std::string& keyword) {
  std::string text;
  do {
    if (!std::getline(in_, text)) fail("unexpected end of dump, wanted '" + keyword + "'");
    ++line_;
  } while (text.find_first_not_of(" \t\r") == std::string::npos);
  std::istringstream ss(text);
  tokens_.clear();
  for (std::string tok; ss >> tok;) tokens_.push_back(tok);
  pos_ = 1;
  if (tokens_[0] != keyword) fail("expected '" + keyword + "', found '" + tokens_[0] + "'");
}

int DumpReader::next_int() {
  if (pos_ >= tokens_.size()) fail("missing integer");
  const std::string& tok = tokens_[pos_++];
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    fail("not an integer: '" + tok + "'");
  }
  if (used != tok.size()) fail("not an integer: '" + tok + "'");
  return v;
}

std::string DumpReader::next_word() {
  if (pos_ >= tokens_.size()) fail("missing word");
  return tokens_[pos_++];
}

std::vector<int> DumpReader::next_ints(int count) {
  if (count < 0) fail("negative count");
  std::vector<int> out(count);
  for (int& v : out) v = next_int();
  return out;
}

std::vector<int> DumpReader::rest() {
  std::vector<int> out;
  while (pos_ < tokens_.size()) out.push_back(next_int());
  return out;
}

bool DumpReader::at_end() {
  in_ >> std::ws;
  return in_.peek() == std::char_traits<char>::eof();
}

namespace {

void put(std::ostream& out, const char* keyword, const std::vector<int>& xs) {
  out << keyword;
  for (int x : xs) out << ' ' << x;
  out << '\n';
}

void in_range(DumpReader& r, int v, int lo, int hi) {
  if (v < lo || v >= hi) r.fail("value " + std::to_string(v) + " out of range");
}

}  // namespace

void dump_graph(std::ostream& out, const Multigraph& g) {
  out << "graph " << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.id << ' ' << e.u << ' ' << e.v << '\n';
}

Multigraph load_graph(DumpReader& r) {
  r.expect("graph");
  int n = r.next_int(), m = r.next_int();
  if (n < 1 || m < 0) r.fail("bad graph size");
  Multigraph g(n);
  for (int i = 0; i < m; ++i) {
    r.expect("e");
    int id = r.next_int(), u = r.next_int(), v = r.next_int();
    in_range(r, u, 0, n);
    in_range(r, v, 0, n);
    if (id < 0 || u == v || g.has_edge(id)) r.fail("bad edge");
    g.add_edge_with_id(id, u, v);
  }
  return g;
}

void dump_hierarchy(std::ostream& out, const HierarchyTree& h) {
  out << "hierarchy " << h.size() << '\n';
  for (const HierarchyNode& nd : h.nodes())
    out << "h " << nd.parent << ' ' << nd.val << ' ' << nd.vertex << '\n';
}

HierarchyTree load_hierarchy(DumpReader& r) {
  r.expect("hierarchy");
  int k = r.next_int();
  if (k < 1) r.fail("empty hierarchy");
  std::vector<HierarchyNode> nodes(k);
  for (int i = 0; i < k; ++i) {
    r.expect("h");
    nodes[i].parent = r.next_int();
    nodes[i].val = r.next_int();
    nodes[i].vertex = r.next_int();
    // Preorder: every parent precedes its children.
    if (i == 0 ? nodes[i].parent != -1 : (nodes[i].parent < 0 || nodes[i].parent >= i))
      r.fail("hierarchy is not in preorder");
    if (i > 0) nodes[nodes[i].parent].children.push_back(i);
  }
  for (int i = k - 1; i >= 0; --i) {
    HierarchyNode& nd = nodes[i];
    if (nd.is_leaf() != nd.children.empty()) r.fail("leaf flag disagrees with children");
    if (nd.is_leaf()) nd.steiner = {nd.vertex};
    std::sort(nd.steiner.begin(), nd.steiner.end());
    if (nd.parent >= 0) {
      auto& ps = nodes[nd.parent].steiner;
      ps.insert(ps.end(), nd.steiner.begin(), nd.steiner.end());
    }
  }
  try {
    return HierarchyTree(std::move(nodes));
  } catch (const InternalError& e) {
    r.fail(e.what());
  }
}

void dump_carcass(std::ostream& out, const Carcass& c) {
  const Skeleton& sk = c.skeleton;
  out << "carcass " << c.value << '\n';
  put(out, "steiner", c.steiner);
  put(out, "unit_of", c.units.unit_of);
  std::vector<int> flags;
  for (int u = 0; u < c.units.size(); ++u)
    flags.push_back((c.units.terminal[u] ? 1 : 0) | (c.units.steiner[u] ? 2 : 0));
  put(out, "unit_flags", flags);
  out << "skeleton " << sk.num_nodes << ' ' << sk.tree_edges.size() << ' ' << sk.cycles.size()
      << '\n';
  put(out, "node_of_unit", sk.node_of_unit);
  for (auto [a, b] : sk.tree_edges) out << "t " << a << ' ' << b << '\n';
  for (const auto& cy : sk.cycles) put(out, "c", cy);
  std::vector<int> proj;
  for (const NodePath& p : c.proj) {
    proj.push_back(p.a);
    proj.push_back(p.b);
  }
  put(out, "proj", proj);
  put(out, "tau", c.tau);
  std::vector<int> ends;
  for (const auto& es : c.end_side) {
    ends.push_back(es[0]);
    ends.push_back(es[1]);
  }
  put(out, "end_side", ends);
}

Carcass load_carcass(DumpReader& r, const Multigraph& g) {
  Carcass c;
  r.expect("carcass");
  c.value = r.next_int();
  r.expect("steiner");
  c.steiner = r.rest();
  for (int s : c.steiner) in_range(r, s, 0, g.n());
  r.expect("unit_of");
  c.units.unit_of = r.rest();
  if (static_cast<int>(c.units.unit_of.size()) != g.n()) r.fail("unit_of has wrong length");
  r.expect("unit_flags");
  std::vector<int> flags = r.rest();
  const int nu = static_cast<int>(flags.size());
  c.units.members.assign(nu, {});
  for (int v = 0; v < g.n(); ++v) {
    in_range(r, c.units.unit_of[v], 0, nu);
    c.units.members[c.units.unit_of[v]].push_back(v);
  }
  for (int u = 0; u < nu; ++u) {
    if (c.units.members[u].empty()) r.fail("empty unit");
    c.units.terminal.push_back(flags[u] & 1);
    c.units.steiner.push_back((flags[u] & 2) != 0);
  }

  Skeleton& sk = c.skeleton;
  r.expect("skeleton");
  sk.num_nodes = r.next_int();
  int nt = r.next_int(), nc = r.next_int();
  if (sk.num_nodes < 1 || nt < 0 || nc < 0) r.fail("bad skeleton size");
  r.expect("node_of_unit");
  sk.node_of_unit = r.next_ints(nu);
  sk.node_units.assign(sk.num_nodes, {});
  for (int u = 0; u < nu; ++u) {
    int x = sk.node_of_unit[u];
    if (c.units.terminal[u]) {
      in_range(r, x, 0, sk.num_nodes);
      sk.node_units[x].push_back(u);
    } else if (x != -1) {
      r.fail("stretched unit with a node");
    }
  }
  for (int i = 0; i < nt; ++i) {
    r.expect("t");
    int a = r.next_int(), b = r.next_int();
    in_range(r, a, 0, sk.num_nodes);
    in_range(r, b, 0, sk.num_nodes);
    sk.tree_edges.push_back({a, b});
  }
  for (int i = 0; i < nc; ++i) {
    r.expect("c");
    sk.cycles.push_back(r.rest());
    if (sk.cycles.back().size() < 3) r.fail("cycle shorter than 3");
    for (int x : sk.cycles.back()) in_range(r, x, 0, sk.num_nodes);
  }
  int tree_edge_count = nt;
  for (const auto& cy : sk.cycles) tree_edge_count += static_cast<int>(cy.size());
  if (tree_edge_count != sk.num_nodes + nc - 1) r.fail("skeleton is not a cactus tree");
  try {
    index_skeleton(sk);
  } catch (const InternalError& e) {
    r.fail(e.what());
  }

  const int tn = sk.tree_size();
  r.expect("proj");
  std::vector<int> proj = r.next_ints(2 * nu);
  for (int u = 0; u < nu; ++u) {
    in_range(r, proj[2 * u], 0, tn);
    in_range(r, proj[2 * u + 1], 0, tn);
    c.proj.push_back({proj[2 * u], proj[2 * u + 1]});
  }
  r.expect("tau");
  c.tau = r.next_ints(nu);
  r.expect("end_side");
  std::vector<int> ends = r.next_ints(2 * g.id_bound());
  c.end_side.resize(g.id_bound());
  for (int i = 0; i < g.id_bound(); ++i) {
    in_range(r, ends[2 * i], -1, 2);
    in_range(r, ends[2 * i + 1], -1, 2);
    c.end_side[i] = {static_cast<std::int8_t>(ends[2 * i]), static_cast<std::int8_t>(ends[2 * i + 1])};
  }
  return c;
}

void QuadraticOracle::save(std::ostream& out) const {
  out << "msens-oracle " << kDumpVersion << " quad\n";
  dump_graph(out, g_);
  dump_hierarchy(out, h_);
  for (int nu : h_.internal_nodes()) {
    out << "node " << nu << '\n';
    dump_carcass(out, carcass_[slot_[nu]]);
  }
  out << "end\n";
}

QuadraticOracle QuadraticOracle::load(std::istream& in) {
  DumpReader r(in);
  r.expect("msens-oracle");
  if (r.next_int() != kDumpVersion) r.fail("unsupported dump version");
  if (r.next_word() != "quad") r.fail("not a quadratic oracle dump");
  QuadraticOracle o;
  o.g_ = load_graph(r);
  if (!o.g_.connected()) r.fail("graph is not connected");
  o.h_ = load_hierarchy(r);
  if (o.h_.index().size() != o.h_.size()) r.fail("hierarchy is not a tree");
  o.slot_.assign(o.h_.size(), -1);
  for (int nu : o.h_.internal_nodes()) {
    r.expect("node");
    if (r.next_int() != nu) r.fail("carcass for the wrong hierarchy node");
    o.slot_[nu] = static_cast<int>(o.carcass_.size());
    o.carcass_.push_back(load_carcass(r, o.g_));
    if (o.carcass_.back().steiner != o.h_.node(nu).steiner) r.fail("carcass Steiner set mismatch");
  }
  r.expect("end");
  for (const Edge& e : o.g_.edges()) {
    int x = std::min(e.u, e.v), y = std::max(e.u, e.v);
    o.adjacent_.insert(static_cast<long long>(x) << 32 | static_cast<unsigned>(y));
  }
  return o;
}

}  // namespace msens
