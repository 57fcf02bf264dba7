#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msens/graph.hpp"

namespace msens {

// Graph text: a header "p <n> <m>", then m lines "e <u> <v>" with 1-based
// vertex ids. Repeated lines add parallel edges; '#' starts a comment.
// Malformed lines throw ParseError; a self-loop throws InvalidArgument.
Multigraph parse_graph(std::istream& in);
Multigraph parse_graph_text(const std::string& text);
void write_graph(std::ostream& out, const Multigraph& g);

enum class QueryKind { Fail, Insert, EdgeContained, Nearest, AffectedFail, AffectedInsert };

// One query with 0-based ids. `others` holds the far ends of an
// edge-containment bundle anchored at y.
struct QueryRecord {
  QueryKind kind = QueryKind::Fail;
  int s = -1, t = -1, x = -1, y = -1;
  std::vector<int> others;
};

// Query lines, 1-based:
//   ft s t x y | in s t x y | ec s t y n1 .. nk | cn s t y | ap fail|ins x y
// Blank and comment lines give nullopt. Bad arity, unknown kinds and ids
// outside 1..n throw ParseError with the line number.
std::optional<QueryRecord> parse_query(const std::string& line, int line_no, int n);

}  // namespace msens
