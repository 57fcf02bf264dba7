#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "msens/carcass.hpp"
#include "msens/gomory_hu.hpp"
#include "msens/graph.hpp"

namespace msens {

// Line-oriented text dumps. Each record starts with a keyword; integers are
// separated by single spaces. Readers reject anything they do not expect
// with ParseError carrying the line number.
inline constexpr int kDumpVersion = 1;

class DumpReader {
 public:
  explicit DumpReader(std::istream& in) : in_(in) {}
  // Reads the next non-empty line and checks its keyword.
  void expect(const std::string& keyword);
  int next_int();
  std::string next_word();
  std::vector<int> next_ints(int count);
  // Integers remaining on the current line.
  std::vector<int> rest();
  bool at_end();
  int line() const { return line_; }
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::istream& in_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

void dump_graph(std::ostream& out, const Multigraph& g);
Multigraph load_graph(DumpReader& r);
void dump_hierarchy(std::ostream& out, const HierarchyTree& h);
HierarchyTree load_hierarchy(DumpReader& r);
// Bunches are not written; a loaded carcass answers every query but has an
// empty bunch list.
void dump_carcass(std::ostream& out, const Carcass& c);
Carcass load_carcass(DumpReader& r, const Multigraph& g);

}  // namespace msens
