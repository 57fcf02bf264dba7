#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msens/compact.hpp"
#include "msens/distributed.hpp"
#include "msens/graph.hpp"
#include "msens/io.hpp"
#include "msens/quadratic.hpp"

namespace msens {

enum class OracleKind { Quad, Compact, Dist };

std::optional<OracleKind> parse_oracle_kind(const std::string& name);
const char* oracle_name(OracleKind kind);

struct QueryOptions {
  bool report_cuts = false;
  bool list_pairs = true;  // ap queries: print every pair after the count
};

// One built oracle behind a uniform query interface. Output uses 1-based ids;
// cuts print the side holding s, sorted.
class QueryEngine {
 public:
  static QueryEngine build(OracleKind kind, const Multigraph& g);
  // Reads a quadratic or compact dump; the kind comes from its header.
  static QueryEngine load(std::istream& in);

  OracleKind kind() const { return kind_; }
  const Multigraph& graph() const { return g_; }
  // Distributed labels have no dump format.
  void save(std::ostream& out) const;
  // Answer text for one query, lines separated by '\n', no trailing newline.
  std::string answer(const QueryRecord& q, const QueryOptions& opts) const;

 private:
  int value(int s, int t) const;
  int fail_value(int s, int t, int x, int y) const;
  int insert_value(int s, int t, int x, int y) const;
  std::string affected(const QueryRecord& q, const QueryOptions& opts) const;

  OracleKind kind_ = OracleKind::Quad;
  Multigraph g_;
  std::optional<QuadraticOracle> quad_;
  std::optional<CompactOracle> compact_;
  std::vector<std::optional<VertexLabel>> labels_;
};

const char* query_kind_name(QueryKind kind);

// Per query kind: count, summed primitive ops and summed wall time.
struct QueryCost {
  long long count = 0;
  std::uint64_t ops = 0;
  double us = 0;
};
using QueryStats = std::map<std::string, QueryCost>;

// Answers each query line in order. A bad line or a failing query prints
// "error: <reason>" in its place and processing continues. Returns the
// number of such errors.
int run_queries(const QueryEngine& engine, std::istream& queries, std::ostream& out,
                const QueryOptions& opts, QueryStats* stats = nullptr);

struct VerifyOptions {
  std::uint64_t seed = 1;
  int graphs = 50;
  int min_n = 3;
  int max_n = 10;
  bool fixtures = true;
};

struct CheckTally {
  long long checks = 0;
  long long mismatches = 0;
};

struct VerifyReport {
  int graphs = 0;
  std::map<std::string, CheckTally> by_check;
  std::vector<std::string> first_mismatches;  // at most a handful, for diagnosis
  long long checks() const;
  long long mismatches() const;
  bool empty() const { return graphs == 0; }
};

// Full equivalence matrix of every oracle against brute force over the
// fixtures and a seeded random corpus.
VerifyReport verify(const VerifyOptions& opts);
std::string verify_json(const VerifyOptions& opts, const VerifyReport& report);

struct BenchOptions {
  std::uint64_t seed = 1;
  std::vector<int> sizes{8, 32, 128};
  std::vector<OracleKind> oracles{OracleKind::Quad, OracleKind::Compact, OracleKind::Dist};
  int queries = 200;
};

// CSV with header oracle,n,m,build_ms,query_kind,ops,us. ops and us are means
// per query; ops counts instrumented primitive operations.
void bench(const BenchOptions& opts, std::ostream& csv);

}  // namespace msens
