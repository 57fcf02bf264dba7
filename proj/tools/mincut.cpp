#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "msens/cli.hpp"
#include "msens/errors.hpp"

using namespace msens;

namespace {

Multigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return parse_graph(in);
}

OracleKind kind_or_throw(const std::string& name) {
  auto k = parse_oracle_kind(name);
  if (!k) throw InvalidArgument("unknown oracle: " + name + " (quad|compact|dist)");
  return *k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mincut sensitivity oracles: build, query, verify, bench"};
  app.require_subcommand(1);

  std::string oracle = "quad";
  std::string graph_path, load_path, queries_path, out_path;
  bool report_cuts = false, count_only = false, emit_bench = false;

  auto* query = app.add_subcommand("query", "Answer a query stream against one oracle");
  query->add_option("graph", graph_path, "Graph file (p/e format)");
  query->add_option("--load", load_path, "Read a saved oracle instead of a graph");
  query->add_option("-q,--queries", queries_path, "Query file (default: stdin)");
  query->add_option("--oracle", oracle, "quad|compact|dist")->capture_default_str();
  query->add_flag("--report-cuts", report_cuts, "Print a mincut after ft/in values");
  query->add_flag("--count-only", count_only, "ap queries print only the pair count");
  query->add_flag("--bench", emit_bench, "Write per-kind cost CSV to stderr");

  auto* build = app.add_subcommand("build", "Build an oracle and save it");
  build->add_option("graph", graph_path, "Graph file (p/e format)")->required();
  build->add_option("--oracle", oracle, "quad|compact")->capture_default_str();
  build->add_option("-o,--output", out_path, "Dump file")->required();

  VerifyOptions vopts;
  bool no_fixtures = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check every oracle against brute force");
  verify_cmd->add_option("--seed", vopts.seed)->capture_default_str();
  verify_cmd->add_option("--graphs", vopts.graphs, "Random graphs")->capture_default_str();
  verify_cmd->add_option("--min-n", vopts.min_n)->capture_default_str();
  verify_cmd->add_option("--max-n", vopts.max_n)->capture_default_str();
  verify_cmd->add_flag("--no-fixtures", no_fixtures, "Skip the named fixtures");

  BenchOptions bopts;
  std::vector<std::string> bench_oracles;
  auto* bench_cmd = app.add_subcommand("bench", "CSV of build time, query ops and space");
  bench_cmd->add_option("--seed", bopts.seed)->capture_default_str();
  bench_cmd->add_option("--sizes", bopts.sizes, "Vertex counts")->capture_default_str();
  bench_cmd->add_option("--oracle", bench_oracles, "Oracles to run (default: all)");
  bench_cmd->add_option("--queries", bopts.queries, "Queries per kind")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*query) {
      if (graph_path.empty() == load_path.empty())
        throw InvalidArgument("give exactly one of a graph file or --load");
      auto t0 = std::chrono::steady_clock::now();
      QueryEngine engine = [&] {
        if (!load_path.empty()) {
          std::ifstream in(load_path);
          if (!in) throw InvalidArgument("cannot open " + load_path);
          return QueryEngine::load(in);
        }
        return QueryEngine::build(kind_or_throw(oracle), read_graph_file(graph_path));
      }();
      double build_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

      QueryOptions qopts;
      qopts.report_cuts = report_cuts;
      qopts.list_pairs = !count_only;
      QueryStats stats;
      int errors;
      if (queries_path.empty()) {
        errors = run_queries(engine, std::cin, std::cout, qopts, emit_bench ? &stats : nullptr);
      } else {
        std::ifstream in(queries_path);
        if (!in) throw InvalidArgument("cannot open " + queries_path);
        errors = run_queries(engine, in, std::cout, qopts, emit_bench ? &stats : nullptr);
      }
      if (emit_bench) {
        std::cerr << "oracle,n,m,build_ms,query_kind,ops,us\n";
        for (const auto& [name, c] : stats)
          std::cerr << oracle_name(engine.kind()) << ',' << engine.graph().n() << ','
                    << engine.graph().m() << ',' << build_ms << ',' << name << ','
                    << static_cast<double>(c.ops) / c.count << ',' << c.us / c.count << '\n';
      }
      return errors == 0 ? 0 : 1;
    }
    if (*build) {
      OracleKind kind = kind_or_throw(oracle);
      if (kind == OracleKind::Dist) throw InvalidArgument("distributed labels cannot be saved");
      QueryEngine engine = QueryEngine::build(kind, read_graph_file(graph_path));
      std::ofstream out(out_path);
      if (!out) throw InvalidArgument("cannot write " + out_path);
      engine.save(out);
      return 0;
    }
    if (*verify_cmd) {
      vopts.fixtures = !no_fixtures;
      VerifyReport report = verify(vopts);
      std::cout << verify_json(vopts, report) << '\n';
      if (report.empty()) std::cerr << "warning: empty corpus, nothing checked\n";
      std::cerr << report.mismatches() << " mismatches\n";
      return report.mismatches() == 0 ? 0 : 1;
    }
    if (*bench_cmd) {
      if (!bench_oracles.empty()) {
        bopts.oracles.clear();
        for (const auto& name : bench_oracles) bopts.oracles.push_back(kind_or_throw(name));
      }
      bench(bopts, std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
