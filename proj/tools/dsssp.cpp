// Command-line harness: workload generation and experiment runs.
//
//   dsssp generate --family grid --rows 4 --cols 4 --seed 1 --graph g.txt --trace t.txt
//   dsssp run --graph g.txt --trace t.txt --algo dense --verify full --out report.csv
//
// Exit codes: 0 ok, 1 other error, 2 incompatible algo, 3 verification
// failed, 4 bad spec or input.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/harness.hpp"
#include "json.hpp"

using namespace dsssp;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  return in;
}

nlohmann::json summary_json(const RunSummary& s, const RunOptions& o, int n, int m) {
  nlohmann::json j;
  j["algo"] = s.algo;
  j["n"] = n;
  j["m"] = m;
  j["epsilon"] = o.eps;
  j["seed"] = o.seed;
  j["stages"] = s.stages;
  j["checked"] = s.checked;
  j["lower_violations"] = s.lower_violations;
  j["upper_violations"] = s.upper_violations;
  j["violation_rate"] = s.violation_rate();
  j["contract"] = {{"mult", s.mult}, {"lo", s.lo}, {"hi", s.hi >= kInf ? -1 : s.hi}};
  j["scans"] = s.scans;
  j["total_ms"] = s.total_ms;
  for (const auto& [k, v] : s.metrics) j["metrics"][k] = v;
  j["failed"] = s.failed;
  if (s.failed) j["failure"] = s.failure;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decremental approximate SSSP harness"};
  app.require_subcommand(1);

  GraphSpec gs;
  TraceSpec ts;
  std::uint64_t gen_seed = 1;
  std::string graph_out = "graph.txt", trace_out = "trace.txt";
  auto* gen = app.add_subcommand("generate", "Write a graph file and an update trace");
  gen->add_option("--family", gs.family, "random | grid | dag-layered")->capture_default_str();
  gen->add_option("--n", gs.n, "vertices (random, grid)")->capture_default_str();
  gen->add_option("--density", gs.density, "edge probability")->capture_default_str();
  gen->add_option("--W", gs.max_w, "largest weight")->capture_default_str();
  gen->add_option("--rows", gs.rows, "grid rows");
  gen->add_option("--cols", gs.cols, "grid columns");
  gen->add_option("--layers", gs.layers, "dag-layered: number of layers");
  gen->add_option("--width", gs.width, "dag-layered: vertices per layer");
  gen->add_option("--trace-kind", ts.kind, "full | mix")->capture_default_str();
  gen->add_option("--increase-fraction", ts.increase_fraction, "mix: share of weight doublings")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--graph", graph_out, "graph output path")->capture_default_str();
  gen->add_option("--trace", trace_out, "trace output path")->capture_default_str();

  RunOptions ro;
  std::string graph_in, trace_in, algo = "auto", verify = "none", out, json_out;
  auto* run_cmd = app.add_subcommand("run", "Replay a trace and report estimates");
  run_cmd->add_option("--graph", graph_in, "graph file")->required();
  run_cmd->add_option("--trace", trace_in, "trace file (empty: no updates)");
  run_cmd->add_option("--algo", algo, "recompute | es | dag | dense | sparse | auto")
      ->capture_default_str();
  run_cmd->add_option("--epsilon", ro.eps)->capture_default_str();
  run_cmd->add_option("--delta", ro.delta, "query depth; 0 for n·W")->capture_default_str();
  run_cmd->add_option("--c", ro.c, "failure parameter")->capture_default_str();
  run_cmd->add_option("--bundle", ro.bundle, "ATO copies per bundle; 0 for 40·c·ln n")
      ->capture_default_str();
  run_cmd->add_option("--gamma", ro.gamma, "hosts with ≥ n/2^γ vertices are large")
      ->capture_default_str();
  run_cmd->add_option("--verify", verify, "none | sampled:k | full")->capture_default_str();
  run_cmd->add_option("--tolerance", ro.max_violation_rate, "tolerated upper-violation rate")
      ->capture_default_str();
  run_cmd->add_option("--root", ro.root)->capture_default_str();
  run_cmd->add_option("--seed", ro.seed)->capture_default_str();
  run_cmd->add_option("--workers", ro.workers, "worker threads (runs are sequential)")
      ->capture_default_str();
  run_cmd->add_option("--out", out, "CSV report path (default stdout)");
  run_cmd->add_option("--json", json_out, "JSON summary path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Workload w = generate(gs, ts, gen_seed);
      std::ofstream g(graph_out), t(trace_out);
      if (!g || !t) throw SpecError("cannot write output files");
      write_graph(g, w.n, w.edges);
      write_trace(t, w.trace);
      std::cerr << "wrote n=" << w.n << " m=" << w.edges.size() << " updates=" << w.trace.size()
                << "\n";
      return 0;
    }
    ro.algo = parse_algo(algo);
    ro.verify = parse_verify(verify);
    auto gin = open_in(graph_in);
    DecrementalGraph g = read_graph(gin);
    std::vector<UpdateEvent> trace;
    if (!trace_in.empty()) {
      auto tin = open_in(trace_in);
      trace = read_trace(tin);
    }
    std::ofstream file;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw SpecError("cannot write '" + out + "'");
    }
    std::ostream& csv = out.empty() ? std::cout : file;
    csv << kCsvHeader << "\n";
    const RunSummary s = run(g, trace, ro, [&](const RunRow& r) { csv << csv_row(r) << "\n"; });
    csv.flush();
    const nlohmann::json j = summary_json(s, ro, g.n(), g.m());
    if (!json_out.empty()) {
      std::ofstream jf(json_out);
      jf << j.dump(2) << "\n";
    }
    std::cerr << j.dump() << "\n";
    enforce(s);
    return 0;
  } catch (const IncompatibleAlgo& e) {
    std::cerr << "IncompatibleAlgo: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailed& e) {
    std::cerr << "VerificationFailed: " << e.what() << "\n";
    return 3;
  } catch (const SpecError& e) {
    std::cerr << "SpecError: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
