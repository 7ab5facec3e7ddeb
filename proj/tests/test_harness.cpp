#include <sstream>

#include "doctest.h"
#include "dsssp/harness.hpp"
#include "dsssp/scc_topo.hpp"

using namespace dsssp;

namespace {

std::string graph_text(const Workload& w) {
  std::ostringstream o;
  write_graph(o, w.n, w.edges);
  return o.str();
}

std::string trace_text(const Workload& w) {
  std::ostringstream o;
  write_trace(o, w.trace);
  return o.str();
}

std::vector<std::string> run_rows(const Workload& w, RunOptions o, RunSummary* s = nullptr) {
  std::vector<std::string> rows;
  RunSummary r = run(DecrementalGraph(w.n, w.edges), w.trace, o, [&](const RunRow& row) {
    RunRow copy = row;
    copy.ms = 0;  // wall time is the one column allowed to differ
    rows.push_back(csv_row(copy));
  });
  if (s) *s = r;
  return rows;
}

}  // namespace

TEST_CASE("generate: bidirected 4x4 grid") {
  GraphSpec gs;
  gs.family = "grid";
  gs.rows = gs.cols = 4;
  const Workload w = generate(gs, TraceSpec{}, 1);
  CHECK(w.n == 16);
  CHECK(w.edges.size() == 48);
  CHECK(w.trace.size() == 48);
}

TEST_CASE("generate: layered DAG is acyclic") {
  GraphSpec gs;
  gs.family = "dag-layered";
  gs.layers = 3;
  gs.width = 2;
  const Workload w = generate(gs, TraceSpec{}, 2);
  CHECK(w.n == 6);
  CHECK(!w.edges.empty());
  CHECK(is_acyclic(DecrementalGraph(w.n, w.edges)));
}

TEST_CASE("generate: same spec and seed give identical files") {
  GraphSpec gs;
  gs.n = 30;
  gs.density = 0.2;
  TraceSpec ts;
  ts.kind = "mix";
  const Workload a = generate(gs, ts, 9), b = generate(gs, ts, 9), c = generate(gs, ts, 10);
  CHECK(graph_text(a) == graph_text(b));
  CHECK(trace_text(a) == trace_text(b));
  CHECK(graph_text(a) != graph_text(c));
  // The mix trace replays cleanly: every edge is deleted exactly once.
  DecrementalGraph g(a.n, a.edges);
  for (UpdateEvent e : a.trace) g.apply_update(e);
  CHECK(g.m() == 0);
}

TEST_CASE("generate: bad specs are rejected") {
  GraphSpec gs;
  gs.family = "torus";
  CHECK_THROWS_AS(generate(gs, TraceSpec{}, 1), SpecError);
  gs = GraphSpec{};
  gs.density = 2;
  CHECK_THROWS_AS(generate(gs, TraceSpec{}, 1), SpecError);
  CHECK_THROWS_AS(parse_verify("sampled:0"), SpecError);
  CHECK_THROWS_AS(parse_algo("fast"), SpecError);
}

TEST_CASE("auto picks dense above n^1.5 edges") {
  CHECK(resolve_auto(16, 65) == Algo::Dense);
  CHECK(resolve_auto(16, 64) == Algo::Sparse);
}

TEST_CASE("run: recompute under full verification never violates") {
  GraphSpec gs;
  gs.n = 24;
  gs.density = 0.15;
  const Workload w = generate(gs, TraceSpec{}, 3);
  RunOptions o;
  o.algo = Algo::Recompute;
  o.verify = parse_verify("full");
  RunSummary s;
  const auto rows = run_rows(w, o, &s);
  CHECK(rows.size() == (w.trace.size() + 1) * 24);
  CHECK(s.lower_violations + s.upper_violations == 0);
  CHECK(!s.failed);
}

TEST_CASE("run: dag mode meets (1+4eps) on [delta/2, delta)") {
  GraphSpec gs;
  gs.family = "dag-layered";
  gs.layers = 8;
  gs.width = 6;
  gs.density = 0.2;
  gs.max_w = 8;
  const Workload w = generate(gs, TraceSpec{}, 4);
  for (Weight delta : {8, 16, 32}) {
    RunOptions o;
    o.algo = Algo::Dag;
    o.eps = 0.25;
    o.delta = delta;
    o.verify = parse_verify("full");
    RunSummary s;
    run_rows(w, o, &s);
    CHECK(s.checked > 0);
    CHECK(s.lower_violations == 0);
    CHECK(s.upper_violations == 0);
  }
}

TEST_CASE("run: dag mode refuses cyclic input") {
  GraphSpec gs;
  gs.family = "grid";
  gs.rows = gs.cols = 3;
  const Workload w = generate(gs, TraceSpec{}, 5);
  RunOptions o;
  o.algo = Algo::Dag;
  CHECK_THROWS_AS(run_rows(w, o), IncompatibleAlgo);
}

TEST_CASE("run: replay determinism except wall time") {
  GraphSpec gs;
  gs.n = 20;
  gs.density = 0.2;
  const Workload w = generate(gs, TraceSpec{}, 6);
  for (Algo a : {Algo::Es, Algo::Dense, Algo::Sparse}) {
    RunOptions o;
    o.algo = a;
    o.bundle = 2;
    o.verify = parse_verify("sampled:5");
    CHECK(run_rows(w, o) == run_rows(w, o));
  }
}

TEST_CASE("run: dense over a few seeds stays within the violation budget") {
  std::uint64_t checked = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GraphSpec gs;
    gs.n = 32;
    gs.density = 0.12;
    gs.max_w = 32;
    const Workload w = generate(gs, TraceSpec{}, seed);
    RunOptions o;
    o.algo = Algo::Dense;
    o.bundle = 4;
    o.seed = seed;
    o.verify = parse_verify("full");
    o.max_violation_rate = 0.01;
    RunSummary s;
    run_rows(w, o, &s);
    CHECK(s.lower_violations == 0);
    checked += s.checked;
    bad += s.upper_violations;
  }
  CHECK(checked > 0);
  CHECK(static_cast<double>(bad) <= 0.01 * static_cast<double>(checked));
}

TEST_CASE("run: a violated contract is flagged") {
  RunSummary s;
  s.lower_violations = 1;
  s.failed = true;
  s.failure = "x";
  CHECK_THROWS_AS(enforce(s), VerificationFailed);
  CHECK_NOTHROW(enforce(RunSummary{}));
}

TEST_CASE("csv: header and row layout") {
  CHECK(std::string(kCsvHeader) ==
        "stage,vertex,exact,estimate,verdict,counter_scans,counter_repairs,counter_splits,ms");
  RunRow r;
  r.stage = 3;
  r.vertex = 2;
  r.exact = 5;
  r.estimate = kInf;
  r.verdict = "upper";
  CHECK(csv_row(r) == "3,2,5,inf,upper,0,0,0,0.000");
}
