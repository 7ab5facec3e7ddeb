#include <cmath>

#include "doctest.h"
#include "dsssp/ato.hpp"
#include "dsssp/dense.hpp"
#include "dsssp/es_tree.hpp"
#include "dsssp/oracle.hpp"
#include "support.hpp"

using namespace dsssp;

namespace {

AtoParams singleton_params() {
  AtoParams p;
  p.singleton = true;
  return p;
}

DenseParams dag_params(int n, double delta, double eps, VertexId root = 0) {
  DenseParams p;
  p.root = root;
  p.delta = delta;
  p.eps = eps;
  p.q = dag_quality(n, delta);
  p.dag_mode = true;
  return p;
}

Weight path_weight(const DecrementalGraph& g, const std::vector<VertexId>& path) {
  Weight s = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    EdgeId e = g.find_edge(path[i], path[i + 1]);
    if (e < 0 || !g.edge(e).alive) return -1;
    s += g.edge(e).w;
  }
  return s;
}

}  // namespace

TEST_CASE("chi: interval gaps") {
  CHECK(chi_interval(0, 3, 5, 2) == 3);
  CHECK(chi_interval(0, 2, 2, 4) == 1);
  CHECK(chi_interval(5, 2, 0, 3) == chi_interval(0, 3, 5, 2));
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}});
  SccTopo st{GraphView(g)};
  CHECK_THROWS_AS(chi(st, st.node_of(1), st.node_of(1)), SameNode);
  CHECK(chi(st, st.node_of(0), st.node_of(2)) == 2);
}

TEST_CASE("bucket rescan level after a split") {
  // Parent of size 8 splits into 5 and 3: 4 ∈ {3, ..., 7}.
  CHECK(split_rescan_level(3, 7) == 2);
  CHECK(split_rescan_level(5, 7) == 1);
  CHECK(split_rescan_level(1, 1) == 0);
  CHECK(split_rescan_level(4, 3) == -1);
}

TEST_CASE("scan step: small 2^j·eps/q rounds up to one") {
  const int n = 40;
  DecrementalGraph g(n, testsupport::random_dag_edges(n, 0.1, 3, 1));
  Ato a(g, singleton_params(), es_factory(), Rng(1));
  DenseParams p;
  p.eps = 0.5;
  p.q = 50;
  p.dag_mode = true;
  DenseEngine d(g, a.topo(), p);
  REQUIRE(d.top_bucket() >= 4);
  CHECK(d.step(4) == 1);
  CHECK(d.scan_level(7) == d.top_bucket());
  p.dag_mode = false;  // halved internally: still one
  DenseEngine h(g, a.topo(), p);
  CHECK(h.eps_internal() == doctest::Approx(0.25));
  CHECK(h.step(4) == 1);
}

TEST_CASE("dense: trivial configurations") {
  SUBCASE("one vertex") {
    DecrementalGraph g(1, {});
    Ato a(g, singleton_params(), es_factory(), Rng(1));
    DenseEngine d(g, a.topo(), dag_params(1, 4, 0.5));
    CHECK(d.estimate(0) == 0);
    CHECK(d.path(0).empty());
  }
  SUBCASE("isolated root") {
    DecrementalGraph g(4, {{1, 2, 1}, {2, 3, 1}});
    Ato a(g, singleton_params(), es_factory(), Rng(1));
    DenseEngine d(g, a.topo(), dag_params(4, 4, 0.5));
    CHECK(d.estimate(0) == 0);
    for (VertexId v = 1; v < 4; ++v) CHECK(d.estimate(v) == kInf);
    CHECK_THROWS_AS(d.path(2), NoPath);
  }
}

TEST_CASE("dense: unit steps reproduce exact truncated distances") {
  // eps/q tiny makes every step 1, so no error is allowed anywhere.
  const int n = 30;
  DecrementalGraph g(n, testsupport::random_dag_edges(n, 0.2, 6, 4));
  Ato a(g, singleton_params(), es_factory(), Rng(1));
  DenseParams p = dag_params(n, 40, 0.5);
  p.q = 1e9;
  DenseEngine d(g, a.topo(), p);
  for (auto u : testsupport::full_deletion_trace(g, 8)) {
    g.apply_update(u);
    d.update(u, a.handle_update(u));
    auto exact = dijkstra_oracle(g, 0);
    for (VertexId v = 0; v < n; ++v)
      REQUIRE(d.estimate(v) == (exact[v] <= d.delta_max() ? exact[v] : kInf));
  }
}

TEST_CASE("property: DAG mode meets (1+4eps) on [delta/2, delta) over full deletion traces") {
  const int n = 64;
  const double eps = 0.25;
  std::uint64_t checked = 0, inexact = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    DecrementalGraph g(n, testsupport::random_dag_edges(n, 0.15, 20, seed));
    Ato a(g, singleton_params(), es_factory(), Rng(seed));
    std::vector<std::unique_ptr<DenseEngine>> engines;
    std::vector<double> deltas;
    for (double delta = 4; delta <= 256; delta *= 2) {
      deltas.push_back(delta);
      engines.push_back(std::make_unique<DenseEngine>(g, a.topo(), dag_params(n, delta, eps)));
    }
    std::vector<std::vector<Weight>> mark(engines.size(), std::vector<Weight>(n, 0));
    auto check_stage = [&] {
      auto exact = dijkstra_oracle(g, 0);
      for (std::size_t k = 0; k < engines.size(); ++k) {
        const DenseEngine& d = *engines[k];
        REQUIRE(d.audit().empty());
        for (VertexId v = 0; v < n; ++v) {
          const Weight est = d.estimate(v);
          REQUIRE(est >= exact[v]);
          REQUIRE(est >= mark[k][v]);
          mark[k][v] = est;
          if (exact[v] >= deltas[k] / 2 && exact[v] < deltas[k]) {
            ++checked;
            if (est != exact[v]) ++inexact;
            REQUIRE(static_cast<double>(est) <= (1 + 4 * eps) * static_cast<double>(exact[v]));
          }
        }
      }
    };
    check_stage();
    for (auto u : testsupport::full_deletion_trace(g, seed + 10)) {
      g.apply_update(u);
      auto splits = a.handle_update(u);
      for (auto& d : engines) d->update(u, splits);
      check_stage();
    }
  }
  MESSAGE("checked " << checked << " estimates, " << inexact << " inexact");
  CHECK(checked > 1000);
  CHECK(inexact > 0);  // the lazy scan actually trades accuracy for work
}

TEST_CASE("property: accelerated increments match unit increments") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const int n = 40;
    SUBCASE("dag") {
      DecrementalGraph g(n, testsupport::random_dag_edges(n, 0.2, 12, seed));
      Ato a(g, singleton_params(), es_factory(), Rng(seed));
      DenseParams p = dag_params(n, 64, 0.3);
      DenseEngine slow(g, a.topo(), p);
      p.accelerated = true;
      DenseEngine fast(g, a.topo(), p);
      for (auto u : testsupport::full_deletion_trace(g, seed)) {
        g.apply_update(u);
        auto splits = a.handle_update(u);
        slow.update(u, splits);
        fast.update(u, splits);
        REQUIRE(slow.estimates() == fast.estimates());
      }
      CHECK(fast.counters().increments <= slow.counters().increments);
    }
    SUBCASE("ato") {
      DecrementalGraph g(n, testsupport::random_edges(n, 0.1, 2, seed));
      AtoParams ap;
      ap.delta = 4096;
      Ato a(g, ap, es_factory(), Rng(seed));
      DenseParams p;
      p.delta = 30;
      p.eps = 0.5;
      p.q = 2;
      p.eta = a.eta_diam();
      DenseEngine slow(g, a.topo(), p);
      p.accelerated = true;
      DenseEngine fast(g, a.topo(), p);
      Rng mix(seed);
      for (auto u : testsupport::full_deletion_trace(g, seed)) {
        if (mix.bernoulli(0.3)) u = UpdateEvent::increase(u.u, u.v, g.weight(u.u, u.v) + 1 + static_cast<Weight>(mix.below(300)));
        g.apply_update(u);
        auto splits = a.handle_update(u);
        slow.update(u, splits);
        fast.update(u, splits);
        REQUIRE(slow.estimates() == fast.estimates());
      }
    }
  }
}

TEST_CASE("property: ATO mode keeps the lower bound, buckets and certificates through splits") {
  std::uint64_t splits_seen = 0, upper_checked = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const int n = 48;
    DecrementalGraph g(n, testsupport::random_edges(n, 0.08, 2, seed));
    AtoParams ap;
    ap.delta = 4096;
    const double delta = 40, eps = 0.5, q = 4;
    for (bool reversed : {false, true}) {
      DecrementalGraph h(n, g.live_edges());
      Ato b(h, ap, es_factory(), Rng(seed));
      DenseParams p;
      p.root = 0;
      p.delta = delta;
      p.eps = eps;
      p.q = q;
      p.eta = b.eta_diam();
      p.reversed = reversed;
      DenseEngine d(h, b.topo(), p);
      std::vector<Weight> mark(n, 0);
      Rng mix(seed);
      for (auto u : testsupport::full_deletion_trace(h, seed + 3)) {
        if (mix.bernoulli(0.4))
          u = UpdateEvent::increase(u.u, u.v, h.weight(u.u, u.v) + 64 + static_cast<Weight>(mix.below(1024)));
        h.apply_update(u);
        auto splits = b.handle_update(u);
        splits_seen += splits.size();
        d.update(u, splits);
        INFO(d.audit());
        REQUIRE(d.audit().empty());
        GraphView all(h);
        auto exact = dijkstra_oracle(reversed ? all.reverse() : all, 0);
        for (VertexId v = 0; v < n; ++v) {
          const Weight est = d.estimate(v);
          REQUIRE(est >= exact[v]);
          REQUIRE(d.node_estimate(v) >= mark[v]);
          mark[v] = d.node_estimate(v);
          if (!reversed && exact[v] <= delta && v != 0) {
            auto pi = dijkstra_path(all, 0, v);
            if (static_cast<double>(quality_T(b.topo(), h, pi)) <= q * delta + n) {
              ++upper_checked;
              REQUIRE(static_cast<double>(est) <= exact[v] + std::ceil(b.eta_diam()) + eps * delta);
            }
          }
        }
      }
    }
  }
  MESSAGE("splits " << splits_seen << ", upper bounds checked " << upper_checked);
  CHECK(splits_seen > 0);
  CHECK(upper_checked > 0);
}

TEST_CASE("dense path: real path, no shorter than the truth, within the budget") {
  const int n = 36;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    DecrementalGraph g(n, testsupport::random_edges(n, 0.1, 3, seed));
    AtoParams ap;
    ap.delta = 4096;
    Ato a(g, ap, es_factory(), Rng(seed));
    DenseParams p;
    p.delta = 60;
    p.eps = 0.5;
    p.q = 4;
    p.eta = a.eta_diam();
    DenseEngine d(g, a.topo(), p);
    auto trace = testsupport::full_deletion_trace(g, seed);
    trace.resize(trace.size() / 2);
    for (auto u : trace) {
      g.apply_update(u);
      d.update(u, a.handle_update(u));
      auto exact = dijkstra_oracle(g, 0);
      for (VertexId v = 1; v < n; ++v) {
        if (d.estimate(v) >= kInf) continue;
        auto path = d.path(v);
        REQUIRE(path.front() == 0);
        REQUIRE(path.back() == v);
        const Weight w = path_weight(g, path);
        REQUIRE(w >= exact[v]);
        // Each node on the way is crossed inside its weak-diameter budget.
        double budget = 0;
        for (NodeId x : d.node_path(v)) budget += a.eta_diam() * a.topo().size(x) / n;
        REQUIRE(static_cast<double>(w) <= static_cast<double>(d.node_estimate(v)) + budget + 1e-9);
      }
    }
  }
}

TEST_CASE("dense path: singleton nodes give the tree path itself") {
  const int n = 20;
  DecrementalGraph g(n, testsupport::random_dag_edges(n, 0.3, 5, 2));
  Ato a(g, singleton_params(), es_factory(), Rng(1));
  DenseEngine d(g, a.topo(), dag_params(n, 64, 0.5));
  for (VertexId v = 1; v < n; ++v) {
    if (d.estimate(v) >= kInf) continue;
    auto path = d.path(v);
    CHECK(path.size() == d.node_path(v).size());
    CHECK(path_weight(g, path) <= d.estimate(v));
  }
}

TEST_CASE("dense: work stays inside the budget alarm") {
  const int n = 64;
  DecrementalGraph g(n, testsupport::random_dag_edges(n, 0.3, 10, 3));
  Ato a(g, singleton_params(), es_factory(), Rng(1));
  DenseEngine d(g, a.topo(), dag_params(n, 128, 0.25));
  for (auto u : testsupport::full_deletion_trace(g, 3)) {
    g.apply_update(u);
    d.update(u, a.handle_update(u));
  }
  CHECK(d.counters().scans > 0);
  CHECK(d.work_budget_ratio() <= 1.0);
}
