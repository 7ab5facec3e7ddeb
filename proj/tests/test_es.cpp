#include "doctest.h"
#include "dsssp/es_tree.hpp"
#include "dsssp/oracle.hpp"
#include "dsssp/rng.hpp"
#include "support.hpp"

using namespace dsssp;

TEST_CASE("es: unit path") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}});
  EsTree t(GraphView(g), 0, 2);
  CHECK(t.dist(1) == 1);
  CHECK(t.dist(2) == 2);
  EsTree s(GraphView(g), 0, 1);
  CHECK(s.dist(2) == kInf);
}

TEST_CASE("es: isolated root") {
  DecrementalGraph g(4, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}});
  EsTree t(GraphView(g), 0, 100);
  for (int v = 1; v < 4; ++v) CHECK(t.dist(v) == kInf);
}

TEST_CASE("es: losing the only entry edge") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}});
  EsTree t(GraphView(g), 0, 5);
  UpdateEvent u = UpdateEvent::del(0, 1);
  g.apply_update(u);
  t.on_edge_changed(u.edge);
  CHECK(t.dist(1) == kInf);
  CHECK(t.dist(2) == kInf);
}

TEST_CASE("es: non-witness deletion changes nothing") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 5}});
  EsTree t(GraphView(g), 0, 10);
  auto before = t.distances();
  UpdateEvent u = UpdateEvent::del(0, 2);
  g.apply_update(u);
  t.on_edge_changed(u.edge);
  CHECK(t.distances() == before);
  CHECK(t.increments() == 0);
}

TEST_CASE("property: es equals truncated dijkstra under random updates") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const int n = 32;
    DecrementalGraph g(n, testsupport::random_edges(n, 0.12, 6, seed));
    const Weight depth = 12;
    EsSssp es(GraphView(g), 0, depth);
    Rng rng(seed);
    auto trace = testsupport::full_deletion_trace(g, seed + 100);
    for (auto& u : trace) {
      if (rng.bernoulli(0.3))
        u = UpdateEvent::increase(u.u, u.v, g.weight(u.u, u.v) + 1 + static_cast<Weight>(rng.below(4)));
      g.apply_update(u);
      es.on_update(u);
      auto fwd = dijkstra_oracle(GraphView(g), 0);
      auto bwd = dijkstra_oracle(GraphView(g).reverse(), 0);
      for (int v = 0; v < n; ++v) {
        REQUIRE(es.from_root(v) == (fwd[v] <= depth ? fwd[v] : kInf));
        REQUIRE(es.to_root(v) == (bwd[v] <= depth ? bwd[v] : kInf));
      }
    }
    // Each in-neighbourhood is scanned at most once per estimate value.
    std::uint64_t bound = 0;
    for (int v = 0; v < n; ++v) bound += (g.in_edges(v).size() + 1) * (depth + 1);
    CHECK(es.out_tree()->scans() <= bound);
  }
}

TEST_CASE("es: host restriction") {
  DecrementalGraph g(4, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}, {3, 2, 1}});
  EsSssp es(g, {0, 1, 2}, 0, 10);
  CHECK(es.from_root(2) == 2);
  CHECK(es.from_root(3) == kInf);
  UpdateEvent u = UpdateEvent::del(1, 2);
  g.apply_update(u);
  es.on_update(u);
  CHECK(es.from_root(2) == kInf);  // the path through 3 is outside the host
}

TEST_CASE("es: overestimate and 2-approximation contract") {
  DecrementalGraph g(20, testsupport::bidirected_grid(4, 5, 4, 2));
  auto f = es_factory();
  SsspRequest req;
  req.graph = &g;
  for (int v = 0; v < 20; ++v) req.host.push_back(v);
  req.root = 7;
  req.depth = 9;
  auto s = f(req);
  auto d = dijkstra_oracle(GraphView(g), 7);
  for (int v = 0; v < 20; ++v) {
    CHECK(s->from_root(v) >= d[v]);
    if (d[v] <= 9) CHECK(s->from_root(v) <= 2 * d[v]);
  }
}
