#include <map>
#include <set>

#include "doctest.h"
#include "dsssp/scc_topo.hpp"
#include "support.hpp"

using namespace dsssp;

namespace {

std::set<std::set<int>> partition_of(const SccTopo& st) {
  std::set<std::set<int>> out;
  for (NodeId x : st.current_nodes()) {
    const auto& m = st.members(x);
    out.insert(std::set<int>(m.begin(), m.end()));
  }
  return out;
}

// Disjoint intervals inside [0, n) and every edge between nodes goes
// forward in τ.
void check_gto(const SccTopo& st) {
  int n = st.n();
  std::vector<int> cover(n, 0);
  for (NodeId x : st.current_nodes()) {
    REQUIRE(st.tau(x) >= 0);
    REQUIRE(st.tau(x) + st.size(x) <= n);
    for (int i = 0; i < st.size(x); ++i) ++cover[st.tau(x) + i];
    for (VertexId v : st.members(x)) REQUIRE(st.node_of(v) == x);
  }
  for (int c : cover) REQUIRE(c == 1);
  const GraphView& v = st.view();
  for (VertexId u = 0; u < n; ++u)
    v.for_each_out(u, [&](EdgeId, VertexId w, Weight) {
      if (st.node_of(u) != st.node_of(w)) REQUIRE(st.tau(st.node_of(u)) < st.tau(st.node_of(w)));
    });
}

}  // namespace

TEST_CASE("gto: triangle is one node") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  SccTopo st{GraphView(g)};
  CHECK(st.node_count() == 1);
  CHECK(st.tau(st.node_of(0)) == 0);
  CHECK(st.size(st.node_of(2)) == 3);
}

TEST_CASE("gto: chain") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}});
  SccTopo st{GraphView(g)};
  CHECK(st.node_count() == 3);
  for (int v = 0; v < 3; ++v) CHECK(st.tau(st.node_of(v)) == v);
}

TEST_CASE("gto: two-cycle feeding a sink") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}});
  SccTopo st{GraphView(g)};
  CHECK(st.node_count() == 2);
  CHECK(st.node_of(0) == st.node_of(1));
  CHECK(st.tau(st.node_of(0)) == 0);
  CHECK(st.tau(st.node_of(2)) == 2);
  CHECK(partition_of(st) == testsupport::scc_sets(testsupport::matrix(g)));
}

TEST_CASE("gto: ties go to the smaller minimum vertex") {
  DecrementalGraph g(4, {{3, 2, 1}, {2, 3, 1}});
  SccTopo st{GraphView(g)};
  CHECK(st.tau(st.node_of(0)) == 0);
  CHECK(st.tau(st.node_of(1)) == 1);
  CHECK(st.tau(st.node_of(2)) == 2);
}

TEST_CASE("split: triangle loses its back edge") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  SccTopo st{GraphView(g)};
  NodeId before = st.node_of(0);
  EdgeId e = g.apply_update(UpdateEvent::del(2, 0));
  auto ev = st.apply_deletions({e});
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].parent == before);
  REQUIRE(ev[0].children.size() == 3);
  for (int v = 0; v < 3; ++v) CHECK(st.tau(st.node_of(v)) == v);
  CHECK_FALSE(st.alive(before));
  // Same labels as a fresh computation on the post-deletion graph.
  SccTopo fresh{GraphView(g)};
  for (int v = 0; v < 3; ++v) CHECK(st.tau(st.node_of(v)) == fresh.tau(fresh.node_of(v)));
}

TEST_CASE("split: edge outside every cycle") {
  DecrementalGraph g(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}});
  SccTopo st{GraphView(g)};
  EdgeId e = g.apply_update(UpdateEvent::del(1, 2));
  CHECK(st.apply_deletions({e}).empty());
}

TEST_CASE("split: two-cycle nests in its interval") {
  DecrementalGraph g(3, {{2, 0, 1}, {0, 1, 1}, {1, 0, 1}});
  SccTopo st{GraphView(g)};
  NodeId p = st.node_of(0);
  VertexId lo = st.tau(p);
  EdgeId e = g.apply_update(UpdateEvent::del(1, 0));
  auto ev = st.apply_deletions({e});
  REQUIRE(ev.size() == 1);
  for (const auto& c : ev[0].children) {
    CHECK(c.tau >= lo);
    CHECK(c.tau + c.size <= lo + 2);
  }
  CHECK(st.tau(st.node_of(0)) < st.tau(st.node_of(1)));
}

TEST_CASE("property: maintained partition matches recomputation, intervals nest") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = 24;
    DecrementalGraph g(n, testsupport::random_edges(n, 0.12, 3, seed));
    SccTopo st{GraphView(g)};
    auto trace = testsupport::full_deletion_trace(g, seed * 31);
    std::vector<std::pair<int, int>> iv(n);
    for (int v = 0; v < n; ++v) iv[v] = {st.tau(st.node_of(v)), st.size(st.node_of(v))};
    for (std::size_t i = 0; i < trace.size(); ++i) {
      EdgeId e = g.apply_update(trace[i]);
      auto ev = st.apply_deletions({e});
      for (const auto& s : ev) REQUIRE(s.children.size() >= 2);
      check_gto(st);
      REQUIRE(partition_of(st) == testsupport::scc_sets(testsupport::matrix(g)));
      for (int v = 0; v < n; ++v) {
        int t = st.tau(st.node_of(v)), s = st.size(st.node_of(v));
        REQUIRE(t >= iv[v].first);
        REQUIRE(t + s <= iv[v].first + iv[v].second);
        iv[v] = {t, s};
      }
    }
  }
}

TEST_CASE("property: split children partition the parent in interval order") {
  DecrementalGraph g(30, testsupport::random_edges(30, 0.1, 2, 99));
  SccTopo st{GraphView(g)};
  std::map<NodeId, std::pair<int, int>> known;
  for (NodeId x : st.current_nodes()) known[x] = {st.tau(x), st.size(x)};
  for (auto& u : testsupport::full_deletion_trace(g, 4)) {
    EdgeId e = g.apply_update(u);
    for (const auto& s : st.apply_deletions({e})) {
      auto [pt, ps] = known.at(s.parent);
      int at = pt;
      for (const auto& c : s.children) {
        REQUIRE(c.tau == at);
        at += c.size;
        known[c.node] = {c.tau, c.size};
      }
      REQUIRE(at == pt + ps);
    }
  }
}
