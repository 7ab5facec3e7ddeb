#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dsssp/ato.hpp"
#include "dsssp/oracle.hpp"
#include "dsssp/sparse.hpp"
#include "support.hpp"

using namespace dsssp;

namespace {

// Node-level arcs of g contracted by st, restricted to nodes accepted by keep.
template <class Keep>
std::vector<WeightedArc> contracted(const DecrementalGraph& g, const SccTopo& st, bool reversed,
                                    Keep keep) {
  std::vector<WeightedArc> arcs;
  for (const auto& [u, v, w] : g.live_edges()) {
    const VertexId t = reversed ? v : u, h = reversed ? u : v;
    const NodeId x = st.node_of(t), y = st.node_of(h);
    if (x != y && keep(x) && keep(y)) arcs.push_back({x, y, w});
  }
  return arcs;
}

bool near_ball(const SccTopo& st, NodeId src, NodeId y, std::int64_t K) {
  if (y == src) return true;
  const std::int64_t a = st.tau(src), sa = st.size(src), b = st.tau(y), sb = st.size(y);
  const std::int64_t gap = a < b ? b - (a + sa - 1) : a - (b + sb - 1);
  return gap <= K;
}

// Directed path 0 → 1 → ... → n-1 with forward chords; acyclic.
EdgeList long_dag(int n, Weight w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EdgeList el;
  for (int i = 0; i + 1 < n; ++i) el.emplace_back(i, i + 1, w);
  for (int i = 0; i < n; ++i) {
    const int j = i + 2 + static_cast<int>(rng() % 6);
    if (j < n) el.emplace_back(i, j, w * (j - i) + 1 + static_cast<Weight>(rng() % 3));
  }
  return el;
}

}  // namespace

TEST_CASE("chi_far: worked examples and symmetry") {
  CHECK(chi_far_interval(0, 3, 5, 2) == 6);
  CHECK(chi_far_interval(0, 1, 1, 1) == 1);
  CHECK(chi_far_interval(5, 2, 0, 3) == 6);
  DecrementalGraph g(3, {{0, 1, 1}, {1, 2, 1}});
  SccTopo st{GraphView(g)};
  CHECK_THROWS_AS(chi_far(st, st.node_of(2), st.node_of(2)), SameNode);
  CHECK(chi_far(st, st.node_of(0), st.node_of(2)) == 2);
}

TEST_CASE("property: near gap never exceeds far gap") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const std::int64_t sx = 1 + rng.below(8), sy = 1 + rng.below(8);
    const std::int64_t tx = rng.below(100);
    std::int64_t ty = rng.below(100);
    if (ty < tx + sx && tx < ty + sy) ty = tx + sx + rng.below(5);  // disjoint
    CHECK(chi_interval(tx, sx, ty, sy) <= chi_far_interval(tx, sx, ty, sy));
    CHECK(chi_far_interval(tx, sx, ty, sy) == chi_far_interval(ty, sy, tx, sx));
  }
}

TEST_CASE("topo ball: open inside closed") {
  const int n = 40;
  DecrementalGraph g(n, testsupport::random_edges(n, 0.05, 3, 4));
  SccTopo st{GraphView(g)};
  for (std::int64_t K : {0, 3, 10}) {
    TopoBall b{7, K};
    auto closed = b.closed_members(st), open = b.open_members(st);
    for (NodeId y : open) CHECK(std::find(closed.begin(), closed.end(), y) != closed.end());
    CHECK(std::find(closed.begin(), closed.end(), st.node_of(7)) != closed.end());
  }
}

TEST_CASE("hopset level arithmetic") {
  CHECK(cbrt_ceil(4096) == 16);
  CHECK(cbrt_ceil(512) == 8);
  CHECK(cbrt_ceil(100) == 5);
  CHECK(n23_ceil(512) == 64);
  CHECK(n23_ceil(4096) == 256);
  CHECK(hopset_level(4096, 10, 1.0, 4096, 1.0).l == 64);
  // ⌈512^{2/3}⌉·ln 512 ≈ 399: level 8 (h = 256) is empty, level 9 is not.
  CHECK(hopset_level(512, 8, 1.0, 512, 1.0).empty);
  const HopsetLevel nine = hopset_level(512, 9, 1.0, 512, 1.0);
  CHECK_FALSE(nine.empty);
  CHECK(nine.l == 64);
  CHECK(nine.K == 64);
  CHECK(nine.sample_p == doctest::Approx(3.0 * 7.0 * std::log(512.0) / 64.0));
}

TEST_CASE("ges grid: ratio bound and exact small values") {
  DecrementalGraph g(2, {{0, 1, 1}});
  SccTopo st{GraphView(g)};
  GesParams p;
  p.depth = 5000;
  p.hops = 10;
  p.eps = 0.5;
  GesTree t(g, st, p);
  const auto& grid = t.grid();
  const double beta = 0.5 / 20.0;
  for (Weight x = 0; x <= 40; ++x) CHECK(t.round_up(x) == x);
  for (Weight x = 1; x <= 5000; ++x) {
    const Weight r = t.round_up(x);
    REQUIRE(r >= x);
    REQUIRE(static_cast<double>(r) <= (1.0 + beta) * static_cast<double>(x) + 1e-9);
  }
  CHECK(t.round_up(5001) == kInf);
  CHECK(grid.size() < 5000);
}

TEST_CASE("ges: simple path of nodes is exact") {
  const int n = 12;
  EdgeList el;
  for (int i = 0; i + 1 < n; ++i) el.emplace_back(i, i + 1, 1 + i % 3);
  DecrementalGraph g(n, el);
  SccTopo st{GraphView(g)};
  GesParams p;
  p.depth = 1000;
  p.hops = n;
  p.eps = 0.5;
  GesTree t(g, st, p);
  auto exact = dijkstra_oracle(g, 0);
  for (VertexId v = 0; v < n; ++v) CHECK(t.estimate(v) == exact[v]);
  CHECK(t.audit().empty());
}

TEST_CASE("ges: hop cap one bounds direct edges only") {
  // Nodes past one hop may still carry finite overestimates; the guarantee
  // is the (1+eps) bound for the direct arcs and the lower bound everywhere.
  DecrementalGraph g(4, {{0, 1, 40}, {1, 2, 33}, {2, 3, 57}, {0, 3, 500}});
  SccTopo st{GraphView(g)};
  GesParams p;
  p.depth = 1000;
  p.hops = 1;
  p.eps = 0.5;
  GesTree t(g, st, p);
  auto exact = dijkstra_oracle(g, 0);
  auto h1 = hop_bounded_oracle(GraphView(g), 0, 1);
  for (VertexId v = 0; v < 4; ++v) {
    CHECK(t.estimate(v) >= exact[v]);
    if (h1[v] < kInf) CHECK(static_cast<double>(t.estimate(v)) <= 1.5 * h1[v]);
  }
  CHECK(h1[2] == kInf);
}

TEST_CASE("property: ges stays within (1+eps) of the hop-8 oracle through splits") {
  std::uint64_t checked = 0, inexact = 0, splits = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = 64;
    DecrementalGraph g(n, testsupport::random_edges(n, 0.06, 40, seed));
    SccTopo st{GraphView(g)};
    GesParams p;
    p.source = static_cast<VertexId>(seed % n);
    p.depth = 400;
    p.hops = 8;
    p.eps = 0.25;
    p.reversed = seed % 2 == 0;
    GesTree t(g, st, p);
    std::vector<Weight> mark(g.n(), 0);
    Rng mix(seed);
    for (auto u : testsupport::full_deletion_trace(g, seed + 9)) {
      if (mix.bernoulli(0.3)) u = UpdateEvent::increase(u.u, u.v, g.weight(u.u, u.v) + 1 + mix.below(30));
      g.apply_update(u);
      std::vector<SplitEvent> sp;
      if (u.kind == UpdateKind::Delete) sp = st.apply_deletions({u.edge});
      splits += sp.size();
      t.apply_splits(sp);
      t.edge_changed(u.edge);
      t.settle();
      t.clear_changed();
      INFO(t.audit());
      REQUIRE(t.audit().empty());
      auto arcs = contracted(g, st, p.reversed, [](NodeId) { return true; });
      const NodeId src = st.node_of(p.source);
      auto full = bellman_ford(st.handle_bound(), arcs, src);
      auto hop8 = bellman_ford(st.handle_bound(), arcs, src, 8);
      for (NodeId y : st.current_nodes()) {
        const Weight e = t.node_estimate(y);
        REQUIRE(e >= full[y]);
        REQUIRE(e >= mark[st.members(y)[0]]);
        for (VertexId v : st.members(y)) mark[v] = e;
        if (hop8[y] <= p.depth) {
          ++checked;
          if (e != hop8[y]) ++inexact;
          REQUIRE(static_cast<double>(e) <= (1.0 + p.eps) * static_cast<double>(hop8[y]) + 1e-9);
        }
      }
    }
  }
  MESSAGE("checked " << checked << ", inexact " << inexact << ", splits " << splits);
  CHECK(checked > 1000);
  CHECK(splits > 0);
}

TEST_CASE("property: ball-restricted ges matches the oracle on the ball host") {
  std::uint64_t outside_closed = 0, outside_open = 0, exits = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const int n = 64;
    DecrementalGraph g(n, testsupport::random_edges(n, 0.07, 6, seed + 20));
    SccTopo st{GraphView(g)};
    GesParams p;
    p.source = 3;
    p.depth = 200;
    p.hops = 64;
    p.eps = 0.5;
    p.radius = 6;
    GesTree t(g, st, p);
    for (auto u : testsupport::full_deletion_trace(g, seed)) {
      g.apply_update(u);
      auto sp = st.apply_deletions({u.edge});
      t.apply_splits(sp);
      t.edge_changed(u.edge);
      t.settle();
      t.clear_changed();
      REQUIRE(t.audit().empty());
      const NodeId src = st.node_of(p.source);
      auto keep = [&](NodeId y) { return near_ball(st, src, y, p.radius); };
      auto host = bellman_ford(st.handle_bound(), contracted(g, st, false, keep), src);
      for (NodeId y : st.current_nodes()) {
        const Weight e = t.node_estimate(y);
        if (!keep(y)) {
          REQUIRE(e == kInf);
          continue;
        }
        REQUIRE(e >= host[y]);
        if (host[y] <= p.depth) REQUIRE(static_cast<double>(e) <= 1.5 * host[y]);
      }
    }
    outside_closed += t.counters().touched_outside_closed;
    outside_open += t.counters().touched_outside_open;
    exits += t.counters().ball_exits;
  }
  MESSAGE("touched outside open " << outside_open << ", ball exits " << exits);
  CHECK(outside_closed == 0);
}

TEST_CASE("sparse engine: precondition and trivial cases") {
  DecrementalGraph g(8, {{0, 1, 2}, {1, 2, 3}});
  SccTopo st{GraphView(g)};
  SparseParams p;
  p.delta = 2;
  p.q = 1;
  CHECK_THROWS_AS(SparseEngine(g, st, p), PreconditionFailed);
  p.delta = 10;
  p.eta = 3;
  SparseEngine e(g, st, p);
  CHECK(e.estimate(0) == 3);
  CHECK(e.estimate(2) == 8);
  CHECK(e.estimate(5) == kInf);
  CHECK(e.hopsets().empty());
  CHECK(e.dump_hopset().empty());
}

TEST_CASE("property: sparse engine on long DAGs with a live hopset") {
  std::uint64_t checked = 0, arcs_seen = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const int n = 128;
    DecrementalGraph g(n, long_dag(n, 1, seed));
    SccTopo st{GraphView(g)};
    SparseParams p;
    p.delta = 512;
    p.q = dag_quality(n, p.delta);
    p.eps = 0.5;
    p.seed = seed;
    p.reversed = seed == 2;
    if (p.reversed) p.root = n - 1;
    SparseEngine e(g, st, p);
    REQUIRE(e.hopsets().size() == 1);
    REQUIRE(e.hopsets()[0].level().i == 7);
    std::vector<Weight> arc_w;
    for (const auto& a : e.arcs().arcs) arc_w.push_back(a.w);
    Rng mix(seed);
    auto trace = testsupport::full_deletion_trace(g, seed);
    trace.resize(trace.size() / 2);
    for (auto u : trace) {
      if (mix.bernoulli(0.5)) u = UpdateEvent::increase(u.u, u.v, g.weight(u.u, u.v) + 1 + mix.below(4));
      g.apply_update(u);
      auto sp = st.apply_deletions(u.kind == UpdateKind::Delete ? std::vector<EdgeId>{u.edge}
                                                                 : std::vector<EdgeId>{});
      e.update(u, sp);
      INFO(e.audit());
      REQUIRE(e.audit().empty());
      // Shortcut weights follow their trees and never drop.
      const Hopset& hs = e.hopsets()[0];
      for (std::size_t k = 0; k < e.arcs().arcs.size(); ++k) {
        const auto& a = e.arcs().arcs[k];
        REQUIRE(a.w >= arc_w[k]);
        arc_w[k] = a.w;
      }
      arcs_seen += hs.edge_count();
      GraphView all(g);
      auto exact = dijkstra_oracle(p.reversed ? all.reverse() : all, p.root);
      for (VertexId v = 0; v < n; ++v) {
        const Weight est = e.estimate(v);
        REQUIRE(est >= exact[v]);
        if (exact[v] <= p.delta) {
          ++checked;
          REQUIRE(static_cast<double>(est) <= (1.0 + p.eps) * static_cast<double>(exact[v]) + 1e-9);
        }
      }
    }
    std::istringstream dump(e.dump_hopset());
    std::string line;
    int lines = 0;
    while (std::getline(dump, line)) ++lines;
    CHECK(lines == e.hopsets()[0].edge_count());
    auto rows = e.sparsity();
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].alarm);
  }
  MESSAGE("checked " << checked << ", hopset edges summed over stages " << arcs_seen);
  CHECK(checked > 1000);
  CHECK(arcs_seen > 0);
}

TEST_CASE("property: hopset arcs mirror their trees") {
  const int n = 128;
  DecrementalGraph g(n, long_dag(n, 1, 7));
  SccTopo st{GraphView(g)};
  SparseParams p;
  p.delta = 512;
  p.q = dag_quality(n, p.delta);
  SparseEngine e(g, st, p);
  const Hopset& hs = e.hopsets()[0];
  auto check = [&] {
    std::vector<int> tree_of(n, -1);
    for (int k = 0; k < hs.tree_count(); ++k) tree_of[hs.samples()[k]] = k;
    for (const auto& a : e.arcs().arcs) {
      const Weight est = hs.tree(tree_of[a.tail]).estimate(a.head);
      if (est <= hs.level().l)
        REQUIRE(a.w == est);
      else
        REQUIRE(a.w == kInf);
    }
  };
  check();
  for (auto u : testsupport::full_deletion_trace(g, 3)) {
    g.apply_update(u);
    e.update(u, st.apply_deletions({u.edge}));
    check();
  }
}
