#include "dsssp/separator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

namespace dsssp {

BallGrower::BallGrower(VertexId r, GraphView view, double d, double radius)
    : view_(std::move(view)), radius_(radius) {
  if (!(radius < d)) {
    failed_ = true;
    done_ = true;
    return;
  }
  dist_[r] = 0;
  heap_.emplace_back(0, r);
}

void BallGrower::step() {
  if (done_) return;
  auto cmp = std::greater<Item>();
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    auto [d, u] = heap_.back();
    heap_.pop_back();
    if (in_ball_.count(u) || dist_[u] != d) continue;
    if (static_cast<double>(d) > radius_) break;
    in_ball_[u] = 1;
    ball_.push_back(u);
    view_.for_each_out(u, [&](EdgeId e, VertexId x, Weight w) {
      ++touched_;
      scanned_.push_back(e);
      Weight nd = d + w;
      auto it = dist_.find(x);
      if (it == dist_.end() || nd < it->second) {
        dist_[x] = nd;
        heap_.emplace_back(nd, x);
        std::push_heap(heap_.begin(), heap_.end(), cmp);
      }
    });
    return;
  }
  done_ = true;
}

SeparatorResult BallGrower::result() const {
  SeparatorResult res;
  res.failed = failed_;
  res.radius = radius_;
  res.touched = touched_;
  if (failed_) return res;
  res.v_sep = ball_;
  const DecrementalGraph& g = view_.graph();
  for (EdgeId e : scanned_) {
    const Edge& ed = g.edge(e);
    VertexId head = view_.reversed() ? ed.u : ed.v;
    if (!in_ball_.count(head)) res.e_sep.push_back(e);
  }
  return res;
}

SeparatorResult out_separator_at(VertexId r, const GraphView& view, double d, double radius) {
  BallGrower g(r, view, d, radius);
  g.run();
  return g.result();
}

SeparatorResult out_separator(VertexId r, const GraphView& view, double d, double zeta,
                              Rng& rng) {
  double x = rng.exponential(zeta / d);
  return out_separator_at(r, view, d, x);
}

double log_scaled(double zeta, int n) {
  return zeta * std::max(1.0, std::log(static_cast<double>(std::max(n, 1))));
}

namespace {

// Edges of the view with at least one endpoint in vs.
std::uint64_t incident_edges(const GraphView& view, const std::vector<VertexId>& vs,
                             std::vector<char>& mark) {
  for (VertexId v : vs) mark[v] = 1;
  std::uint64_t c = 0;
  for (VertexId v : vs) {
    view.for_each_out(v, [&](EdgeId, VertexId, Weight) { ++c; });
    view.for_each_in(v, [&](EdgeId, VertexId x, Weight) {
      if (!mark[x]) ++c;
    });
  }
  for (VertexId v : vs) mark[v] = 0;
  return c;
}

class Partitioner {
 public:
  // zp is fixed from the outermost vertex count: the failure union bound
  // covers all separators of all sub-calls against that one n.
  Partitioner(const SsspFactory& f, Rng& rng, double zeta, int top_n, int universe)
      : factory_(f), rng_(rng), zp_(3.0 * log_scaled(zeta, top_n)), mark_(universe, 0) {}

  // view is G restricted to vs (vs sorted, all present in view).
  void run(const GraphView& base, const std::vector<VertexId>& vs, double d) {
    ++res.stats.recursive_calls;
    const int n = static_cast<int>(vs.size());
    if (n == 0) return;
    const double zp = zp_;
    auto hmask = std::make_shared<VertexMask>(base.universe(), 0);
    for (VertexId v : vs) (*hmask)[v] = 1;
    GraphView H = base.induced(std::shared_ptr<const VertexMask>(hmask));
    std::vector<VertexId> hv = vs;
    int alive = n;

    auto remove = [&](const std::vector<VertexId>& gone) {
      for (VertexId v : gone) {
        if ((*hmask)[v]) --alive;
        (*hmask)[v] = 0;
      }
    };
    auto sub = [&](std::vector<VertexId> part) {
      std::sort(part.begin(), part.end());
      run(base, part, d);
    };

    std::size_t cursor = 0;
    while (alive > 0 && !res.failed) {
      while (!(*hmask)[hv[cursor]]) ++cursor;
      VertexId r = hv[cursor];
      SeparatorResult best = race(r, H, d / 8.0, zp);
      if (res.failed) return;
      if (3.0 * static_cast<double>(best.v_sep.size()) <= 2.0 * n) {
        // Snapshot H[V'] before the cut; V' ⊆ V(H) so it equals G[V'].
        std::vector<VertexId> part = best.v_sep;
        res.e_sep.insert(res.e_sep.end(), best.e_sep.begin(), best.e_sep.end());
        remove(part);
        sub(std::move(part));
        continue;
      }

      std::vector<VertexId> host;
      for (VertexId v : hv)
        if ((*hmask)[v]) host.push_back(v);
      GraphView frozen = base.induced(host);
      SsspRequest req;
      req.graph = &base.graph();
      req.host = host;
      req.root = r;
      req.depth = std::max<Weight>(1, static_cast<Weight>(std::ceil(d)));
      req.view = &frozen;
      req.one_shot = true;
      auto A = factory_(req);
      ++res.stats.sssp_builds;
      for (VertexId v : host) {
        if (res.failed) return;
        if (!(*hmask)[v]) continue;
        double fwd = static_cast<double>(A->from_root(v));
        double bwd = static_cast<double>(A->to_root(v));
        if (fwd <= d * kPruneLoop && bwd <= d * kPruneLoop) continue;
        ++res.stats.separator_calls;
        SeparatorResult s = bwd > d * kPruneForward
                                ? out_separator(v, H, d / 8.0, zp, rng_)
                                : out_separator(v, H.reverse(), d / 8.0, zp, rng_);
        res.stats.touched += s.touched;
        if (s.failed) {
          res.failed = true;
          return;
        }
        res.e_sep.insert(res.e_sep.end(), s.e_sep.begin(), s.e_sep.end());
        remove(s.v_sep);
        sub(s.v_sep);
      }
      remove(host);
    }
  }

  PartitionResult res;

 private:
  SeparatorResult race(VertexId r, const GraphView& H, double d, double zp) {
    res.stats.separator_calls += 2;
    BallGrower fwd(r, H, d, rng_.exponential(zp / d));
    BallGrower bwd(r, H.reverse(), d, rng_.exponential(zp / d));
    if (fwd.failed() || bwd.failed()) {
      res.failed = true;
      return {};
    }
    while (!fwd.done() && !bwd.done()) {
      fwd.step();
      bwd.step();
    }
    BallGrower& first = fwd.done() ? fwd : bwd;
    BallGrower& second = fwd.done() ? bwd : fwd;
    const std::uint64_t cap = kRaceFactor * (first.touched() + 1);
    while (!second.done() && second.touched() <= cap) second.step();
    res.stats.touched += fwd.touched() + bwd.touched();
    if (!second.done()) {
      ++res.stats.races_aborted;
      return first.result();
    }
    SeparatorResult a = first.result(), b = second.result();
    std::uint64_t ca = incident_edges(H, a.v_sep, mark_);
    std::uint64_t cb = incident_edges(H, b.v_sep, mark_);
    return cb < ca ? b : a;
  }

  const SsspFactory& factory_;
  Rng& rng_;
  double zp_;
  std::vector<char> mark_;
};

}  // namespace

PartitionResult partition(const GraphView& view, double d, double zeta,
                          const SsspFactory& sssp_factory, Rng& rng) {
  std::vector<VertexId> vs = view.vertices();
  Partitioner p(sssp_factory, rng, zeta, static_cast<int>(vs.size()), view.universe());
  p.run(view, vs, d);
  if (p.res.failed) p.res.e_sep.clear();
  std::sort(p.res.e_sep.begin(), p.res.e_sep.end());
  p.res.e_sep.erase(std::unique(p.res.e_sep.begin(), p.res.e_sep.end()), p.res.e_sep.end());
  return std::move(p.res);
}

}  // namespace dsssp
