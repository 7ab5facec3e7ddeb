#include "dsssp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace dsssp {

std::vector<Weight> dijkstra_oracle(const GraphView& view, VertexId s) {
  std::vector<Weight> dist(view.universe(), kInf);
  if (!view.has_vertex(s)) return dist;
  using Item = std::pair<Weight, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[s] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    view.for_each_out(u, [&](EdgeId, VertexId x, Weight w) {
      if (d + w < dist[x]) {
        dist[x] = d + w;
        pq.emplace(dist[x], x);
      }
    });
  }
  return dist;
}

std::vector<VertexId> dijkstra_path(const GraphView& view, VertexId s, VertexId t) {
  std::vector<Weight> dist(view.universe(), kInf);
  std::vector<VertexId> pred(view.universe(), -1);
  if (!view.has_vertex(s)) return {};
  using Item = std::pair<Weight, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[s] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    if (u == t) break;
    view.for_each_out(u, [&](EdgeId, VertexId x, Weight w) {
      if (d + w < dist[x]) {
        dist[x] = d + w;
        pred[x] = u;
        pq.emplace(dist[x], x);
      }
    });
  }
  if (dist[t] >= kInf) return {};
  std::vector<VertexId> path;
  for (VertexId v = t; v != -1; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Weight> hop_bounded_oracle(const GraphView& view, VertexId s, int h) {
  std::vector<Weight> dist(view.universe(), kInf);
  if (!view.has_vertex(s)) return dist;
  dist[s] = 0;
  std::vector<Weight> next;
  for (int round = 0; round < h; ++round) {
    next = dist;
    bool changed = false;
    for (VertexId u = 0; u < view.universe(); ++u) {
      if (dist[u] >= kInf) continue;
      view.for_each_out(u, [&](EdgeId, VertexId x, Weight w) {
        if (dist[u] + w < next[x]) {
          next[x] = dist[u] + w;
          changed = true;
        }
      });
    }
    dist.swap(next);
    if (!changed) break;
  }
  return dist;
}

std::vector<Weight> bellman_ford(int n, const std::vector<WeightedArc>& arcs, int s,
                                 int max_rounds) {
  std::vector<Weight> dist(n, kInf);
  dist[s] = 0;
  int rounds = max_rounds < 0 ? n : max_rounds;
  std::vector<Weight> next;
  for (int r = 0; r < rounds; ++r) {
    next = dist;
    bool changed = false;
    for (const auto& a : arcs) {
      if (dist[a.u] >= kInf || a.w >= kInf) continue;
      if (dist[a.u] + a.w < next[a.v]) {
        next[a.v] = dist[a.u] + a.w;
        changed = true;
      }
    }
    dist.swap(next);
    if (!changed) break;
  }
  return dist;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Ok: return "ok";
    case Verdict::OutOfRange: return "out_of_range";
    case Verdict::LowerViolated: return "lower_violated";
    case Verdict::UpperViolated: return "upper_violated";
  }
  return "?";
}

OracleReport check_estimate(Weight exact, Weight estimate, double mult, double add, Weight lo,
                            Weight hi) {
  OracleReport r;
  r.exact = exact;
  r.estimate = estimate;
  r.ratio = (exact > 0 && exact < kInf && estimate < kInf)
                ? static_cast<double>(estimate) / static_cast<double>(exact)
                : (estimate == exact ? 1.0 : 0.0);
  if (estimate < exact) {
    r.verdict = Verdict::LowerViolated;
  } else if (exact >= kInf || exact < lo || exact > hi) {
    r.verdict = Verdict::OutOfRange;
  } else if (static_cast<double>(estimate) >
             mult * static_cast<double>(exact) + add + 1e-9) {
    r.verdict = Verdict::UpperViolated;
  } else {
    r.verdict = Verdict::Ok;
  }
  return r;
}

}  // namespace dsssp
