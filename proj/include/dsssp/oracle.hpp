#pragma once

#include <string>
#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

// Exact single-source distances over the view (kInf when unreachable).
std::vector<Weight> dijkstra_oracle(const GraphView& view, VertexId s);
inline std::vector<Weight> dijkstra_oracle(const DecrementalGraph& g, VertexId s) {
  return dijkstra_oracle(GraphView(g), s);
}

// dist^h: shortest walks using at most h edges, by h relaxation rounds.
std::vector<Weight> hop_bounded_oracle(const GraphView& view, VertexId s, int h);

// Plain Bellman–Ford on an explicit weighted edge list; used to cross-check
// the other oracles and on contracted/augmented graphs.
struct WeightedArc {
  int u;
  int v;
  Weight w;
};
std::vector<Weight> bellman_ford(int n, const std::vector<WeightedArc>& arcs, int s,
                                 int max_rounds = -1);

// Shortest path tree extraction for path-level checks: vertices from s to t,
// empty when unreachable.
std::vector<VertexId> dijkstra_path(const GraphView& view, VertexId s, VertexId t);

enum class Verdict { Ok, OutOfRange, LowerViolated, UpperViolated };
const char* verdict_name(Verdict v);

struct OracleReport {
  std::int64_t stage = 0;
  VertexId source = 0;
  VertexId vertex = 0;
  Weight exact = kInf;
  Weight estimate = kInf;
  double ratio = 0.0;
  Verdict verdict = Verdict::Ok;
};

// Lower bound always; upper bound est ≤ mult·exact + add only for exact in
// [lo, hi] (inclusive), otherwise OutOfRange when the lower bound holds.
OracleReport check_estimate(Weight exact, Weight estimate, double mult, double add, Weight lo,
                            Weight hi);

}  // namespace dsssp
