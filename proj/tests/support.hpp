#pragma once

// Independent reference implementations for tests: nothing here calls into
// the library's algorithms.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "dsssp/graph.hpp"

namespace testsupport {

using dsssp::EdgeList;
using dsssp::kInf;
using dsssp::VertexId;
using dsssp::Weight;

inline EdgeList random_edges(int n, double p, Weight max_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> wd(1, max_w);
  EdgeList el;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng) < p) el.emplace_back(u, v, wd(rng));
  return el;
}

inline EdgeList random_dag_edges(int n, double p, Weight max_w, std::uint64_t seed,
                                 std::vector<int>* order_out = nullptr) {
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> wd(1, max_w);
  EdgeList el;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) el.emplace_back(order[i], order[j], wd(rng));
  if (order_out) *order_out = order;
  return el;
}

inline EdgeList bidirected_grid(int rows, int cols, Weight max_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> wd(1, max_w);
  EdgeList el;
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        el.emplace_back(id(r, c), id(r, c + 1), wd(rng));
        el.emplace_back(id(r, c + 1), id(r, c), wd(rng));
      }
      if (r + 1 < rows) {
        el.emplace_back(id(r, c), id(r + 1, c), wd(rng));
        el.emplace_back(id(r + 1, c), id(r, c), wd(rng));
      }
    }
  return el;
}

// Live edges of g (any version) as a dense matrix.
inline std::vector<std::vector<Weight>> matrix(const dsssp::DecrementalGraph& g) {
  int n = g.n();
  std::vector<std::vector<Weight>> a(n, std::vector<Weight>(n, kInf));
  for (int i = 0; i < n; ++i) a[i][i] = 0;
  for (const auto& [u, v, w] : g.live_edges()) a[u][v] = std::min(a[u][v], w);
  return a;
}

// Floyd–Warshall.
inline std::vector<std::vector<Weight>> apsp(std::vector<std::vector<Weight>> a) {
  int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (a[i][k] >= kInf) continue;
      for (int j = 0; j < n; ++j)
        if (a[k][j] < kInf && a[i][k] + a[k][j] < a[i][j]) a[i][j] = a[i][k] + a[k][j];
    }
  return a;
}

// SCCs as sets via mutual reachability in the transitive closure.
inline std::set<std::set<int>> scc_sets(const std::vector<std::vector<Weight>>& adj) {
  auto d = apsp(adj);
  int n = static_cast<int>(adj.size());
  std::vector<char> done(n, 0);
  std::set<std::set<int>> out;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::set<int> c;
    for (int j = 0; j < n; ++j)
      if (d[i][j] < kInf && d[j][i] < kInf) {
        c.insert(j);
        done[j] = 1;
      }
    out.insert(c);
  }
  return out;
}

inline std::vector<dsssp::UpdateEvent> full_deletion_trace(const dsssp::DecrementalGraph& g,
                                                           std::uint64_t seed) {
  std::vector<dsssp::UpdateEvent> t;
  for (const auto& [u, v, w] : g.live_edges()) t.push_back(dsssp::UpdateEvent::del(u, v));
  std::mt19937_64 rng(seed);
  std::shuffle(t.begin(), t.end(), rng);
  return t;
}

}  // namespace testsupport
