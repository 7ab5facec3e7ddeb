#include "dsssp/scc_topo.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace dsssp {

std::vector<std::vector<VertexId>> ordered_sccs(const GraphView& view,
                                                const std::vector<VertexId>& vs) {
  const int N = view.universe();
  std::vector<int> local(N, -1);
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
  const int k = static_cast<int>(vs.size());

  // Iterative Tarjan over local indices.
  std::vector<int> index(k, -1), low(k, 0), comp(k, -1);
  std::vector<char> on_stack(k, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> succ(k);
  for (int i = 0; i < k; ++i)
    view.for_each_out(vs[i], [&](EdgeId, VertexId x, Weight) {
      if (local[x] >= 0) succ[i].push_back(local[x]);
    });
  int counter = 0, ncomp = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int s = 0; s < k; ++s) {
    if (index[s] >= 0) continue;
    call.emplace_back(s, 0);
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      auto& [v, it] = call.back();
      if (it < succ[v].size()) {
        int w = succ[v][it++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  std::vector<std::vector<VertexId>> groups(ncomp);
  for (int i = 0; i < k; ++i) groups[comp[i]].push_back(vs[i]);
  std::vector<VertexId> min_id(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    std::sort(groups[c].begin(), groups[c].end());
    min_id[c] = groups[c].front();
  }
  std::vector<std::vector<int>> dag(ncomp);
  std::vector<int> indeg(ncomp, 0);
  for (int i = 0; i < k; ++i)
    for (int j : succ[i])
      if (comp[i] != comp[j]) {
        dag[comp[i]].push_back(comp[j]);
        ++indeg[comp[j]];
      }
  using Item = std::pair<VertexId, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
  for (int c = 0; c < ncomp; ++c)
    if (indeg[c] == 0) ready.emplace(min_id[c], c);
  std::vector<std::vector<VertexId>> out;
  out.reserve(ncomp);
  while (!ready.empty()) {
    int c = ready.top().second;
    ready.pop();
    out.push_back(std::move(groups[c]));
    for (int d : dag[c])
      if (--indeg[d] == 0) ready.emplace(min_id[d], d);
  }
  return out;
}

SccTopo::SccTopo(GraphView view) : view_(std::move(view)) {
  node_of_.assign(view_.universe(), -1);
  std::vector<VertexId> vs = view_.vertices();
  VertexId next = 0;
  for (auto& group : ordered_sccs(view_, vs)) {
    VertexId t = next;
    next += static_cast<VertexId>(group.size());
    mint(std::move(group), t, -1);
  }
}

SccTopo::SccTopo(GraphView view, std::vector<std::vector<VertexId>> ordered_groups)
    : view_(std::move(view)) {
  node_of_.assign(view_.universe(), -1);
  VertexId next = 0;
  for (auto& group : ordered_groups) {
    std::sort(group.begin(), group.end());
    VertexId t = next;
    next += static_cast<VertexId>(group.size());
    mint(std::move(group), t, -1);
  }
}

NodeId SccTopo::mint(std::vector<VertexId> members, VertexId tau, NodeId parent) {
  NodeId id = static_cast<NodeId>(nodes_.size());
  for (VertexId v : members) node_of_[v] = id;
  nodes_.push_back({std::move(members), tau, parent, true});
  ++alive_count_;
  return id;
}

std::vector<NodeId> SccTopo::current_nodes() const {
  std::vector<NodeId> out;
  out.reserve(alive_count_);
  for (NodeId x = 0; x < handle_bound(); ++x)
    if (nodes_[x].alive) out.push_back(x);
  return out;
}

bool SccTopo::split(NodeId x, std::vector<SplitEvent>& out) {
  if (nodes_[x].members.size() <= 1) return false;
  auto groups = ordered_sccs(view_, nodes_[x].members);
  if (groups.size() <= 1) return false;
  SplitEvent ev;
  ev.parent = x;
  VertexId t = nodes_[x].tau;
  nodes_[x].alive = false;
  --alive_count_;
  for (auto& g : groups) {
    int sz = static_cast<int>(g.size());
    NodeId c = mint(std::move(g), t, x);
    ev.children.push_back({c, t, sz});
    t += sz;
  }
  out.push_back(std::move(ev));
  return true;
}

std::vector<SplitEvent> SccTopo::apply_deletions(const std::vector<EdgeId>& removed) {
  std::vector<NodeId> dirty;
  for (EdgeId e : removed) {
    const Edge& ed = view_.graph().edge(e);
    NodeId a = node_of_[ed.u], b = node_of_[ed.v];
    if (a >= 0 && a == b) dirty.push_back(a);
  }
  return refresh(dirty);
}

std::vector<SplitEvent> SccTopo::refresh(const std::vector<NodeId>& dirty) {
  std::vector<SplitEvent> out;
  std::vector<NodeId> d = dirty;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  // Children of a split are already SCCs of the current view, so a single
  // pass per dirty node suffices.
  for (NodeId x : d)
    if (nodes_[x].alive) split(x, out);
  return out;
}

}  // namespace dsssp
