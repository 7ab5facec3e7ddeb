#include "dsssp/es_tree.hpp"

namespace dsssp {

EsTree::EsTree(GraphView view, VertexId root, Weight depth)
    : view_(std::move(view)), root_(root), depth_(depth) {
  const int N = view_.universe();
  dist_.assign(N, kInf);
  parent_.assign(N, -1);
  cursor_.assign(N, 0);
  dirty_.assign(N, 0);
  if (!view_.has_vertex(root_)) return;
  dist_[root_] = 0;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.emplace(0, root_);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist_[u]) continue;
    view_.for_each_out(u, [&](EdgeId e, VertexId x, Weight w) {
      Weight nd = d + w;
      if (nd <= depth_ && nd < dist_[x]) {
        dist_[x] = nd;
        parent_[x] = e;
        pq.emplace(nd, x);
      }
    });
  }
}

void EsTree::mark(VertexId v) {
  if (v == root_ || dist_[v] >= kInf) return;
  if (!dirty_[v]) {
    dirty_[v] = 1;
    heap_.emplace(dist_[v], v);
  }
}

void EsTree::on_edge_changed(EdgeId e) {
  const Edge& ed = view_.graph().edge(e);
  VertexId head = view_.reversed() ? ed.u : ed.v;
  if (!view_.has_vertex(head) || parent_[head] != e) return;
  VertexId tail = view_.reversed() ? ed.v : ed.u;
  if (view_.has_edge(e) && sat_add(dist_[tail], ed.w) <= dist_[head]) return;
  parent_[head] = -1;
  mark(head);
  settle();
}

void EsTree::settle() {
  const DecrementalGraph& g = view_.graph();
  const bool rev = view_.reversed();
  while (!heap_.empty()) {
    auto [d, v] = heap_.top();
    heap_.pop();
    if (!dirty_[v] || d != dist_[v]) continue;
    const auto& ins = rev ? g.out_edges(v) : g.in_edges(v);
    bool found = false;
    while (cursor_[v] < ins.size()) {
      EdgeId e = ins[cursor_[v]];
      ++scans_;
      if (view_.has_edge(e)) {
        const Edge& ed = g.edge(e);
        VertexId x = rev ? ed.v : ed.u;
        if (sat_add(dist_[x], ed.w) <= dist_[v]) {
          parent_[v] = e;
          found = true;
          break;
        }
      }
      ++cursor_[v];
    }
    if (found) {
      dirty_[v] = 0;
      continue;
    }
    // No witness at this value: raise by one and orphan the subtree.
    ++increments_;
    cursor_[v] = 0;
    const auto& outs = rev ? g.in_edges(v) : g.out_edges(v);
    for (EdgeId e : outs) {
      const Edge& ed = g.edge(e);
      VertexId z = rev ? ed.u : ed.v;
      if (parent_[z] == e) mark(z);
    }
    if (dist_[v] + 1 > depth_) {
      dist_[v] = kInf;
      parent_[v] = -1;
      dirty_[v] = 0;
    } else {
      ++dist_[v];
      heap_.emplace(dist_[v], v);
    }
  }
}

EsSssp::EsSssp(const DecrementalGraph& g, const std::vector<VertexId>& host, VertexId root,
               Weight depth, EsDirections dirs)
    : EsSssp(GraphView(g).induced(host), root, depth, dirs) {}

EsSssp::EsSssp(GraphView view, VertexId root, Weight depth, EsDirections dirs)
    : view_(std::move(view)), root_(root), depth_(depth) {
  if (dirs != EsDirections::In) out_ = std::make_unique<EsTree>(view_, root, depth);
  if (dirs != EsDirections::Out) in_ = std::make_unique<EsTree>(view_.reverse(), root, depth);
}

Weight EsSssp::from_root(VertexId v) const { return out_ ? out_->dist(v) : kInf; }
Weight EsSssp::to_root(VertexId v) const { return in_ ? in_->dist(v) : kInf; }

void EsSssp::on_update(const UpdateEvent& e) {
  if (e.edge < 0) return;
  const Edge& ed = view_.graph().edge(e.edge);
  if (!view_.has_vertex(ed.u) || !view_.has_vertex(ed.v)) return;
  if (out_) out_->on_edge_changed(e.edge);
  if (in_) in_->on_edge_changed(e.edge);
}

std::uint64_t EsSssp::work() const {
  return (out_ ? out_->scans() : 0) + (in_ ? in_->scans() : 0);
}

SsspFactory es_factory() {
  return [](const SsspRequest& req) -> std::shared_ptr<RestrictedSssp> {
    if (req.view) return std::make_shared<EsSssp>(*req.view, req.root, req.depth);
    return std::make_shared<EsSssp>(*req.graph, req.host, req.root, req.depth);
  };
}

}  // namespace dsssp
