#include "dsssp/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace dsssp {

DecrementalGraph::DecrementalGraph(int n, const EdgeList& edges) : n_(n) {
  if (n < 0) throw GraphError(GraphErrc::VertexOutOfRange, "negative vertex count");
  out_.resize(n);
  in_.resize(n);
  edges_.reserve(edges.size());
  index_.reserve(edges.size() * 2);
  W_ = 1;
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw GraphError(GraphErrc::VertexOutOfRange,
                       "edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") outside [0," + std::to_string(n) + ")");
    if (u == v)
      throw GraphError(GraphErrc::SelfLoop, "self-loop at " + std::to_string(u));
    if (w < 1 || w >= kInf)
      throw GraphError(GraphErrc::WeightOutOfRange,
                       "weight " + std::to_string(w) + " not in [1, inf)");
    EdgeId id = static_cast<EdgeId>(edges_.size());
    if (!index_.emplace(key(u, v), id).second)
      throw GraphError(GraphErrc::DuplicateEdge, "duplicate edge (" + std::to_string(u) +
                                                     "," + std::to_string(v) + ")");
    edges_.push_back({u, v, w, true});
    initial_w_.push_back(w);
    out_[u].push_back(id);
    in_[v].push_back(id);
    if (w > W_) W_ = w;
  }
  live_m_ = static_cast<int>(edges_.size());
}

EdgeId DecrementalGraph::find_edge(VertexId u, VertexId v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  auto it = index_.find(key(u, v));
  return it == index_.end() ? -1 : it->second;
}

Weight DecrementalGraph::weight(VertexId u, VertexId v) const {
  EdgeId e = find_edge(u, v);
  if (e < 0 || !edges_[e].alive) return kInf;
  return edges_[e].w;
}

EdgeId DecrementalGraph::apply_update(UpdateEvent& e) {
  EdgeId id = find_edge(e.u, e.v);
  if (id < 0 || !edges_[id].alive)
    throw GraphError(GraphErrc::MissingEdge, "no live edge (" + std::to_string(e.u) + "," +
                                                 std::to_string(e.v) + ")");
  Edge& ed = edges_[id];
  if (e.kind == UpdateKind::WeightIncrease) {
    if (e.new_weight <= ed.w)
      throw GraphError(GraphErrc::NonMonotoneWeight,
                       "weight of (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") may not go from " + std::to_string(ed.w) + " to " +
                           std::to_string(e.new_weight));
    if (e.new_weight >= kInf) {
      ed.alive = false;
      --live_m_;
    } else {
      ed.w = e.new_weight;
    }
  } else {
    ed.alive = false;
    --live_m_;
  }
  e.edge = id;
  log_.push_back(e);
  return id;
}

EdgeList DecrementalGraph::live_edges() const {
  EdgeList out;
  out.reserve(live_m_);
  for (const Edge& ed : edges_)
    if (ed.alive) out.emplace_back(ed.u, ed.v, ed.w);
  return out;
}

DecrementalGraph DecrementalGraph::initial_version() const {
  EdgeList el;
  el.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i)
    el.emplace_back(edges_[i].u, edges_[i].v, initial_w_[i]);
  return DecrementalGraph(n_, el);
}

std::vector<VertexId> GraphView::vertices() const {
  std::vector<VertexId> vs;
  for (VertexId v = 0; v < g_->n(); ++v)
    if (has_vertex(v)) vs.push_back(v);
  return vs;
}

int GraphView::vertex_count() const {
  if (!vmask_) return g_->n();
  int c = 0;
  for (char b : *vmask_) c += b ? 1 : 0;
  return c;
}

GraphView GraphView::induced(std::shared_ptr<const VertexMask> mask) const {
  GraphView r = *this;
  if (vmask_) {
    auto merged = std::make_shared<VertexMask>(*mask);
    for (std::size_t i = 0; i < merged->size(); ++i)
      (*merged)[i] = (*merged)[i] && (*vmask_)[i];
    r.vmask_ = std::move(merged);
  } else {
    r.vmask_ = std::move(mask);
  }
  return r;
}

GraphView GraphView::induced(const std::vector<VertexId>& vs) const {
  auto mask = std::make_shared<VertexMask>(g_->n(), 0);
  for (VertexId v : vs) (*mask)[v] = 1;
  return induced(std::shared_ptr<const VertexMask>(std::move(mask)));
}

int GraphView::edge_count() const {
  int c = 0;
  for (VertexId v = 0; v < g_->n(); ++v) {
    if (!has_vertex(v)) continue;
    for_each_out(v, [&](EdgeId, VertexId, Weight) { ++c; });
  }
  return c;
}

DecrementalGraph GraphView::snapshot(std::vector<VertexId>* old_ids) const {
  std::vector<VertexId> vs = vertices();
  std::vector<VertexId> local(g_->n(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<VertexId>(i);
  EdgeList el;
  for (VertexId v : vs)
    for_each_out(v, [&](EdgeId, VertexId x, Weight w) { el.emplace_back(local[v], local[x], w); });
  if (old_ids) *old_ids = vs;
  return DecrementalGraph(static_cast<int>(vs.size()), el);
}

namespace {

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

DecrementalGraph read_graph(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw GraphError(GraphErrc::Parse, "missing header");
  std::istringstream hs(line);
  long long n = -1, m = -1;
  if (!(hs >> n >> m) || n < 0 || m < 0)
    throw GraphError(GraphErrc::Parse, "bad header: " + line);
  EdgeList el;
  el.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line))
      throw GraphError(GraphErrc::Parse, "expected " + std::to_string(m) + " edges");
    std::istringstream ls(line);
    long long u, v, w;
    if (!(ls >> u >> v >> w)) throw GraphError(GraphErrc::Parse, "bad edge line: " + line);
    el.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v), w);
  }
  return DecrementalGraph(static_cast<int>(n), el);
}

void write_graph(std::ostream& out, int n, const EdgeList& edges) {
  out << n << ' ' << edges.size() << '\n';
  for (const auto& [u, v, w] : edges) out << u << ' ' << v << ' ' << w << '\n';
}

std::vector<UpdateEvent> read_trace(std::istream& in) {
  std::vector<UpdateEvent> t;
  std::string line;
  while (next_data_line(in, line)) {
    std::istringstream ls(line);
    std::string op;
    long long u, v, w;
    ls >> op;
    if (op == "D" && (ls >> u >> v)) {
      t.push_back(UpdateEvent::del(static_cast<VertexId>(u), static_cast<VertexId>(v)));
    } else if (op == "I" && (ls >> u >> v >> w)) {
      t.push_back(UpdateEvent::increase(static_cast<VertexId>(u), static_cast<VertexId>(v), w));
    } else {
      throw GraphError(GraphErrc::Parse, "bad trace line: " + line);
    }
  }
  return t;
}

void write_trace(std::ostream& out, const std::vector<UpdateEvent>& trace) {
  for (const auto& e : trace) {
    if (e.kind == UpdateKind::Delete)
      out << "D " << e.u << ' ' << e.v << '\n';
    else
      out << "I " << e.u << ' ' << e.v << ' ' << e.new_weight << '\n';
  }
}

}  // namespace dsssp
