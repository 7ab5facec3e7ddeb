#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace dsssp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Weight = std::int64_t;

// Reserved "unreachable / effectively deleted" value. Sums of two finite
// weights never reach it at the scales this library supports.
inline constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

inline Weight sat_add(Weight a, Weight b) {
  return (a >= kInf || b >= kInf) ? kInf : a + b;
}

enum class GraphErrc {
  DuplicateEdge,
  WeightOutOfRange,
  VertexOutOfRange,
  SelfLoop,
  MissingEdge,
  NonMonotoneWeight,
  Parse,
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GraphErrc code() const { return code_; }

 private:
  GraphErrc code_;
};

struct Edge {
  VertexId u;
  VertexId v;
  Weight w;
  bool alive;
};

enum class UpdateKind { Delete, WeightIncrease };

struct UpdateEvent {
  UpdateKind kind = UpdateKind::Delete;
  VertexId u = 0;
  VertexId v = 0;
  Weight new_weight = 0;  // WeightIncrease only
  EdgeId edge = -1;       // resolved by apply_update

  static UpdateEvent del(VertexId u, VertexId v) {
    return {UpdateKind::Delete, u, v, 0, -1};
  }
  static UpdateEvent increase(VertexId u, VertexId v, Weight w) {
    return {UpdateKind::WeightIncrease, u, v, w, -1};
  }
};

using EdgeList = std::vector<std::tuple<VertexId, VertexId, Weight>>;

// Weighted digraph under deletions and weight increases. Edge ids are stable:
// a deleted edge stays in the adjacency arrays as a tombstone.
class DecrementalGraph {
 public:
  DecrementalGraph() = default;
  DecrementalGraph(int n, const EdgeList& edges);

  int n() const { return n_; }
  int m() const { return live_m_; }
  int initial_m() const { return static_cast<int>(edges_.size()); }
  int edge_capacity() const { return static_cast<int>(edges_.size()); }
  std::int64_t version() const { return static_cast<std::int64_t>(log_.size()); }
  // Largest initial weight; weights live in [1, W].
  Weight max_weight() const { return W_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  EdgeId find_edge(VertexId u, VertexId v) const;
  Weight weight(VertexId u, VertexId v) const;

  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }

  // Applies the update and fills e.edge. Throws GraphError on contract breach.
  EdgeId apply_update(UpdateEvent& e);
  EdgeId apply_update(const UpdateEvent& e) {
    UpdateEvent copy = e;
    return apply_update(copy);
  }

  const std::vector<UpdateEvent>& update_log() const { return log_; }

  // Live edges as (u, v, w), ordered by edge id.
  EdgeList live_edges() const;

  // The graph as built, before any update.
  DecrementalGraph initial_version() const;

 private:
  static std::uint64_t key(VertexId u, VertexId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  int n_ = 0;
  int live_m_ = 0;
  Weight W_ = 1;
  std::vector<Edge> edges_;
  std::vector<Weight> initial_w_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
  std::vector<UpdateEvent> log_;
};

using VertexMask = std::vector<char>;
using EdgeMask = std::vector<char>;

// Live, non-owning window onto a DecrementalGraph: optional vertex subset,
// optional excluded-edge set, optional reversal. Later updates to the graph
// or to the masks are visible through the view.
class GraphView {
 public:
  GraphView() = default;
  explicit GraphView(const DecrementalGraph& g) : g_(&g) {}

  const DecrementalGraph& graph() const { return *g_; }
  int universe() const { return g_->n(); }
  bool reversed() const { return reversed_; }

  bool has_vertex(VertexId v) const { return !vmask_ || (*vmask_)[v]; }
  bool has_edge(EdgeId e) const {
    const Edge& ed = g_->edge(e);
    return ed.alive && !(emask_ && (*emask_)[e]) && has_vertex(ed.u) &&
           has_vertex(ed.v);
  }
  std::vector<VertexId> vertices() const;
  int vertex_count() const;

  GraphView induced(std::shared_ptr<const VertexMask> mask) const;
  GraphView induced(const std::vector<VertexId>& vs) const;
  GraphView reverse() const {
    GraphView r = *this;
    r.reversed_ = !reversed_;
    return r;
  }
  GraphView without(std::shared_ptr<const EdgeMask> removed) const {
    GraphView r = *this;
    r.emask_ = std::move(removed);
    return r;
  }
  const std::shared_ptr<const VertexMask>& vertex_mask() const { return vmask_; }
  const std::shared_ptr<const EdgeMask>& edge_mask() const { return emask_; }

  // f(edge id, head in view orientation, weight)
  template <class F>
  void for_each_out(VertexId u, F&& f) const {
    const auto& ids = reversed_ ? g_->in_edges(u) : g_->out_edges(u);
    for (EdgeId e : ids) {
      const Edge& ed = g_->edge(e);
      if (!ed.alive || (emask_ && (*emask_)[e])) continue;
      VertexId x = reversed_ ? ed.u : ed.v;
      if (!has_vertex(x)) continue;
      f(e, x, ed.w);
    }
  }
  // f(edge id, tail in view orientation, weight)
  template <class F>
  void for_each_in(VertexId u, F&& f) const {
    const auto& ids = reversed_ ? g_->out_edges(u) : g_->in_edges(u);
    for (EdgeId e : ids) {
      const Edge& ed = g_->edge(e);
      if (!ed.alive || (emask_ && (*emask_)[e])) continue;
      VertexId x = reversed_ ? ed.v : ed.u;
      if (!has_vertex(x)) continue;
      f(e, x, ed.w);
    }
  }

  int edge_count() const;
  // Copies the view into a standalone graph with vertices relabelled
  // 0..k-1 in the order of vertices(); edges keep view orientation.
  DecrementalGraph snapshot(std::vector<VertexId>* old_ids = nullptr) const;

 private:
  const DecrementalGraph* g_ = nullptr;
  std::shared_ptr<const VertexMask> vmask_;
  std::shared_ptr<const EdgeMask> emask_;
  bool reversed_ = false;
};

// Text formats: graph "n m" then m lines "u v w"; trace lines "D u v" or
// "I u v w".
DecrementalGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, int n, const EdgeList& edges);
std::vector<UpdateEvent> read_trace(std::istream& in);
void write_trace(std::ostream& out, const std::vector<UpdateEvent>& trace);

}  // namespace dsssp
