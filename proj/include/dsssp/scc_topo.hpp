#pragma once

#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

using NodeId = std::int32_t;

// Strongly connected components of view[vs], ordered topologically in the
// condensation; ties go to the component with the smaller minimum vertex.
std::vector<std::vector<VertexId>> ordered_sccs(const GraphView& view,
                                                const std::vector<VertexId>& vs);

struct SplitChild {
  NodeId node;
  VertexId tau;
  int size;
};

struct SplitEvent {
  NodeId parent;
  std::vector<SplitChild> children;  // in interval order
};

// Generalized topological order (𝒱, τ) of a decremental view. Node handles
// are never reused: a split retires the parent and mints one handle per child.
class SccTopo {
 public:
  SccTopo() = default;
  explicit SccTopo(GraphView view);
  // Starts from a caller-supplied grouping packed left to right in the given
  // order. The caller vouches that it is a valid GTO of the view.
  SccTopo(GraphView view, std::vector<std::vector<VertexId>> ordered_groups);

  const GraphView& view() const { return view_; }
  int n() const { return static_cast<int>(node_of_.size()); }

  NodeId node_of(VertexId v) const { return node_of_[v]; }
  VertexId tau(NodeId x) const { return nodes_[x].tau; }
  int size(NodeId x) const { return static_cast<int>(nodes_[x].members.size()); }
  bool alive(NodeId x) const { return nodes_[x].alive; }
  const std::vector<VertexId>& members(NodeId x) const { return nodes_[x].members; }
  NodeId parent(NodeId x) const { return nodes_[x].parent; }
  NodeId handle_bound() const { return static_cast<NodeId>(nodes_.size()); }
  std::vector<NodeId> current_nodes() const;
  int node_count() const { return alive_count_; }

  // Edges that left the view since the last call; only edges inside one node
  // can split it. Returns the refinement record in processing order.
  std::vector<SplitEvent> apply_deletions(const std::vector<EdgeId>& removed);

  // Rechecks one node (used when many edges left it at once).
  std::vector<SplitEvent> refresh(const std::vector<NodeId>& dirty);

  // Test hook: overwrite a label to build corrupted fixtures.
  void debug_set_tau(NodeId x, VertexId t) { nodes_[x].tau = t; }

 private:
  struct Node {
    std::vector<VertexId> members;
    VertexId tau = 0;
    NodeId parent = -1;
    bool alive = true;
  };

  NodeId mint(std::vector<VertexId> members, VertexId tau, NodeId parent);
  bool split(NodeId x, std::vector<SplitEvent>& out);

  GraphView view_;
  std::vector<Node> nodes_;
  std::vector<NodeId> node_of_;
  int alive_count_ = 0;
};

}  // namespace dsssp
