#pragma once

#include <cstdint>
#include <memory>
#include <queue>
#include <vector>

#include "dsssp/graph.hpp"
#include "dsssp/sssp.hpp"

namespace dsssp {

// Even–Shiloach tree to depth δ over a live view, weighted by unit estimate
// increments. Finite estimates are exact truncated distances.
class EsTree {
 public:
  EsTree(GraphView view, VertexId root, Weight depth);

  VertexId root() const { return root_; }
  Weight depth() const { return depth_; }
  const GraphView& view() const { return view_; }
  Weight dist(VertexId v) const { return dist_[v]; }
  EdgeId parent_edge(VertexId v) const { return parent_[v]; }
  const std::vector<Weight>& distances() const { return dist_; }

  // The edge was deleted, had its weight increased, or left the view.
  void on_edge_changed(EdgeId e);

  std::uint64_t scans() const { return scans_; }
  std::uint64_t increments() const { return increments_; }

 private:
  using Item = std::pair<Weight, VertexId>;

  void mark(VertexId v);
  void settle();

  GraphView view_;
  VertexId root_;
  Weight depth_;
  std::vector<Weight> dist_;
  std::vector<EdgeId> parent_;
  std::vector<std::uint32_t> cursor_;
  std::vector<char> dirty_;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
  std::uint64_t scans_ = 0;
  std::uint64_t increments_ = 0;
};

enum class EsDirections { Out, In, Both };

// Out- and in-trees from one root on G[host]; exact, hence a valid
// 2-approximate restricted structure.
class EsSssp : public RestrictedSssp {
 public:
  EsSssp(const DecrementalGraph& g, const std::vector<VertexId>& host, VertexId root,
         Weight depth, EsDirections dirs = EsDirections::Both);
  EsSssp(GraphView view, VertexId root, Weight depth, EsDirections dirs = EsDirections::Both);

  VertexId root() const override { return root_; }
  Weight depth() const override { return depth_; }
  Weight from_root(VertexId v) const override;
  Weight to_root(VertexId v) const override;
  void on_update(const UpdateEvent& e) override;
  std::uint64_t work() const override;

  const EsTree* out_tree() const { return out_.get(); }
  const EsTree* in_tree() const { return in_.get(); }

 private:
  GraphView view_;
  VertexId root_;
  Weight depth_;
  std::unique_ptr<EsTree> out_;
  std::unique_ptr<EsTree> in_;
};

SsspFactory es_factory();

}  // namespace dsssp
