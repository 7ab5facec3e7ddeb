#pragma once

#include <cstdint>
#include <memory>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsssp/dense.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/oracle.hpp"
#include "dsssp/rng.hpp"
#include "dsssp/scc_topo.hpp"

namespace dsssp {

// Farthest gap between the intervals [tx, tx+sx) and [ty, ty+sy), taken from
// the left end of the earlier interval to the right end of the later one.
std::int64_t chi_far_interval(std::int64_t tx, std::int64_t sx, std::int64_t ty,
                              std::int64_t sy);
std::int64_t chi_far(const SccTopo& st, NodeId x, NodeId y);

// Ball of nodes around the node of a center vertex, measured in the order τ.
// The closed ball uses the near gap χ, the open ball the far gap; both only
// shrink or refine while 𝒱 is refined.
struct TopoBall {
  VertexId center = 0;
  std::int64_t radius = 0;

  bool in_closed(const SccTopo& st, NodeId y) const;
  bool in_open(const SccTopo& st, NodeId y) const;
  std::vector<NodeId> closed_members(const SccTopo& st) const;
  std::vector<NodeId> open_members(const SccTopo& st) const;
};

// Smallest k with k^3 ≥ n, and smallest k with k^3 ≥ n^2.
std::int64_t cbrt_ceil(std::int64_t n);
std::int64_t n23_ceil(std::int64_t n);
// Natural log floored at 1.
double log_n(int n);
// ⌈n^{2/3}⌉·log n: the hop cap of the root tree and the empty-level threshold.
double root_hop_cap(int n);

struct HopsetLevel {
  int i = 0;
  std::int64_t h = 1;  // 2^i
  std::int64_t l = 1;  // ⌈h / ⌈n^{1/3}⌉⌉
  std::int64_t K = 1;  // ⌈qδ / ⌈n^{1/3}⌉⌉
  double sample_p = 1.0;
  bool empty = true;
};
HopsetLevel hopset_level(int n, int i, double q, double delta, double c);

// Weighted shortcut arcs between vertices, oriented like the engine that
// reads them. Weights only grow; kInf marks a removed arc.
struct ArcTable {
  struct Arc {
    VertexId tail;
    VertexId head;
    Weight w;
    int level;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> in;
  std::vector<std::vector<int>> out;

  explicit ArcTable(int n = 0) : in(n), out(n) {}
  int add(VertexId tail, VertexId head, Weight w, int level);
  int size() const { return static_cast<int>(arcs.size()); }
};

struct GesParams {
  VertexId source = 0;
  Weight depth = 1;       // estimates above this become kInf
  int hops = 1;           // hop cap h of the approximation guarantee
  double eps = 0.5;
  std::int64_t radius = -1;  // K of the closed ball; negative for no restriction
  bool reversed = false;
};

struct GesCounters {
  std::uint64_t scans = 0;          // arc evaluations
  std::uint64_t increases = 0;      // node estimate raises
  std::uint64_t weight_changes = 0; // arc weight changes seen (the Δ term)
  std::uint64_t splits = 0;
  std::uint64_t ball_exits = 0;
  std::uint64_t touched_outside_open = 0;    // neither endpoint node in the open ball
  std::uint64_t touched_outside_closed = 0;  // some endpoint node outside the closed ball
};

// Generalized Even–Shiloach tree on the contracted multigraph G/𝒱 (plus
// optional shortcut arcs) restricted to a closed τ-ball. Values live on a
// grid whose consecutive ratio is at most 1+ε/(2h), so a node reached by an
// h-hop path of weight d gets an estimate ≤ (1+ε/(2h))^h·d ≤ (1+ε)·d.
class GesTree {
 public:
  GesTree(const DecrementalGraph& g, const SccTopo& topo, GesParams params,
          const ArcTable* extra = nullptr);

  // Refinement record of this stage, in processing order.
  void apply_splits(const std::vector<SplitEvent>& splits);
  // Edge of g deleted or heavier (already applied to g).
  void edge_changed(EdgeId e);
  void arc_changed(int a);
  void settle();

  NodeId source_node() const { return topo_->node_of(p_.source); }
  Weight node_estimate(NodeId x) const {
    return x < static_cast<NodeId>(est_.size()) ? est_[x] : kInf;
  }
  Weight estimate(VertexId v) const { return node_estimate(topo_->node_of(v)); }
  bool in_ball(NodeId y) const;
  const TopoBall& ball() const { return ball_; }
  const GesParams& params() const { return p_; }

  // Smallest grid value ≥ x, or kInf past the depth.
  Weight round_up(Weight x) const;
  const std::vector<Weight>& grid() const { return grid_; }

  // Node handles whose estimate changed or that were created by splits
  // since the last clear.
  const std::vector<NodeId>& changed() const { return changed_; }
  void clear_changed();

  const GesCounters& counters() const { return counters_; }

  // Empty when every reached node has a valid certificate, no in-arc can
  // undercut its estimate, and nodes outside the ball sit at kInf.
  std::string audit() const;

 private:
  static constexpr int kNoArc = -1;

  int m_cap() const { return g_->edge_capacity(); }
  VertexId arc_tail(int a) const;
  VertexId arc_head(int a) const;
  Weight arc_weight(int a) const;
  bool arc_live(int a) const { return arc_weight(a) < kInf; }
  Weight relax(Weight from, Weight w) const {
    return (from >= kInf || w >= kInf) ? kInf : round_up(from + w);
  }
  // Value the arc offers its head, kInf when unusable. The counting variant
  // feeds the touched-edge audit.
  Weight offer(int a, NodeId head_node);
  Weight offer_value(int a, NodeId head_node) const;
  // The j-th in-arc slot of v: G in-edges first, then shortcut arcs.
  bool arc_at(VertexId v, std::size_t j, int& a) const;

  template <class F>
  void for_each_out_arc(VertexId v, F&& f) const;

  void grow();
  void touch(NodeId x);
  void set_estimate(NodeId y, Weight value);
  void enqueue(NodeId y);
  void enqueue_dependents(NodeId x);
  bool cert_valid(NodeId y) const;
  void repair(NodeId y);
  void initial_dijkstra();
  void recheck_ball(const std::vector<NodeId>& candidates);

  const DecrementalGraph* g_;
  const SccTopo* topo_;
  const ArcTable* extra_;
  GesParams p_;
  TopoBall ball_;
  std::vector<Weight> grid_;

  std::vector<Weight> est_;
  std::vector<int> parent_arc_;
  std::vector<std::pair<int, int>> cursor_;  // (member index, arc index)
  std::vector<char> queued_;
  std::vector<char> changed_mark_;
  std::vector<NodeId> changed_;
  std::vector<NodeId> reached_;  // handles that ever held a finite estimate
  std::vector<std::vector<int>> dependents_;  // by tail vertex; lazily pruned
  std::vector<char> dep_listed_;              // by arc id
  NodeId src_handle_ = -1;

  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
  GesCounters counters_;
};

// One hopset level: a GES tree per sampled vertex, and a shortcut arc (s, t)
// for sampled s, t while the estimate of X^t in the tree of s is ≤ l.
class Hopset {
 public:
  Hopset(const DecrementalGraph& g, const SccTopo& topo, HopsetLevel level, double eps,
         bool reversed, ArcTable& arcs, Rng rng);

  const HopsetLevel& level() const { return level_; }
  const std::vector<VertexId>& samples() const { return samples_; }

  // Returns the ids of arcs whose weight changed.
  std::vector<int> update(const UpdateEvent* e, const std::vector<SplitEvent>& splits);

  // Arcs currently present between distinct nodes.
  int edge_count() const;
  std::uint64_t scans() const;
  const GesTree& tree(int k) const { return *trees_[k]; }
  int tree_count() const { return static_cast<int>(trees_.size()); }

 private:
  void refresh(int k, std::vector<int>& changed);

  const SccTopo* topo_;
  HopsetLevel level_;
  ArcTable* arcs_;
  std::vector<VertexId> samples_;
  std::vector<char> sampled_;
  std::vector<std::unique_ptr<GesTree>> trees_;
  std::vector<std::unordered_map<VertexId, int>> arc_of_;  // per tree: t -> arc id
  std::vector<int> arc_ids_;
};

class PreconditionFailed : public std::invalid_argument {
 public:
  explicit PreconditionFailed(const std::string& what) : std::invalid_argument(what) {}
};

struct SparseParams {
  VertexId root = 0;
  double delta = 1.0;
  double eps = 0.5;
  double q = 1.0;
  double eta = 0.0;
  double c = 1.0;
  bool reversed = false;
  std::uint64_t seed = 0;
};

struct SparseCounters {
  std::uint64_t root_scans = 0;
  std::uint64_t hopset_scans = 0;
  std::uint64_t hopset_arc_changes = 0;
  std::uint64_t splits = 0;
};

struct SparsityRow {
  int level = 0;
  int edges = 0;
  double budget = 0.0;  // δ·q·log n
  double ratio = 0.0;
  bool alarm = false;   // ratio above the alarm constant
};

// (1+ε)-approximate δ-restricted SSSP on sparse graphs: a GES tree from the
// root over G/𝒱 together with every hopset level.
class SparseEngine {
 public:
  static constexpr double kSparsityAlarm = 64.0;

  // Throws PreconditionFailed unless δ·q ≥ n.
  SparseEngine(const DecrementalGraph& g, const SccTopo& topo, SparseParams params);
  SparseEngine(const SparseEngine&) = delete;
  SparseEngine& operator=(const SparseEngine&) = delete;

  void update(const UpdateEvent& e, const std::vector<SplitEvent>& splits);

  // Node estimate + ⌈η⌉, or kInf.
  Weight estimate(VertexId v) const;
  Weight node_estimate(VertexId v) const { return root_->estimate(v); }
  std::vector<Weight> estimates() const;

  const std::vector<Hopset>& hopsets() const { return hopsets_; }
  const GesTree& root_tree() const { return *root_; }
  const ArcTable& arcs() const { return arcs_; }
  int root_hops() const { return root_hops_; }
  SparseCounters counters() const;

  // Node-level arcs of G/𝒱 (engine orientation) plus the shortcut arcs of
  // one level (-1: all levels); indices are node handles.
  std::vector<WeightedArc> contracted_arcs(int level) const;
  // "level,X,Y,weight" lines for present shortcut arcs.
  std::string dump_hopset() const;
  std::vector<SparsityRow> sparsity() const;

  std::string audit() const;

 private:
  const DecrementalGraph* g_;
  const SccTopo* topo_;
  SparseParams p_;
  Weight eta_add_;
  int root_hops_;
  ArcTable arcs_;
  std::vector<Hopset> hopsets_;
  std::unique_ptr<GesTree> root_;
  std::uint64_t arc_changes_ = 0;
  std::uint64_t splits_ = 0;
};

}  // namespace dsssp
