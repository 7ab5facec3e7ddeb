#pragma once

#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dsssp/graph.hpp"
#include "dsssp/scc_topo.hpp"

namespace dsssp {

class SameNode : public std::invalid_argument {
 public:
  SameNode() : std::invalid_argument("chi: both arguments are the same node") {}
};

class NoPath : public std::runtime_error {
 public:
  NoPath() : std::runtime_error("no path within the maintained depth") {}
};

// Gap between the intervals [tx, tx+sx) and [ty, ty+sy); symmetric, ≥ 1 for
// disjoint intervals.
std::int64_t chi_interval(std::int64_t tx, std::int64_t sx, std::int64_t ty, std::int64_t sy);
std::int64_t chi(const SccTopo& st, NodeId x, NodeId y);

// Largest j such that some multiple of 2^j lies in [lo, hi]; -1 if lo > hi.
int split_rescan_level(std::int64_t lo, std::int64_t hi);

struct DenseParams {
  VertexId root = 0;
  double delta = 1.0;
  double eps = 0.5;
  double q = 1.0;     // quality the caller vouches for; steps are ⌈2^j·ε/q⌉
  double eta = 0.0;   // weak-diameter budget of the partition, added to queries
  bool reversed = false;     // distances to the root instead of from it
  bool dag_mode = false;     // ε used as given (no internal halving)
  bool accelerated = false;  // jump straight to the next value that can succeed
};

struct DenseCounters {
  std::uint64_t scans = 0;         // pair checks during repairs
  std::uint64_t repairs = 0;       // nodes taken from the repair queue
  std::uint64_t increments = 0;    // failed repair rounds
  std::uint64_t bucket_moves = 0;
  std::uint64_t bucket_rescans = 0;
  std::uint64_t pair_moves = 0;    // edges re-homed to another pair queue
  std::uint64_t splits = 0;
};

// (1+ε)-approximate δ-restricted SSSP over the contracted graph of a
// partition (𝒱, τ). Node estimates only grow; every finite non-root estimate
// is certified by a tree edge (x, y) with d̃(X) + w(x, y) ≤ d̃(Y).
class DenseEngine {
 public:
  // topo must outlive the engine and is refined only through the split
  // records handed to update().
  DenseEngine(const DecrementalGraph& g, const SccTopo& topo, DenseParams params);

  // The graph and topo already reflect e; splits is this stage's record.
  void update(const UpdateEvent& e, const std::vector<SplitEvent>& splits);

  // d̃(X^r, X^v) + ⌈η⌉, or kInf.
  Weight estimate(VertexId v) const;
  Weight node_estimate(VertexId v) const { return est_[slot_of(v)]; }
  std::vector<Weight> estimates() const;

  // Vertex path r → v (v → r when reversed) in the current graph: tree edges
  // between nodes, intra-node shortest paths stitched in between.
  std::vector<VertexId> path(VertexId v) const;
  // Node handles along the certificate tree, root first.
  std::vector<NodeId> node_path(VertexId v) const;

  Weight delta_max() const { return delta_max_; }
  double eps_internal() const { return eps_; }
  Weight step(int j) const { return steps_[j]; }
  int top_bucket() const { return top_j_; }
  // Largest j ≤ top_bucket with value divisible by step(j); -1 if none.
  int scan_level(Weight value) const;

  const DenseCounters& counters() const { return counters_; }
  const std::vector<std::uint64_t>& scans_by_level() const { return scans_by_j_; }
  // Per-level scans divided by a generous budget; ≤ 1 is healthy.
  double work_budget_ratio() const;

  // Empty when every in-neighbor sits in B_j or B_{j-1} for its current χ,
  // the buckets partition ℋ's in-neighbors, and the pair queues match G.
  std::string audit() const;

 private:
  struct Pair {
    std::set<std::pair<Weight, EdgeId>> q;
    int bucket = -1;
    int pos = -1;
  };
  struct Slot {
    NodeId handle = -1;
    std::unordered_map<int, Pair> in;     // keyed by source slot
    std::unordered_set<int> out;          // target slots
    std::vector<std::vector<int>> buckets;
    std::unordered_set<EdgeId> children;  // tree edges leaving this slot
    EdgeId parent = -1;
    Weight cursor_value = -1;
    int cursor_bucket = 0;
    std::size_t cursor_pos = 0;
  };

  VertexId tail(EdgeId e) const { return p_.reversed ? g_->edge(e).v : g_->edge(e).u; }
  VertexId head(EdgeId e) const { return p_.reversed ? g_->edge(e).u : g_->edge(e).v; }
  int slot_of(VertexId v) const { return slot_of_handle_[topo_->node_of(v)]; }
  std::int64_t chi_slots(int x, int y) const;
  int bucket_for(int x, int y) const;

  int new_slot(NodeId handle);
  void insert_edge(EdgeId e);
  void remove_edge(EdgeId e);
  void rekey(EdgeId e);
  void bucket_insert(int y, int x, Pair& p, int j);
  void bucket_remove(int y, Pair& p);
  bool reassign(int y, int x);
  void apply_splits(const std::vector<SplitEvent>& splits);

  bool cert_valid(int y) const;
  void detach(int y);
  void enqueue(int y);
  void drop_children(int y);
  bool try_attach(int y);
  Weight next_value(int y);
  void repair();
  void initial_dijkstra();

  const DecrementalGraph* g_;
  const SccTopo* topo_;
  DenseParams p_;
  double eps_;
  Weight delta_max_;
  Weight eta_add_;
  int top_j_;
  std::vector<Weight> steps_;

  std::vector<Slot> slots_;
  std::vector<Weight> est_;
  std::vector<int> slot_of_handle_;
  std::vector<std::pair<int, int>> pair_of_edge_;  // engine-direction slots
  std::vector<Weight> key_w_;
  std::vector<char> tree_edge_;
  std::vector<int> tree_owner_;  // slot whose children list holds the tree edge

  using Item = std::pair<Weight, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue_;
  std::vector<char> queued_;

  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_now_ = 0;

  DenseCounters counters_;
  std::vector<std::uint64_t> scans_by_j_;
  std::uint64_t pair_inserts_ = 0;
};

// q that makes the scan step ⌈2^j·εδ/n⌉: the DAG configuration.
inline double dag_quality(int n, double delta) { return static_cast<double>(n) / delta; }

}  // namespace dsssp
