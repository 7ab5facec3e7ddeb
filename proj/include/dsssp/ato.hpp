#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsssp/graph.hpp"
#include "dsssp/rng.hpp"
#include "dsssp/scc_topo.hpp"
#include "dsssp/sssp.hpp"

namespace dsssp {

struct AtoParams {
  double delta = 1.0;  // the maintained order is an ATO(G, 2·alpha·delta)
  double c = 1.0;      // failure parameter
  double alpha = 2.0;  // approximation factor of the center structures
  // Trivial order: singleton nodes, G' without edges, τ read off a GTO of G.
  bool singleton = false;
  // Run the violation loop once right after Init, so the center certificate
  // holds from the first stage on.
  bool resolve_after_init = true;
  // Center structures only need to resolve distances up to δ|X|/n.
  bool scaled_center_depth = true;
};

class AtoInitFailed : public std::runtime_error {
 public:
  AtoInitFailed() : std::runtime_error("ato: partition failed during init") {}
};

class AtoUpdateFailed : public std::runtime_error {
 public:
  explicit AtoUpdateFailed(const std::string& what, int copy = -1)
      : std::runtime_error(what), copy_(copy) {}
  int copy() const { return copy_; }

 private:
  int copy_;
};

class BrokenPath : public std::runtime_error {
 public:
  BrokenPath() : std::runtime_error("path uses a missing edge") {}
};

struct AtoStats {
  std::uint64_t loop_iterations = 0;
  std::uint64_t separator_edges = 0;  // |F|
  std::uint64_t partition_calls = 0;
  std::uint64_t center_builds = 0;
  std::uint64_t center_retired = 0;
  std::uint64_t splits = 0;
  std::uint64_t vertices_checked = 0;
};

// Approximate topological order (𝒱, τ) of a decremental graph, maintained on
// the pruned graph G' = G \ F with randomly placed centers.
class Ato {
 public:
  Ato(const DecrementalGraph& g, AtoParams params, SsspFactory factory, Rng rng);
  Ato(const Ato&) = delete;
  Ato& operator=(const Ato&) = delete;

  const DecrementalGraph& graph() const { return *g_; }
  const AtoParams& params() const { return params_; }
  double delta() const { return params_.delta; }
  // Weak-diameter budget: every X has diam(X, G) ≤ eta_diam·|X|/n.
  double eta_diam() const { return eta_; }

  const SccTopo& topo() const { return topo_; }
  NodeId node_of(VertexId v) const { return topo_.node_of(v); }
  VertexId tau_of(VertexId v) const { return topo_.tau(topo_.node_of(v)); }

  const GraphView& gprime() const { return gprime_; }
  bool in_f(EdgeId e) const { return (*f_)[e] != 0; }
  std::vector<EdgeId> removed_edges() const;

  // The base graph has already applied e (e.edge resolved). Returns every
  // split of 𝒱 caused by the update and the violations it exposed.
  std::vector<SplitEvent> handle_update(const UpdateEvent& e);

  VertexId center(NodeId x) const { return center_vertex_[x]; }
  // Loop iterations in which each vertex landed in the separated side C.
  const std::vector<std::uint32_t>& participation() const { return participation_; }
  const AtoStats& stats() const { return stats_; }

  // {"n", "version", "eta_diam", "nodes": [{"tau", "members"}], "F": [[u, v]]}
  std::string dump_json() const;

 private:
  struct Center {
    VertexId s = -1;
    std::shared_ptr<RestrictedSssp> a;
    std::uint64_t seen_work = 0;
    bool alive = false;
  };

  void init();
  void add_to_f(const std::vector<EdgeId>& edges, std::vector<EdgeId>& fresh);
  void assign_center(NodeId x);
  void process_splits(const std::vector<SplitEvent>& splits);
  void mark_dirty(NodeId x);
  void retire(int rec);
  void resolve(std::vector<SplitEvent>& out);
  bool find_violation(NodeId x, VertexId& t, bool& backward_far);
  void grow_node_tables();

  const DecrementalGraph* g_;
  int n_;
  AtoParams params_;
  double eta_;
  SsspFactory factory_;
  Rng rng_;
  std::shared_ptr<EdgeMask> f_;
  GraphView gprime_;
  SccTopo topo_;

  std::vector<Center> centers_;
  std::vector<VertexId> center_vertex_;  // by node handle
  std::vector<int> center_rec_;          // by node handle, -1 for none
  std::vector<std::vector<int>> by_vertex_;  // center records whose host has v
  std::vector<int> external_;                // records driven from outside
  std::vector<char> dirty_mark_;
  std::vector<NodeId> dirty_;
  std::vector<std::uint32_t> participation_;
  AtoStats stats_;
};

// Σ |τ(X^u) − τ(X^v)| over the path's edges.
std::int64_t quality_T(const SccTopo& st, const DecrementalGraph& g,
                       const std::vector<VertexId>& path);
// Σ max{0, τ(X^u) − τ(X^v)}: only the backward steps.
std::int64_t backward_T(const SccTopo& st, const DecrementalGraph& g,
                        const std::vector<VertexId>& path);

// ℓ independent copies on forked random streams.
class AtoBundle {
 public:
  AtoBundle(const DecrementalGraph& g, AtoParams params, int copies, SsspFactory factory,
            const Rng& rng);

  int size() const { return static_cast<int>(copies_.size()); }
  Ato& copy(int i) { return *copies_[i]; }
  const Ato& copy(int i) const { return *copies_[i]; }

  // Per copy, the splits caused by e. Failures carry the copy index.
  std::vector<std::vector<SplitEvent>> handle_update(const UpdateEvent& e);

  // 40·c·ln n, at least 1.
  static int default_copies(double c, int n);

 private:
  std::vector<std::unique_ptr<Ato>> copies_;
};

}  // namespace dsssp
