#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsssp/ato.hpp"
#include "dsssp/dense.hpp"
#include "dsssp/es_tree.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/rng.hpp"
#include "dsssp/sparse.hpp"
#include "dsssp/sssp.hpp"

namespace dsssp {

enum class EngineKind { Dense, Sparse };

class HierarchyFailed : public std::runtime_error {
 public:
  HierarchyFailed(int level, const std::string& what)
      : std::runtime_error("hierarchy level " + std::to_string(level) + ": " + what),
        level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

struct LevelConfig {
  int max_level = 0;       // ⌊lg(W·n)⌋
  int gamma = 4;           // hosts with ≥ n/2^γ vertices are large
  double c = 1.0;
  int bundle = 0;          // copies per bundle; 0 for the default 40·c·ln n
  double eps = 0.5;        // accuracy of the top-level query
  double internal_eps = 1.0;  // accuracy of the SSSP structures behind ATO centers
  EngineKind engine = EngineKind::Dense;
  int base_levels = 2;     // levels i ≤ base_levels use singleton ATOs
  int recursion_cap = 2;   // small-host hierarchies nest at most this deep
  double q_scale = 1.0;    // engine quality q = q_scale·n/δ_ato per bundle level

  static int max_level_for(const DecrementalGraph& g);
  static LevelConfig for_graph(const DecrementalGraph& g);
  // Throws std::invalid_argument.
  void validate() const;
};

// Splits of the current stage, indexed [level][copy].
using StageSplits = std::vector<std::vector<std::vector<SplitEvent>>>;

struct BundleSource {
  int level = 0;
  const AtoBundle* bundle = nullptr;
  bool singleton = false;
};

struct BundleSsspOptions {
  VertexId root = 0;
  Weight depth = 1;
  double eps = 0.5;
  EngineKind engine = EngineKind::Dense;
  bool forward = true;
  bool backward = true;
  double q_scale = 1.0;
  double c = 1.0;
  std::uint64_t seed = 0;
};

// One engine of the structure: bundle level, copy, direction, and the
// distance range [lo, depth] it is accurate for.
struct EnginePart {
  int level = -1;  // -1 for the plain ES tree
  int copy = 0;
  bool reversed = false;
  Weight lo = 0;
  Weight depth = 0;
  double q = 1.0;
  double eta = 0.0;
  std::unique_ptr<DenseEngine> dense;
  std::unique_ptr<SparseEngine> sparse;

  Weight estimate(VertexId v) const;
  std::uint64_t scans() const;
};

// (1+ε)-approximate δ-restricted SSSP from ATO bundles: per bundle copy and
// direction an engine at the depth scale where that bundle's additive error
// is at most ε/2 of the distance, plus an exact ES tree below the smallest
// scale. Answers are the minimum over all parts. Runs on the full graph and
// is driven by its owner through drive().
class BundleSssp : public RestrictedSssp {
 public:
  BundleSssp(const DecrementalGraph& g, const std::vector<BundleSource>& sources,
             BundleSsspOptions opt);

  VertexId root() const override { return opt_.root; }
  Weight depth() const override { return opt_.depth; }
  Weight from_root(VertexId v) const override;
  Weight to_root(VertexId v) const override;
  void on_update(const UpdateEvent&) override {}
  std::uint64_t work() const override;
  bool external() const override { return true; }

  // The graph already reflects e; splits hold this stage's refinements of
  // every level the structure reads.
  void drive(const UpdateEvent& e, const StageSplits& splits);

  const std::vector<EnginePart>& parts() const { return parts_; }
  // Every part's estimate for v in one direction (ES tree first).
  std::vector<Weight> scale_estimates(VertexId v, bool forward) const;
  const EsSssp& es() const { return *es_; }
  Weight es_depth() const { return es_depth_; }
  std::string audit() const;

  // Smallest distance for which a level's additive error ⌈η⌉ + ε·n/(2q) is at
  // most ε/2 of the distance.
  static Weight scale_floor(double eta, double q, int n, double eps);

 private:
  void refresh() const;

  const DecrementalGraph* g_;
  BundleSsspOptions opt_;
  Weight es_depth_ = 1;
  std::unique_ptr<EsSssp> es_;
  std::vector<EnginePart> parts_;
  mutable bool dirty_ = true;
  mutable std::vector<Weight> fwd_, bwd_;
};

enum class DispatchKind { Full, Recursive, Es };
const char* dispatch_name(DispatchKind k);

struct DispatchRecord {
  int level = 0;
  int recursion = 0;
  int host_size = 0;
  DispatchKind kind = DispatchKind::Full;
  bool host_ok = true;  // H ⊆ F ⊆ G verified at creation
};

struct QuerySpec {
  VertexId root = 0;
  Weight depth = 0;  // 0 for n·W
  bool forward = true;
  bool backward = false;
};

// Bundles 𝒮_0..𝒮_maxLevel built bottom-up, with a top-level query structure
// over all of them. Level i > base draws ATO(G, 2^i) copies whose center
// structures come from lower levels (large hosts) or a nested hierarchy on
// the host (small hosts).
class Hierarchy {
 public:
  // Nested hierarchies share the dispatch log of their owner.
  Hierarchy(const DecrementalGraph& g, LevelConfig cfg, Rng rng, QuerySpec query,
            int recursion = 0, std::shared_ptr<std::vector<DispatchRecord>> log = nullptr);
  Hierarchy(const Hierarchy&) = delete;
  Hierarchy& operator=(const Hierarchy&) = delete;

  // The graph already reflects e. Levels update in ascending order.
  void update(const UpdateEvent& e);

  Weight query(VertexId v) const { return top_->from_root(v); }
  Weight query_to_root(VertexId v) const { return top_->to_root(v); }

  const LevelConfig& config() const { return cfg_; }
  int levels() const { return static_cast<int>(bundles_.size()); }
  const AtoBundle& bundle(int i) const { return *bundles_[i]; }
  const BundleSssp& top() const { return *top_; }
  const std::vector<DispatchRecord>& dispatch_log() const { return *log_; }
  int live_drivers(int level) const;
  std::uint64_t work() const;
  // Engine audits of the query structure and every live center structure;
  // empty when all pass.
  std::string audit() const;
  // Split events over all levels and copies since construction.
  std::uint64_t splits() const { return splits_; }

 private:
  SsspFactory factory_for(int level);

  const DecrementalGraph* g_;
  LevelConfig cfg_;
  Rng rng_;
  int recursion_;
  std::vector<std::unique_ptr<AtoBundle>> bundles_;
  std::vector<std::vector<std::weak_ptr<BundleSssp>>> drivers_;
  std::unique_ptr<BundleSssp> top_;
  std::shared_ptr<std::vector<DispatchRecord>> log_;
  std::uint64_t factory_calls_ = 0;
  std::uint64_t splits_ = 0;
};

// 2-approximate SSSP on a small host through a nested hierarchy on a
// snapshot of G[host]; receives host updates through on_update.
class NestedSssp : public RestrictedSssp {
 public:
  NestedSssp(const DecrementalGraph& g, const std::vector<VertexId>& host, VertexId root,
             Weight depth, LevelConfig cfg, Rng rng, int recursion,
             std::shared_ptr<std::vector<DispatchRecord>> log);

  VertexId root() const override { return root_; }
  Weight depth() const override { return depth_; }
  Weight from_root(VertexId v) const override;
  Weight to_root(VertexId v) const override;
  void on_update(const UpdateEvent& e) override;
  std::uint64_t work() const override { return inner_->work(); }

  // Every snapshot edge matches a live G edge of equal weight inside the host.
  bool host_ok() const { return host_ok_; }
  const Hierarchy& inner() const { return *inner_; }

 private:
  const DecrementalGraph* g_;
  VertexId root_;
  Weight depth_;
  std::vector<VertexId> local_;  // by original id, -1 outside the host
  std::vector<VertexId> old_ids_;
  DecrementalGraph sub_;
  std::unique_ptr<Hierarchy> inner_;
  bool host_ok_ = true;
};

}  // namespace dsssp
