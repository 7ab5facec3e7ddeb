#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dsssp/graph.hpp"
#include "dsssp/rng.hpp"
#include "dsssp/sssp.hpp"

namespace dsssp {

struct SeparatorResult {
  std::vector<EdgeId> e_sep;    // edges leaving v_sep (in view orientation)
  std::vector<VertexId> v_sep;  // the ball B(r, X), in settle order
  bool failed = false;
  double radius = 0.0;
  std::uint64_t touched = 0;  // edges scanned while growing the ball
};

// Grows B(r, X) one settled vertex per step, so two growers can be
// interleaved and one abandoned early.
class BallGrower {
 public:
  BallGrower(VertexId r, GraphView view, double d, double radius);

  bool done() const { return done_; }
  bool failed() const { return failed_; }
  std::uint64_t touched() const { return touched_; }
  void step();
  void run() {
    while (!done_) step();
  }
  SeparatorResult result() const;

 private:
  using Item = std::pair<Weight, VertexId>;
  GraphView view_;
  double radius_;
  bool failed_ = false;
  bool done_ = false;
  std::uint64_t touched_ = 0;
  std::unordered_map<VertexId, Weight> dist_;
  std::unordered_map<VertexId, char> in_ball_;
  std::vector<VertexId> ball_;
  std::vector<EdgeId> scanned_;
  std::vector<Item> heap_;
};

// Exponential-radius ball cut. Fails when the draw X ~ Exp(ζ/d) reaches d.
SeparatorResult out_separator(VertexId r, const GraphView& view, double d, double zeta, Rng& rng);
// Same with an injected radius draw.
SeparatorResult out_separator_at(VertexId r, const GraphView& view, double d, double radius);

// Named thresholds of the pruning loop: a vertex is pruned while an estimate
// exceeds d·kPruneLoop, and cut forward iff d̃(v, r) exceeds d·kPruneForward.
inline constexpr double kPruneLoop = 0.25;
inline constexpr double kPruneForward = 0.5;
// A losing grower is abandoned once it has touched this many times the
// winner's edges.
inline constexpr std::uint64_t kRaceFactor = 4;

struct PartitionStats {
  std::uint64_t separator_calls = 0;
  std::uint64_t recursive_calls = 0;
  std::uint64_t sssp_builds = 0;
  std::uint64_t races_aborted = 0;
  std::uint64_t touched = 0;
};

struct PartitionResult {
  std::vector<EdgeId> e_sep;
  bool failed = false;
  PartitionStats stats;
};

class PartitionFailed : public std::runtime_error {
 public:
  PartitionFailed() : std::runtime_error("partition: separator draw reached its depth") {}
};

// Edge set whose removal leaves every SCC of the view with weak diameter ≤ d.
// ssspFactory serves the pruning branch (a one-shot 2-approximate structure).
PartitionResult partition(const GraphView& view, double d, double zeta,
                          const SsspFactory& sssp_factory, Rng& rng);

// ζ·ln n with ln n floored at 1, the success parameter used per separator.
double log_scaled(double zeta, int n);

}  // namespace dsssp
