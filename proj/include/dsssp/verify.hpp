#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsssp/ato.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/rng.hpp"
#include "dsssp/scc_topo.hpp"

namespace dsssp {

struct AuditVerdict {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct AtoAudit {
  std::vector<AuditVerdict> verdicts;
  // max over nodes of diam(X, G) / (eta·|X|/n); ≤ 1 when the budget holds.
  double worst_diameter_ratio = 0.0;
  bool ok() const;
  std::string failures() const;
  const AuditVerdict* find(const std::string& name) const;
};

// Exact checks of the ATO properties: partition, refinement, interval rules,
// GTO of G', weak diameter, centers. Keeps the previous version so
// refinement and nesting can be checked across calls. Never mutates the ATO.
class AtoAuditor {
 public:
  // Above exact_cap vertices the diameter check samples that many sources.
  explicit AtoAuditor(int exact_cap = 512, std::uint64_t seed = 0)
      : exact_cap_(exact_cap), rng_(seed) {}

  AtoAudit audit(const Ato& a);
  AtoAudit audit(const SccTopo& st, const DecrementalGraph& g, double eta,
                 const Ato* centers = nullptr);

 private:
  int exact_cap_;
  Rng rng_;
  bool has_prev_ = false;
  std::vector<NodeId> prev_node_;
  std::vector<std::pair<int, int>> prev_iv_;
};

// One-shot audit without history.
AtoAudit audit_ato(const Ato& a);

struct QualityReport {
  int samples = 0;
  double mean_T = 0.0;
  double mean_T_backward = 0.0;
  double mean_T_over_w = 0.0;
  int identity_violations = 0;  // paths with T > 2·T' + n
};

// Samples shortest paths of the current graph and measures T and T'.
QualityReport measure_quality(const SccTopo& st, const DecrementalGraph& g, int samples,
                              Rng& rng);

struct EdgeCutStat {
  EdgeId e = -1;
  std::uint64_t inside = 0;  // trials with tail(e) in the ball
  std::uint64_t cut = 0;     // of those, trials that cut e
  double bound = 0.0;        // (ζ/d)·w(e), capped at 1
  double freq = 0.0;
  double sigma = 0.0;
  bool ok = true;
};

struct SeparatorStats {
  std::uint64_t trials = 0;
  std::uint64_t fails = 0;
  double fail_rate = 0.0;
  double fail_expected = 0.0;
  double fail_sigma = 0.0;
  bool fail_ok = true;
  std::vector<EdgeCutStat> edges;
  bool ok() const;
};

// Monte-Carlo over the exponential radius draw. Draws at or beyond d count
// as failures; their balls still enter the per-edge tallies, since the
// conditional cut bound is a statement about the raw draw.
SeparatorStats separator_stats(const GraphView& view, VertexId r, double d, double zeta,
                               std::uint64_t trials, Rng& rng);

}  // namespace dsssp
