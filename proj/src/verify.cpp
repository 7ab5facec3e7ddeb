#include "dsssp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dsssp/oracle.hpp"
#include "dsssp/separator.hpp"

namespace dsssp {

bool AtoAudit::ok() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const AuditVerdict& v) { return v.ok; });
}

std::string AtoAudit::failures() const {
  std::ostringstream os;
  for (const auto& v : verdicts)
    if (!v.ok) os << v.name << ": " << v.detail << "; ";
  return os.str();
}

const AuditVerdict* AtoAudit::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

AtoAudit AtoAuditor::audit(const Ato& a) { return audit(a.topo(), a.graph(), a.eta_diam(), &a); }

AtoAudit AtoAuditor::audit(const SccTopo& st, const DecrementalGraph& g, double eta,
                           const Ato* centers) {
  AtoAudit out;
  const int n = g.n();
  const std::vector<NodeId> nodes = st.current_nodes();
  auto fail = [](AuditVerdict& v, const std::string& why) {
    if (v.ok) v.detail = why;
    v.ok = false;
  };

  AuditVerdict part{"partition", true, ""};
  std::vector<int> seen(n, 0);
  for (NodeId x : nodes)
    for (VertexId v : st.members(x)) {
      ++seen[v];
      if (st.node_of(v) != x) fail(part, "node_of disagrees at vertex " + std::to_string(v));
    }
  for (int v = 0; v < n; ++v)
    if (seen[v] != 1) fail(part, "vertex " + std::to_string(v) + " covered " + std::to_string(seen[v]) + " times");
  out.verdicts.push_back(part);

  AuditVerdict refine{"refinement", true, ""};
  AuditVerdict nest{"nesting", true, ""};
  if (has_prev_) {
    for (NodeId x : nodes) {
      const auto& mem = st.members(x);
      NodeId p = prev_node_[mem[0]];
      for (VertexId v : mem)
        if (prev_node_[v] != p) fail(refine, "node with tau " + std::to_string(st.tau(x)) + " merges earlier nodes");
    }
    for (int v = 0; v < n; ++v) {
      int t = st.tau(st.node_of(v)), s = st.size(st.node_of(v));
      if (t < prev_iv_[v].first || t + s > prev_iv_[v].first + prev_iv_[v].second)
        fail(nest, "interval of vertex " + std::to_string(v) + " left its earlier interval");
    }
  }
  out.verdicts.push_back(refine);
  out.verdicts.push_back(nest);

  AuditVerdict iv{"intervals", true, ""};
  std::vector<int> cover(n, 0);
  for (NodeId x : nodes) {
    int t = st.tau(x), s = st.size(x);
    if (t < 0 || t + s > n) {
      fail(iv, "interval out of range");
      continue;
    }
    for (int i = 0; i < s; ++i) ++cover[t + i];
  }
  for (int i = 0; i < n; ++i)
    if (cover[i] != 1) fail(iv, "position " + std::to_string(i) + " covered " + std::to_string(cover[i]) + " times");
  out.verdicts.push_back(iv);

  AuditVerdict gto{"gto", true, ""};
  const GraphView& gp = st.view();
  for (VertexId u = 0; u < n; ++u)
    gp.for_each_out(u, [&](EdgeId, VertexId w, Weight) {
      NodeId a = st.node_of(u), b = st.node_of(w);
      if (a != b && st.tau(a) >= st.tau(b))
        fail(gto, "edge " + std::to_string(u) + "->" + std::to_string(w) + " runs backward in G'");
    });
  for (NodeId x : nodes)
    if (st.size(x) > 1 && ordered_sccs(gp, st.members(x)).size() != 1)
      fail(gto, "node with tau " + std::to_string(st.tau(x)) + " is not strongly connected in G'");
  out.verdicts.push_back(gto);

  AuditVerdict diam{"diameter", true, ""};
  std::vector<VertexId> sources;
  for (NodeId x : nodes)
    if (st.size(x) > 1)
      for (VertexId v : st.members(x)) sources.push_back(v);
  if (static_cast<int>(sources.size()) > exact_cap_) {
    std::shuffle(sources.begin(), sources.end(), rng_.engine());
    sources.resize(exact_cap_);
  }
  GraphView all(g);
  for (VertexId s : sources) {
    NodeId x = st.node_of(s);
    auto d = dijkstra_oracle(all, s);
    const double budget = eta * st.size(x) / n;
    for (VertexId v : st.members(x)) {
      double ratio = d[v] >= kInf ? std::numeric_limits<double>::infinity()
                                  : (budget > 0 ? d[v] / budget : (d[v] > 0 ? std::numeric_limits<double>::infinity() : 0.0));
      out.worst_diameter_ratio = std::max(out.worst_diameter_ratio, ratio);
      if (static_cast<double>(d[v]) > budget + 1e-9)
        fail(diam, "dist(" + std::to_string(s) + "," + std::to_string(v) + ") = " +
                       (d[v] >= kInf ? std::string("inf") : std::to_string(d[v])) +
                       " exceeds " + std::to_string(budget));
    }
  }
  out.verdicts.push_back(diam);

  if (centers) {
    AuditVerdict cv{"centers", true, ""};
    for (NodeId x : nodes) {
      const auto& mem = st.members(x);
      if (!std::binary_search(mem.begin(), mem.end(), centers->center(x)))
        fail(cv, "center outside its node");
    }
    out.verdicts.push_back(cv);
  }

  prev_node_.assign(n, -1);
  prev_iv_.assign(n, {0, 0});
  for (int v = 0; v < n; ++v) {
    prev_node_[v] = st.node_of(v);
    prev_iv_[v] = {st.tau(st.node_of(v)), st.size(st.node_of(v))};
  }
  has_prev_ = true;
  return out;
}

AtoAudit audit_ato(const Ato& a) {
  AtoAuditor aud;
  return aud.audit(a);
}

QualityReport measure_quality(const SccTopo& st, const DecrementalGraph& g, int samples,
                              Rng& rng) {
  QualityReport rep;
  const int n = g.n();
  if (n == 0) return rep;
  GraphView all(g);
  double sum_t = 0, sum_tb = 0, sum_r = 0;
  for (int attempt = 0; attempt < samples * 4 && rep.samples < samples; ++attempt) {
    VertexId s = static_cast<VertexId>(rng.below(n));
    auto d = dijkstra_oracle(all, s);
    std::vector<VertexId> reach;
    for (int v = 0; v < n; ++v)
      if (v != s && d[v] < kInf) reach.push_back(v);
    if (reach.empty()) continue;
    VertexId t = reach[rng.below(reach.size())];
    auto path = dijkstra_path(all, s, t);
    std::int64_t T = quality_T(st, g, path), Tb = backward_T(st, g, path);
    sum_t += static_cast<double>(T);
    sum_tb += static_cast<double>(Tb);
    sum_r += static_cast<double>(T) / static_cast<double>(d[t]);
    if (T > 2 * Tb + n) ++rep.identity_violations;
    ++rep.samples;
  }
  if (rep.samples > 0) {
    rep.mean_T = sum_t / rep.samples;
    rep.mean_T_backward = sum_tb / rep.samples;
    rep.mean_T_over_w = sum_r / rep.samples;
  }
  return rep;
}

bool SeparatorStats::ok() const {
  return fail_ok && std::all_of(edges.begin(), edges.end(), [](const EdgeCutStat& e) { return e.ok; });
}

SeparatorStats separator_stats(const GraphView& view, VertexId r, double d, double zeta,
                               std::uint64_t trials, Rng& rng) {
  SeparatorStats st;
  const DecrementalGraph& g = view.graph();
  std::vector<std::uint64_t> inside(g.edge_capacity(), 0), cut(g.edge_capacity(), 0);
  const double unbounded = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double x = rng.exponential(zeta / d);
    if (x >= d) ++st.fails;
    SeparatorResult res = out_separator_at(r, view, unbounded, x);
    for (VertexId v : res.v_sep) view.for_each_out(v, [&](EdgeId e, VertexId, Weight) { ++inside[e]; });
    for (EdgeId e : res.e_sep) ++cut[e];
  }
  st.trials = trials;
  st.fail_rate = static_cast<double>(st.fails) / static_cast<double>(trials);
  st.fail_expected = std::exp(-zeta);
  st.fail_sigma = std::sqrt(st.fail_expected * (1 - st.fail_expected) / static_cast<double>(trials));
  st.fail_ok = std::abs(st.fail_rate - st.fail_expected) <= 3 * st.fail_sigma;
  for (EdgeId e = 0; e < g.edge_capacity(); ++e) {
    if (!view.has_edge(e)) continue;
    EdgeCutStat s;
    s.e = e;
    s.inside = inside[e];
    s.cut = cut[e];
    s.bound = std::min(1.0, zeta / d * static_cast<double>(g.edge(e).w));
    if (s.inside > 0) {
      s.freq = static_cast<double>(s.cut) / static_cast<double>(s.inside);
      s.sigma = std::sqrt(s.bound * (1 - s.bound) / static_cast<double>(s.inside));
      s.ok = s.freq <= s.bound + 3 * s.sigma;
    }
    st.edges.push_back(s);
  }
  return st;
}

}  // namespace dsssp
