#include "dsssp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>

#include "dsssp/ato.hpp"
#include "dsssp/bootstrap.hpp"
#include "dsssp/dense.hpp"
#include "dsssp/es_tree.hpp"
#include "dsssp/oracle.hpp"
#include "dsssp/rng.hpp"
#include "dsssp/scc_topo.hpp"

namespace dsssp {

const char* const kCsvHeader =
    "stage,vertex,exact,estimate,verdict,counter_scans,counter_repairs,counter_splits,ms";

namespace {

std::string weight_str(Weight w) { return w >= kInf ? "inf" : std::to_string(w); }

Weight draw_weight(Rng& rng, Weight max_w) {
  return 1 + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(max_w)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Workloads

Workload generate(const GraphSpec& gs, const TraceSpec& ts, std::uint64_t seed) {
  if (gs.max_w < 1) throw SpecError("max weight must be ≥ 1");
  if (gs.density < 0 || gs.density > 1) throw SpecError("density must lie in [0, 1]");
  Rng root(seed);
  Rng rng = root.fork("graph");
  Workload w;
  if (gs.family == "random") {
    if (gs.n < 1) throw SpecError("random: n must be ≥ 1");
    w.n = gs.n;
    for (int u = 0; u < gs.n; ++u)
      for (int v = 0; v < gs.n; ++v)
        if (u != v && rng.bernoulli(gs.density)) w.edges.emplace_back(u, v, draw_weight(rng, gs.max_w));
  } else if (gs.family == "grid") {
    int rows = gs.rows, cols = gs.cols;
    if (rows == 0 && cols == 0) rows = cols = static_cast<int>(std::lround(std::sqrt(gs.n)));
    if (rows < 1 || cols < 1) throw SpecError("grid: rows and cols must be ≥ 1");
    w.n = rows * cols;
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (c + 1 < cols) {
          w.edges.emplace_back(id(r, c), id(r, c + 1), draw_weight(rng, gs.max_w));
          w.edges.emplace_back(id(r, c + 1), id(r, c), draw_weight(rng, gs.max_w));
        }
        if (r + 1 < rows) {
          w.edges.emplace_back(id(r, c), id(r + 1, c), draw_weight(rng, gs.max_w));
          w.edges.emplace_back(id(r + 1, c), id(r, c), draw_weight(rng, gs.max_w));
        }
      }
  } else if (gs.family == "dag-layered") {
    if (gs.layers < 1 || gs.width < 1) throw SpecError("dag-layered: layers and width must be ≥ 1");
    w.n = gs.layers * gs.width;
    // Edges only run from a layer to a later one.
    for (int li = 0; li < gs.layers; ++li)
      for (int lj = li + 1; lj < gs.layers; ++lj)
        for (int a = 0; a < gs.width; ++a)
          for (int b = 0; b < gs.width; ++b)
            if (rng.bernoulli(lj == li + 1 ? std::max(gs.density, 0.5) : gs.density))
              w.edges.emplace_back(li * gs.width + a, lj * gs.width + b,
                                   draw_weight(rng, gs.max_w));
  } else {
    throw SpecError("unknown graph family '" + gs.family + "'");
  }

  Rng trng = root.fork("trace");
  std::vector<std::size_t> order(w.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), trng.engine());
  if (ts.kind == "full") {
    for (std::size_t i : order) {
      const auto& [u, v, wt] = w.edges[i];
      w.trace.push_back(UpdateEvent::del(u, v));
    }
  } else if (ts.kind == "mix") {
    if (ts.increase_fraction < 0 || ts.increase_fraction > 1)
      throw SpecError("mix: increase fraction must lie in [0, 1]");
    std::vector<Weight> cur(w.edges.size());
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = std::get<2>(w.edges[i]);
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (trng.bernoulli(ts.increase_fraction)) {
        // Double an edge that is still present (the remaining suffix).
        const std::size_t j = order[k + trng.below(order.size() - k)];
        const auto& [u, v, wt] = w.edges[j];
        cur[j] = std::min<Weight>(2 * cur[j], kInf / 4);
        w.trace.push_back(UpdateEvent::increase(u, v, cur[j]));
      }
      const auto& [u, v, wt] = w.edges[order[k]];
      w.trace.push_back(UpdateEvent::del(u, v));
    }
  } else {
    throw SpecError("unknown trace kind '" + ts.kind + "'");
  }
  return w;
}

bool is_acyclic(const DecrementalGraph& g) {
  SccTopo st{GraphView(g)};
  return st.node_count() == g.n();
}

Algo parse_algo(const std::string& s) {
  if (s == "recompute") return Algo::Recompute;
  if (s == "es") return Algo::Es;
  if (s == "dag") return Algo::Dag;
  if (s == "dense") return Algo::Dense;
  if (s == "sparse") return Algo::Sparse;
  if (s == "auto") return Algo::Auto;
  throw SpecError("unknown algo '" + s + "'");
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Recompute: return "recompute";
    case Algo::Es: return "es";
    case Algo::Dag: return "dag";
    case Algo::Dense: return "dense";
    case Algo::Sparse: return "sparse";
    case Algo::Auto: return "auto";
  }
  return "?";
}

Algo resolve_auto(int n, int m) {
  return static_cast<double>(m) > std::pow(static_cast<double>(n), 1.5) ? Algo::Dense
                                                                          : Algo::Sparse;
}

VerifyMode parse_verify(const std::string& s) {
  VerifyMode m;
  if (s == "none") return m;
  if (s == "full") {
    m.kind = VerifyMode::Full;
    return m;
  }
  const std::string pre = "sampled:";
  if (s.rfind(pre, 0) == 0) {
    m.kind = VerifyMode::Sampled;
    try {
      m.k = std::stoi(s.substr(pre.size()));
    } catch (const std::exception&) {
      throw SpecError("bad verify mode '" + s + "'");
    }
    if (m.k < 1) throw SpecError("sampled:k needs k ≥ 1");
    return m;
  }
  throw SpecError("bad verify mode '" + s + "'");
}

std::string csv_row(const RunRow& r) {
  std::ostringstream o;
  o << r.stage << ',' << r.vertex << ',' << (r.vertex < 0 ? "" : weight_str(r.exact)) << ','
    << (r.vertex < 0 ? "" : weight_str(r.estimate)) << ',' << r.verdict << ',' << r.scans << ','
    << r.repairs << ',' << r.splits << ',';
  o.setf(std::ios::fixed);
  o.precision(3);
  o << r.ms;
  return o.str();
}

// ---------------------------------------------------------------------------
// Runners

namespace {

struct Counters {
  std::uint64_t scans = 0, repairs = 0, splits = 0;
};

class Runner {
 public:
  virtual ~Runner() = default;
  virtual void update(const UpdateEvent& e) = 0;
  virtual Weight estimate(VertexId v) const = 0;
  virtual Counters counters() const = 0;
  virtual std::vector<std::pair<std::string, double>> metrics() const { return {}; }
};

class RecomputeRunner : public Runner {
 public:
  RecomputeRunner(const DecrementalGraph& g, VertexId root) : g_(&g), root_(root) { recompute(); }
  void update(const UpdateEvent&) override { recompute(); }
  Weight estimate(VertexId v) const override { return dist_[v]; }
  Counters counters() const override { return {scans_, 0, 0}; }

 private:
  void recompute() {
    dist_ = dijkstra_oracle(*g_, root_);
    scans_ += static_cast<std::uint64_t>(g_->m());
  }
  const DecrementalGraph* g_;
  VertexId root_;
  std::vector<Weight> dist_;
  std::uint64_t scans_ = 0;
};

class EsRunner : public Runner {
 public:
  EsRunner(const DecrementalGraph& g, VertexId root, Weight depth)
      : es_(GraphView(g), root, depth, EsDirections::Out) {}
  void update(const UpdateEvent& e) override { es_.on_update(e); }
  Weight estimate(VertexId v) const override { return es_.from_root(v); }
  Counters counters() const override {
    return {es_.out_tree()->scans(), es_.out_tree()->increments(), 0};
  }

 private:
  EsSssp es_;
};

// Singleton order of an acyclic graph with one DAG-mode engine per depth
// scale; the answer is the minimum over the scales.
class DagRunner : public Runner {
 public:
  DagRunner(const DecrementalGraph& g, VertexId root, double eps, std::vector<double> deltas,
            std::uint64_t seed)
      : ato_(g, singleton(), es_factory(), Rng(seed)) {
    for (double d : deltas) {
      DenseParams p;
      p.root = root;
      p.delta = d;
      p.eps = eps;
      p.q = dag_quality(g.n(), d);
      p.dag_mode = true;
      engines_.push_back(std::make_unique<DenseEngine>(g, ato_.topo(), p));
    }
  }
  void update(const UpdateEvent& e) override {
    const auto splits = ato_.handle_update(e);
    splits_ += splits.size();
    for (auto& d : engines_) d->update(e, splits);
  }
  Weight estimate(VertexId v) const override {
    Weight best = kInf;
    for (const auto& d : engines_) best = std::min(best, d->estimate(v));
    return best;
  }
  Counters counters() const override {
    Counters c;
    for (const auto& d : engines_) {
      c.scans += d->counters().scans;
      c.repairs += d->counters().repairs;
    }
    c.splits = splits_;
    return c;
  }

 private:
  static AtoParams singleton() {
    AtoParams p;
    p.singleton = true;
    return p;
  }
  Ato ato_;
  std::vector<std::unique_ptr<DenseEngine>> engines_;
  std::uint64_t splits_ = 0;
};

class HierarchyRunner : public Runner {
 public:
  HierarchyRunner(const DecrementalGraph& g, const RunOptions& o, EngineKind kind)
      : h_(g, config(g, o, kind), Rng(o.seed), QuerySpec{o.root, o.delta, true, false}) {
    for (int i = 0; i < h_.levels(); ++i)
      initial_nodes_.push_back(h_.bundle(i).copy(0).topo().node_count());
  }
  void update(const UpdateEvent& e) override { h_.update(e); }
  Weight estimate(VertexId v) const override { return h_.query(v); }
  Counters counters() const override {
    Counters c;
    c.scans = h_.work();
    for (const auto& p : h_.top().parts())
      if (p.dense) c.repairs += p.dense->counters().repairs;
    c.splits = h_.splits();
    return c;
  }
  std::vector<std::pair<std::string, double>> metrics() const override {
    double full = 0, rec = 0, es = 0;
    for (const auto& r : h_.dispatch_log())
      (r.kind == DispatchKind::Full ? full : r.kind == DispatchKind::Recursive ? rec : es) += 1;
    std::vector<std::pair<std::string, double>> m = {
        {"levels", h_.levels()},
        {"copies_per_level", h_.bundle(h_.levels() - 1).size()},
        {"dispatch_full", full},
        {"dispatch_recursive", rec},
        {"dispatch_es", es},
        {"query_parts", static_cast<double>(h_.top().parts().size())},
        {"query_es_depth", static_cast<double>(h_.top().es_depth())}};
    // Node counts of copy 0 before the first update.
    for (int i = 0; i < h_.levels(); ++i)
      m.push_back({"level_" + std::to_string(i) + "_initial_nodes", initial_nodes_[i]});
    return m;
  }

 private:
  static LevelConfig config(const DecrementalGraph& g, const RunOptions& o, EngineKind kind) {
    LevelConfig c = LevelConfig::for_graph(g);
    c.eps = o.eps;
    c.c = o.c;
    c.bundle = o.bundle;
    c.gamma = o.gamma;
    c.engine = kind;
    return c;
  }
  Hierarchy h_;
  std::vector<double> initial_nodes_;
};

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

RunSummary run(DecrementalGraph g, const std::vector<UpdateEvent>& trace, const RunOptions& opt,
               const std::function<void(const RunRow&)>& sink) {
  const int n = g.n();
  if (opt.root < 0 || opt.root >= n) throw SpecError("root out of range");
  if (!(opt.eps > 0)) throw SpecError("epsilon must be positive");
  if (opt.workers < 1) throw SpecError("workers must be ≥ 1");
  if (opt.delta < 0) throw SpecError("delta must be ≥ 0");
  Algo algo = opt.algo == Algo::Auto ? resolve_auto(n, g.m()) : opt.algo;
  const Weight full_depth = std::max<Weight>(1, g.max_weight() * std::max(1, n));
  const Weight depth = opt.delta > 0 ? opt.delta : full_depth;

  RunSummary s;
  s.algo = algo_name(algo);
  std::unique_ptr<Runner> runner;
  double t0 = now_ms();
  switch (algo) {
    case Algo::Recompute:
      runner = std::make_unique<RecomputeRunner>(g, opt.root);
      break;
    case Algo::Es:
      runner = std::make_unique<EsRunner>(g, opt.root, depth);
      s.hi = depth;
      break;
    case Algo::Dag: {
      if (!is_acyclic(g)) throw IncompatibleAlgo("dag mode needs an acyclic graph");
      std::vector<double> deltas;
      if (opt.delta > 0) {
        deltas.push_back(static_cast<double>(opt.delta));
        s.lo = (opt.delta + 1) / 2;
        s.hi = opt.delta - 1;
      } else {
        // Scales 2, 4, ... cover [1, 2^J) with 2^J > n·W.
        for (double d = 2; d / 2 <= static_cast<double>(full_depth); d *= 2) deltas.push_back(d);
        s.lo = 1;
        s.hi = full_depth;
      }
      runner = std::make_unique<DagRunner>(g, opt.root, opt.eps, deltas, opt.seed);
      s.mult = 1 + 4 * opt.eps;
      break;
    }
    case Algo::Dense:
    case Algo::Sparse:
      runner = std::make_unique<HierarchyRunner>(
          g, opt, algo == Algo::Dense ? EngineKind::Dense : EngineKind::Sparse);
      s.mult = 1 + opt.eps;
      s.hi = depth;
      break;
    case Algo::Auto:
      break;
  }

  Rng vrng = Rng(opt.seed).fork("verify");
  std::vector<VertexId> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;

  auto emit_stage = [&](std::int64_t stage, double ms) {
    const Counters c = runner->counters();
    RunRow base;
    base.stage = stage;
    base.scans = c.scans;
    base.repairs = c.repairs;
    base.splits = c.splits;
    base.ms = ms;
    if (opt.verify.kind == VerifyMode::None) {
      base.verdict = "none";
      sink(base);
      return;
    }
    const auto exact = dijkstra_oracle(g, opt.root);
    std::vector<VertexId> pick = all;
    if (opt.verify.kind == VerifyMode::Sampled && opt.verify.k < n) {
      Rng r = vrng.fork(static_cast<std::uint64_t>(stage));
      std::shuffle(pick.begin(), pick.end(), r.engine());
      pick.resize(opt.verify.k);
      std::sort(pick.begin(), pick.end());
    }
    for (VertexId v : pick) {
      RunRow row = base;
      row.vertex = v;
      row.exact = exact[v];
      row.estimate = runner->estimate(v);
      const OracleReport rep = check_estimate(row.exact, row.estimate, s.mult, 0.0, s.lo, s.hi);
      switch (rep.verdict) {
        case Verdict::Ok:
          row.verdict = "ok";
          ++s.checked;
          break;
        case Verdict::OutOfRange:
          row.verdict = "out_of_range";
          break;
        case Verdict::LowerViolated:
          row.verdict = "lower";
          ++s.lower_violations;
          break;
        case Verdict::UpperViolated:
          row.verdict = "upper";
          ++s.checked;
          ++s.upper_violations;
          break;
      }
      sink(row);
    }
  };

  emit_stage(0, now_ms() - t0);
  s.total_ms += now_ms() - t0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    UpdateEvent e = trace[k];
    const double t = now_ms();
    g.apply_update(e);
    runner->update(e);
    const double ms = now_ms() - t;
    s.total_ms += ms;
    emit_stage(static_cast<std::int64_t>(k + 1), ms);
  }
  s.stages = static_cast<std::int64_t>(trace.size()) + 1;
  s.scans = runner->counters().scans;
  s.metrics = runner->metrics();
  // Lower-bound violations are never tolerated.
  if (opt.verify.kind != VerifyMode::None &&
      (s.lower_violations > 0 || s.violation_rate() > opt.max_violation_rate)) {
    std::ostringstream o;
    o << s.lower_violations << " lower and " << s.upper_violations << " upper violations over "
      << s.checked << " checks (rate " << s.violation_rate() << ", tolerated "
      << opt.max_violation_rate << ")";
    s.failed = true;
    s.failure = o.str();
  }
  return s;
}

void enforce(const RunSummary& s) {
  if (s.failed) throw VerificationFailed(s.failure);
}

}  // namespace dsssp
