#include "dsssp/bootstrap.hpp"

#include <algorithm>
#include <cmath>

namespace dsssp {

int LevelConfig::max_level_for(const DecrementalGraph& g) {
  const std::uint64_t wn =
      static_cast<std::uint64_t>(std::max<Weight>(1, g.max_weight())) *
      static_cast<std::uint64_t>(std::max(1, g.n()));
  return 63 - __builtin_clzll(wn);
}

LevelConfig LevelConfig::for_graph(const DecrementalGraph& g) {
  LevelConfig c;
  c.max_level = max_level_for(g);
  return c;
}

void LevelConfig::validate() const {
  if (max_level < 0) throw std::invalid_argument("level config: max_level < 0");
  if (gamma < 0) throw std::invalid_argument("level config: gamma < 0");
  if (!(c > 0)) throw std::invalid_argument("level config: c must be positive");
  if (bundle < 0) throw std::invalid_argument("level config: bundle < 0");
  if (!(eps > 0) || !(internal_eps > 0))
    throw std::invalid_argument("level config: eps must be positive");
  if (base_levels < 0 || recursion_cap < 0)
    throw std::invalid_argument("level config: negative base or recursion cap");
  if (!(q_scale > 0)) throw std::invalid_argument("level config: q_scale must be positive");
}

// ---------------------------------------------------------------------------
// BundleSssp

Weight EnginePart::estimate(VertexId v) const {
  if (dense) return dense->estimate(v);
  if (sparse) return sparse->estimate(v);
  return kInf;
}

std::uint64_t EnginePart::scans() const {
  if (dense) return dense->counters().scans;
  if (sparse) {
    auto c = sparse->counters();
    return c.root_scans + c.hopset_scans;
  }
  return 0;
}

Weight BundleSssp::scale_floor(double eta, double q, int n, double eps) {
  const double add = std::ceil(eta) + eps * n / (2.0 * q);
  return std::max<Weight>(1, static_cast<Weight>(std::ceil(2.0 * add / eps)));
}

BundleSssp::BundleSssp(const DecrementalGraph& g, const std::vector<BundleSource>& sources,
                       BundleSsspOptions opt)
    : g_(&g), opt_(opt) {
  const int n = g.n();
  struct Scale {
    const BundleSource* src;
    double q;
    double eta;
    Weight lo;
  };
  // Singleton levels are interchangeable; the highest one stands for all.
  const BundleSource* single = nullptr;
  std::vector<Scale> scales;
  for (const BundleSource& s : sources) {
    if (s.singleton) {
      if (!single || s.level > single->level) single = &s;
      continue;
    }
    const Ato& a = s.bundle->copy(0);
    const double q = opt_.q_scale * n / std::max(1.0, a.delta());
    scales.push_back({&s, q, a.eta_diam(), scale_floor(a.eta_diam(), q, n, opt_.eps)});
  }
  if (single) scales.push_back({single, static_cast<double>(std::max(n, 1)), 0.0,
                                scale_floor(0.0, std::max(n, 1), n, opt_.eps)});
  std::sort(scales.begin(), scales.end(),
            [](const Scale& a, const Scale& b) { return a.lo < b.lo; });
  while (!scales.empty() && scales.back().lo > opt_.depth) scales.pop_back();

  // The ES tree answers everything below the first scale and below 1/ε.
  const Weight small = static_cast<Weight>(std::ceil(1.0 / opt_.eps));
  es_depth_ = std::max<Weight>(
      1, std::min(opt_.depth, scales.empty() ? opt_.depth : std::max(scales[0].lo, small)));
  const EsDirections dirs = opt_.forward && opt_.backward ? EsDirections::Both
                            : opt_.forward                ? EsDirections::Out
                                                          : EsDirections::In;
  es_ = std::make_unique<EsSssp>(GraphView(g), opt_.root, es_depth_, dirs);

  const Rng rng(opt_.seed);
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const Scale& sc = scales[k];
    const Weight hi = k + 1 < scales.size() ? std::min(opt_.depth, scales[k + 1].lo) : opt_.depth;
    const int copies = sc.src->singleton ? 1 : sc.src->bundle->size();
    for (int c = 0; c < copies; ++c) {
      for (bool rev : {false, true}) {
        if (rev ? !opt_.backward : !opt_.forward) continue;
        EnginePart part;
        part.level = sc.src->level;
        part.copy = c;
        part.reversed = rev;
        part.lo = sc.lo;
        part.depth = std::max(hi, sc.lo);
        part.q = sc.q;
        part.eta = sc.eta;
        const SccTopo& topo = sc.src->bundle->copy(c).topo();
        if (opt_.engine == EngineKind::Dense) {
          DenseParams p;
          p.root = opt_.root;
          p.delta = static_cast<double>(part.depth);
          p.eps = opt_.eps;
          p.q = part.q;
          p.eta = part.eta;
          p.reversed = rev;
          part.dense = std::make_unique<DenseEngine>(g, topo, p);
        } else {
          SparseParams p;
          p.root = opt_.root;
          p.delta = std::max(static_cast<double>(part.depth), std::ceil(n / part.q));
          p.eps = opt_.eps;
          p.q = part.q;
          p.eta = part.eta;
          p.c = opt_.c;
          p.reversed = rev;
          p.seed = rng.fork(parts_.size()).id();
          part.sparse = std::make_unique<SparseEngine>(g, topo, p);
        }
        parts_.push_back(std::move(part));
      }
    }
  }
}

void BundleSssp::drive(const UpdateEvent& e, const StageSplits& splits) {
  static const std::vector<SplitEvent> kNone;
  es_->on_update(e);
  for (EnginePart& p : parts_) {
    const std::vector<SplitEvent>* sp = &kNone;
    if (p.level < static_cast<int>(splits.size()) &&
        p.copy < static_cast<int>(splits[p.level].size()))
      sp = &splits[p.level][p.copy];
    if (p.dense) p.dense->update(e, *sp);
    if (p.sparse) p.sparse->update(e, *sp);
  }
  dirty_ = true;
}

void BundleSssp::refresh() const {
  if (!dirty_) return;
  const int n = g_->n();
  fwd_.assign(n, kInf);
  bwd_.assign(n, kInf);
  for (VertexId v = 0; v < n; ++v) {
    if (opt_.forward) fwd_[v] = es_->from_root(v);
    if (opt_.backward) bwd_[v] = es_->to_root(v);
  }
  for (const EnginePart& p : parts_) {
    auto& dst = p.reversed ? bwd_ : fwd_;
    for (VertexId v = 0; v < n; ++v) dst[v] = std::min(dst[v], p.estimate(v));
  }
  dirty_ = false;
}

Weight BundleSssp::from_root(VertexId v) const {
  if (!opt_.forward) return kInf;
  refresh();
  return fwd_[v];
}

Weight BundleSssp::to_root(VertexId v) const {
  if (!opt_.backward) return kInf;
  refresh();
  return bwd_[v];
}

std::uint64_t BundleSssp::work() const {
  std::uint64_t w = es_->work();
  for (const EnginePart& p : parts_) w += p.scans();
  return w;
}

std::vector<Weight> BundleSssp::scale_estimates(VertexId v, bool forward) const {
  std::vector<Weight> out;
  out.push_back(forward ? es_->from_root(v) : es_->to_root(v));
  for (const EnginePart& p : parts_)
    if (p.reversed != forward) out.push_back(p.estimate(v));
  return out;
}

std::string BundleSssp::audit() const {
  std::string out;
  for (const EnginePart& p : parts_) {
    std::string a = p.dense ? p.dense->audit() : p.sparse->audit();
    if (!a.empty())
      out += "level " + std::to_string(p.level) + " copy " + std::to_string(p.copy) +
             (p.reversed ? " backward: " : " forward: ") + a;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hierarchy

const char* dispatch_name(DispatchKind k) {
  switch (k) {
    case DispatchKind::Full: return "full";
    case DispatchKind::Recursive: return "recursive";
    case DispatchKind::Es: return "es";
  }
  return "?";
}

Hierarchy::Hierarchy(const DecrementalGraph& g, LevelConfig cfg, Rng rng, QuerySpec query,
                     int recursion, std::shared_ptr<std::vector<DispatchRecord>> log)
    : g_(&g), cfg_(cfg), rng_(rng), recursion_(recursion), log_(std::move(log)) {
  cfg_.validate();
  if (!log_) log_ = std::make_shared<std::vector<DispatchRecord>>();
  const int n = g.n();
  const int levels = cfg_.max_level + 1;
  bundles_.resize(levels);
  drivers_.resize(levels);
  const int copies = cfg_.bundle > 0 ? cfg_.bundle : AtoBundle::default_copies(cfg_.c, n);
  for (int i = 0; i < levels; ++i) {
    AtoParams ap;
    ap.c = cfg_.c;
    ap.alpha = 2.0;
    ap.delta = std::ldexp(1.0, std::max(0, i - 2));
    ap.singleton = i <= cfg_.base_levels;
    try {
      bundles_[i] = std::make_unique<AtoBundle>(g, ap, ap.singleton ? 1 : copies, factory_for(i),
                                                rng_.fork(static_cast<std::uint64_t>(i)));
    } catch (const AtoInitFailed& ex) {
      throw HierarchyFailed(i, ex.what());
    } catch (const AtoUpdateFailed& ex) {
      throw HierarchyFailed(i, ex.what());
    }
  }
  std::vector<BundleSource> sources;
  for (int i = 0; i < levels; ++i) sources.push_back({i, bundles_[i].get(), i <= cfg_.base_levels});
  BundleSsspOptions opt;
  opt.root = query.root;
  opt.depth = query.depth > 0
                  ? query.depth
                  : std::max<Weight>(1, g.max_weight() * static_cast<Weight>(std::max(1, n)));
  opt.eps = cfg_.eps;
  opt.engine = cfg_.engine;
  opt.forward = query.forward;
  opt.backward = query.backward;
  opt.q_scale = cfg_.q_scale;
  opt.c = cfg_.c;
  opt.seed = rng_.fork("top").id();
  top_ = std::make_unique<BundleSssp>(g, sources, opt);
}

SsspFactory Hierarchy::factory_for(int level) {
  return [this, level](const SsspRequest& req) -> std::shared_ptr<RestrictedSssp> {
    const int n = g_->n();
    const int host = static_cast<int>(req.host.size());
    const std::uint64_t call = factory_calls_++;
    DispatchRecord rec;
    rec.level = level;
    rec.recursion = recursion_;
    rec.host_size = host;
    if (static_cast<double>(host) * std::ldexp(1.0, cfg_.gamma) >= n) {
      // Large host: run on all of G from the settled lower levels.
      std::vector<BundleSource> sources;
      for (int j = 0; j < level; ++j)
        sources.push_back({j, bundles_[j].get(), j <= cfg_.base_levels});
      BundleSsspOptions opt;
      opt.root = req.root;
      opt.depth = req.depth;
      opt.eps = cfg_.internal_eps;
      opt.engine = cfg_.engine;
      opt.q_scale = cfg_.q_scale;
      opt.c = cfg_.c;
      opt.seed = rng_.fork("center").fork(call).id();
      auto s = std::make_shared<BundleSssp>(*g_, sources, opt);
      drivers_[level].push_back(s);
      rec.kind = DispatchKind::Full;
      log_->push_back(rec);
      return s;
    }
    if (recursion_ < cfg_.recursion_cap) {
      LevelConfig sub = cfg_;
      sub.c = cfg_.c * 4.0 * log_n(n);
      auto s = std::make_shared<NestedSssp>(*g_, req.host, req.root, req.depth, sub,
                                            rng_.fork("nested").fork(call), recursion_ + 1,
                                            log_);
      rec.kind = DispatchKind::Recursive;
      rec.host_ok = s->host_ok();
      log_->push_back(rec);
      return s;
    }
    rec.kind = DispatchKind::Es;
    log_->push_back(rec);
    return std::make_shared<EsSssp>(*g_, req.host, req.root, req.depth);
  };
}

void Hierarchy::update(const UpdateEvent& e) {
  StageSplits splits(bundles_.size());
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    auto& list = drivers_[i];
    std::size_t keep = 0;
    for (auto& w : list) {
      auto s = w.lock();
      if (!s) continue;
      s->drive(e, splits);
      list[keep++] = w;
    }
    list.resize(keep);
    try {
      splits[i] = bundles_[i]->handle_update(e);
      for (const auto& per_copy : splits[i]) splits_ += per_copy.size();
    } catch (const AtoUpdateFailed& ex) {
      throw HierarchyFailed(static_cast<int>(i), ex.what());
    }
  }
  top_->drive(e, splits);
}

int Hierarchy::live_drivers(int level) const {
  int c = 0;
  for (const auto& w : drivers_[level])
    if (!w.expired()) ++c;
  return c;
}

std::uint64_t Hierarchy::work() const {
  std::uint64_t w = top_->work();
  for (const auto& list : drivers_)
    for (const auto& weak : list)
      if (auto s = weak.lock()) w += s->work();
  return w;
}

std::string Hierarchy::audit() const {
  std::string out = top_->audit();
  for (std::size_t i = 0; i < drivers_.size(); ++i)
    for (const auto& weak : drivers_[i])
      if (auto s = weak.lock()) {
        const std::string a = s->audit();
        if (!a.empty()) out += "center at level " + std::to_string(i) + ": " + a;
      }
  return out;
}

// ---------------------------------------------------------------------------
// NestedSssp

NestedSssp::NestedSssp(const DecrementalGraph& g, const std::vector<VertexId>& host,
                       VertexId root, Weight depth, LevelConfig cfg, Rng rng, int recursion,
                       std::shared_ptr<std::vector<DispatchRecord>> log)
    : g_(&g), root_(root), depth_(depth), local_(g.n(), -1) {
  sub_ = GraphView(g).induced(host).snapshot(&old_ids_);
  for (std::size_t k = 0; k < old_ids_.size(); ++k) local_[old_ids_[k]] = static_cast<VertexId>(k);
  for (const auto& [u, v, w] : sub_.live_edges()) {
    const EdgeId e = g.find_edge(old_ids_[u], old_ids_[v]);
    if (e < 0 || !g.edge(e).alive || g.edge(e).w != w) host_ok_ = false;
  }
  if (static_cast<int>(old_ids_.size()) != static_cast<int>(host.size())) host_ok_ = false;
  cfg.max_level = LevelConfig::max_level_for(sub_);
  QuerySpec q;
  q.root = local_[root];
  q.depth = std::max<Weight>(1, depth);
  q.forward = true;
  q.backward = true;
  inner_ = std::make_unique<Hierarchy>(sub_, cfg, rng, q, recursion, std::move(log));
}

Weight NestedSssp::from_root(VertexId v) const {
  const VertexId l = local_[v];
  return l < 0 ? kInf : inner_->query(l);
}

Weight NestedSssp::to_root(VertexId v) const {
  const VertexId l = local_[v];
  return l < 0 ? kInf : inner_->query_to_root(l);
}

void NestedSssp::on_update(const UpdateEvent& e) {
  if (e.edge < 0) return;
  const Edge& ed = g_->edge(e.edge);
  const VertexId lu = local_[ed.u], lv = local_[ed.v];
  if (lu < 0 || lv < 0) return;
  const EdgeId le = sub_.find_edge(lu, lv);
  if (le < 0 || !sub_.edge(le).alive) return;
  UpdateEvent u = e.kind == UpdateKind::Delete ? UpdateEvent::del(lu, lv)
                                               : UpdateEvent::increase(lu, lv, e.new_weight);
  sub_.apply_update(u);
  inner_->update(u);
}

}  // namespace dsssp
