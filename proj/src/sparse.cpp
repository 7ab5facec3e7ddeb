#include "dsssp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dsssp {

std::int64_t chi_far_interval(std::int64_t tx, std::int64_t sx, std::int64_t ty,
                              std::int64_t sy) {
  if (tx < ty) return ty - tx + sy - 1;
  return tx - ty + sx - 1;
}

std::int64_t chi_far(const SccTopo& st, NodeId x, NodeId y) {
  if (x == y) throw SameNode();
  return chi_far_interval(st.tau(x), st.size(x), st.tau(y), st.size(y));
}

bool TopoBall::in_closed(const SccTopo& st, NodeId y) const {
  const NodeId x = st.node_of(center);
  if (x == y || radius < 0) return true;
  return chi(st, x, y) <= radius;
}

bool TopoBall::in_open(const SccTopo& st, NodeId y) const {
  const NodeId x = st.node_of(center);
  if (x == y || radius < 0) return true;
  return chi_far(st, x, y) <= radius;
}

std::vector<NodeId> TopoBall::closed_members(const SccTopo& st) const {
  std::vector<NodeId> out;
  for (NodeId y : st.current_nodes())
    if (in_closed(st, y)) out.push_back(y);
  return out;
}

std::vector<NodeId> TopoBall::open_members(const SccTopo& st) const {
  std::vector<NodeId> out;
  for (NodeId y : st.current_nodes())
    if (in_open(st, y)) out.push_back(y);
  return out;
}

std::int64_t cbrt_ceil(std::int64_t n) {
  std::int64_t k = 0;
  while (k * k * k < n) ++k;
  return k;
}

std::int64_t n23_ceil(std::int64_t n) {
  std::int64_t k = 0;
  while (k * k * k < n * n) ++k;
  return k;
}

double log_n(int n) { return std::max(1.0, std::log(static_cast<double>(std::max(n, 1)))); }

double root_hop_cap(int n) { return static_cast<double>(n23_ceil(n)) * log_n(n); }

HopsetLevel hopset_level(int n, int i, double q, double delta, double c) {
  HopsetLevel lv;
  lv.i = i;
  lv.h = std::int64_t{1} << i;
  const std::int64_t cb = std::max<std::int64_t>(1, cbrt_ceil(n));
  lv.l = std::max<std::int64_t>(1, (lv.h + cb - 1) / cb);
  lv.K = static_cast<std::int64_t>(std::ceil(q * delta / static_cast<double>(cb)));
  lv.sample_p = 3.0 * (c + 6.0) * log_n(n) / static_cast<double>(lv.l);
  lv.empty = static_cast<double>(lv.h) < root_hop_cap(n);
  return lv;
}

int ArcTable::add(VertexId tail, VertexId head, Weight w, int level) {
  const int id = size();
  arcs.push_back({tail, head, w, level});
  out[tail].push_back(id);
  in[head].push_back(id);
  return id;
}

// ---------------------------------------------------------------------------
// GesTree

GesTree::GesTree(const DecrementalGraph& g, const SccTopo& topo, GesParams params,
                 const ArcTable* extra)
    : g_(&g), topo_(&topo), extra_(extra), p_(params), ball_{params.source, params.radius} {
  if (p_.depth < 0 || p_.depth >= (Weight{1} << 40))
    throw std::invalid_argument("ges: depth out of range");
  const double beta = p_.eps / (2.0 * std::max(1, p_.hops));
  // Integers while g·β < 1, then factor (1+β) steps rounded down: every
  // consecutive ratio stays ≤ 1+β and round_up(y) ≤ (1+β)·y.
  grid_.push_back(0);
  Weight v = 1;
  while (v < p_.depth) {
    grid_.push_back(v);
    const Weight next = static_cast<Weight>(std::floor(static_cast<double>(v) * (1.0 + beta)));
    v = std::max(v + 1, next);
  }
  // The depth itself closes the grid, so every value ≤ depth stays finite.
  if (p_.depth > 0) grid_.push_back(p_.depth);
  dependents_.assign(g.n(), {});
  dep_listed_.assign(static_cast<std::size_t>(m_cap()) + (extra_ ? extra_->size() : 0), 0);
  grow();
  src_handle_ = topo.node_of(p_.source);
  initial_dijkstra();
}

Weight GesTree::round_up(Weight x) const {
  if (x > p_.depth) return kInf;
  auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
  if (it == grid_.end() || *it > p_.depth) return kInf;
  return *it;
}

bool GesTree::in_ball(NodeId y) const { return ball_.in_closed(*topo_, y); }

VertexId GesTree::arc_tail(int a) const {
  if (a < m_cap()) return p_.reversed ? g_->edge(a).v : g_->edge(a).u;
  return extra_->arcs[a - m_cap()].tail;
}

VertexId GesTree::arc_head(int a) const {
  if (a < m_cap()) return p_.reversed ? g_->edge(a).u : g_->edge(a).v;
  return extra_->arcs[a - m_cap()].head;
}

Weight GesTree::arc_weight(int a) const {
  if (a < m_cap()) {
    const Edge& e = g_->edge(a);
    return e.alive ? e.w : kInf;
  }
  return extra_->arcs[a - m_cap()].w;
}

bool GesTree::arc_at(VertexId v, std::size_t j, int& a) const {
  const auto& gl = p_.reversed ? g_->out_edges(v) : g_->in_edges(v);
  if (j < gl.size()) {
    a = gl[j];
    return true;
  }
  if (!extra_) return false;
  j -= gl.size();
  if (j >= extra_->in[v].size()) return false;
  a = m_cap() + extra_->in[v][j];
  return true;
}

template <class F>
void GesTree::for_each_out_arc(VertexId v, F&& f) const {
  for (EdgeId e : p_.reversed ? g_->in_edges(v) : g_->out_edges(v)) f(static_cast<int>(e));
  if (extra_)
    for (int a : extra_->out[v]) f(m_cap() + a);
}

Weight GesTree::offer_value(int a, NodeId head_node) const {
  const Weight w = arc_weight(a);
  if (w >= kInf) return kInf;
  const NodeId x = topo_->node_of(arc_tail(a));
  if (x == head_node || !in_ball(x)) return kInf;
  return relax(est_[x], w);
}

Weight GesTree::offer(int a, NodeId head_node) {
  const Weight w = arc_weight(a);
  if (w >= kInf) return kInf;
  const NodeId x = topo_->node_of(arc_tail(a));
  if (x == head_node || !in_ball(x)) return kInf;
  ++counters_.scans;
  if (!in_ball(head_node)) ++counters_.touched_outside_closed;
  if (ball_.radius >= 0 && !ball_.in_open(*topo_, x) && !ball_.in_open(*topo_, head_node))
    ++counters_.touched_outside_open;
  return relax(est_[x], w);
}

void GesTree::grow() {
  const std::size_t hb = static_cast<std::size_t>(topo_->handle_bound());
  if (est_.size() >= hb) return;
  est_.resize(hb, kInf);
  parent_arc_.resize(hb, kNoArc);
  cursor_.resize(hb, {0, 0});
  queued_.resize(hb, 0);
  changed_mark_.resize(hb, 0);
}

void GesTree::touch(NodeId x) {
  if (!changed_mark_[x]) {
    changed_mark_[x] = 1;
    changed_.push_back(x);
  }
}

void GesTree::clear_changed() {
  for (NodeId x : changed_) changed_mark_[x] = 0;
  changed_.clear();
}

void GesTree::set_estimate(NodeId y, Weight value) {
  if (est_[y] == value) return;
  if (est_[y] >= kInf) reached_.push_back(y);
  est_[y] = value;
  touch(y);
}

void GesTree::enqueue(NodeId y) {
  if (queued_[y] || est_[y] >= kInf) return;
  queued_[y] = 1;
  heap_.push({est_[y], y});
}

void GesTree::enqueue_dependents(NodeId x) {
  for (VertexId u : topo_->members(x)) {
    auto& list = dependents_[u];
    std::size_t keep = 0;
    for (int a : list) {
      const NodeId h = topo_->node_of(arc_head(a));
      if (parent_arc_[h] == a) {
        list[keep++] = a;
        enqueue(h);
      } else {
        dep_listed_[a] = 0;
      }
    }
    list.resize(keep);
  }
}

bool GesTree::cert_valid(NodeId y) const {
  const int a = parent_arc_[y];
  if (a == kNoArc) return false;
  if (topo_->node_of(arc_head(a)) != y) return false;
  return offer_value(a, y) <= est_[y];
}

void GesTree::initial_dijkstra() {
  const NodeId src = src_handle_;
  est_[src] = 0;
  reached_.push_back(src);
  heap_.push({0, src});
  while (!heap_.empty()) {
    auto [d, x] = heap_.top();
    heap_.pop();
    if (d != est_[x]) continue;
    for (VertexId u : topo_->members(x)) {
      for_each_out_arc(u, [&](int a) {
        const Weight w = arc_weight(a);
        if (w >= kInf) return;
        const NodeId y = topo_->node_of(arc_head(a));
        if (y == x || !in_ball(y)) return;
        ++counters_.scans;
        const Weight val = relax(d, w);
        if (val < est_[y]) {
          if (est_[y] >= kInf) reached_.push_back(y);
          est_[y] = val;
          parent_arc_[y] = a;
          heap_.push({val, y});
        }
      });
    }
  }
  for (NodeId y : reached_) {
    const int a = parent_arc_[y];
    if (a == kNoArc) continue;
    const VertexId t = arc_tail(a);
    dependents_[t].push_back(a);
    dep_listed_[a] = 1;
  }
}

void GesTree::repair(NodeId y) {
  if (y == src_handle_ || !topo_->alive(y) || est_[y] >= kInf) return;
  if (cert_valid(y)) return;
  const auto& mem = topo_->members(y);
  auto [ci, cj] = cursor_[y];
  // Arcs before the cursor offered more than est(y) when scanned; offers
  // only grow, so they stay excluded while est(y) is unchanged.
  for (std::size_t i = static_cast<std::size_t>(ci); i < mem.size(); ++i) {
    int a;
    for (std::size_t j = (i == static_cast<std::size_t>(ci) ? static_cast<std::size_t>(cj) : 0);
         arc_at(mem[i], j, a); ++j) {
      if (offer(a, y) <= est_[y]) {
        parent_arc_[y] = a;
        cursor_[y] = {static_cast<int>(i), static_cast<int>(j)};
        if (!dep_listed_[a]) {
          dep_listed_[a] = 1;
          dependents_[arc_tail(a)].push_back(a);
        }
        return;
      }
    }
  }
  // No arc supports the current value: jump to the smallest offer.
  Weight best = kInf;
  int arg = kNoArc;
  std::pair<int, int> pos{0, 0};
  for (std::size_t i = 0; i < mem.size(); ++i) {
    int a;
    for (std::size_t j = 0; arc_at(mem[i], j, a); ++j) {
      const Weight val = offer(a, y);
      if (val < best) {
        best = val;
        arg = a;
        pos = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  ++counters_.increases;
  set_estimate(y, std::max(best, est_[y]));
  parent_arc_[y] = arg;
  cursor_[y] = pos;
  if (arg != kNoArc && !dep_listed_[arg]) {
    dep_listed_[arg] = 1;
    dependents_[arc_tail(arg)].push_back(arg);
  }
  enqueue_dependents(y);
}

void GesTree::recheck_ball(const std::vector<NodeId>& candidates) {
  for (NodeId y : candidates) {
    if (!topo_->alive(y) || est_[y] >= kInf || in_ball(y)) continue;
    ++counters_.ball_exits;
    est_[y] = kInf;
    parent_arc_[y] = kNoArc;
    touch(y);
    enqueue_dependents(y);
  }
}

void GesTree::apply_splits(const std::vector<SplitEvent>& splits) {
  if (splits.empty()) return;
  grow();
  bool source_split = false;
  std::vector<NodeId> kids;
  for (const SplitEvent& ev : splits) {
    ++counters_.splits;
    const NodeId par = ev.parent;
    const Weight pe = est_[par];
    const int pa = parent_arc_[par];
    const VertexId hv = pa == kNoArc ? -1 : arc_head(pa);
    const bool was_source = par == src_handle_;
    for (const SplitChild& ch : ev.children) {
      const NodeId c = ch.node;
      const auto& mem = topo_->members(c);
      // A child's distance is at least its parent's: inheriting is a lower bound.
      est_[c] = pe;
      if (pe < kInf) reached_.push_back(c);
      parent_arc_[c] = kNoArc;
      cursor_[c] = {0, 0};
      queued_[c] = 0;
      if (hv >= 0 && std::find(mem.begin(), mem.end(), hv) != mem.end()) parent_arc_[c] = pa;
      if (was_source && std::find(mem.begin(), mem.end(), p_.source) != mem.end()) {
        src_handle_ = c;
        est_[c] = 0;
        source_split = true;
      }
      touch(c);
      kids.push_back(c);
    }
    est_[par] = kInf;
    parent_arc_[par] = kNoArc;
  }
  if (source_split && ball_.radius >= 0) {
    // Every gap measured from the source grew; recheck the whole tree.
    std::vector<NodeId> live;
    for (NodeId y : reached_)
      if (topo_->alive(y) && est_[y] < kInf) live.push_back(y);
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    reached_ = live;
    recheck_ball(reached_);
  } else {
    recheck_ball(kids);
  }
  for (NodeId c : kids)
    if (topo_->alive(c) && c != src_handle_ && est_[c] < kInf && !cert_valid(c)) enqueue(c);
}

void GesTree::edge_changed(EdgeId e) {
  ++counters_.weight_changes;
  const NodeId h = topo_->node_of(arc_head(e));
  if (h < static_cast<NodeId>(parent_arc_.size()) && parent_arc_[h] == e) enqueue(h);
}

void GesTree::arc_changed(int a) {
  ++counters_.weight_changes;
  const int id = m_cap() + a;
  const NodeId h = topo_->node_of(arc_head(id));
  if (h < static_cast<NodeId>(parent_arc_.size()) && parent_arc_[h] == id) enqueue(h);
}

void GesTree::settle() {
  while (!heap_.empty()) {
    const NodeId y = heap_.top().second;
    heap_.pop();
    if (!queued_[y]) continue;
    queued_[y] = 0;
    repair(y);
  }
}

std::string GesTree::audit() const {
  std::ostringstream os;
  for (NodeId y : topo_->current_nodes()) {
    const Weight e = node_estimate(y);
    if (!in_ball(y)) {
      if (e < kInf) os << "node " << y << " outside the ball has estimate " << e << "\n";
      continue;
    }
    if (y == src_handle_) {
      if (e != 0) os << "source node estimate " << e << "\n";
      continue;
    }
    if (e < kInf) {
      if (!std::binary_search(grid_.begin(), grid_.end(), e))
        os << "node " << y << " estimate " << e << " off the grid\n";
      if (!cert_valid(y)) os << "node " << y << " lacks a certificate\n";
    }
    for (VertexId v : topo_->members(y)) {
      int a;
      for (std::size_t j = 0; arc_at(v, j, a); ++j) {
        const Weight val = offer_value(a, y);
        if (val < e) {
          os << "arc " << a << " offers " << val << " below estimate " << e << " of node " << y
             << "\n";
          return os.str();
        }
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Hopset

Hopset::Hopset(const DecrementalGraph& g, const SccTopo& topo, HopsetLevel level, double eps,
               bool reversed, ArcTable& arcs, Rng rng)
    : topo_(&topo), level_(level), arcs_(&arcs), sampled_(g.n(), 0) {
  if (level_.empty) return;
  const double p = std::min(1.0, level_.sample_p);
  for (VertexId v = 0; v < g.n(); ++v)
    if (rng.bernoulli(p)) {
      samples_.push_back(v);
      sampled_[v] = 1;
    }
  for (VertexId s : samples_) {
    GesParams gp;
    gp.source = s;
    gp.depth = level_.l;
    gp.hops = static_cast<int>(level_.l);
    gp.eps = eps;
    gp.radius = level_.K;
    gp.reversed = reversed;
    trees_.push_back(std::make_unique<GesTree>(g, topo, gp));
    trees_.back()->clear_changed();
    auto& map = arc_of_.emplace_back();
    for (VertexId t : samples_) {
      if (t == s) continue;
      const Weight e = trees_.back()->estimate(t);
      if (e > level_.l) continue;
      const int id = arcs.add(s, t, e, level_.i);
      map.emplace(t, id);
      arc_ids_.push_back(id);
    }
  }
}

void Hopset::refresh(int k, std::vector<int>& changed) {
  GesTree& tr = *trees_[k];
  const auto& map = arc_of_[k];
  if (map.empty()) return;
  for (NodeId y : tr.changed()) {
    if (!topo_->alive(y)) continue;
    const Weight e = tr.node_estimate(y);
    const Weight w = e <= level_.l ? e : kInf;
    for (VertexId t : topo_->members(y)) {
      if (!sampled_[t]) continue;
      auto it = map.find(t);
      if (it == map.end()) continue;
      auto& arc = arcs_->arcs[it->second];
      if (arc.w == w) continue;
      arc.w = std::max(arc.w, w);  // estimates never drop
      changed.push_back(it->second);
    }
  }
}

std::vector<int> Hopset::update(const UpdateEvent* e, const std::vector<SplitEvent>& splits) {
  std::vector<int> changed;
  for (int k = 0; k < tree_count(); ++k) {
    GesTree& tr = *trees_[k];
    tr.apply_splits(splits);
    if (e && e->edge >= 0) tr.edge_changed(e->edge);
    tr.settle();
    refresh(k, changed);
    tr.clear_changed();
  }
  return changed;
}

int Hopset::edge_count() const {
  int count = 0;
  for (int id : arc_ids_) {
    const auto& a = arcs_->arcs[id];
    if (a.w < kInf && topo_->node_of(a.tail) != topo_->node_of(a.head)) ++count;
  }
  return count;
}

std::uint64_t Hopset::scans() const {
  std::uint64_t s = 0;
  for (const auto& t : trees_) s += t->counters().scans;
  return s;
}

// ---------------------------------------------------------------------------
// SparseEngine

SparseEngine::SparseEngine(const DecrementalGraph& g, const SccTopo& topo, SparseParams params)
    : g_(&g), topo_(&topo), p_(params), arcs_(g.n()) {
  const int n = g.n();
  if (p_.delta * p_.q < n)
    throw PreconditionFailed("sparse: requires delta * q >= n");
  eta_add_ = static_cast<Weight>(std::ceil(p_.eta));
  root_hops_ = std::max(1, static_cast<int>(std::ceil(root_hop_cap(n))));
  const Rng rng(p_.seed);
  int top = 0;
  while ((2 << top) <= n) ++top;  // ⌊lg n⌋
  hopsets_.reserve(top + 1);
  for (int i = 0; i <= top; ++i) {
    HopsetLevel lv = hopset_level(n, i, p_.q, p_.delta, p_.c);
    if (lv.empty) continue;
    hopsets_.emplace_back(g, topo, lv, p_.eps, p_.reversed, arcs_, rng.fork(i));
  }
  GesParams gp;
  gp.source = p_.root;
  gp.depth = static_cast<Weight>(std::ceil((1.0 + p_.eps) * p_.delta));
  gp.hops = root_hops_;
  gp.eps = p_.eps;
  gp.radius = -1;
  gp.reversed = p_.reversed;
  root_ = std::make_unique<GesTree>(g, topo, gp, &arcs_);
  root_->clear_changed();
}

void SparseEngine::update(const UpdateEvent& e, const std::vector<SplitEvent>& splits) {
  splits_ += splits.size();
  std::vector<int> changed;
  for (Hopset& hs : hopsets_) {
    auto c = hs.update(&e, splits);
    changed.insert(changed.end(), c.begin(), c.end());
  }
  arc_changes_ += changed.size();
  root_->apply_splits(splits);
  if (e.edge >= 0) root_->edge_changed(e.edge);
  for (int a : changed) root_->arc_changed(a);
  root_->settle();
  root_->clear_changed();
}

Weight SparseEngine::estimate(VertexId v) const {
  const Weight e = root_->estimate(v);
  return e >= kInf ? kInf : e + eta_add_;
}

std::vector<Weight> SparseEngine::estimates() const {
  std::vector<Weight> out(g_->n());
  for (VertexId v = 0; v < g_->n(); ++v) out[v] = estimate(v);
  return out;
}

SparseCounters SparseEngine::counters() const {
  SparseCounters c;
  c.root_scans = root_->counters().scans;
  for (const Hopset& hs : hopsets_) c.hopset_scans += hs.scans();
  c.hopset_arc_changes = arc_changes_;
  c.splits = splits_;
  return c;
}

std::vector<WeightedArc> SparseEngine::contracted_arcs(int level) const {
  std::vector<WeightedArc> out;
  for (EdgeId e = 0; e < g_->edge_capacity(); ++e) {
    const Edge& ed = g_->edge(e);
    if (!ed.alive) continue;
    const VertexId t = p_.reversed ? ed.v : ed.u;
    const VertexId h = p_.reversed ? ed.u : ed.v;
    const NodeId x = topo_->node_of(t), y = topo_->node_of(h);
    if (x != y) out.push_back({x, y, ed.w});
  }
  for (const auto& a : arcs_.arcs) {
    if (a.w >= kInf || (level >= 0 && a.level != level)) continue;
    const NodeId x = topo_->node_of(a.tail), y = topo_->node_of(a.head);
    if (x != y) out.push_back({x, y, a.w});
  }
  return out;
}

std::string SparseEngine::dump_hopset() const {
  std::ostringstream os;
  for (const auto& a : arcs_.arcs) {
    if (a.w >= kInf) continue;
    const NodeId x = topo_->node_of(a.tail), y = topo_->node_of(a.head);
    if (x == y) continue;
    os << a.level << "," << x << "," << y << "," << a.w << "\n";
  }
  return os.str();
}

std::vector<SparsityRow> SparseEngine::sparsity() const {
  std::vector<SparsityRow> rows;
  for (const Hopset& hs : hopsets_) {
    SparsityRow r;
    r.level = hs.level().i;
    r.edges = hs.edge_count();
    r.budget = p_.delta * p_.q * log_n(g_->n());
    r.ratio = r.budget > 0 ? r.edges / r.budget : 0.0;
    r.alarm = r.ratio > kSparsityAlarm;
    rows.push_back(r);
  }
  return rows;
}

std::string SparseEngine::audit() const {
  std::string out = root_->audit();
  for (const Hopset& hs : hopsets_)
    for (int k = 0; k < hs.tree_count(); ++k) {
      std::string a = hs.tree(k).audit();
      if (!a.empty()) out += "hopset " + std::to_string(hs.level().i) + " tree " +
                             std::to_string(k) + ": " + a;
    }
  return out;
}

}  // namespace dsssp
