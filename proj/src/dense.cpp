#include "dsssp/dense.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsssp/oracle.hpp"

namespace dsssp {

std::int64_t chi_interval(std::int64_t tx, std::int64_t sx, std::int64_t ty, std::int64_t sy) {
  if (tx < ty) return ty - (tx + sx - 1);
  return tx - (ty + sy - 1);
}

std::int64_t chi(const SccTopo& st, NodeId x, NodeId y) {
  if (x == y) throw SameNode();
  return chi_interval(st.tau(x), st.size(x), st.tau(y), st.size(y));
}

int split_rescan_level(std::int64_t lo, std::int64_t hi) {
  if (lo > hi || hi < 1) return -1;
  for (int j = 62; j >= 0; --j) {
    const std::int64_t p = std::int64_t{1} << j;
    if (p > hi) continue;
    if ((lo + p - 1) / p * p <= hi) return j;
  }
  return -1;
}

DenseEngine::DenseEngine(const DecrementalGraph& g, const SccTopo& topo, DenseParams params)
    : g_(&g), topo_(&topo), p_(params) {
  const int n = g.n();
  eps_ = p_.dag_mode ? p_.eps : p_.eps / 2.0;
  delta_max_ = static_cast<Weight>(std::ceil((1.0 + eps_) * p_.delta + eps_ * n / p_.q));
  eta_add_ = static_cast<Weight>(std::ceil(p_.eta));
  top_j_ = n >= 3 ? static_cast<int>(std::floor(std::log2(static_cast<double>(n - 1)))) : 0;
  for (int j = 0; j <= top_j_; ++j)
    steps_.push_back(std::max<Weight>(1, static_cast<Weight>(std::ceil(std::ldexp(eps_, j) / p_.q - 1e-12))));
  scans_by_j_.assign(top_j_ + 1, 0);

  slot_of_handle_.assign(topo.handle_bound(), -1);
  for (NodeId x : topo.current_nodes()) slot_of_handle_[x] = new_slot(x);

  const int cap = g.edge_capacity();
  pair_of_edge_.assign(cap, {-1, -1});
  key_w_.assign(cap, 0);
  tree_edge_.assign(cap, 0);
  tree_owner_.assign(cap, -1);
  stamp_.assign(cap, 0);
  for (EdgeId e = 0; e < cap; ++e)
    if (g.edge(e).alive) insert_edge(e);
  initial_dijkstra();
}

int DenseEngine::new_slot(NodeId handle) {
  const int s = static_cast<int>(slots_.size());
  slots_.emplace_back();
  slots_.back().handle = handle;
  slots_.back().buckets.resize(top_j_ + 1);
  est_.push_back(kInf);
  queued_.push_back(0);
  return s;
}

std::int64_t DenseEngine::chi_slots(int x, int y) const {
  const NodeId hx = slots_[x].handle, hy = slots_[y].handle;
  return chi_interval(topo_->tau(hx), topo_->size(hx), topo_->tau(hy), topo_->size(hy));
}

int DenseEngine::bucket_for(int x, int y) const {
  const std::int64_t c = std::max<std::int64_t>(1, chi_slots(x, y));
  int j = 63 - __builtin_clzll(static_cast<unsigned long long>(c));
  return std::min(j, top_j_);
}

void DenseEngine::bucket_insert(int y, int x, Pair& p, int j) {
  auto& b = slots_[y].buckets[j];
  p.bucket = j;
  p.pos = static_cast<int>(b.size());
  b.push_back(x);
  slots_[y].cursor_value = -1;
}

void DenseEngine::bucket_remove(int y, Pair& p) {
  auto& b = slots_[y].buckets[p.bucket];
  const int last = b.back();
  b[p.pos] = last;
  slots_[y].in.find(last)->second.pos = p.pos;
  b.pop_back();
  p.bucket = p.pos = -1;
  slots_[y].cursor_value = -1;
}

bool DenseEngine::reassign(int y, int x) {
  Pair& p = slots_[y].in.find(x)->second;
  const int j = bucket_for(x, y);
  if (j == p.bucket) return false;
  bucket_remove(y, p);
  bucket_insert(y, x, p, j);
  ++counters_.bucket_moves;
  return true;
}

void DenseEngine::insert_edge(EdgeId e) {
  const int x = slot_of(tail(e)), y = slot_of(head(e));
  if (x == y) {
    pair_of_edge_[e] = {-1, -1};
    return;
  }
  auto [it, fresh] = slots_[y].in.try_emplace(x);
  Pair& p = it->second;
  if (fresh) {
    bucket_insert(y, x, p, bucket_for(x, y));
    slots_[x].out.insert(y);
    ++pair_inserts_;
  }
  const Weight w = g_->edge(e).w;
  p.q.emplace(w, e);
  key_w_[e] = w;
  pair_of_edge_[e] = {x, y};
}

void DenseEngine::remove_edge(EdgeId e) {
  auto [x, y] = pair_of_edge_[e];
  if (x < 0) return;
  auto it = slots_[y].in.find(x);
  it->second.q.erase({key_w_[e], e});
  if (it->second.q.empty()) {
    bucket_remove(y, it->second);
    slots_[y].in.erase(it);
    slots_[x].out.erase(y);
  }
  pair_of_edge_[e] = {-1, -1};
}

void DenseEngine::rekey(EdgeId e) {
  if (tree_edge_[e]) {
    // Keep the tree edge registered with the slot that now holds its tail.
    const int ns = slot_of(tail(e));
    const int os = tree_owner_[e];
    if (os != ns) {
      slots_[os].children.erase(e);
      slots_[ns].children.insert(e);
      tree_owner_[e] = ns;
    }
  }
  if (!g_->edge(e).alive) {
    remove_edge(e);
    return;
  }
  const std::pair<int, int> now{slot_of(tail(e)), slot_of(head(e))};
  if (now == pair_of_edge_[e] || (now.first == now.second && pair_of_edge_[e].first < 0)) return;
  remove_edge(e);
  insert_edge(e);
  ++counters_.pair_moves;
}

void DenseEngine::initial_dijkstra() {
  const int rs = slot_of(p_.root);
  std::vector<EdgeId> via(slots_.size(), -1);
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  est_[rs] = 0;
  pq.emplace(0, rs);
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != est_[x]) continue;
    for (int y : slots_[x].out) {
      const Pair& pr = slots_[y].in.find(x)->second;
      const Weight nd = d + pr.q.begin()->first;
      if (nd <= delta_max_ && nd < est_[y]) {
        est_[y] = nd;
        via[y] = pr.q.begin()->second;
        pq.emplace(nd, y);
      }
    }
  }
  for (int y = 0; y < static_cast<int>(slots_.size()); ++y) {
    if (via[y] < 0) continue;
    slots_[y].parent = via[y];
    tree_edge_[via[y]] = 1;
    tree_owner_[via[y]] = slot_of(tail(via[y]));
    slots_[tree_owner_[via[y]]].children.insert(via[y]);
  }
}

bool DenseEngine::cert_valid(int y) const {
  const EdgeId pe = slots_[y].parent;
  if (pe < 0 || !g_->edge(pe).alive) return false;
  if (slot_of(head(pe)) != y) return false;
  const int x = slot_of(tail(pe));
  if (x == y || est_[x] >= kInf) return false;
  return est_[x] + g_->edge(pe).w <= est_[y];
}

void DenseEngine::detach(int y) {
  const EdgeId pe = slots_[y].parent;
  if (pe < 0) return;
  slots_[tree_owner_[pe]].children.erase(pe);
  tree_edge_[pe] = 0;
  slots_[y].parent = -1;
}

void DenseEngine::enqueue(int y) {
  if (queued_[y] || est_[y] >= kInf || y == slot_of(p_.root)) return;
  queued_[y] = 1;
  queue_.emplace(est_[y], y);
}

void DenseEngine::drop_children(int y) {
  std::vector<EdgeId> kids(slots_[y].children.begin(), slots_[y].children.end());
  slots_[y].children.clear();
  for (EdgeId e : kids) {
    tree_edge_[e] = 0;
    const int z = slot_of(head(e));
    if (slots_[z].parent == e) slots_[z].parent = -1;
    enqueue(z);
  }
}

int DenseEngine::scan_level(Weight value) const {
  for (int j = top_j_; j >= 0; --j)
    if (value % steps_[j] == 0) return j;
  return -1;
}

bool DenseEngine::try_attach(int y) {
  Slot& s = slots_[y];
  const Weight v = est_[y];
  const int j = scan_level(v);
  if (s.cursor_value != v) {
    s.cursor_value = v;
    s.cursor_bucket = 0;
    s.cursor_pos = 0;
  }
  for (int b = s.cursor_bucket; b <= j; ++b) {
    const auto& list = s.buckets[b];
    for (std::size_t i = (b == s.cursor_bucket ? s.cursor_pos : 0); i < list.size(); ++i) {
      const int x = list[i];
      ++counters_.scans;
      ++scans_by_j_[b];
      if (est_[x] >= kInf) continue;
      const Pair& pr = s.in.find(x)->second;
      if (est_[x] + pr.q.begin()->first <= v) {
        const EdgeId e = pr.q.begin()->second;
        s.parent = e;
        s.cursor_bucket = b;
        s.cursor_pos = i;
        tree_edge_[e] = 1;
        tree_owner_[e] = x;
        slots_[x].children.insert(e);
        return true;
      }
    }
  }
  // Everything eligible at this value was rejected; it stays rejected.
  s.cursor_bucket = j + 1;
  s.cursor_pos = 0;
  return false;
}

Weight DenseEngine::next_value(int y) {
  const Weight v = est_[y];
  if (!p_.accelerated) return v + 1;
  // First value above v at which some pair would pass the scan, given the
  // current estimates: a pair in bucket b is eligible at u iff scan_level(u) ≥ b.
  Weight best = kInf;
  const Slot& s = slots_[y];
  for (int b = 0; b <= top_j_; ++b)
    for (int x : s.buckets[b]) {
      ++counters_.scans;
      if (est_[x] >= kInf) continue;
      const Weight lo = std::max(v + 1, est_[x] + s.in.find(x)->second.q.begin()->first);
      for (int jj = b; jj <= top_j_; ++jj) {
        const Weight st = steps_[jj];
        best = std::min(best, (lo + st - 1) / st * st);
      }
    }
  return best;
}

void DenseEngine::repair() {
  const int rs = slot_of(p_.root);
  while (!queue_.empty()) {
    auto [v, y] = queue_.top();
    queue_.pop();
    queued_[y] = 0;
    if (y == rs || est_[y] >= kInf || v != est_[y]) continue;
    ++counters_.repairs;
    if (cert_valid(y)) continue;
    detach(y);
    if (try_attach(y)) continue;
    ++counters_.increments;
    drop_children(y);
    const Weight nv = next_value(y);
    est_[y] = nv > delta_max_ ? kInf : nv;
    enqueue(y);
  }
}

void DenseEngine::apply_splits(const std::vector<SplitEvent>& splits) {
  if (splits.empty()) return;
  if (static_cast<NodeId>(slot_of_handle_.size()) < topo_->handle_bound())
    slot_of_handle_.resize(topo_->handle_bound(), -1);
  std::unordered_map<NodeId, int> root_size;
  std::vector<std::pair<NodeId, int>> kids;  // child handle, size of its batch ancestor
  std::vector<int> old_slots;
  std::vector<VertexId> marked;
  for (const auto& ev : splits) {
    ++counters_.splits;
    const int s = slot_of_handle_[ev.parent];
    int total = 0;
    std::size_t inh = 0;
    for (std::size_t i = 0; i < ev.children.size(); ++i) {
      total += ev.children[i].size;
      if (ev.children[i].size > ev.children[inh].size) inh = i;
    }
    auto it = root_size.find(ev.parent);
    const int pr = it != root_size.end() ? it->second : total;
    old_slots.push_back(s);
    for (std::size_t i = 0; i < ev.children.size(); ++i) {
      const NodeId c = ev.children[i].node;
      root_size[c] = pr;
      kids.emplace_back(c, pr);
      if (i == inh) {
        // The largest child inherits the slot with all its pair queues.
        slot_of_handle_[c] = s;
        slots_[s].handle = c;
      } else {
        const int ns = new_slot(c);
        slot_of_handle_[c] = ns;
        est_[ns] = est_[s];
        for (VertexId v : topo_->members(c)) marked.push_back(v);
      }
    }
  }

  // Re-home every edge touching a vertex that left its inherited slot.
  ++stamp_now_;
  for (VertexId v : marked) {
    for (EdgeId e : g_->out_edges(v))
      if (stamp_[e] != stamp_now_) stamp_[e] = stamp_now_, rekey(e);
    for (EdgeId e : g_->in_edges(v))
      if (stamp_[e] != stamp_now_) stamp_[e] = stamp_now_, rekey(e);
  }

  // The certificate of a split node follows the child holding its head.
  std::sort(old_slots.begin(), old_slots.end());
  old_slots.erase(std::unique(old_slots.begin(), old_slots.end()), old_slots.end());
  for (int s : old_slots) {
    const EdgeId pe = slots_[s].parent;
    if (pe < 0) continue;
    const int hs = slot_of(head(pe));
    if (hs != s) {
      slots_[hs].parent = pe;
      slots_[s].parent = -1;
    }
  }

  const int rs = slot_of(p_.root);
  for (auto [c, pr] : kids) {
    if (!topo_->alive(c)) continue;
    const int s = slot_of_handle_[c];
    if (s == rs) {
      detach(s);
    } else if (!cert_valid(s)) {
      detach(s);
      enqueue(s);
    }
    // Pairs at s whose χ may have crossed a power of two.
    const int j = split_rescan_level(topo_->size(c), pr - 1);
    if (j < 0) continue;
    std::vector<int> sources;
    for (int b = 0; b <= std::min(j + 1, top_j_); ++b)
      sources.insert(sources.end(), slots_[s].buckets[b].begin(), slots_[s].buckets[b].end());
    for (int x : sources) {
      ++counters_.bucket_rescans;
      reassign(s, x);
    }
    std::vector<int> targets(slots_[s].out.begin(), slots_[s].out.end());
    for (int y : targets)
      if (slots_[y].in.find(s)->second.bucket <= j) {
        ++counters_.bucket_rescans;
        reassign(y, s);
      }
  }
}

void DenseEngine::update(const UpdateEvent& e, const std::vector<SplitEvent>& splits) {
  apply_splits(splits);
  if (e.edge >= 0) {
    remove_edge(e.edge);
    if (g_->edge(e.edge).alive) insert_edge(e.edge);
    if (tree_edge_[e.edge]) {
      const int y = slot_of(head(e.edge));
      if (slots_[y].parent == e.edge && !cert_valid(y)) {
        detach(y);
        enqueue(y);
      }
    }
  }
  repair();
}

Weight DenseEngine::estimate(VertexId v) const {
  const Weight d = est_[slot_of(v)];
  return d >= kInf ? kInf : d + eta_add_;
}

std::vector<Weight> DenseEngine::estimates() const {
  std::vector<Weight> out(g_->n());
  for (VertexId v = 0; v < g_->n(); ++v) out[v] = estimate(v);
  return out;
}

std::vector<NodeId> DenseEngine::node_path(VertexId v) const {
  int y = slot_of(v);
  if (est_[y] >= kInf) throw NoPath();
  const int rs = slot_of(p_.root);
  std::vector<NodeId> out{slots_[y].handle};
  while (y != rs) {
    const EdgeId pe = slots_[y].parent;
    if (pe < 0) throw NoPath();
    y = slot_of(tail(pe));
    out.push_back(slots_[y].handle);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<VertexId> DenseEngine::path(VertexId v) const {
  if (v == p_.root) return {};
  int y = slot_of(v);
  if (est_[y] >= kInf) throw NoPath();
  const int rs = slot_of(p_.root);
  std::vector<EdgeId> tree;
  while (y != rs) {
    const EdgeId pe = slots_[y].parent;
    if (pe < 0) throw NoPath();
    tree.push_back(pe);
    y = slot_of(tail(pe));
  }
  std::reverse(tree.begin(), tree.end());
  // Inside a node, any shortest path of the pruned view will do.
  auto inside = [&](VertexId a, VertexId b) {
    if (a == b) return std::vector<VertexId>{a};
    GraphView h = topo_->view().induced(topo_->members(topo_->node_of(a)));
    if (p_.reversed) h = h.reverse();
    auto seg = dijkstra_path(h, a, b);
    if (seg.empty()) throw NoPath();
    return seg;
  };
  std::vector<VertexId> out;
  VertexId cur = p_.root;
  auto append = [&](const std::vector<VertexId>& seg) {
    for (VertexId x : seg)
      if (out.empty() || out.back() != x) out.push_back(x);
  };
  for (EdgeId e : tree) {
    append(inside(cur, tail(e)));
    cur = head(e);
    out.push_back(cur);
  }
  append(inside(cur, v));
  if (p_.reversed) std::reverse(out.begin(), out.end());
  return out;
}

double DenseEngine::work_budget_ratio() const {
  double worst = 0.0;
  const double resets = static_cast<double>(counters_.bucket_moves + counters_.bucket_rescans +
                                            counters_.pair_moves + pair_inserts_ + counters_.splits);
  for (int j = 0; j <= top_j_; ++j) {
    const double cap = std::ldexp(1.0, j + 2);
    const double values = static_cast<double>(delta_max_) / static_cast<double>(steps_[j]) + 1.0;
    const double budget = 4.0 * cap * (static_cast<double>(slots_.size()) * values + resets) +
                          4.0 * static_cast<double>(counters_.repairs);
    worst = std::max(worst, static_cast<double>(scans_by_j_[j]) / budget);
  }
  return worst;
}

std::string DenseEngine::audit() const {
  std::ostringstream os;
  for (int y = 0; y < static_cast<int>(slots_.size()); ++y) {
    const Slot& s = slots_[y];
    if (!topo_->alive(s.handle) || slot_of_handle_[s.handle] != y) {
      os << "slot " << y << " lost its node; ";
      continue;
    }
    std::size_t in_buckets = 0;
    for (int b = 0; b <= top_j_; ++b) in_buckets += s.buckets[b].size();
    if (in_buckets != s.in.size()) os << "slot " << y << " buckets do not partition its in-pairs; ";
    for (const auto& [x, pr] : s.in) {
      if (pr.q.empty()) os << "empty pair queue; ";
      if (pr.bucket < 0 || s.buckets[pr.bucket][pr.pos] != x) os << "bucket pointer broken; ";
      for (const auto& [w, e] : pr.q)
        if (!g_->edge(e).alive || g_->edge(e).w != w || pair_of_edge_[e] != std::make_pair(x, y))
          os << "stale edge " << e << " in pair queue; ";
      const std::int64_t c = chi_slots(x, y);
      const int js = std::min(63 - __builtin_clzll(static_cast<unsigned long long>(std::max<std::int64_t>(1, c))), top_j_);
      if (pr.bucket != js && pr.bucket != js - 1)
        os << "pair (" << x << "," << y << ") with chi " << c << " sits in bucket " << pr.bucket << "; ";
      if (!slots_[x].out.count(y)) os << "missing out-pointer; ";
    }
  }
  for (EdgeId e = 0; e < g_->edge_capacity(); ++e) {
    if (!g_->edge(e).alive) continue;
    const int x = slot_of(tail(e)), y = slot_of(head(e));
    if (x != y && pair_of_edge_[e] != std::make_pair(x, y)) os << "edge " << e << " not in its pair; ";
  }
  const int rs = slot_of(p_.root);
  if (est_[rs] != 0) os << "root estimate is " << est_[rs] << "; ";
  for (int y = 0; y < static_cast<int>(slots_.size()); ++y)
    if (y != rs && est_[y] < kInf && topo_->alive(slots_[y].handle) && !cert_valid(y))
      os << "slot " << y << " has no certificate; ";
  return os.str();
}

}  // namespace dsssp
