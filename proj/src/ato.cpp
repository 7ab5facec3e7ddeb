#include "dsssp/ato.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dsssp/separator.hpp"
#include "json.hpp"

namespace dsssp {

Ato::Ato(const DecrementalGraph& g, AtoParams params, SsspFactory factory, Rng rng)
    : g_(&g),
      n_(g.n()),
      params_(params),
      eta_(params.singleton ? 0.0 : 2.0 * params.alpha * params.delta),
      factory_(std::move(factory)),
      rng_(std::move(rng)),
      f_(std::make_shared<EdgeMask>(g.edge_capacity(), 0)),
      gprime_(GraphView(g).without(f_)) {
  participation_.assign(n_, 0);
  by_vertex_.resize(n_);
  if (params_.singleton) {
    // G' keeps no edge, so any order is a GTO of it; read τ off a GTO of G
    // so that forward edges of G stay forward.
    std::fill(f_->begin(), f_->end(), 1);
    GraphView all(g);
    std::vector<std::vector<VertexId>> groups;
    for (auto& comp : ordered_sccs(all, all.vertices()))
      for (VertexId v : comp) groups.push_back({v});
    topo_ = SccTopo(gprime_, std::move(groups));
    grow_node_tables();
    for (NodeId x : topo_.current_nodes()) center_vertex_[x] = topo_.members(x)[0];
    return;
  }
  init();
}

void Ato::grow_node_tables() {
  const std::size_t hb = static_cast<std::size_t>(topo_.handle_bound());
  if (center_vertex_.size() < hb) {
    center_vertex_.resize(hb, -1);
    center_rec_.resize(hb, -1);
    dirty_mark_.resize(hb, 0);
  }
}

void Ato::add_to_f(const std::vector<EdgeId>& edges, std::vector<EdgeId>& fresh) {
  for (EdgeId e : edges) {
    if ((*f_)[e]) continue;
    (*f_)[e] = 1;
    ++stats_.separator_edges;
    if (g_->edge(e).alive) fresh.push_back(e);
  }
}

void Ato::init() {
  const double zeta = log_scaled(params_.c + 2.0, n_);
  const double delta = params_.delta;
  const int levels = delta <= 1.0 ? 0 : static_cast<int>(std::ceil(std::log2(delta)));
  GraphView base(*g_);
  std::vector<VertexId> all = base.vertices();
  std::vector<EdgeId> fresh;
  for (int i = 0; i <= levels; ++i) {
    const double scale = std::ldexp(1.0, -i);
    const double cap = n_ * scale;
    for (auto& x : ordered_sccs(gprime_, all)) {
      if (x.size() < 2 || static_cast<double>(x.size()) > cap) continue;
      PartitionResult res = partition(base.induced(x), delta * scale, zeta, factory_, rng_);
      ++stats_.partition_calls;
      if (res.failed) throw AtoInitFailed();
      add_to_f(res.e_sep, fresh);
    }
  }
  topo_ = SccTopo(gprime_);
  grow_node_tables();
  for (NodeId x : topo_.current_nodes()) {
    assign_center(x);
    mark_dirty(x);
  }
  if (params_.resolve_after_init) {
    std::vector<SplitEvent> ignored;
    resolve(ignored);
  } else {
    for (NodeId x : dirty_) dirty_mark_[x] = 0;
    dirty_.clear();
  }
}

void Ato::assign_center(NodeId x) {
  const auto& mem = topo_.members(x);
  VertexId s = mem[rng_.below(mem.size())];
  center_vertex_[x] = s;
  center_rec_[x] = -1;
  if (mem.size() < 2) return;
  SsspRequest req;
  req.graph = g_;
  req.host = mem;
  req.root = s;
  const double reach = params_.scaled_center_depth
                           ? params_.delta * static_cast<double>(mem.size()) / n_
                           : params_.delta;
  req.depth = std::max<Weight>(1, static_cast<Weight>(std::ceil(reach)));
  Center c;
  c.s = s;
  c.a = factory_(req);
  c.seen_work = c.a->work();
  c.alive = true;
  const int id = static_cast<int>(centers_.size());
  centers_.push_back(std::move(c));
  if (centers_[id].a->external())
    external_.push_back(id);
  else
    for (VertexId v : mem) by_vertex_[v].push_back(id);
  center_rec_[x] = id;
  ++stats_.center_builds;
}

void Ato::retire(int rec) {
  centers_[rec].alive = false;
  centers_[rec].a.reset();
  ++stats_.center_retired;
}

void Ato::mark_dirty(NodeId x) {
  if (dirty_mark_[x]) return;
  dirty_mark_[x] = 1;
  dirty_.push_back(x);
}

void Ato::process_splits(const std::vector<SplitEvent>& splits) {
  grow_node_tables();
  for (const auto& ev : splits) {
    ++stats_.splits;
    const VertexId s = center_vertex_[ev.parent];
    const int rec = center_rec_[ev.parent];
    for (const auto& ch : ev.children) {
      const auto& mem = topo_.members(ch.node);
      if (std::binary_search(mem.begin(), mem.end(), s)) {
        // The center stays put; its structure keeps running on the old host.
        center_vertex_[ch.node] = s;
        center_rec_[ch.node] = rec;
        if (ch.size == 1 && rec >= 0) {
          retire(rec);
          center_rec_[ch.node] = -1;
        }
      } else {
        assign_center(ch.node);
      }
      mark_dirty(ch.node);
    }
  }
}

bool Ato::find_violation(NodeId x, VertexId& t, bool& backward_far) {
  if (!topo_.alive(x) || topo_.size(x) < 2) return false;
  const int rec = center_rec_[x];
  if (rec < 0) return false;
  const RestrictedSssp& a = *centers_[rec].a;
  const double thr = params_.delta * topo_.size(x) / n_;
  for (VertexId v : topo_.members(x)) {
    ++stats_.vertices_checked;
    if (static_cast<double>(a.to_root(v)) > thr) {
      t = v;
      backward_far = true;
      return true;
    }
    if (static_cast<double>(a.from_root(v)) > thr) {
      t = v;
      backward_far = false;
      return true;
    }
  }
  return false;
}

void Ato::resolve(std::vector<SplitEvent>& out) {
  const double zeta = log_scaled(params_.c + 2.0, n_);
  while (!dirty_.empty()) {
    const NodeId x = dirty_.back();
    dirty_.pop_back();
    dirty_mark_[x] = 0;
    VertexId t = -1;
    bool backward_far = false;
    if (!find_violation(x, t, backward_far)) continue;
    ++stats_.loop_iterations;
    const std::vector<VertexId> members = topo_.members(x);
    const double thr = params_.delta * static_cast<double>(members.size()) / n_;
    GraphView gx = gprime_.induced(members);
    // The center lies beyond thr/alpha from t, so the ball excludes it.
    SeparatorResult sep = backward_far
                              ? out_separator(t, gx, thr / params_.alpha, zeta, rng_)
                              : out_separator(t, gx.reverse(), thr / params_.alpha, zeta, rng_);
    if (sep.failed) throw AtoUpdateFailed("ato: separator draw failed");
    for (VertexId v : sep.v_sep) ++participation_[v];
    PartitionResult part = partition(gprime_.induced(sep.v_sep), thr / 4.0, zeta, factory_, rng_);
    ++stats_.partition_calls;
    if (part.failed) throw AtoUpdateFailed("ato: partition failed");
    std::vector<EdgeId> fresh;
    add_to_f(sep.e_sep, fresh);
    add_to_f(part.e_sep, fresh);
    auto splits = topo_.apply_deletions(fresh);
    if (topo_.alive(x)) throw AtoUpdateFailed("ato: separator left the node intact");
    process_splits(splits);
    out.insert(out.end(), splits.begin(), splits.end());
  }
}

std::vector<SplitEvent> Ato::handle_update(const UpdateEvent& e) {
  std::vector<SplitEvent> out;
  if (e.edge < 0 || params_.singleton) return out;
  const Edge& ed = g_->edge(e.edge);
  auto& lst = by_vertex_[ed.u];
  std::size_t keep = 0;
  for (int id : lst) {
    Center& c = centers_[id];
    if (!c.alive) continue;
    lst[keep++] = id;
    c.a->on_update(e);
    const std::uint64_t w = c.a->work();
    // Structures that report no work are rechecked on every touch.
    if (w != c.seen_work || w == 0) {
      c.seen_work = w;
      mark_dirty(topo_.node_of(c.s));
    }
  }
  lst.resize(keep);
  keep = 0;
  for (int id : external_) {
    Center& c = centers_[id];
    if (!c.alive) continue;
    external_[keep++] = id;
    const std::uint64_t w = c.a->work();
    if (w != c.seen_work) {
      c.seen_work = w;
      mark_dirty(topo_.node_of(c.s));
    }
  }
  external_.resize(keep);
  if (!ed.alive && !(*f_)[e.edge]) {
    out = topo_.apply_deletions({e.edge});
    process_splits(out);
  }
  resolve(out);
  return out;
}

std::vector<EdgeId> Ato::removed_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < static_cast<EdgeId>(f_->size()); ++e)
    if ((*f_)[e]) out.push_back(e);
  return out;
}

std::string Ato::dump_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["version"] = g_->version();
  j["eta_diam"] = eta_;
  auto nodes = nlohmann::json::array();
  std::vector<NodeId> cur = topo_.current_nodes();
  std::sort(cur.begin(), cur.end(),
            [&](NodeId a, NodeId b) { return topo_.tau(a) < topo_.tau(b); });
  for (NodeId x : cur) nodes.push_back({{"tau", topo_.tau(x)}, {"members", topo_.members(x)}});
  j["nodes"] = std::move(nodes);
  auto f = nlohmann::json::array();
  for (EdgeId e : removed_edges()) f.push_back({g_->edge(e).u, g_->edge(e).v});
  j["F"] = std::move(f);
  return j.dump();
}

namespace {

template <class Term>
std::int64_t path_sum(const SccTopo& st, const DecrementalGraph& g,
                      const std::vector<VertexId>& path, Term term) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    EdgeId e = g.find_edge(path[i], path[i + 1]);
    if (e < 0 || !g.edge(e).alive) throw BrokenPath();
    sum += term(static_cast<std::int64_t>(st.tau(st.node_of(path[i]))),
                static_cast<std::int64_t>(st.tau(st.node_of(path[i + 1]))));
  }
  return sum;
}

}  // namespace

std::int64_t quality_T(const SccTopo& st, const DecrementalGraph& g,
                       const std::vector<VertexId>& path) {
  return path_sum(st, g, path, [](std::int64_t a, std::int64_t b) { return std::llabs(a - b); });
}

std::int64_t backward_T(const SccTopo& st, const DecrementalGraph& g,
                        const std::vector<VertexId>& path) {
  return path_sum(st, g, path,
                  [](std::int64_t a, std::int64_t b) { return std::max<std::int64_t>(0, a - b); });
}

AtoBundle::AtoBundle(const DecrementalGraph& g, AtoParams params, int copies,
                     SsspFactory factory, const Rng& rng) {
  for (int i = 0; i < copies; ++i)
    copies_.push_back(std::make_unique<Ato>(g, params, factory, rng.fork(static_cast<std::uint64_t>(i))));
}

std::vector<std::vector<SplitEvent>> AtoBundle::handle_update(const UpdateEvent& e) {
  std::vector<std::vector<SplitEvent>> out(copies_.size());
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    try {
      out[i] = copies_[i]->handle_update(e);
    } catch (const AtoUpdateFailed& ex) {
      throw AtoUpdateFailed(ex.what(), static_cast<int>(i));
    }
  }
  return out;
}

int AtoBundle::default_copies(double c, int n) {
  return std::max(1, static_cast<int>(std::ceil(40.0 * c * std::max(1.0, std::log(std::max(n, 1))))));
}

}  // namespace dsssp
