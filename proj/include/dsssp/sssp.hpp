#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

// α-approximate δ-restricted SSSP: for pairs involving the root, estimates
// never undershoot, and stay within α of the truth whenever the truth is ≤ δ.
class RestrictedSssp {
 public:
  virtual ~RestrictedSssp() = default;
  virtual VertexId root() const = 0;
  virtual Weight depth() const = 0;
  virtual Weight from_root(VertexId v) const = 0;  // d̃(r, v)
  virtual Weight to_root(VertexId v) const = 0;    // d̃(v, r)
  // Called after the update was applied to the base graph. Structures driven
  // by an outer scheduler ignore it.
  virtual void on_update(const UpdateEvent& e) = 0;
  virtual std::uint64_t work() const { return 0; }
  // True when an outer scheduler feeds every update (including edges outside
  // the host); owners then poll work() after each update instead of relying
  // on on_update calls.
  virtual bool external() const { return false; }
};

struct SsspRequest {
  const DecrementalGraph* graph = nullptr;
  std::vector<VertexId> host;  // vertex-induced host subgraph G[host]
  VertexId root = 0;
  Weight depth = 1;
  // The exact subgraph the caller cares about, when narrower than G[host].
  // Factories may ignore it and run on G[host] instead: any host F with
  // view ⊆ F ⊆ G only shortens distances, which the callers tolerate.
  const GraphView* view = nullptr;
  // The caller never forwards updates (one-shot use inside a partition).
  bool one_shot = false;
};

using SsspFactory = std::function<std::shared_ptr<RestrictedSssp>(const SsspRequest&)>;

}  // namespace dsssp
