#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

class IncompatibleAlgo : public std::invalid_argument {
 public:
  explicit IncompatibleAlgo(const std::string& what) : std::invalid_argument(what) {}
};

class VerificationFailed : public std::runtime_error {
 public:
  explicit VerificationFailed(const std::string& what) : std::runtime_error(what) {}
};

struct GraphSpec {
  std::string family = "random";  // random | grid | dag-layered
  int n = 64;
  double density = 0.1;
  Weight max_w = 16;
  int rows = 0, cols = 0;       // grid
  int layers = 0, width = 0;    // dag-layered
};

struct TraceSpec {
  std::string kind = "full";    // full | mix
  double increase_fraction = 0.25;  // mix: share of weight doublings
};

struct Workload {
  int n = 0;
  EdgeList edges;
  std::vector<UpdateEvent> trace;
};

// Fully determined by (specs, seed). Throws SpecError.
Workload generate(const GraphSpec& gs, const TraceSpec& ts, std::uint64_t seed);
bool is_acyclic(const DecrementalGraph& g);

enum class Algo { Recompute, Es, Dag, Dense, Sparse, Auto };
Algo parse_algo(const std::string& s);  // throws SpecError
const char* algo_name(Algo a);
// Dense when m > n^1.5, else sparse.
Algo resolve_auto(int n, int m);

struct VerifyMode {
  enum Kind { None, Sampled, Full } kind = None;
  int k = 0;
};
VerifyMode parse_verify(const std::string& s);  // none | sampled:k | full

struct RunOptions {
  Algo algo = Algo::Auto;
  VertexId root = 0;
  double eps = 0.5;
  Weight delta = 0;  // 0 for n·W
  double c = 1.0;
  int bundle = 0;    // 0 for the default copy count
  int gamma = 4;
  VerifyMode verify;
  std::uint64_t seed = 1;
  int workers = 1;
  double max_violation_rate = 0.0;  // tolerated share of violated checks
};

struct RunRow {
  std::int64_t stage = 0;
  VertexId vertex = -1;   // -1 on rows without verification
  Weight exact = kInf;
  Weight estimate = kInf;
  std::string verdict;    // ok | out_of_range | lower | upper | none
  std::uint64_t scans = 0;
  std::uint64_t repairs = 0;
  std::uint64_t splits = 0;
  double ms = 0.0;
};

struct RunSummary {
  std::string algo;
  std::int64_t stages = 0;
  std::uint64_t checked = 0;        // in-range checks
  std::uint64_t lower_violations = 0;
  std::uint64_t upper_violations = 0;
  std::uint64_t scans = 0;
  double total_ms = 0.0;
  double mult = 1.0;                // contract checked
  Weight lo = 0, hi = kInf;
  // Algorithm-specific figures (levels, dispatch counts, engine parts).
  std::vector<std::pair<std::string, double>> metrics;
  bool failed = false;              // violation rate above the tolerance
  std::string failure;
  double violation_rate() const {
    const std::uint64_t bad = lower_violations + upper_violations;
    return checked + lower_violations == 0
               ? 0.0
               : static_cast<double>(bad) / static_cast<double>(checked + lower_violations);
  }
};

// Replays trace on g from stage 0 (before any update). Rows go to sink in
// order. Throws IncompatibleAlgo or SpecError before any row.
RunSummary run(DecrementalGraph g, const std::vector<UpdateEvent>& trace, const RunOptions& opt,
               const std::function<void(const RunRow&)>& sink);
// Throws VerificationFailed when the run exceeded its tolerance.
void enforce(const RunSummary& s);

extern const char* const kCsvHeader;
std::string csv_row(const RunRow& r);

}  // namespace dsssp
