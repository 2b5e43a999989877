#pragma once

// Generic combination problems and the level-by-level graph builder.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planecount/error.hpp"
#include "planecount/geom.hpp"
#include "planecount/state.hpp"
#include "planecount/units.hpp"

namespace planecount {

using BigCount = boost::multiprecision::cpp_int;

/// A transition system: labels are indices into labels(), and
/// for_each_transition must report successors in increasing label order.
template <class P>
concept CombinationProblem = requires(const P& p, const State& s, std::uint32_t label) {
  { p.class_id() } -> std::same_as<ClassId>;
  { p.palette() } -> std::convertible_to<int>;
  { p.points() } -> std::same_as<const PointSet&>;
  { p.labels() } -> std::same_as<const std::vector<UnitLabel>&>;
  { p.initial() } -> std::same_as<State>;
  { p.is_target(s) } -> std::same_as<bool>;
  { p.step(s, label) } -> std::same_as<std::optional<State>>;
  p.for_each_transition(s, [](std::uint32_t, const State&) {});
};

struct Edge {
  std::uint32_t label = 0;
  std::uint32_t target = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct CombinationGraph {
  ClassId class_id = ClassId::pg;
  int n = 0;
  int palette = 0;
  std::vector<UnitLabel> labels;
  std::vector<State> nodes;               ///< node 0 is the source
  std::vector<std::uint32_t> level_begin;  ///< level k holds [level_begin[k], level_begin[k+1])
  std::vector<std::uint64_t> edge_begin;   ///< CSR offsets, size nodes + 1
  std::vector<Edge> edges;
  std::vector<std::uint8_t> target;
  std::vector<BigCount> suffix;  ///< per-node path counts to the sink; empty if not computed

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t level_count() const noexcept {
    return level_begin.empty() ? 0 : level_begin.size() - 1;
  }
  bool has_counts() const noexcept { return suffix.size() == nodes.size() && !nodes.empty(); }

  std::span<const Edge> out_edges(std::uint32_t v) const noexcept {
    return {edges.data() + edge_begin[v], edges.data() + edge_begin[v + 1]};
  }
};

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t targets = 0;
  std::vector<std::size_t> level_sizes;
};

inline GraphStats stats(const CombinationGraph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.targets = static_cast<std::size_t>(std::count(g.target.begin(), g.target.end(), 1));
  for (std::size_t k = 0; k < g.level_count(); ++k)
    s.level_sizes.push_back(g.level_begin[k + 1] - g.level_begin[k]);
  return s;
}

inline constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 27;

/// Cap from PLANECOUNT_NODE_CAP when set and numeric, else the default.
inline std::size_t default_node_cap() {
  if (const char* env = std::getenv("PLANECOUNT_NODE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultNodeCap;
}

struct BuildOptions {
  std::function<bool(const State&)> prune;  ///< successors failing this are dropped
  std::optional<std::size_t> node_cap;
  unsigned threads = 1;
  std::function<void(std::uint64_t)> on_work;  ///< called after each node expansion
};

namespace detail {

struct Successor {
  std::uint32_t label;
  State state;
};

template <CombinationProblem P>
void expand(const P& problem, const State& s, const BuildOptions& opt,
            std::vector<Successor>& out) {
  out.clear();
  problem.for_each_transition(s, [&](std::uint32_t label, const State& succ) {
    if (succ == s) return;
    if (opt.prune && !opt.prune(succ)) return;
    out.push_back({label, succ});
  });
}

}  // namespace detail

/// Breadth-first construction; nodes of each level are ordered by their
/// canonical encoding.
template <CombinationProblem P>
CombinationGraph build(const P& problem, const BuildOptions& opt = {}) {
  const PointSet& ps = problem.points();
  const int n = ps.n();
  const int palette = static_cast<int>(problem.palette());
  const std::size_t cap = opt.node_cap.value_or(default_node_cap());
  const std::size_t key_len = encoded_color_bytes(n, palette) + 2;

  CombinationGraph g;
  g.class_id = problem.class_id();
  g.n = n;
  g.palette = palette;
  g.labels = problem.labels();
  g.nodes.push_back(problem.initial());
  g.level_begin = {0, 1};
  g.edge_begin = {0};

  std::uint64_t work = 0;
  const unsigned threads = std::max(1U, opt.threads);
  std::vector<std::vector<detail::Successor>> per_node;
  std::vector<std::uint8_t> keys;
  std::vector<std::uint32_t> order, rank;

  while (g.level_begin[g.level_begin.size() - 2] < g.level_begin.back()) {
    const std::uint32_t lo = g.level_begin[g.level_begin.size() - 2];
    const std::uint32_t hi = g.level_begin.back();
    const std::size_t width = hi - lo;

    per_node.assign(width, {});
    if (threads == 1 || width < 64) {
      for (std::size_t k = 0; k < width; ++k)
        detail::expand(problem, g.nodes[lo + k], opt, per_node[k]);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (width + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t a = t * chunk, b = std::min(width, a + chunk);
        if (a >= b) break;
        pool.emplace_back([&, a, b] {
          for (std::size_t k = a; k < b; ++k)
            detail::expand(problem, g.nodes[lo + k], opt, per_node[k]);
        });
      }
      for (auto& th : pool) th.join();
    }

    std::unordered_map<State, std::uint32_t, StateHash> index;
    std::vector<State> fresh;
    const std::size_t edge_base = g.edges.size();
    for (std::size_t k = 0; k < width; ++k) {
      for (const auto& sc : per_node[k]) {
        auto [it, inserted] = index.try_emplace(sc.state, static_cast<std::uint32_t>(fresh.size()));
        if (inserted) {
          fresh.push_back(sc.state);
          if (g.nodes.size() + fresh.size() > cap) throw MemoryBudgetExceeded(cap);
        }
        g.edges.push_back({sc.label, it->second});
      }
      g.edge_begin.push_back(g.edges.size());
      per_node[k].clear();
      per_node[k].shrink_to_fit();
      ++work;
      if (opt.on_work) opt.on_work(work);
    }
    if (fresh.empty()) break;

    keys.assign(fresh.size() * key_len, 0);
    for (std::size_t i = 0; i < fresh.size(); ++i)
      encode_state(fresh[i], n, palette, keys.data() + i * key_len);
    order.resize(fresh.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::memcmp(keys.data() + a * key_len, keys.data() + b * key_len, key_len) < 0;
    });
    rank.resize(fresh.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<std::uint32_t>(r);

    for (std::size_t e = edge_base; e < g.edges.size(); ++e)
      g.edges[e].target = hi + rank[g.edges[e].target];
    for (std::uint32_t i : order) g.nodes.push_back(fresh[i]);
    g.level_begin.push_back(static_cast<std::uint32_t>(g.nodes.size()));
  }

  g.target.resize(g.nodes.size());
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    g.target[v] = problem.is_target(g.nodes[v]) ? 1 : 0;
  return g;
}

}  // namespace planecount
