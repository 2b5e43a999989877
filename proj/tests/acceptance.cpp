// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "planecount/classes.hpp"
#include "planecount/cli.hpp"
#include "planecount/epm.hpp"
#include "planecount/framework.hpp"
#include "planecount/generate.hpp"
#include "planecount/oracle.hpp"
#include "planecount/pathops.hpp"
#include "planecount/patterns.hpp"

using namespace planecount;

namespace {

constexpr int kSetsPerSize = 20;
constexpr int kMinN = 3;
constexpr int kMaxN = 8;
constexpr Coord kRange = 1000;
constexpr double kGrowthTol = 1e-3;
constexpr int kGrowthLength = 60;
constexpr int kConvexMax = 14;
constexpr int kReplayMax = 7;
constexpr int kPolyDelayN = 12;

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s [%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::uint64_t seed_for(int n, int i) { return 7919ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i); }

struct Sample {
  int n;
  std::uint64_t seed;
  PointSet ps;
};

std::vector<Sample> random_samples() {
  std::vector<Sample> out;
  for (int n = kMinN; n <= kMaxN; ++n)
    for (int i = 0; i < kSetsPerSize; ++i)
      out.push_back({n, seed_for(n, i), generate_point_set(n, GenMode::Random, seed_for(n, i), kRange)});
  return out;
}

std::vector<Combination> main_enumerate(const CombinationGraph& g, const PointSet& ps) {
  std::vector<Combination> got;
  enumerate(prune_dead_ends(g), ps, [&](const Combination& c) {
    got.push_back(c);
    return true;
  });
  std::sort(got.begin(), got.end());
  return got;
}

BigCount catalan(int m) {
  BigCount c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << v;
  return s.str();
}

double palette_bound(ClassId cls) { return static_cast<double>(class_palette(cls)); }

// Node-count records for criterion 4: per class, per n, the largest graph seen.
std::map<ClassId, std::map<int, std::size_t>> max_nodes;
std::size_t bound_violations = 0;
std::string first_bound_violation;

void record_nodes(ClassId cls, int n, std::size_t nodes) {
  auto& slot = max_nodes[cls][n];
  slot = std::max(slot, nodes);
  const double bound = std::pow(palette_bound(cls), n) * n + 1;
  if (static_cast<double>(nodes) > bound) {
    if (bound_violations++ == 0)
      first_bound_violation = std::string(class_name(cls)) + " n=" + std::to_string(n) + " nodes=" + std::to_string(nodes);
  }
}

// ---------------------------------------------------------------------------

void oracle_equality(const std::vector<Sample>& samples) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const Sample& s : samples)
    for (ClassId cls : kAllClasses) {
      if (cls == ClassId::pm && s.n % 2) continue;
      CombinationGraph g = build_graph(cls, s.ps);
      record_nodes(cls, s.n, g.node_count());
      const BigCount total = count_paths(g);
      const auto expected = oracle::brute_enumerate(cls, s.ps);
      const auto got = main_enumerate(g, s.ps);
      ++checked;
      if (total != BigCount(expected.size()) || got != expected) {
        if (bad++ == 0) {
          std::ostringstream m;
          m << class_name(cls) << " n=" << s.n << " seed=" << s.seed << " main=" << total << " oracle=" << expected.size();
          first = m.str();
        }
      }
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("1", bad == 0, "oracle equality",
         std::to_string(checked) + " (class, set) pairs, " + std::to_string(bad) + " mismatches" +
             (first.empty() ? "" : " (first: " + first + ")") + ", " + fmt(secs, 1) + " s");
}

void growth_constants() {
  const std::vector<std::pair<ClassId, double>> want{{ClassId::pg, 2.83929}, {ClassId::st, 7.04313}, {ClassId::sc, 5.61804}};
  bool ok = true;
  std::string detail;
  for (auto [cls, target] : want) {
    const double got = static_cast<double>(growth_estimate(cls, kGrowthLength));
    const bool hit = std::abs(got - target) <= kGrowthTol;
    ok = ok && hit;
    detail += std::string(class_name(cls)) + "=" + fmt(got) + " (want " + fmt(target, 5) + ") ";
  }
  report("2", ok, "growth constants at n=60", detail + "tol " + fmt(kGrowthTol, 4));
}

void convex_closed_forms() {
  std::size_t bad = 0;
  std::string first;
  auto check = [&](ClassId cls, const PointSet& ps, const BigCount& want) {
    CombinationGraph g = build_graph(cls, ps);
    record_nodes(cls, ps.n(), g.node_count());
    const BigCount got = count_paths(g);
    if (got != want && bad++ == 0) {
      std::ostringstream m;
      m << class_name(cls) << " n=" << ps.n() << " got " << got << " want " << want;
      first = m.str();
    }
  };
  for (int n = 3; n <= kConvexMax; ++n) {
    const PointSet ps = generate_point_set(n, GenMode::Convex, 31 + static_cast<std::uint64_t>(n), 1'000'000);
    check(ClassId::tr, ps, catalan(n - 2));
    check(ClassId::sc, ps, 1);
    if (n % 2 == 0) check(ClassId::pm, ps, catalan(n / 2));
  }
  report("3", bad == 0, "convex closed forms up to n=14",
         "tr = Catalan(n-2), pm = Catalan(n/2), sc = 1; " + std::to_string(bad) + " mismatches" +
             (first.empty() ? "" : " (first: " + first + ")"));
}

// exp of the least-squares slope of log(nodes / divide_by_n ? n : 1) against n
double fitted_ratio(const std::map<int, std::size_t>& m, bool divide_by_n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [n, nodes] : m) {
    const double x = n, y = std::log(static_cast<double>(nodes) / (divide_by_n ? n : 1));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(m.size());
  return std::exp((k * sxy - sx * sy) / (k * sxx - sx * sx));
}

void size_bounds() {
  // The envelope is c^n * n, so the asserted ratio is fitted to nodes / n.
  bool ok = bound_violations == 0;
  std::string detail = std::to_string(bound_violations) + " bound violations" +
                       (first_bound_violation.empty() ? "" : " (first: " + first_bound_violation + ")") +
                       "; fitted ratio of nodes/n (raw nodes) vs palette:";
  for (ClassId cls : kAllClasses) {
    auto m = max_nodes[cls];
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    if (m.size() < 2) continue;
    const double ratio = fitted_ratio(m, true);
    const bool below = ratio < palette_bound(cls);
    ok = ok && below;
    detail += std::string(" ") + class_name(cls) + "=" + fmt(ratio, 3) + " (" + fmt(fitted_ratio(m, false), 3) + ")" +
              (below ? "<" : ">=") + fmt(palette_bound(cls), 0);
  }
  report("4", ok, "node-count bounds", detail);
}

void pruning_and_invariants(const std::vector<Sample>& samples) {
  std::size_t sets = 0, count_bad = 0, size_bad = 0, saved = 0, total = 0;
  for (const Sample& s : samples)
    for (ClassId cls : {ClassId::st, ClassId::sc}) {
      CombinationGraph plain = build_graph(cls, s.ps);
      BuildOptions opt;
      opt.prune = prune_filter(cls, s.ps);
      CombinationGraph pruned = build_graph(cls, s.ps, opt);
      ++sets;
      if (count_paths(plain) != count_paths(pruned)) ++count_bad;
      if (pruned.node_count() > plain.node_count()) ++size_bad;
      total += plain.node_count();
      saved += plain.node_count() - std::min(plain.node_count(), pruned.node_count());
    }
  report("5a", count_bad == 0 && size_bad == 0, "pruning soundness (st, sc)",
         std::to_string(sets) + " graphs, " + std::to_string(count_bad) + " count changes, " +
             std::to_string(size_bad) + " size increases, " + std::to_string(saved) + " of " +
             std::to_string(total) + " nodes pruned");

  for (ClassId cls : {ClassId::pg, ClassId::st}) {
    std::size_t states = 0, violations = 0, triple_violations = 0;
    std::string first;
    for (const Sample& s : samples) {
      const CombinationGraph g = build_graph(cls, s.ps);
      for (const State& st : g.nodes) {
        ++states;
        if (cls == ClassId::pg && pg_triple_violations(s.ps, st) > 0) ++triple_violations;
        if (!forbidden_pattern_check(cls, st, s.n) && violations++ == 0) {
          first = "n=" + std::to_string(s.n) + " seed=" + std::to_string(s.seed) + " colors";
          for (int c : state_colors(st, s.n)) first += " " + std::to_string(c);
        }
      }
    }
    report(cls == ClassId::pg ? "5b" : "5c", violations == 0,
           std::string("forbidden-pattern invariant (") + class_name(cls) + ")",
           std::to_string(violations) + " violations in " + std::to_string(states) + " reachable states" +
               (first.empty() ? "" : " (first: " + first + ")") +
               (cls == ClassId::pg ? "; geometry-conditioned triple rule: " + std::to_string(triple_violations) +
                                         " violating states"
                                   : ""));
  }
}

void replay_completeness(const std::vector<Sample>& samples) {
  std::size_t tried = 0, rejected = 0;
  std::string first;
  for (const Sample& s : samples) {
    if (s.n > kReplayMax) continue;
    for (ClassId cls : {ClassId::pg, ClassId::pm, ClassId::cp, ClassId::cs, ClassId::tr}) {
      if (cls == ClassId::pm && s.n % 2) continue;
      for (const Combination& c : oracle::brute_enumerate(cls, s.ps)) {
        ++tried;
        bool ok = false;
        try {
          const auto states = oracle::replay(cls, s.ps, oracle::to_explicit(cls, s.ps, c));
          ok = oracle::replay_reaches_target(cls, s.ps, states);
        } catch (const Error&) {
          ok = false;
        }
        if (!ok && rejected++ == 0)
          first = std::string(class_name(cls)) + " n=" + std::to_string(s.n) + " seed=" + std::to_string(s.seed);
      }
    }
  }
  report("6", rejected == 0, "replay completeness up to n=7",
         std::to_string(tried) + " combinations, " + std::to_string(rejected) + " rejected" +
             (first.empty() ? "" : " (first: " + first + ")"));
}

void polynomial_delay() {
  const PointSet ps = generate_point_set(kPolyDelayN, GenMode::Convex, 12, 1'000'000);
  std::set<Combination> seen;
  std::size_t dups = 0, easy_seen = 0;
  const auto rep = poly_delay_enumerate(ps, ClassId::pm, [&](const Combination& c) {
    if (!seen.insert(c).second) ++dups;
    Matching m;
    for (const auto& u : c) m.emplace_back(u[0], u[1]);
    if (is_easy(ps, m)) ++easy_seen;
  });
  CombinationGraph g = build_graph(ClassId::pm, ps);
  const BigCount total = count_paths(g);
  const BigCount easy = count_easy(ps);
  const bool ok = rep.first_output_before_build_end && BigCount(rep.outputs) == total && dups == 0 &&
                  rep.easy_count == easy && BigCount(easy_seen) == easy;
  std::ostringstream d;
  d << "first output at work " << rep.first_output_work.value_or(0) << " of " << rep.build_work << ", "
    << rep.emitted_during_build << " during build, " << rep.outputs << " outputs vs count " << total << ", " << dups
    << " duplicates, easy " << easy_seen << " emitted / " << rep.easy_count << " reported / " << easy << " counted";
  report("7", ok, "polynomial-delay ordering and completeness (convex pm, n=12)", d.str());
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "planecount_acceptance";
  fs::create_directories(dir);
  const std::string pts = (dir / "pts.txt").string();
  int code = 0;
  run_cli({"gen", "--n", "7", "--seed", "5", "--coord-range", "1000", "--out", pts}, code);

  std::vector<std::vector<std::string>> commands;
  for (ClassId cls : kAllClasses) {
    const std::string c = class_name(cls);
    commands.push_back({"count", "--class", c, "--input", pts, "--save-dag", "@DAG@"});
    commands.push_back({"enumerate", "--class", c, "--input", pts, "--format", "jsonl"});
    commands.push_back({"unrank", "--class", c, "--input", pts, "--index", "0"});
    commands.push_back({"oracle", "--class", c, "--input", pts});
  }
  commands.push_back({"enumerate", "--class", "cp", "--input", pts, "--poly-delay"});
  commands.push_back({"count", "--class", "st", "--input", pts, "--prune", "--threads", "4", "--save-dag", "@DAG@"});
  commands.push_back({"verify", "--class", "all", "--input", pts});
  commands.push_back({"gen", "--n", "12", "--mode", "convex", "--seed", "3"});

  std::size_t differing = 0;
  std::string first;
  for (const auto& cmd : commands) {
    std::string outs[2], dags[2];
    int codes[2];
    for (int r = 0; r < 2; ++r) {
      auto args = cmd;
      const fs::path dag = dir / ("run" + std::to_string(r) + ".dag");
      for (auto& a : args)
        if (a == "@DAG@") a = dag.string();
      outs[r] = run_cli(args, codes[r]);
      dags[r] = fs::exists(dag) ? slurp(dag) : "";
      fs::remove(dag);
    }
    if (outs[0] != outs[1] || dags[0] != dags[1] || codes[0] != codes[1]) {
      if (differing++ == 0)
        for (const auto& a : cmd) first += a + " ";
    }
  }
  fs::remove_all(dir);
  report("8", differing == 0, "determinism of CLI output and DAG files",
         std::to_string(commands.size()) + " commands run twice, " + std::to_string(differing) + " differ" +
             (first.empty() ? "" : " (first: " + first + ")"));
}

}  // namespace

int main() {
  const auto samples = random_samples();
  oracle_equality(samples);
  growth_constants();
  convex_closed_forms();
  size_bounds();
  pruning_and_invariants(samples);
  replay_completeness(samples);
  polynomial_delay();
  determinism();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
