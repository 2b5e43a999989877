#pragma once

// Command-line front end. run() is the whole program minus main().

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "planecount/classes.hpp"
#include "planecount/dagfile.hpp"
#include "planecount/epm.hpp"
#include "planecount/error.hpp"
#include "planecount/framework.hpp"
#include "planecount/generate.hpp"
#include "planecount/oracle.hpp"
#include "planecount/pathops.hpp"
#include "planecount/patterns.hpp"
#include "planecount/pointfile.hpp"

namespace planecount::cli {

enum Exit : int {
  kOk = 0,
  kMismatch = 1,
  kParse = 2,
  kValidation = 3,
  kMemory = 4,
  kUsage = 5,
};

enum class Format { Edges, Jsonl };

inline std::string format_object(ClassId cls, const PointSet& ps, const Combination& c, Format f) {
  const auto edges = object_edges(cls, ps, c);
  if (f == Format::Jsonl) {
    nlohmann::json j = nlohmann::json::array();
    for (auto [a, b] : edges) j.push_back({a, b});
    return j.dump();
  }
  std::string s;
  for (auto [a, b] : edges) {
    if (!s.empty()) s += ' ';
    s += std::to_string(a) + '-' + std::to_string(b);
  }
  return s;
}

namespace detail {

struct Common {
  std::string cls;
  std::string input;
  bool prune = false;
  unsigned threads = 1;
};

inline ClassId require_class(const std::string& name) {
  auto c = parse_class(name);
  if (!c) throw Unsupported("unknown class '" + name + "'");
  return *c;
}

inline BuildOptions options_for(ClassId cls, const PointSet& ps, bool prune, unsigned threads) {
  BuildOptions opt;
  opt.threads = threads;
  if (prune) opt.prune = prune_filter(cls, ps);
  return opt;
}

inline void print_stats(const CombinationGraph& g, std::ostream& err) {
  const auto s = stats(g);
  err << "nodes " << s.nodes << "\nedges " << s.edges << "\ntargets " << s.targets << "\nlevels";
  for (auto k : s.level_sizes) err << ' ' << k;
  err << '\n';
}

inline Format parse_format(const std::string& f) {
  if (f == "edges") return Format::Edges;
  if (f == "jsonl") return Format::Jsonl;
  throw Unsupported("unknown format '" + f + "'");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count and enumerate crossing-free geometric graphs on planar point sets", "planecount"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  detail::Common common;
  auto add_common = [&](CLI::App* c, bool input_required = true) {
    auto* cl = c->add_option("--class", common.cls, "pg, cp, pm, cs, tr, st or sc");
    cl->check(CLI::IsMember({"pg", "cp", "pm", "cs", "tr", "st", "sc"}));
    auto* in = c->add_option("--input", common.input, "point file");
    if (input_required) {
      cl->required();
      in->required();
    }
    c->add_option("--threads", common.threads, "builder threads")->default_val(1);
  };

  auto* count = app.add_subcommand("count", "print the number of objects");
  add_common(count, false);
  bool show_stats = false;
  std::string save_path, load_path;
  count->add_flag("--prune", common.prune, "apply the pattern filter (st, sc)");
  count->add_option("--save-dag", save_path, "write the graph to this file");
  count->add_option("--load-dag", load_path, "count a previously saved graph");
  count->add_flag("--stats", show_stats, "print graph statistics to stderr");

  auto* en = app.add_subcommand("enumerate", "print every object, one per line");
  add_common(en);
  std::optional<std::size_t> limit;
  bool poly = false;
  std::string format = "edges";
  en->add_flag("--prune", common.prune, "apply the pattern filter (st, sc)");
  en->add_option("--limit", limit, "stop after this many objects");
  en->add_flag("--poly-delay", poly, "interleave easy matchings (pm, cp)");
  en->add_option("--format", format, "edges or jsonl")->check(CLI::IsMember({"edges", "jsonl"}));

  auto* un = app.add_subcommand("unrank", "print the object with the given index");
  add_common(un);
  std::string index_text;
  un->add_option("--index", index_text, "0-based index")->required();
  un->add_option("--format", format, "edges or jsonl")->check(CLI::IsMember({"edges", "jsonl"}));

  auto* orc = app.add_subcommand("oracle", "brute-force count");
  add_common(orc);
  bool orc_list = false;
  orc->add_flag("--list", orc_list, "print the objects instead of the count");
  orc->add_option("--format", format, "edges or jsonl")->check(CLI::IsMember({"edges", "jsonl"}));

  auto* ver = app.add_subcommand("verify", "compare the graph against the brute-force oracle");
  std::string ver_class;
  ver->add_option("--class", ver_class, "a class or 'all'")
      ->required()
      ->check(CLI::IsMember({"pg", "cp", "pm", "cs", "tr", "st", "sc", "all"}));
  ver->add_option("--input", common.input, "point file")->required();

  auto* gen = app.add_subcommand("gen", "generate a point file");
  int gen_n = 0;
  std::string gen_mode = "random", gen_out;
  std::uint64_t gen_seed = 0;
  Coord gen_range = 1000000;
  gen->add_option("--n", gen_n, "number of points")->required()->check(CLI::Range(1, kMaxPoints));
  gen->add_option("--mode", gen_mode, "random or convex")->check(CLI::IsMember({"random", "convex"}));
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--coord-range", gen_range, "coordinates lie in [-R, R]")
      ->check(CLI::Range(Coord{1}, kMaxCoord));
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      const auto pts = generate_points(gen_n, gen_mode == "convex" ? GenMode::Convex : GenMode::Random,
                                       gen_seed, gen_range);
      if (gen_out.empty()) {
        write_points(out, pts);
      } else {
        std::ofstream f(gen_out);
        if (!f) throw Error("cannot open " + gen_out + " for writing");
        write_points(f, pts);
      }
      return kOk;
    }

    if (count->parsed()) {
      if (!load_path.empty()) {
        if (!common.input.empty() || common.prune || !save_path.empty())
          throw Unsupported("--load-dag cannot be combined with --input, --prune or --save-dag");
        CombinationGraph g = load_dag(load_path);
        if (!common.cls.empty() && detail::require_class(common.cls) != g.class_id)
          throw Unsupported("class does not match the saved graph");
        out << count_paths(g) << '\n';
        if (show_stats) detail::print_stats(g, err);
        return kOk;
      }
      if (common.cls.empty() || common.input.empty()) throw Unsupported("count needs --class and --input");
      const ClassId cls = detail::require_class(common.cls);
      const PointSet ps = read_point_file(common.input);
      CombinationGraph g = build_graph(cls, ps, detail::options_for(cls, ps, common.prune, common.threads));
      out << count_paths(g) << '\n';
      if (show_stats) detail::print_stats(g, err);
      if (!save_path.empty()) save_dag(g, save_path);
      return kOk;
    }

    if (en->parsed()) {
      const ClassId cls = detail::require_class(common.cls);
      const Format f = detail::parse_format(format);
      const PointSet ps = read_point_file(common.input);
      if (poly) {
        if (common.prune) throw Unsupported("--poly-delay cannot be combined with --prune");
        std::size_t emitted = 0;
        struct Stop {};
        try {
          poly_delay_enumerate(ps, cls, [&](const Combination& c) {
            if (limit && emitted >= *limit) throw Stop{};
            out << format_object(cls, ps, c, f) << '\n';
            ++emitted;
          }, detail::options_for(cls, ps, false, common.threads));
        } catch (const Stop&) {
        }
        return kOk;
      }
      CombinationGraph g = build_graph(cls, ps, detail::options_for(cls, ps, common.prune, common.threads));
      count_paths(g);
      const CombinationGraph pruned = prune_dead_ends(g);
      enumerate(pruned, ps, [&](const Combination& c) {
        out << format_object(cls, ps, c, f) << '\n';
        return true;
      }, limit);
      return kOk;
    }

    if (un->parsed()) {
      const ClassId cls = detail::require_class(common.cls);
      const Format f = detail::parse_format(format);
      BigCount k;
      try {
        k = BigCount(index_text);
      } catch (const std::exception&) {
        throw Unsupported("--index must be a nonnegative integer");
      }
      const PointSet ps = read_point_file(common.input);
      CombinationGraph g = build_graph(cls, ps, detail::options_for(cls, ps, false, common.threads));
      count_paths(g);
      out << format_object(cls, ps, decode(g, ps, unrank(g, k)), f) << '\n';
      return kOk;
    }

    if (orc->parsed()) {
      const ClassId cls = detail::require_class(common.cls);
      const Format f = detail::parse_format(format);
      const PointSet ps = read_point_file(common.input);
      const auto objs = oracle::brute_enumerate(cls, ps);
      if (orc_list)
        for (const auto& c : objs) out << format_object(cls, ps, c, f) << '\n';
      else
        out << objs.size() << '\n';
      return kOk;
    }

    if (ver->parsed()) {
      const PointSet ps = read_point_file(common.input);
      std::vector<ClassId> classes;
      if (ver_class == "all")
        classes.assign(kAllClasses.begin(), kAllClasses.end());
      else
        classes.push_back(detail::require_class(ver_class));
      bool all_ok = true;
      for (ClassId cls : classes) {
        const auto expected = oracle::brute_enumerate(cls, ps);
        CombinationGraph g = build_graph(cls, ps);
        const BigCount total = count_paths(g);
        std::vector<Combination> got;
        enumerate(prune_dead_ends(g), ps, [&](const Combination& c) {
          got.push_back(c);
          return true;
        });
        std::sort(got.begin(), got.end());
        const bool same = total == BigCount(expected.size()) && got == expected;
        out << class_name(cls) << ' ' << (same ? "ok " : "MISMATCH ") << total << ' ' << expected.size() << '\n';
        if (!same) {
          std::size_t missing = 0, extra = 0;
          for (const auto& c : expected)
            if (!std::binary_search(got.begin(), got.end(), c)) ++missing;
          for (const auto& c : got)
            if (!std::binary_search(expected.begin(), expected.end(), c)) ++extra;
          out << "  missing " << missing << " extra " << extra << '\n';
          all_ok = false;
        }
      }
      return all_ok ? kOk : kMismatch;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const GeometryError& e) {
    err << "invalid point set: " << e.what() << '\n';
    return kValidation;
  } catch (const IndexOutOfRange& e) {
    err << "IndexOutOfRange: " << e.what() << '\n';
    return kValidation;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const OddSize& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const MemoryBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kMemory;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GenerationFailed& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace planecount::cli
