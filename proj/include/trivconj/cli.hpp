#pragma once

// Command dispatch and report rendering for the `trivconj` tool. Reports are
// data: a mathematical verdict of either polarity exits 0; errors exit 1,
// undecidable comparisons 2, a failed certificate search 3.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trivconj/trivconj.hpp"

namespace trivconj::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kError = 1, kUndecidable = 2, kNoCertificate = 3 };

struct CliResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

struct Options {
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
};

struct Source {
  SpecDocument doc;
  std::string name;  // from `path#name`, else empty
};

/// Reads `path`, `path#name`, or inline DSL text (any argument containing '{').
inline Source load_source(const std::string& arg) {
  std::string text, name;
  if (arg.find('{') != std::string::npos) {
    text = arg;
  } else {
    std::string path = arg;
    if (auto hash = arg.rfind('#'); hash != std::string::npos) {
      path = arg.substr(0, hash);
      name = arg.substr(hash + 1);
    }
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return {parse(text), name};
}

/// The named definition, or the last one when no name is given.
inline Definition load_object(const std::string& arg) {
  auto [doc, name] = load_source(arg);
  if (doc.definitions.empty()) throw InvalidArgument("'" + arg + "' defines nothing");
  if (name.empty()) return doc.definitions.back();
  const Definition* d = doc.find(name);
  if (!d) throw InvalidArgument("no definition named '" + name + "' in '" + arg + "'");
  return *d;
}

template <class T>
T load_as(const std::string& arg) {
  auto d = load_object(arg);
  if (const auto* v = std::get_if<T>(&d.object)) return *v;
  const char* want = std::is_same_v<T, SetSpec> ? "set" : std::is_same_v<T, NearBijection> ? "nearbij" : "blockperm";
  throw InvalidArgument("'" + arg + "' is a " + kind_name(d.object) + ", expected a " + want);
}

inline CycleTypeSpec cycle_type_of_object(const SpecObject& o) {
  if (const auto* f = std::get_if<NearBijection>(&o)) return from_census(orbit_census(*f));
  if (const auto* p = std::get_if<BlockPermutation>(&o)) return cycle_type_of(*p);
  throw InvalidArgument("a set has no cycle type");
}

// ---------------------------------------------------------------------------
// JSON renderings

inline json points_json(const std::set<Int>& s) { return json(std::vector<Int>(s.begin(), s.end())); }

inline json cycle_type_json(const CycleTypeSpec& t) {
  json kappa = json::array();
  for (const auto& c : t.classes) kappa.push_back({{"lengths", to_dsl(c.lengths)}, {"count", c.count.to_string()}});
  return {{"kappa", kappa},       {"kappa0", t.kappa0}, {"fwdRays", t.fwd_rays},
          {"bwdRays", t.bwd_rays}, {"h", t.h()},         {"endCount", t.end_count()}};
}

inline json census_json(const OrbitCensus& c) {
  json cycles = json::object();
  for (const auto& [len, n] : c.finite_cycles) cycles[std::to_string(len)] = n;
  return {{"finiteCycles", cycles},
          {"omegaLengths", to_dsl(c.omega_lengths)},
          {"zOrbits", c.z_orbits},
          {"kappa0", c.z_orbits},
          {"fwdRays", c.fwd_rays},
          {"bwdRays", c.bwd_rays},
          {"finitePaths", c.finite_paths},
          {"fwdRayStarts", c.fwd_ray_starts},
          {"bwdRayEnds", c.bwd_ray_ends},
          {"h", c.h()},
          {"endCount", c.end_count()}};
}

inline json comparison_json(const SetComparison& c) {
  json j{{"verdict", to_string(c.kind)}};
  if (c.kind == SetComparison::Kind::FiniteSymDiff) j["diff"] = points_json(c.diff);
  if (c.kind == SetComparison::Kind::InfiniteSymDiff) {
    j["reason"] = c.rule;
    j["witness"] = c.witness;
  }
  return j;
}

inline json verdict_json(const TrivVerdict& v) {
  json j{{"verdict", to_string(v.kind)}, {"reason", v.detail}, {"reasonCode", to_string(v.reason)}};
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Text renderings

inline std::string census_text(const OrbitCensus& c) {
  std::ostringstream os;
  os << "h = " << c.h() << "\nendCount = " << c.end_count() << "\nzOrbits = " << c.z_orbits
     << "\nfwdRays = " << c.fwd_rays << "\nbwdRays = " << c.bwd_rays << "\nfinitePaths = " << c.finite_paths
     << "\nomegaLengths = " << to_dsl(c.omega_lengths) << "\nfiniteCycles =";
  if (c.finite_cycles.empty()) os << " none";
  for (const auto& [len, n] : c.finite_cycles) os << ' ' << len << ":" << n;
  os << '\n';
  return os.str();
}

inline std::string cycle_type_text(const CycleTypeSpec& t) {
  std::ostringstream os;
  for (const auto& c : t.classes) os << "kappa = " << c.count.to_string() << " on " << to_dsl(c.lengths) << '\n';
  os << "kappa = 0 elsewhere\nkappa0 = " << t.kappa0 << "\nrays = (" << t.fwd_rays << ", " << t.bwd_rays
     << ")\nh = " << t.h() << "\nendCount = " << t.end_count() << '\n';
  return os.str();
}

inline std::vector<Int> parse_one_line(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw InvalidArgument("bad permutation entry '" + item + "'");
    }
  }
  return out;
}

inline std::string join(const std::vector<Int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// ---------------------------------------------------------------------------

inline CliResult run(std::vector<std::string> args) {
  CliResult result;
  std::ostringstream out, err;
  Options opt;
  if (const char* env = std::getenv(kSeedVariable)) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      result.exit_code = kError;
      result.err = std::string("error: ") + kSeedVariable + " is not an unsigned integer\n";
      return result;
    }
  }

  CLI::App app{"Conjugacy invariants for trivial autohomeomorphisms of N*", "trivconj"};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, std::string("Seed for randomized commands (default from ") + kSeedVariable + ")");

  std::function<void()> action;
  auto emit = [&](const json& j, const std::string& text) {
    if (opt.format == "json") out << j.dump(2) << '\n';
    else out << text;
  };

  std::string a_arg, b_arg, group = "triv";
  auto* h_cmd = app.add_subcommand("h", "Index |N \\ ran f| - |N \\ dom f| of a near-bijection");
  h_cmd->add_option("object", a_arg, "File, file#name or inline DSL")->required();
  h_cmd->callback([&] {
    action = [&] {
      auto f = load_as<NearBijection>(a_arg);
      Int h = h_index(f);
      emit({{"command", "h"}, {"object", to_dsl(f)}, {"h", h}}, "h = " + std::to_string(h) + "\n");
    };
  });

  auto* census_cmd = app.add_subcommand("census", "Orbit census of a near-bijection");
  census_cmd->add_option("object", a_arg)->required();
  census_cmd->callback([&] {
    action = [&] {
      auto f = load_as<NearBijection>(a_arg);
      auto c = orbit_census(f);
      json j = census_json(c);
      j["command"] = "census";
      j["object"] = to_dsl(f);
      emit(j, census_text(c));
    };
  });

  auto* type_cmd = app.add_subcommand("cycletype", "Cycle-type sequence of a near-bijection or block permutation");
  type_cmd->add_option("object", a_arg)->required();
  type_cmd->callback([&] {
    action = [&] {
      auto d = load_object(a_arg);
      auto t = cycle_type_of_object(d.object);
      json j = cycle_type_json(t);
      j["command"] = "cycletype";
      j["object"] = to_dsl(d.object);
      emit(j, cycle_type_text(t));
    };
  });

  auto* conj_cmd = app.add_subcommand("conj", "Conjugacy test in S_N (exact) or Triv (necessary conditions)");
  conj_cmd->add_option("--group", group, "sn or triv")->check(CLI::IsMember({"sn", "triv"}));
  conj_cmd->add_option("first", a_arg)->required();
  conj_cmd->add_option("second", b_arg)->required();
  conj_cmd->callback([&] {
    action = [&] {
      auto a = load_object(a_arg), b = load_object(b_arg);
      auto ta = cycle_type_of_object(a.object), tb = cycle_type_of_object(b.object);
      json j{{"command", "conj"}, {"group", group}, {"first", to_dsl(a.object)}, {"second", to_dsl(b.object)}};
      std::string text;
      if (group == "sn") {
        bool same = sn_conjugate(ta, tb);
        j["verdict"] = same ? "Conjugate" : "NonConjugate";
        j["reason"] = same ? "cycle types agree" : "cycle types differ";
        j["witness"] = nullptr;
        text = std::string(same ? "Conjugate" : "NonConjugate") + "\n";
      } else {
        auto v = triv_criterion(ta, tb);
        j.update(verdict_json(v));
        text = std::string(to_string(v.kind)) + "\nreason: " + v.detail + "\n";
        const auto* fa = std::get_if<NearBijection>(&a.object);
        const auto* fb = std::get_if<NearBijection>(&b.object);
        if (v.kind == TrivVerdict::Kind::CriterionMet && fa && fb) {
          try {
            auto tau = build_conjugator(*fa, *fb);
            j["certificate"] = to_dsl(tau);
            text += "certificate: " + to_dsl(tau) + "\n";
          } catch (const NoCertificate&) {
            j["certificate"] = nullptr;
            text += "certificate: none found\n";
          }
        }
      }
      emit(j, text);
    };
  });

  auto* cmp_cmd = app.add_subcommand("compare-sets", "Classify the symmetric difference of two sets");
  cmp_cmd->add_option("first", a_arg)->required();
  cmp_cmd->add_option("second", b_arg)->required();
  cmp_cmd->callback([&] {
    action = [&] {
      auto x = load_as<SetSpec>(a_arg), y = load_as<SetSpec>(b_arg);
      SetComparison c;
      try {
        c = compare(x, y);
      } catch (const Unsupported& e) {
        throw Undecidable(to_dsl(x) + " vs " + to_dsl(y) + ": " + e.what());
      }
      json j = comparison_json(c);
      j["command"] = "compare-sets";
      std::string text = std::string(to_string(c.kind)) + "\n";
      if (c.kind == SetComparison::Kind::FiniteSymDiff) text += "diff = " + format_int_list(c.diff) + "\n";
      if (c.kind == SetComparison::Kind::InfiniteSymDiff)
        text += "reason: " + c.rule + "\nwitness = " + std::to_string(c.witness) + "\n";
      emit(j, text);
    };
  });

  int count = 6;
  auto* family_cmd = app.add_subcommand("family", "Pairwise criterion over block permutations of a disjoint family");
  family_cmd->add_option("--count", count, "Family size")->check(CLI::Range(2, 61));
  family_cmd->callback([&] {
    action = [&] {
      auto r = family_report(count);
      json members = json::array(), matrix = json::array();
      for (const auto& m : r.members) members.push_back(to_dsl(m));
      std::ostringstream text;
      for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < r.verdicts.size(); ++j) {
          row.push_back(to_string(r.verdicts[i][j].kind));
          if (i < j)
            text << "x" << i + 1 << " vs x" << j + 1 << ": " << to_string(r.verdicts[i][j].kind) << " ("
                 << r.verdicts[i][j].detail << ")\n";
        }
        matrix.push_back(row);
      }
      std::size_t pairs = r.verdicts.size() * (r.verdicts.size() - 1) / 2;
      text << r.non_conjugate_pairs() << " of " << pairs << " pairs NonConjugate\n";
      emit({{"command", "family"},
            {"count", count},
            {"members", members},
            {"matrix", matrix},
            {"pairs", pairs},
            {"nonConjugatePairs", r.non_conjugate_pairs()}},
           text.str());
    };
  });

  auto* shift_cmd = app.add_subcommand("shift-check", "Invariance of a set under n -> n+1, up to finite sets");
  shift_cmd->add_option("object", a_arg)->required();
  shift_cmd->callback([&] {
    action = [&] {
      auto s = load_as<SetSpec>(a_arg);
      InvarianceResult inv;
      bool fixed = false;
      try {
        inv = almost_invariant(s);
        fixed = almost_fixed(s);
      } catch (const Unsupported& e) {
        throw Undecidable(to_dsl(s) + ": " + e.what());
      }
      json j{{"command", "shift-check"},
             {"object", to_dsl(s)},
             {"image", to_dsl(shift_image(s))},
             {"verdict", inv.invariant ? "Invariant" : "NotInvariant"},
             {"twoSided", fixed ? "AlmostFixed" : "NotAlmostFixed"}};
      std::string text = std::string(inv.invariant ? "Invariant" : "NotInvariant");
      if (inv.invariant) {
        j["overflow"] = points_json(inv.overflow);
        text += " (overflow " + format_int_list(inv.overflow) + ")";
      } else {
        j["reason"] = inv.rule;
        j["witness"] = inv.witness;
        text += " (" + inv.rule + ", witness " + std::to_string(inv.witness) + ")";
      }
      text += std::string("\ntwo-sided: ") + (fixed ? "AlmostFixed" : "NotAlmostFixed") + "\n";
      emit(j, text);
    };
  });

  Int max_period = 8, max_threshold = 12;
  std::string half = "both";
  auto* sweep_cmd = app.add_subcommand("minimality-sweep", "Search eventually periodic sets for invariant proper parts");
  sweep_cmd->add_option("--max-period,--period", max_period)->check(CLI::Range(1, 16));
  sweep_cmd->add_option("--max-threshold,--threshold", max_threshold)->check(CLI::Range(0, 20));
  sweep_cmd->add_option("--half", half, "L, R or both")->check(CLI::IsMember({"L", "R", "both"}));
  sweep_cmd->callback([&] {
    action = [&] {
      std::vector<Half> halves;
      if (half != "R") halves.push_back(Half::Left);
      if (half != "L") halves.push_back(Half::Right);
      json parts = json::array();
      std::ostringstream text;
      std::size_t total = 0;
      for (Half hf : halves) {
        auto rep = minimality_sweep(max_period, max_threshold, hf);
        json one = json::array(), two = json::array();
        for (const auto& s : rep.one_sided) one.push_back(to_dsl(s));
        for (const auto& s : rep.two_sided) two.push_back(to_dsl(s));
        total += rep.one_sided.size() + rep.two_sided.size();
        parts.push_back({{"half", to_string(hf)},
                         {"examined", rep.examined},
                         {"counterexamples", one},
                         {"twoSidedCounterexamples", two}});
        text << to_string(hf) << ": examined " << rep.examined << " sets, " << rep.one_sided.size()
             << " counterexamples, " << rep.two_sided.size() << " two-sided counterexamples\n";
        for (const auto& s : rep.one_sided) text << "  " << to_dsl(s) << '\n';
      }
      emit({{"command", "minimality-sweep"},
            {"maxPeriod", max_period},
            {"maxThreshold", max_threshold},
            {"halves", parts},
            {"counterexampleCount", total},
            {"verdict", total == 0 ? "NoCounterexample" : "CounterexampleFound"}},
           text.str());
    };
  });

  bool integer_shift = false;
  auto* split_cmd = app.add_subcommand("split", "The two ends of every Z-orbit");
  split_cmd->add_option("object", a_arg);
  split_cmd->add_flag("--integer-shift", integer_shift, "Use n -> n+1 on Z");
  split_cmd->callback([&] {
    action = [&] {
      std::vector<OrbitHalves> halves;
      if (integer_shift) halves = split_census(IntegerShift{});
      else if (a_arg.empty()) throw InvalidArgument("split needs an object or --integer-shift");
      else halves = split_census(load_as<NearBijection>(a_arg));
      json orbits = json::array();
      std::ostringstream text;
      for (const auto& h : halves) {
        orbits.push_back({{"anchor", h.anchor}, {"backward", to_dsl(h.backward)}, {"forward", to_dsl(h.forward)}});
        text << "orbit at " << h.anchor << ":\n  backward " << to_dsl(h.backward) << "\n  forward  "
             << to_dsl(h.forward) << '\n';
      }
      text << 2 * halves.size() << " components\n";
      emit({{"command", "split"}, {"orbits", orbits}, {"components", 2 * halves.size()}}, text.str());
    };
  });

  auto* print_cmd = app.add_subcommand("print", "Parse and print in canonical form");
  print_cmd->add_option("object", a_arg)->required();
  print_cmd->callback([&] {
    action = [&] {
      auto src = load_source(a_arg);
      if (!src.name.empty()) {
        auto d = load_object(a_arg);
        src.doc.definitions = {d};
      }
      json defs = json::array();
      for (const auto& d : src.doc.definitions)
        defs.push_back({{"name", d.name}, {"kind", kind_name(d.object)}, {"object", to_dsl(d.object)}});
      emit({{"command", "print"}, {"definitions", defs}}, print(src.doc));
    };
  });

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force checks");
  oracle_cmd->require_subcommand(1);

  Int window_size = 32;
  auto* win_cmd = oracle_cmd->add_subcommand("window", "Restriction to [0, W)");
  win_cmd->add_option("object", a_arg)->required();
  win_cmd->add_option("--window", window_size)->check(CLI::Range(1, 1 << 20));
  win_cmd->callback([&] {
    action = [&] {
      auto d = load_object(a_arg);
      WindowMap w;
      if (const auto* f = std::get_if<NearBijection>(&d.object)) w = window(*f, window_size);
      else if (const auto* p = std::get_if<BlockPermutation>(&d.object)) w = window(*p, window_size);
      else throw InvalidArgument("a set is not a map");
      json entries = json::array();
      std::ostringstream text;
      for (Int n = 0; n < w.size; ++n) {
        const auto& e = w.entries[n];
        switch (e.kind) {
          case WindowMap::Kind::Mapped: entries.push_back(e.image); text << n << " -> " << e.image << '\n'; break;
          case WindowMap::Kind::Escapes:
            entries.push_back("escape:" + std::to_string(e.image));
            text << n << " -> " << e.image << " (escapes)\n";
            break;
          case WindowMap::Kind::Undefined: entries.push_back("undefined"); text << n << " -> !\n"; break;
          case WindowMap::Kind::Incomplete: entries.push_back("incomplete"); text << n << " -> ? (block cut)\n"; break;
        }
      }
      auto c = w.census();
      json cycles = json::object();
      for (const auto& [len, n] : c.cycles) cycles[std::to_string(len)] = n;
      emit({{"command", "oracle window"}, {"size", w.size}, {"entries", entries}, {"cycles", cycles}}, text.str());
    };
  });

  std::string p_text, q_text;
  auto* search_cmd = oracle_cmd->add_subcommand("search", "Exhaustive conjugator search in S_n, n <= 8");
  search_cmd->add_option("p", p_text, "One-line notation, e.g. 1,0,2")->required();
  search_cmd->add_option("q", q_text)->required();
  search_cmd->callback([&] {
    action = [&] {
      auto p = parse_one_line(p_text), q = parse_one_line(q_text);
      auto pi = finite_conjugacy_search(p, q);
      json j{{"command", "oracle search"}, {"verdict", pi ? "Conjugate" : "NotConjugate"}};
      j["witness"] = pi ? json(*pi) : json(nullptr);
      emit(j, pi ? "Conjugate via " + join(*pi) + "\n" : std::string("NotConjugate\n"));
    };
  });

  Int budget = 3;
  auto* mod_cmd = oracle_cmd->add_subcommand("modify", "Seeded random finite modification");
  mod_cmd->add_option("object", a_arg)->required();
  mod_cmd->add_option("--budget", budget)->check(CLI::Range(0, 1000));
  mod_cmd->callback([&] {
    action = [&] {
      auto f = load_as<NearBijection>(a_arg);
      auto g = random_finite_modification(f, opt.seed, budget);
      auto eq = equal_mod_finite(f, g);
      auto cf = orbit_census(f), cg = orbit_census(g);
      emit({{"command", "oracle modify"},
            {"seed", opt.seed},
            {"budget", budget},
            {"result", to_dsl(g)},
            {"equalModFinite", eq.equal},
            {"differences", eq.differences},
            {"h", {h_index(f), h_index(g)}},
            {"endCount", {cf.end_count(), cg.end_count()}}},
           to_dsl(g) + "\nequal mod finite: " + (eq.equal ? "yes" : "no") + "\nh: " + std::to_string(h_index(f)) +
               " -> " + std::to_string(h_index(g)) + "\nendCount: " + std::to_string(cf.end_count()) + " -> " +
               std::to_string(cg.end_count()) + "\n");
    };
  });

  auto* cert_cmd = oracle_cmd->add_subcommand("conjugator", "Search for tau with phi tau =* tau psi");
  cert_cmd->add_option("phi", a_arg)->required();
  cert_cmd->add_option("psi", b_arg)->required();
  cert_cmd->callback([&] {
    action = [&] {
      auto phi = load_as<NearBijection>(a_arg), psi = load_as<NearBijection>(b_arg);
      auto tau = build_conjugator(phi, psi);
      auto check = verify_conjugation(phi, psi, tau);
      emit({{"command", "oracle conjugator"},
            {"verdict", "Certificate"},
            {"witness", to_dsl(tau)},
            {"verified", check.equal},
            {"exceptional", check.differences}},
           "Certificate " + to_dsl(tau) + "\nverified: " + (check.equal ? "yes" : "no") + "\n");
    };
  });

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    result.exit_code = code;
    if (opt.format == "json") out << json{{"error", kind}, {"message", message}}.dump(2) << '\n';
    err << "error: " << message << '\n';
  };

  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      const auto& a = args[i];
      if (a == "--format" || a == "--seed") {
        if (a == "--format" && i + 1 < args.size() && args[i + 1] == "json") opt.format = "json";
        ++i;
        continue;
      }
      if (a.empty() || a[0] == '-') continue;
      if (!app.get_subcommand_no_throw(a)) throw UnknownCommand("unknown command '" + a + "'");
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (action) action();
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kOk : kError;
  } catch (const NoCertificate& e) {
    fail(kNoCertificate, e.kind(), e.what());
  } catch (const Undecidable& e) {
    fail(kUndecidable, e.kind(), e.what());
  } catch (const Unsupported& e) {
    fail(kUndecidable, e.kind(), e.what());
  } catch (const Error& e) {
    fail(kError, e.kind(), e.what());
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace trivconj::cli
