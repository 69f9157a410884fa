#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "affauto/affauto.hpp"
#include "json.hpp"

namespace affauto::cli {

  namespace {

    using json = nlohmann::ordered_json;

    constexpr std::uint64_t kDefaultSeed = 20111019;

    struct Config {
      std::string matrices_path;
      std::string automaton_path;
      std::string output_path;
      std::string format = "json";
      std::string word;
      std::string word2;
      std::string input;
      int         n            = 0;
      std::size_t budget       = 0;
      std::size_t alphabet_cap = BuildOptions{}.alphabet_cap;
      std::size_t depth        = 8;
      std::size_t samples      = 1000;
      std::size_t max_length   = 2;
      std::uint64_t seed       = kDefaultSeed;
      bool        dedup        = false;
      bool        json_mode    = false;
      bool        inverse      = false;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw InvalidInput("cannot read " + path);
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    void write_file(std::string const& path, std::string const& text) {
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << text)) {
        throw InvalidInput("cannot write " + path);
      }
    }

    std::size_t budget_of(Config const& cfg) {
      return cfg.budget > 0 ? cfg.budget : default_node_budget();
    }

    Automaton load_automaton(Config const& cfg) {
      return automaton_from_json(read_file(cfg.automaton_path));
    }

    ////////////////////////////////////////////////////////////////////////
    // Commands
    ////////////////////////////////////////////////////////////////////////

    int cmd_build(Config const& cfg, std::ostream& out) {
      auto const ms = matrices_from_json(read_file(cfg.matrices_path));
      Automaton  aut
          = build_union(ms, cfg.n, BuildOptions{cfg.alphabet_cap});
      if (cfg.dedup) {
        aut = dedup(aut);
      }
      std::string const text = cfg.format == "dot" ? to_dot(aut) : to_json(aut);
      if (cfg.output_path.empty() || cfg.output_path == "-") {
        out << text;
      } else {
        write_file(cfg.output_path, text);
      }
      Integer const bound = state_bound(ms);
      if (cfg.json_mode) {
        json line       = json::object();
        line["command"] = "build";
        line["states"]  = aut.size();
        line["bound"]   = bound.get_str();
        line["letters"] = aut.alphabet_size();
        line["dedup"]   = cfg.dedup;
        out << line.dump() << '\n';
      } else {
        out << "states=" << aut.size() << ", bound=2^d*Σ||Mi||^d=" << bound
            << '\n';
      }
      return kOk;
    }

    int cmd_act(Config const& cfg, std::ostream& out) {
      Automaton const aut = load_automaton(cfg);
      GroupWord const w   = parse_word(aut, cfg.word);
      DigitWord const u   = parse_digit_word(cfg.input, aut.base(), aut.dim());
      DigitWord const img = act(w, u);
      if (cfg.json_mode) {
        json line       = json::object();
        line["command"] = "act";
        line["input"]   = to_string(u);
        line["output"]  = to_string(img);
        out << line.dump() << '\n';
      } else {
        out << to_string(img) << '\n';
      }
      return kOk;
    }

    int cmd_wp(Config const& cfg, std::ostream& out) {
      Automaton const aut = load_automaton(cfg);
      GroupWord const w   = parse_word(aut, cfg.word);
      auto const      r   = is_identity(w, budget_of(cfg));
      std::string     witness;
      if (r.witness) {
        witness = to_string(aut.codec().decode(*r.witness));
      }
      if (cfg.json_mode) {
        json line       = json::object();
        line["command"] = "wp";
        line["outcome"] = std::string(to_string(r.outcome));
        line["visited"] = r.visited;
        if (r.witness) {
          line["witness"] = witness;
        }
        out << line.dump() << '\n';
      } else {
        out << to_string(r.outcome) << " visited=" << r.visited;
        if (r.witness) {
          out << " witness=\"" << witness << "\"";
        }
        out << '\n';
      }
      return r.outcome == WordProblemOutcome::budget_exhausted ? kBudgetExceeded
                                                               : kOk;
    }

    int cmd_relations(Config const& cfg, std::ostream& out) {
      auto const      ms     = matrices_from_json(read_file(cfg.matrices_path));
      Automaton const aut    = build_union(ms, cfg.n, BuildOptions{cfg.alphabet_cap});
      std::size_t     budget = budget_of(cfg);
      bool            failed    = false;
      bool            exhausted = false;

      auto emit = [&](std::string const& kind, std::string const& matrix,
                      std::string const& axis, std::string const& relation,
                      WordProblemResult const& r) {
        bool const ok = r.is_identity();
        failed |= r.is_nontrivial();
        exhausted |= r.outcome == WordProblemOutcome::budget_exhausted;
        std::string const status
            = ok ? "PASS" : (r.is_nontrivial() ? "FAIL" : "BUDGET-EXCEEDED");
        if (cfg.json_mode) {
          json line        = json::object();
          line["command"]  = "relations";
          line["kind"]     = kind;
          line["matrix"]   = matrix;
          line["axis"]     = axis;
          line["relation"] = relation;
          line["status"]   = status;
          line["visited"]  = r.visited;
          out << line.dump() << '\n';
        } else {
          out << kind << "\tM=" << matrix << "\tj=" << axis << '\t' << status
              << "\tvisited=" << r.visited << '\t' << relation << '\n';
        }
      };

      for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = 0; j < aut.dim(); ++j) {
          auto const rep = verify_relation(aut, i, j, false, budget);
          emit("conj", std::to_string(i), std::to_string(j + 1),
               rep.lhs + " = " + rep.rhs, rep.result);
          if (cfg.inverse && is_unimodular(ms[i])) {
            auto const inv = verify_relation(aut, i, j, true, budget);
            emit("conj-inv", std::to_string(i), std::to_string(j + 1),
                 inv.lhs + " = " + inv.rhs, inv.result);
          }
        }
      }
      for (std::size_t i = 0; i < aut.dim(); ++i) {
        for (std::size_t j = i + 1; j < aut.dim(); ++j) {
          auto const r = is_identity(commutator(translation_word(aut, 0, i),
                                                translation_word(aut, 0, j)),
                                     budget);
          emit("comm", "-", std::to_string(i + 1) + "," + std::to_string(j + 1),
               "[t" + std::to_string(i + 1) + ",t" + std::to_string(j + 1)
                   + "] = 1",
               r);
        }
      }
      if (!cfg.json_mode) {
        out << "presentation " << to_string(presentation_for(ms)) << '\n';
      }
      if (failed) {
        return kMismatch;
      }
      return exhausted ? kBudgetExceeded : kOk;
    }

    int cmd_verify(Config const& cfg, std::ostream& out) {
      Automaton const aut   = load_automaton(cfg);
      auto const&     codec = aut.codec();
      std::mt19937_64 rng(cfg.seed);
      std::uniform_int_distribution<std::size_t> length(
          cfg.depth == 0 ? 0 : 1, cfg.depth);
      std::uniform_int_distribution<LetterIndex> letter(
          0, static_cast<LetterIndex>(codec.size() - 1));

      std::size_t checks     = 0;
      std::size_t mismatches = 0;
      std::string first_mismatch;
      for (std::size_t s = 0; s < aut.size(); ++s) {
        auto const      id = static_cast<StateId>(s);
        AffineMap const f{aut.matrices()[aut.matrix_index(id)], aut.offset(id)};
        GroupWord const w = GroupWord::state(aut, id);
        for (std::size_t k = 0; k < cfg.samples; ++k) {
          std::vector<LetterIndex> u(length(rng));
          std::generate(u.begin(), u.end(), [&] { return letter(rng); });
          DigitWord const word = codec.decode(u);
          ++checks;
          if (act(w, word) != affine_apply_prefix(f, word)) {
            if (mismatches++ == 0) {
              first_mismatch = aut.label(id) + " on \"" + to_string(word) + "\"";
            }
          }
        }
      }
      auto const wd = well_definedness_check(aut);
      if (cfg.json_mode) {
        json line            = json::object();
        line["command"]      = "verify";
        line["seed"]         = cfg.seed;
        line["checks"]       = checks;
        line["mismatches"]   = mismatches;
        line["wd_failures"]  = wd.failures;
        out << line.dump() << '\n';
      } else {
        out << "seed=" << cfg.seed << " depth=" << cfg.depth
            << " samples=" << cfg.samples << " checks=" << checks
            << " mismatches=" << mismatches
            << " well_definedness_failures=" << wd.failures << '\n';
        if (mismatches > 0) {
          out << "first mismatch: " << first_mismatch << '\n';
        }
      }
      return mismatches == 0 && wd.passed() ? kOk : kMismatch;
    }

    int cmd_present(Config const& cfg, std::ostream& out) {
      auto const p = presentation_for(
          matrices_from_json(read_file(cfg.matrices_path)));
      if (cfg.json_mode) {
        json line             = json::object();
        line["command"]       = "present";
        line["presentation"]  = to_string(p);
        line["ascending_hnn"] = p.ascending_hnn;
        out << line.dump() << '\n';
      } else {
        out << to_string(p) << '\n';
      }
      return kOk;
    }

    int cmd_conj(Config const& cfg, std::ostream& out) {
      Automaton const aut = load_automaton(cfg);
      GroupWord const w1  = parse_word(aut, cfg.word);
      GroupWord const w2  = parse_word(aut, cfg.word2);
      auto const r = conjugacy_search_bounded(w1, w2, cfg.max_length,
                                              budget_of(cfg));
      if (cfg.json_mode) {
        json line          = json::object();
        line["command"]    = "conj";
        line["outcome"]    = r.found() ? "FOUND" : "INCONCLUSIVE";
        line["candidates"] = r.candidates;
        if (r.found()) {
          line["conjugator"] = to_string(*r.conjugator);
        }
        out << line.dump() << '\n';
      } else if (r.found()) {
        out << "FOUND conjugator=\"" << to_string(*r.conjugator)
            << "\" candidates=" << r.candidates << '\n';
      } else {
        out << "INCONCLUSIVE candidates=" << r.candidates
            << " (no conjugator of length <= " << cfg.max_length
            << "; this does not show non-conjugacy)\n";
      }
      return kOk;
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err) {
    Config  cfg;
    CLI::App app{"Automata realizing Z^d semidirect products by integer "
                 "matrices, and computation in their groups"};
    app.require_subcommand(1);
    app.add_flag("--json", cfg.json_mode,
                 "one JSON object per line on stdout");
    app.add_option("--seed", cfg.seed, "seed for randomized checks")
        ->capture_default_str();

    auto add_budget = [&](CLI::App* sub) {
      sub->add_option("--budget", cfg.budget,
                      "word-problem node budget (default 10^6, or "
                      "$AFFAUTO_NODE_BUDGET)")
          ->check(CLI::PositiveNumber);
    };
    auto add_cap = [&](CLI::App* sub) {
      sub->add_option("--alphabet-cap", cfg.alphabet_cap,
                      "largest allowed n^d")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
    };

    auto* build = app.add_subcommand("build", "build the automaton of a matrix list");
    build->add_option("--matrices", cfg.matrices_path, "matrix list JSON")
        ->required();
    build->add_option("--n", cfg.n, "base n >= 2")->required();
    build->add_flag("--dedup", cfg.dedup,
                    "merge behaviourally equivalent states (extension)");
    build->add_option("--format", cfg.format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();
    build->add_option("-o,--output", cfg.output_path, "output file (default stdout)");
    add_cap(build);

    auto* actc = app.add_subcommand("act", "apply a word to a digit word");
    actc->add_option("--automaton", cfg.automaton_path)->required();
    actc->add_option("--word", cfg.word)->required();
    actc->add_option("--input", cfg.input, "digit word, e.g. \"2,0 1,1\"")
        ->required();

    auto* wp = app.add_subcommand("wp", "decide whether a word is the identity");
    wp->add_option("--automaton", cfg.automaton_path)->required();
    wp->add_option("--word", cfg.word)->required();
    add_budget(wp);

    auto* rel = app.add_subcommand("relations",
                                   "check the conjugation and commutator relations");
    rel->add_option("--matrices", cfg.matrices_path)->required();
    rel->add_option("--n", cfg.n)->required();
    rel->add_flag("--inverse", cfg.inverse,
                  "also check the relations of inverse matrices (unimodular only)");
    add_budget(rel);
    add_cap(rel);

    auto* ver = app.add_subcommand("verify",
                                   "compare the automaton action with the affine maps");
    ver->add_option("--automaton", cfg.automaton_path)->required();
    ver->add_option("--depth", cfg.depth, "longest sampled prefix")
        ->capture_default_str();
    ver->add_option("--samples", cfg.samples, "prefixes per state")
        ->capture_default_str();

    auto* pres = app.add_subcommand("present", "print the group presentation");
    pres->add_option("--matrices", cfg.matrices_path)->required();

    auto* conj = app.add_subcommand("conj", "bounded search for a conjugator");
    conj->add_option("--automaton", cfg.automaton_path)->required();
    conj->add_option("--word", cfg.word, "w1")->required();
    conj->add_option("--target", cfg.word2, "w2")->required();
    conj->add_option("--max-length", cfg.max_length)->capture_default_str();
    add_budget(conj);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? kOk : kInvalidInput;
    }
    if (cfg.n != 0 && cfg.n < 2) {
      err << "error: --n must be at least 2\n";
      return kInvalidInput;
    }

    try {
      if (*build) {
        return cmd_build(cfg, out);
      }
      if (*actc) {
        return cmd_act(cfg, out);
      }
      if (*wp) {
        return cmd_wp(cfg, out);
      }
      if (*rel) {
        return cmd_relations(cfg, out);
      }
      if (*ver) {
        return cmd_verify(cfg, out);
      }
      if (*pres) {
        return cmd_present(cfg, out);
      }
      if (*conj) {
        return cmd_conj(cfg, out);
      }
    } catch (ResourceLimit const& e) {
      err << "error: " << e.what() << '\n';
      return kCapExceeded;
    } catch (InvalidInput const& e) {
      err << "error: " << e.what() << '\n';
      return kInvalidInput;
    } catch (std::exception const& e) {
      err << "internal error: " << e.what() << '\n';
      return kInternal;
    }
    return kInternal;
  }

}  // namespace affauto::cli
