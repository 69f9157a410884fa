// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace affauto;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;
  };

  // Collects the first failure message, keeps counting.
  class Tally {
   public:
    void check(bool cond, std::string const& what) {
      ++_checks;
      if (!cond) {
        if (_failures++ == 0) {
          _first = what;
        }
      }
    }
    [[nodiscard]] Outcome outcome(std::string const& summary) const {
      std::ostringstream os;
      os << summary << " checks=" << _checks << " failures=" << _failures;
      if (_failures) {
        os << " first=\"" << _first << "\"";
      }
      return {_failures == 0, os.str()};
    }
    [[nodiscard]] std::size_t checks() const {
      return _checks;
    }

   private:
    std::size_t _checks   = 0;
    std::size_t _failures = 0;
    std::string _first;
  };

  using Set = std::vector<IntMatrix>;

  Set padded_sanov() {
    auto const [a, b] = sanov_pair();
    return block_extend({IntMatrix{{1}}, IntMatrix{{1}}}, {a, b});
  }

  Set gros_set() {
    auto const [a, b] = sanov_pair();
    return block_extend({IntMatrix::identity(4), IntMatrix::identity(4)}, {a, b});
  }

  // Matrix sets used by several criteria.
  std::vector<Set> test_sets() {
    auto const [a, b] = sanov_pair();
    return {
        {IntMatrix{{2}}},
        {IntMatrix{{1, 1}, {0, 1}}},
        padded_sanov(),
        {a, b},
        {IntMatrix{{1}}},
        {IntMatrix{{-1}}},
        {IntMatrix{{3}}},
        {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{0, -1}, {1, 0}}},
        {IntMatrix{{1, 2}, {3, 4}}},  // det -2
        {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 1}, {0, 1}}},
    };
  }

  bool coprime_set(Set const& ms, int n) {
    for (auto const& m : ms) {
      if (!coprime_to(m, n)) {
        return false;
      }
    }
    return true;
  }

  std::string describe(Set const& ms) {
    std::string s = "{";
    for (std::size_t i = 0; i < ms.size(); ++i) {
      s += (i ? "," : "") + to_string(ms[i]);
    }
    return s + "}";
  }

  Integer power(Integer const& base, std::size_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Shared checks (also reused at d = 6)
  ////////////////////////////////////////////////////////////////////////

  void check_counts(Set const& ms, int n, Tally& t, BuildOptions opts = {}) {
    auto const        aut   = build_union(ms, n, opts);
    std::size_t const d     = ms.front().dim();
    Integer           total = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      Integer const expected = power(2 * row_sum_norm(ms[i]), d);
      total += expected;
      t.check(Integer(aut.components()[i].by_offset.size()) == expected,
              "component count " + describe(ms));
      std::set<StateId> ids(aut.components()[i].by_offset.begin(),
                            aut.components()[i].by_offset.end());
      t.check(Integer(ids.size()) == expected, "component distinct states");
    }
    t.check(Integer(aut.size()) == total, "total count " + describe(ms));
    t.check(Integer(aut.size()) <= state_bound(ms), "bound " + describe(ms));
    t.check(Integer(dedup(aut).size()) <= state_bound(ms), "dedup bound");
  }

  void check_semantics_sampled(Automaton const& aut, oracle::Rng& rng,
                               std::vector<StateId> const& states,
                               std::size_t prefixes, std::size_t max_depth,
                               Tally& t) {
    std::size_t const d = aut.dim();
    int const         n = aut.base();
    for (StateId s : states) {
      auto const&     m = aut.matrices()[aut.matrix_index(s)];
      AffineMap const f{m, aut.offset(s)};
      GroupWord const w = GroupWord::state(aut, s);
      for (std::size_t k = 0; k < prefixes; ++k) {
        auto const digits = rng.word(
            n, d, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_depth))));
        auto const u = oracle::from_digits(digits, n, d);
        t.check(act(w, u) == affine_apply_prefix(f, u),
                aut.label(s) + " on \"" + to_string(u) + "\"");
      }
    }
  }

  void check_group_laws(Automaton const& aut, oracle::Rng& rng, std::size_t words,
                        std::size_t max_depth, Tally& t) {
    std::size_t const d = aut.dim();
    int const         n = aut.base();
    for (std::size_t trial = 0; trial < words; ++trial) {
      auto const a = oracle::random_word(aut, rng, static_cast<std::size_t>(rng.uniform(0, 8)));
      auto const b = oracle::random_word(aut, rng, static_cast<std::size_t>(rng.uniform(0, 8)));
      auto const k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_depth)));
      auto const u = oracle::from_digits(rng.word(n, d, k), n, d);
      t.check(act(a * b, u) == act(a, act(b, u)), "homomorphism " + to_string(a));
      t.check(act(a * a.inverse(), u) == u, "inverse " + to_string(a));
      t.check(act(a.inverse(), act(a, u)) == u, "inverse image " + to_string(a));
      auto const tlen = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(k)));
      DigitWord const prefix{n, d, {u.letters.begin(), u.letters.begin() + tlen}};
      auto const      full = act(a, u);
      t.check(act(a, prefix) == DigitWord{n, d, {full.letters.begin(),
                                                 full.letters.begin() + tlen}},
              "prefix compatibility " + to_string(a));
      t.check(is_identity(a * a.inverse(), 1'000'000).is_identity(),
              "is_identity(w w^-1) " + to_string(a));
      // a (m_0 tau_j m_0^-1) (prod_r tau_r^{m(r,j)})^-1 a^-1 does not reduce freely
      auto const  c   = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(aut.components().size()) - 1));
      auto const  j   = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(d) - 1));
      auto const& mat = aut.matrices()[aut.components()[c].matrix_index];
      GroupWord   rhs(aut);
      for (std::size_t r = 0; r < d; ++r) {
        rhs *= translation_word(aut, c, r).power(mat(r, j).get_si());
      }
      auto const m0  = linear_word(aut, c);
      auto const rel = a * m0 * translation_word(aut, c, j) * m0.inverse() * rhs.inverse()
                       * a.inverse();
      t.check(!rel.reduced().empty(), "relation word not freely trivial");
      t.check(is_identity(rel, 1'000'000).is_identity(), "conjugated relation " + to_string(a));
    }
  }

  void check_relations(Set const& ms, int n, Tally& t, BuildOptions opts = {}) {
    auto const aut = build_union(ms, n, opts);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = 0; j < aut.dim(); ++j) {
        auto const r = verify_relation(aut, i, j, false, 1'000'000);
        t.check(r.passed(), "relation " + describe(ms) + " n=" + std::to_string(n)
                                + " i=" + std::to_string(i) + " j=" + std::to_string(j + 1)
                                + " " + std::string(to_string(r.result.outcome)));
        if (is_unimodular(ms[i])) {
          auto const ri = verify_relation(aut, i, j, true, 1'000'000);
          t.check(ri.passed(), "inverse relation " + describe(ms) + " n="
                                   + std::to_string(n) + " j=" + std::to_string(j + 1));
        }
      }
    }
    for (std::size_t c = 0; c < ms.size(); ++c) {
      for (std::size_t i = 0; i < aut.dim(); ++i) {
        for (std::size_t j = i + 1; j < aut.dim(); ++j) {
          auto const r = is_identity(commutator(translation_word(aut, c, i),
                                                translation_word(aut, c, j)),
                                     1'000'000);
          t.check(r.is_identity(), "commutator " + describe(ms));
        }
      }
    }
    for (auto const& c : relator_check(aut, presentation_for(ms), 1'000'000).checks) {
      t.check(c.passed(), "relator " + c.relator + " in " + describe(ms) + " n="
                              + std::to_string(n));
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Criteria
  ////////////////////////////////////////////////////////////////////////

  Outcome c1_state_counts() {
    Tally t;
    check_counts({IntMatrix{{2}}}, 3, t);
    check_counts({IntMatrix{{1, 1}, {0, 1}}}, 3, t);
    check_counts(padded_sanov(), 3, t);
    // exact values
    t.check(build_single(IntMatrix{{2}}, 3).size() == 4, "[[2]] has 4 states");
    t.check(state_bound({IntMatrix{{2}}}) == 4, "[[2]] bound 4");
    t.check(build_single(IntMatrix{{1, 1}, {0, 1}}, 3).size() == 16, "shear has 16");
    t.check(build_union(padded_sanov(), 3).size() == 432, "padded sanov 432");
    t.check(state_bound(padded_sanov()) == 432, "padded sanov bound 432");
    return t.outcome("sets=3");
  }

  Outcome c2_well_definedness() {
    Tally       t;
    std::size_t automata = 0;
    for (auto const& ms : test_sets()) {
      for (int n : {2, 3, 5}) {
        if (!coprime_set(ms, n)) {
          continue;
        }
        ++automata;
        auto const r = well_definedness_check(build_union(ms, n));
        t.check(r.passed(), describe(ms) + " n=" + std::to_string(n));
      }
    }
    return t.outcome("automata=" + std::to_string(automata));
  }

  Outcome c3_oracle_semantics() {
    Tally       t;
    std::size_t exhaustive = 0;
    // exhaustive, n = 2, d <= 2
    std::vector<Set> small{{IntMatrix{{1}}},
                           {IntMatrix{{-1}}},
                           {IntMatrix{{3}}},
                           {IntMatrix{{-3}}},
                           {IntMatrix::identity(2)},
                           {IntMatrix{{1, 1}, {0, 1}}},
                           {IntMatrix{{0, 1}, {1, 0}}},
                           {IntMatrix{{2, 1}, {1, 1}}},
                           {IntMatrix{{1, 2}, {0, 1}}, IntMatrix{{1, 0}, {2, 1}}}};
    for (auto const& ms : small) {
      auto const        aut = build_union(ms, 2);
      std::size_t const d   = aut.dim();
      for (std::size_t k = 0; k <= 6; ++k) {
        auto const words = oracle::all_words(2, d, k);
        for (StateId s = 0; s < aut.size(); ++s) {
          auto const      mat = oracle::to_mat(aut.matrices()[aut.matrix_index(s)]);
          oracle::Vec     v;
          for (auto const& c : aut.offset(s).coords()) {
            v.push_back(c.get_si());
          }
          AffineMap const f{aut.matrices()[aut.matrix_index(s)], aut.offset(s)};
          GroupWord const w = GroupWord::state(aut, s);
          for (auto const& digits : words) {
            auto const u     = oracle::from_digits(digits, 2, d);
            auto const image = act(w, u);
            ++exhaustive;
            t.check(image == affine_apply_prefix(f, u),
                    aut.label(s) + " on \"" + to_string(u) + "\"");
            t.check(oracle::to_digits(image) == oracle::affine_prefix(mat, v, 2, digits),
                    "integer oracle " + aut.label(s));
          }
        }
      }
    }
    // random (M, v, n, u), |m_ij| <= 3, depth <= 10
    oracle::Rng rng(20111019);
    std::size_t random_trials = 0;
    std::size_t configs       = 0;
    while (random_trials < 12000) {
      std::size_t const d  = static_cast<std::size_t>(rng.uniform(1, 3));
      int const         n  = std::array{2, 3, 5}[static_cast<std::size_t>(rng.uniform(0, 2))];
      auto const        m  = rng.matrix(d, 3);
      long const        dt = oracle::leibniz_det(m);
      if (dt == 0 || oracle::gcd(dt, n) != 1 || oracle::norm(m) == 0) {
        continue;
      }
      ++configs;
      auto const aut = build_single(oracle::from_mat(m), n);
      for (int trial = 0; trial < 100; ++trial) {
        auto const  s = static_cast<StateId>(rng.uniform(0, static_cast<long>(aut.size()) - 1));
        oracle::Vec v;
        for (auto const& c : aut.offset(s).coords()) {
          v.push_back(c.get_si());
        }
        auto const digits = rng.word(n, d, static_cast<std::size_t>(rng.uniform(0, 10)));
        auto const u      = oracle::from_digits(digits, n, d);
        auto const image  = act(GroupWord::state(aut, s), u);
        ++random_trials;
        t.check(image == affine_apply_prefix(AffineMap{aut.matrices()[0], aut.offset(s)}, u),
                aut.label(s) + " of " + to_string(aut.matrices()[0]) + " n="
                    + std::to_string(n) + " on \"" + to_string(u) + "\"");
        t.check(oracle::to_digits(image) == oracle::affine_prefix(m, v, n, digits),
                "integer oracle");
      }
    }
    return t.outcome("exhaustive=" + std::to_string(exhaustive) + " random="
                     + std::to_string(random_trials) + " configs=" + std::to_string(configs));
  }

  Outcome c4_group_laws() {
    Tally       t;
    oracle::Rng rng(4);
    std::size_t words = 0;
    for (auto const& ms : test_sets()) {
      int const n = coprime_set(ms, 3) ? 3 : 5;
      auto const aut = build_union(ms, n);
      check_group_laws(aut, rng, 150, 10, t);
      words += 150;
    }
    return t.outcome("words=" + std::to_string(words));
  }

  Outcome c5_relations() {
    Tally       t;
    std::size_t configs = 0;
    for (auto const& ms : test_sets()) {
      for (int n : {2, 3}) {
        if (!coprime_set(ms, n)) {
          continue;
        }
        ++configs;
        check_relations(ms, n, t);
      }
    }
    // BS(1,2): t a t^-1 = a^2 for M = [[2]], n = 3
    auto const bs  = build_single(IntMatrix{{2}}, 3);
    auto const p   = presentation_for({IntMatrix{{2}}});
    auto const rep = relator_check(bs, p);
    t.check(to_string(p) == "< a, t | t a t^-1 a^-2 > (ascending HNN)", "BS(1,2) form");
    t.check(rep.passed(), "BS(1,2) relator");
    return t.outcome("configs=" + std::to_string(configs));
  }

  Outcome c6_negative_controls() {
    Tally t;
    // tau_{e_1} is not the identity
    for (auto const& ms : {Set{IntMatrix{{1}}}, Set{IntMatrix{{2}}}, Set{IntMatrix::identity(2)}}) {
      auto const aut = build_union(ms, 3);
      auto const r   = is_identity(translation_word(aut, 0, 0));
      t.check(r.is_nontrivial(), "tau_e1 nontrivial in " + describe(ms));
      if (r.witness) {
        auto const u = aut.codec().decode(*r.witness);
        t.check(act(translation_word(aut, 0, 0), u) != u, "witness moves");
      }
    }
    // corrupted relator t a t^-1 = a^3
    auto const bs = build_single(IntMatrix{{2}}, 3);
    auto       p  = presentation_for({IntMatrix{{2}}});
    p.relators[0].word.back().exponent = -3;
    auto const bad = relator_check(bs, p);
    t.check(!bad.passed() && bad.checks[0].result.is_nontrivial(), "corrupted relator fails");
    auto const w  = relator_word(bs, p, p.relators[0]);
    auto const u4 = parse_digit_word("0 0 0 0", 3, 1);
    t.check(act(w, u4) != u4, "depth-4 prefix distinguishes");
    // corrupted automaton
    auto states = bs.states();
    states[3].next[2] = 0;
    Automaton const corrupt(3, 1, bs.matrices(), states, bs.components());
    auto const      wd = well_definedness_check(corrupt);
    t.check(!wd.passed() && wd.violations.front().state == 3
                && wd.violations.front().letter == 2,
            "corrupted next table detected at (m_1, 2)");
    auto out_states = bs.states();
    std::swap(out_states[1].output[0], out_states[1].output[2]);
    Automaton const corrupt_out(3, 1, bs.matrices(), out_states, bs.components());
    t.check(!well_definedness_check(corrupt_out).passed(), "corrupted output detected");
    // wrong relation: m_0 t m_0^-1 = t^3 for [[2]]
    auto const t1 = translation_word(bs, 0, 0);
    auto const m0 = linear_word(bs, 0);
    t.check(equal(m0 * t1 * m0.inverse(), t1.power(3)).is_nontrivial(), "wrong conjugation");
    // a bounded conjugacy search never certifies non-conjugacy
    auto const id = build_single(IntMatrix{{1}}, 2);
    auto const ti = translation_word(id, 0, 0);
    t.check(!conjugacy_search_bounded(ti, ti.power(2), 3).found(), "tau vs tau^2 inconclusive");
    return t.outcome("controls=7");
  }

  Outcome c7_sanov() {
    Tally t;
    auto const [a, b] = sanov_pair();
    oracle::Mat const A = oracle::to_mat(a);
    oracle::Mat const B = oracle::to_mat(b);
    oracle::Mat const Ai = oracle::to_mat(unimodular_inverse(a));
    oracle::Mat const Bi = oracle::to_mat(unimodular_inverse(b));
    t.check(oracle::mul(A, Ai) == oracle::Mat{{1, 0}, {0, 1}}, "A inverse");
    std::vector<oracle::Mat> const gens{A, Ai, B, Bi};
    std::set<oracle::Mat>          seen;
    std::size_t                    count = 0;
    std::vector<int>               word;
    std::function<void(oracle::Mat const&)> grow = [&](oracle::Mat const& m) {
      ++count;
      seen.insert(m);
      if (word.size() == 8) {
        return;
      }
      for (int s = 0; s < 4; ++s) {
        if (!word.empty() && (word.back() ^ 1) == s) {
          continue;
        }
        word.push_back(s);
        grow(oracle::mul(m, gens[static_cast<std::size_t>(s)]));
        word.pop_back();
      }
    };
    grow(oracle::Mat{{1, 0}, {0, 1}});
    t.check(count == 13121, "reduced word count");
    t.check(seen.size() == count, "pairwise distinct");
    return t.outcome("words=" + std::to_string(count) + " distinct=" + std::to_string(seen.size()));
  }

  Outcome c8_round_trips() {
    Tally t;
    for (auto const& ms : test_sets()) {
      int const  n    = coprime_set(ms, 3) ? 3 : 5;
      auto const aut  = build_union(ms, n);
      auto const text = to_json(aut);
      auto const back = automaton_from_json(text);
      t.check(back == aut, "structural identity " + describe(ms));
      t.check(to_json(back) == text, "byte identity " + describe(ms));
      auto const small = dedup(aut);
      t.check(automaton_from_json(to_json(small)) == small, "dedup round trip");
    }
    oracle::Rng rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
      int const         n = static_cast<int>(rng.uniform(2, 7));
      std::size_t const d = static_cast<std::size_t>(rng.uniform(1, 4));
      std::size_t const k = static_cast<std::size_t>(rng.uniform(0, 12));
      auto const        w = oracle::from_digits(rng.word(n, d, k), n, d);
      auto const        u = decode(w);
      t.check(encode(u, n, k) == w, "encode(decode(w))");
      t.check(decode(encode(u, n, k)) == u, "decode(encode(u))");
    }
    return t.outcome("automata=" + std::to_string(test_sets().size()) + " words=1000");
  }

  Outcome c9_gros_pipeline() {
    Tally             t;
    Set const         ms = gros_set();
    BuildOptions const opts{64};
    auto const         start = std::chrono::steady_clock::now();

    // counts
    auto const aut = build_union(ms, 2, opts);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      Integer const norm = row_sum_norm(ms[i]);
      t.check(norm == 3, "block norm read off");
      t.check(Integer(aut.components()[i].by_offset.size()) == power(2 * norm, 6),
              "component count (2*3)^6");
    }
    t.check(aut.size() == 2 * 46656, "total 93312");
    t.check(Integer(aut.size()) <= state_bound(ms), "bound");
    t.check(aut.alphabet_size() == 64, "64 letters");

    // criterion 2
    t.check(well_definedness_check(aut).passed(), "well-definedness d=6");

    // criterion 3, depth <= 4, 100 prefixes per sampled state
    oracle::Rng          rng(9);
    std::vector<StateId> states;
    for (std::size_t c = 0; c < ms.size(); ++c) {
      states.push_back(aut.state_id(c, IntVector(6)));
      for (std::size_t j = 0; j < 6; ++j) {
        states.push_back(aut.state_id(c, -IntVector::unit(6, j)));
      }
    }
    for (int i = 0; i < 400; ++i) {
      states.push_back(static_cast<StateId>(rng.uniform(0, static_cast<long>(aut.size()) - 1)));
    }
    check_semantics_sampled(aut, rng, states, 100, 4, t);

    // criterion 4, depth <= 4
    check_group_laws(aut, rng, 100, 4, t);

    // criterion 5
    check_relations(ms, 2, t, opts);

    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.check(secs < 300.0, "runtime under 5 minutes");
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << "states=" << aut.size() << " runtime=" << secs << "s";
    return t.outcome(os.str());
  }

}  // namespace

int main() {
  struct Criterion {
    char const*              id;
    char const*              name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {"C1", "state-count exactness", c1_state_counts},
      {"C2", "well-definedness", c2_well_definedness},
      {"C3", "oracle semantics", c3_oracle_semantics},
      {"C4", "group laws", c4_group_laws},
      {"C5", "relations", c5_relations},
      {"C6", "negative controls", c6_negative_controls},
      {"C7", "sanov freeness evidence", c7_sanov},
      {"C8", "round trips", c8_round_trips},
      {"C9", "d=6 pipeline", c9_gros_pipeline},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double const secs
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s %s (%.2fs): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
