#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace affauto;

namespace {

  DigitWord digits(Automaton const& aut, std::string const& text) {
    return parse_digit_word(text, aut.base(), aut.dim());
  }

  // Exhaustive finite-depth falsifier: true iff w fixes every word of
  // length <= depth.
  bool fixes_up_to(GroupWord const& w, std::size_t depth) {
    auto const& aut = w.automaton();
    for (std::size_t k = 0; k <= depth; ++k) {
      for (auto const& u : oracle::all_words(aut.base(), aut.dim(), k)) {
        auto const du = oracle::from_digits(u, aut.base(), aut.dim());
        if (act(w, du) != du) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST_SUITE("treeaction") {
  TEST_CASE("act examples") {
    auto const aut = build_single(IntMatrix{{1}}, 3);
    auto const tau = translation_word(aut, 0, 0);
    CHECK(to_string(act(tau, digits(aut, "0 0"))) == "1 0");
    CHECK(oracle::affine_prefix({{1}}, {1}, 3, {{0}, {0}})
          == oracle::Digits{{1}, {0}});
    CHECK(to_string(act(tau, digits(aut, "2 2"))) == "0 0");
    CHECK(to_string(act(GroupWord(aut), digits(aut, "2 1 0"))) == "2 1 0");
  }

  TEST_CASE("words compose right to left") {
    auto const aut = build_single(IntMatrix{{2}}, 3);
    auto const m0  = GroupWord::state(aut, aut.state_id(0, IntVector{0}));
    auto const tau = translation_word(aut, 0, 0);
    // (m_0 tau)(u) = 2(u + 1), (tau m_0)(u) = 2u + 1
    auto const u = digits(aut, "1 0 0");  // 1
    CHECK(decode(act(m0 * tau, u)) == IntVector{4});
    CHECK(decode(act(tau * m0, u)) == IntVector{3});
  }

  TEST_CASE("root_and_sections examples") {
    auto const    aut = build_single(IntMatrix{{2}}, 3);
    StateId const m0  = aut.state_id(0, IntVector{0});
    StateId const m1  = aut.state_id(0, IntVector{1});
    auto const    rs  = root_and_sections(GroupWord::state(aut, m0));
    CHECK(rs.root.image == std::vector<LetterIndex>{0, 2, 1});
    REQUIRE(rs.sections.size() == 3);
    CHECK(rs.sections[0] == GroupWord::state(aut, m0));
    CHECK(rs.sections[1] == GroupWord::state(aut, m0));
    CHECK(rs.sections[2] == GroupWord::state(aut, m1));

    auto const w   = GroupWord::state(aut, m1) * GroupWord::state(aut, m1, -1);
    auto const rsw = root_and_sections(w);
    CHECK(rsw.root.is_identity());
    for (auto const& s : rsw.sections) {
      CHECK(s.empty());
    }
  }

  TEST_CASE("wreath recursion reproduces the action") {
    oracle::Rng rng(41);
    auto const  aut = build_union({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, -1}}}, 3);
    for (int trial = 0; trial < 300; ++trial) {
      auto const w = oracle::random_word(aut, rng,
                                         static_cast<std::size_t>(rng.uniform(0, 6)));
      auto const rs = root_and_sections(w);
      auto const u  = oracle::from_digits(rng.word(3, 2, 5), 3, 2);
      auto const image = act(w, u);
      LetterIndex const x  = aut.codec().encode(u.letters[0]);
      REQUIRE(aut.codec().encode(image.letters[0]) == rs.root.image[x]);
      DigitWord tail{3, 2, {u.letters.begin() + 1, u.letters.end()}};
      DigitWord image_tail{3, 2, {image.letters.begin() + 1, image.letters.end()}};
      REQUIRE(act(rs.sections[x], tail) == image_tail);
      REQUIRE(rs.sections[x].size() <= w.size());
      auto reduced = rs.sections[x].factors();
      free_reduce(reduced);
      REQUIRE(reduced == rs.sections[x].factors());
    }
  }

  TEST_CASE("group laws on random words") {
    oracle::Rng rng(42);
    auto const  aut = build_union({IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 0}, {1, 1}}}, 2);
    for (int trial = 0; trial < 300; ++trial) {
      auto const a = oracle::random_word(aut, rng, static_cast<std::size_t>(rng.uniform(0, 8)));
      auto const b = oracle::random_word(aut, rng, static_cast<std::size_t>(rng.uniform(0, 8)));
      auto const k = static_cast<std::size_t>(rng.uniform(0, 10));
      auto const u = oracle::from_digits(rng.word(2, 2, k), 2, 2);
      REQUIRE(act(a * b, u) == act(a, act(b, u)));
      REQUIRE(act(a * a.inverse(), u) == u);
      REQUIRE(act(a.inverse(), act(a, u)) == u);
      auto const t = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(k)));
      DigitWord  prefix{2, 2, {u.letters.begin(), u.letters.begin() + t}};
      auto const full = act(a, u);
      REQUIRE(act(a, prefix)
              == DigitWord{2, 2, {full.letters.begin(), full.letters.begin() + t}});
      REQUIRE(is_identity(a * a.inverse()).is_identity());
    }
  }

  TEST_CASE("word reduction and inverse") {
    auto const aut = build_single(IntMatrix{{2}}, 3);
    GroupWord const w(aut, {{1, 1}, {2, 1}, {2, -1}, {1, -1}, {3, 1}});
    CHECK(w.reduced() == GroupWord(aut, {{3, 1}}));
    CHECK(w.inverse().factors().front() == Factor{3, -1});
    CHECK(w.power(0).empty());
    CHECK(w.power(-2).size() == 10);
    CHECK_THROWS_AS(GroupWord(aut, {{9, 1}}), InvalidInput);
    CHECK_THROWS_AS(GroupWord(aut, {{0, 2}}), InvalidInput);
    auto const other = build_single(IntMatrix{{2}}, 3);
    CHECK_THROWS_AS(w * GroupWord(other, {{0, 1}}), InvalidInput);
  }

  TEST_CASE("is_identity examples") {
    auto const aut1 = build_single(IntMatrix{{1}}, 3);
    CHECK(is_identity(GroupWord(aut1)).is_identity());

    auto const r = is_identity(translation_word(aut1, 0, 0));
    REQUIRE(r.is_nontrivial());
    REQUIRE(r.witness.has_value());
    auto const moved = aut1.codec().decode(*r.witness);
    CHECK(act(translation_word(aut1, 0, 0), moved) != moved);

    auto const aut2 = build_single(IntMatrix::identity(2), 3);
    auto const c    = commutator(translation_word(aut2, 0, 0),
                                 translation_word(aut2, 0, 1));
    CHECK(is_identity(c).is_identity());
  }

  TEST_CASE("witnesses of nontrivial words are genuine") {
    oracle::Rng rng(43);
    auto const  aut = build_single(IntMatrix{{1, 1}, {0, 1}}, 3);
    int         nontrivial = 0;
    for (int trial = 0; trial < 200; ++trial) {
      auto const w = oracle::random_word(aut, rng, static_cast<std::size_t>(rng.uniform(1, 5)));
      auto const r = is_identity(w);
      REQUIRE(r.outcome != WordProblemOutcome::budget_exhausted);
      if (r.is_nontrivial()) {
        ++nontrivial;
        auto const u = aut.codec().decode(*r.witness);
        REQUIRE(act(w, u) != u);
      }
    }
    CHECK(nontrivial > 100);
  }

  TEST_CASE("closure search and exhaustive action agree on small automata") {
    oracle::Rng rng(44);
    std::vector<Automaton> auts;
    auts.push_back(build_single(IntMatrix{{1}}, 2));
    auts.push_back(build_single(IntMatrix{{-1}}, 2));
    auts.push_back(build_single(IntMatrix{{3}}, 2));
    auts.push_back(build_single(IntMatrix::identity(2), 2));
    auts.push_back(build_single(IntMatrix{{0, 1}, {1, 0}}, 2));
    int identities = 0;
    for (auto const& aut : auts) {
      for (int trial = 0; trial < 150; ++trial) {
        auto const w
            = oracle::random_word(aut, rng, static_cast<std::size_t>(rng.uniform(0, 4)));
        auto const r     = is_identity(w);
        bool const fixes = fixes_up_to(w, aut.dim() == 1 ? 6 : 4);
        REQUIRE(r.outcome != WordProblemOutcome::budget_exhausted);
        if (r.is_identity()) {
          ++identities;
          REQUIRE(fixes);
        } else {
          auto const u = aut.codec().decode(*r.witness);
          REQUIRE(act(w, u) != u);
          if (!fixes) {
            continue;
          }
          // moved only below the exhaustive depth
          REQUIRE(r.witness->size() > (aut.dim() == 1 ? 6U : 4U));
        }
      }
    }
    CHECK(identities > 20);
  }

  TEST_CASE("budget exhaustion is its own outcome") {
    auto const aut = build_single(IntMatrix{{1, 1}, {0, 1}}, 2);
    auto const m0  = linear_word(aut, 0);
    auto const w   = commutator(m0, translation_word(aut, 0, 0));
    auto const r   = is_identity(w, 1);
    CHECK(r.outcome == WordProblemOutcome::budget_exhausted);
    CHECK(to_string(r.outcome) == "BUDGET-EXCEEDED");
  }

  TEST_CASE("equal examples") {
    auto const aut = build_single(IntMatrix::identity(2), 3);
    auto const t1  = translation_word(aut, 0, 0);
    auto const t2  = translation_word(aut, 0, 1);
    CHECK(equal(t1 * t2, t1 * t2).is_identity());
    CHECK(equal(t1 * t2, t2 * t1).is_identity());
    CHECK(equal(t1, t1.power(2)).is_nontrivial());
    CHECK(to_string(act(t1, digits(aut, "0,0 0,0")))
          != to_string(act(t1.power(2), digits(aut, "0,0 0,0"))));
  }

  TEST_CASE("translation words act as u + e_j") {
    auto const aut = build_single(IntMatrix{{1}}, 2);
    auto const tau = translation_word(aut, 0, 0);
    // binary odometer: 0 1 1 (=6) -> 1 1 1 (=7) -> 0 0 0 (=8 mod 8)
    CHECK(to_string(act(tau, digits(aut, "0 1 1"))) == "1 1 1");
    CHECK(to_string(act(tau, digits(aut, "1 1 1"))) == "0 0 0");

    auto const aut2 = build_single(IntMatrix{{2, 1}, {1, 1}}, 3);
    CHECK(to_string(act(translation_word(aut2, 0, 1), digits(aut2, "0,0")))
          == "0,1");

    oracle::Rng rng(45);
    for (auto const& m : {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}}) {
      auto const  a = build_single(m, 3);
      std::size_t d = m.dim();
      for (std::size_t j = 0; j < d; ++j) {
        auto const tj = translation_word(a, 0, j);
        oracle::Vec e(d, 0);
        e[j] = 1;
        oracle::Mat id(d, oracle::Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i) {
          id[i][i] = 1;
        }
        for (int trial = 0; trial < 50; ++trial) {
          auto const u = rng.word(3, d, static_cast<std::size_t>(rng.uniform(0, 8)));
          REQUIRE(oracle::to_digits(act(tj, oracle::from_digits(u, 3, d)))
                  == oracle::affine_prefix(id, e, 3, u));
        }
      }
    }
  }

  TEST_CASE("verify_relation examples") {
    auto const a = build_single(IntMatrix{{1, 1}, {0, 1}}, 2);
    auto const r = verify_relation(a, 0, 1);
    CHECK(r.passed());
    CHECK(r.lhs == "m[0]:(0,0) * m[0]:(0,0) * m[0]:(0,-1)^-1 * m[0]:(0,0)^-1");
    CHECK(r.rhs
          == "m[0]:(0,0) * m[0]:(-1,0)^-1 * m[0]:(0,0) * m[0]:(0,-1)^-1");

    auto const bs = build_single(IntMatrix{{2}}, 3);
    CHECK(verify_relation(bs, 0, 0).passed());
    CHECK_THROWS_AS(verify_relation(bs, 0, 0, true), InvalidInput);

    auto const id = build_single(IntMatrix::identity(3), 2);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(verify_relation(id, 0, j).passed());
    }
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(verify_relation(a, 0, j, true).passed());
    }
  }

  TEST_CASE("unimodular inverse") {
    IntMatrix const m{{2, 1, 0}, {1, 1, 0}, {0, 3, 1}};
    CHECK(m * unimodular_inverse(m) == IntMatrix::identity(3));
    CHECK(unimodular_inverse(IntMatrix{{-1}}) == IntMatrix{{-1}});
    CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2}}), InvalidInput);
  }

  TEST_CASE("conjugacy_search_bounded") {
    auto const aut = build_single(IntMatrix{{2}}, 3);
    auto const t   = translation_word(aut, 0, 0);
    auto const m0  = linear_word(aut, 0);

    auto const same = conjugacy_search_bounded(t, t, 2);
    REQUIRE(same.found());
    CHECK(same.conjugator->empty());

    auto const conj = conjugacy_search_bounded(t, m0 * t * m0.inverse(), 1);
    REQUIRE(conj.found());
    CHECK(equal(*conj.conjugator * t * conj.conjugator->inverse(),
                m0 * t * m0.inverse())
              .is_identity());

    auto const id  = build_single(IntMatrix{{1}}, 2);
    auto const ti  = translation_word(id, 0, 0);
    auto const not_found = conjugacy_search_bounded(ti, ti.power(2), 3);
    CHECK_FALSE(not_found.found());
    CHECK(not_found.candidates > 1);
  }

  TEST_CASE("word syntax") {
    auto const aut = build_union({IntMatrix::identity(2), IntMatrix{{1, 1}, {0, 1}}}, 3);
    auto const w = parse_word(aut, "m[0]:(0,0) * t[2]^-1 * m[0]:(0,0)^-1");
    CHECK(w.size() == 4);
    CHECK(to_string(w)
          == "m[0]:(0,0) * m[0]:(0,-1) * m[0]:(0,0)^-1 * m[0]:(0,0)^-1");
    CHECK(parse_word(aut, "t[1] t[2]") == parse_word(aut, "t[1]*t[2]"));
    CHECK(parse_word(aut, "t[1]@1") == translation_word(aut, 1, 0));
    CHECK(parse_word(aut, "t[1]^3").size() == 6);
    CHECK(parse_word(aut, "m[1]:( -1 , 0 )^-2").size() == 2);
    CHECK(parse_word(aut, "").empty());
    CHECK(parse_word(aut, "1").empty());
    CHECK(to_string(GroupWord(aut)) == "1");
    CHECK(parse_word(aut, to_string(w)) == w);
    CHECK_THROWS_AS(parse_word(aut, "m[0]:(5,0)"), ParseError);
    CHECK_THROWS_AS(parse_word(aut, "m[2]:(0,0)"), ParseError);
    CHECK_THROWS_AS(parse_word(aut, "t[3]"), ParseError);
    CHECK_THROWS_AS(parse_word(aut, "t[0]"), ParseError);
    CHECK_THROWS_AS(parse_word(aut, "t[1]@7"), ParseError);
    CHECK_THROWS_AS(parse_word(aut, "x"), ParseError);
    CHECK_THROWS_AS(parse_word(aut, "m[0]:(0,0"), ParseError);
  }
}
