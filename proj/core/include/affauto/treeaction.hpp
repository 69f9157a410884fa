#ifndef AFFAUTO_TREEACTION_HPP_
#define AFFAUTO_TREEACTION_HPP_

// Words in automaton states acting on the tree X_n^*, wreath recursion, the
// word problem, and relation checks in the group generated by an automaton.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "affauto/automaton.hpp"
#include "affauto/nadic.hpp"

namespace affauto {

  struct Factor {
    StateId state    = 0;
    int     exponent = 1;  // +1 or -1

    friend bool operator==(Factor const&, Factor const&) = default;
  };

  // A product s_1 s_2 ... s_k of states and inverse states. The leftmost
  // factor is applied last: (s_1 s_2)(u) = s_1(s_2(u)).
  class GroupWord {
   public:
    explicit GroupWord(Automaton const& aut) : _aut(&aut) {}
    // Throws InvalidInput for unknown state ids or exponents other than +-1.
    GroupWord(Automaton const& aut, std::vector<Factor> factors);

    static GroupWord state(Automaton const& aut, StateId s, int exponent = 1);

    [[nodiscard]] Automaton const& automaton() const noexcept {
      return *_aut;
    }
    [[nodiscard]] std::vector<Factor> const& factors() const noexcept {
      return _factors;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _factors.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _factors.empty();
    }

    // Adjacent s s^-1 and s^-1 s cancelled.
    [[nodiscard]] GroupWord reduced() const;
    [[nodiscard]] GroupWord inverse() const;
    // w^k, k may be negative.
    [[nodiscard]] GroupWord power(long k) const;

    // Concatenation; throws InvalidInput if the words live in different
    // automata.
    GroupWord&       operator*=(GroupWord const& other);
    friend GroupWord operator*(GroupWord a, GroupWord const& b) {
      return a *= b;
    }
    friend bool operator==(GroupWord const& a, GroupWord const& b) {
      return a._aut == b._aut && a._factors == b._factors;
    }

   private:
    Automaton const*    _aut;
    std::vector<Factor> _factors;
  };

  // Freely reduces a factor sequence in place.
  void free_reduce(std::vector<Factor>& factors);

  // [a, b] = a b a^-1 b^-1
  GroupWord commutator(GroupWord const& a, GroupWord const& b);

  struct RootPermutation {
    std::vector<LetterIndex> image;

    [[nodiscard]] bool is_identity() const noexcept;
    friend bool operator==(RootPermutation const&, RootPermutation const&)
        = default;
  };

  struct WreathRecursion {
    RootPermutation        root;
    std::vector<GroupWord> sections;  // indexed by dense letter
  };

  // pi_{gh} = pi_g pi_h, (gh)|_x = g|_{pi_h(x)} h|_x,
  // pi_{g^-1} = pi_g^-1, (g^-1)|_x = (g|_{pi_g^-1(x)})^-1.
  // Sections come back freely reduced.
  WreathRecursion root_and_sections(GroupWord const& w);

  DigitWord act(GroupWord const& w, DigitWord const& u);
  // In-place action on dense letters.
  void act(Automaton const& aut, std::span<Factor const> w,
           std::vector<LetterIndex>& u);

  inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

  // Overrides kDefaultNodeBudget from the AFFAUTO_NODE_BUDGET environment
  // variable when it is set to a positive integer.
  std::size_t default_node_budget();

  enum class WordProblemOutcome { identity, nontrivial, budget_exhausted };

  std::string_view to_string(WordProblemOutcome o) noexcept;

  struct WordProblemResult {
    WordProblemOutcome outcome = WordProblemOutcome::identity;
    // number of distinct section words explored
    std::size_t visited = 0;
    // For nontrivial words: a finite word moved by w.
    std::optional<std::vector<LetterIndex>> witness;

    [[nodiscard]] bool is_identity() const noexcept {
      return outcome == WordProblemOutcome::identity;
    }
    [[nodiscard]] bool is_nontrivial() const noexcept {
      return outcome == WordProblemOutcome::nontrivial;
    }
  };

  // Decides whether w acts trivially on X^*. Explores the closure of w under
  // taking sections (words keyed by their reduced factor sequence, with
  // trivially acting states removed); w is the identity iff no explored word
  // moves a first letter. Sections never get longer than w and draw on
  // finitely many states, so the closure is finite; `budget` caps its size.
  WordProblemResult is_identity(GroupWord const& w,
                                std::size_t budget = default_node_budget());

  // is_identity(a b^-1)
  WordProblemResult equal(GroupWord const& a, GroupWord const& b,
                          std::size_t budget = default_node_budget());

  // m_0 (m_{-e_j})^{-1} in component i; acts as u -> u + e_j. `axis` is
  // zero-based.
  GroupWord translation_word(Automaton const& aut, std::size_t component,
                             std::size_t axis);
  // m_0 of component i.
  GroupWord linear_word(Automaton const& aut, std::size_t component);

  struct RelationReport {
    std::size_t        component = 0;
    std::size_t        axis      = 0;
    bool               inverse   = false;
    std::string        lhs;
    std::string        rhs;
    WordProblemResult  result;

    [[nodiscard]] bool passed() const noexcept {
      return result.is_identity();
    }
  };

  // Checks m_0 t_j m_0^-1 = t_1^{m(1,j)} ... t_d^{m(d,j)} for the matrix of
  // `component`. With `inverse` the matrix is replaced by its integer inverse
  // and m_0 by m_0^-1; this needs a unimodular matrix (InvalidInput
  // otherwise).
  RelationReport verify_relation(Automaton const& aut, std::size_t component,
                                 std::size_t axis, bool inverse = false,
                                 std::size_t budget = default_node_budget());

  // Integer inverse of a unimodular matrix (adjugate times det).
  IntMatrix unimodular_inverse(IntMatrix const& m);

  struct ConjugacyResult {
    // c with c w1 c^-1 = w2, certified by the word problem.
    std::optional<GroupWord> conjugator;
    std::size_t              candidates = 0;
    // candidate checks that ran out of word-problem budget
    std::size_t inconclusive_checks = 0;

    [[nodiscard]] bool found() const noexcept {
      return conjugator.has_value();
    }
  };

  // Tries every freely reduced word of length <= max_length over the
  // generators m_0 (one per component) and t_1..t_d (component 0) and their
  // inverses, shortest first. A miss proves nothing about non-conjugacy.
  ConjugacyResult
  conjugacy_search_bounded(GroupWord const& w1, GroupWord const& w2,
                           std::size_t max_length,
                           std::size_t budget = default_node_budget());

  // Text syntax for words: factors `m[i]:(v1,...,vd)` or `t[j]` / `t[j]@i`
  // (j one-based, translation along e_j built in component i, default 0),
  // each optionally followed by `^k` (k a possibly negative integer),
  // separated by `*` or whitespace. An empty string or `1` is the identity.
  GroupWord   parse_word(Automaton const& aut, std::string_view text);
  std::string to_string(GroupWord const& w);

}  // namespace affauto

#endif  // AFFAUTO_TREEACTION_HPP_
