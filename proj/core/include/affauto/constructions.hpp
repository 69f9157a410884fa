#ifndef AFFAUTO_CONSTRUCTIONS_HPP_
#define AFFAUTO_CONSTRUCTIONS_HPP_

// Block-diagonal extensions of matrix tuples, a stock free pair in SL_2(Z),
// and the presentation <a_1..a_d, t_1..t_m | [a_i,a_j], t a_j t^-1 = ...>
// of the group generated by the automaton of a matrix list.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "affauto/automaton.hpp"
#include "affauto/linalg.hpp"
#include "affauto/treeaction.hpp"

namespace affauto {

  // i-th result is diag(uppers[i], lowers[i]).
  std::vector<IntMatrix> block_extend(std::vector<IntMatrix> const& uppers,
                                      std::vector<IntMatrix> const& lowers);

  // [[1,2],[0,1]] and [[1,0],[2,1]], which generate a free group of rank 2.
  std::pair<IntMatrix, IntMatrix> sanov_pair();

  struct Syllable {
    std::size_t generator = 0;
    long        exponent  = 1;

    friend bool operator==(Syllable const&, Syllable const&) = default;
  };

  struct Relator {
    std::vector<Syllable> word;
    // printed as [x,y] when set
    bool commutator = false;

    friend bool operator==(Relator const&, Relator const&) = default;
  };

  // Generators 0..d-1 are a_1..a_d, generators d..d+m-1 the stable letters.
  struct Presentation {
    std::size_t              dim = 0;
    std::vector<std::string> generators;
    std::vector<Relator>     relators;
    // some matrix is not unimodular: the t_k only conjugate Z^d into itself
    bool ascending_hnn = false;

    [[nodiscard]] std::size_t stable_letters() const noexcept {
      return generators.size() - dim;
    }
  };

  // Merges adjacent syllables in the same generator and drops zero powers.
  void free_reduce(std::vector<Syllable>& word);

  Presentation presentation_for(std::vector<IntMatrix> const& ms);

  // "< a1, a2, t | [a1,a2], t a2 t^-1 a2^-1 a1^-1 >"
  std::string to_string(Presentation const& p);
  std::string to_string(Presentation const& p, Relator const& r);

  // a_j -> t_j built in component 0, t_k -> m_0 of component k.
  GroupWord relator_word(Automaton const& aut, Presentation const& p,
                         Relator const& r);

  struct RelatorCheck {
    std::string       relator;
    WordProblemResult result;

    [[nodiscard]] bool passed() const noexcept {
      return result.is_identity();
    }
  };

  struct RelatorReport {
    std::vector<RelatorCheck> checks;

    [[nodiscard]] bool passed() const noexcept;
  };

  // Rewrites every relator into the automaton and runs the word problem on
  // it. Throws InvalidInput if the automaton does not match the presentation.
  RelatorReport relator_check(Automaton const& aut, Presentation const& p,
                              std::size_t budget = default_node_budget());

}  // namespace affauto

#endif  // AFFAUTO_CONSTRUCTIONS_HPP_
