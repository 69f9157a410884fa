#ifndef AFFAUTO_AUTOMATON_HPP_
#define AFFAUTO_AUTOMATON_HPP_

// The finite automaton A_{M,n} whose state m_v, v in V_M, acts on words over
// X_n = {0..n-1}^d by m_v(x w) = Mod(v + M x) m_{Div(v + M x)}(w), and the
// disjoint union of such automata over a list of matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "affauto/linalg.hpp"
#include "affauto/nadic.hpp"

namespace affauto {

  using StateId     = std::uint32_t;
  using LetterIndex = std::uint32_t;

  // Dense mixed-radix index of a letter; the first digit is least
  // significant.
  class LetterCodec {
   public:
    LetterCodec() = default;
    LetterCodec(int base, std::size_t dim);

    [[nodiscard]] int base() const noexcept {
      return _base;
    }
    [[nodiscard]] std::size_t dim() const noexcept {
      return _dim;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _size;
    }

    [[nodiscard]] LetterIndex encode(Letter const& x) const;
    [[nodiscard]] Letter      decode(LetterIndex x) const;

    [[nodiscard]] std::vector<LetterIndex> encode(DigitWord const& w) const;
    [[nodiscard]] DigitWord decode(std::span<LetterIndex const> w) const;

   private:
    int         _base = 2;
    std::size_t _dim  = 1;
    std::size_t _size = 2;
  };

  // Everything that defines one state: its label (matrix index, offset) and
  // its output and next-state tables indexed by dense letter index.
  struct AutomatonState {
    std::size_t              matrix_index = 0;
    IntVector                offset;
    std::vector<LetterIndex> output;
    std::vector<StateId>     next;

    friend bool operator==(AutomatonState const&, AutomatonState const&)
        = default;
  };

  // The block of states coming from one matrix. `by_offset[k]` is the state
  // carrying the k-th vector of vm_set(matrix); without dedup these ids are
  // consecutive.
  struct Component {
    std::size_t          matrix_index = 0;
    Integer              norm;
    std::vector<StateId> by_offset;

    friend bool operator==(Component const&, Component const&) = default;
  };

  struct BuildOptions {
    std::size_t alphabet_cap = 4096;
    std::size_t state_cap    = std::size_t{1} << 20;
  };

  class Automaton {
   public:
    // Validates structure only: table sizes, next-state ids in range, every
    // output table a permutation, component maps consistent with labels.
    // Semantic correctness is the job of well_definedness_check.
    Automaton(int base, std::size_t dim, std::vector<IntMatrix> matrices,
              std::vector<AutomatonState> states,
              std::vector<Component>      components);

    [[nodiscard]] int base() const noexcept {
      return _codec.base();
    }
    [[nodiscard]] std::size_t dim() const noexcept {
      return _codec.dim();
    }
    [[nodiscard]] std::size_t alphabet_size() const noexcept {
      return _codec.size();
    }
    [[nodiscard]] LetterCodec const& codec() const noexcept {
      return _codec;
    }
    [[nodiscard]] std::vector<IntMatrix> const& matrices() const noexcept {
      return _matrices;
    }
    [[nodiscard]] std::vector<Component> const& components() const noexcept {
      return _components;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _labels.size();
    }

    [[nodiscard]] std::size_t matrix_index(StateId s) const {
      return _labels.at(s).matrix_index;
    }
    [[nodiscard]] IntVector const& offset(StateId s) const {
      return _labels.at(s).offset;
    }
    // "m[i]:(v1,...,vd)"
    [[nodiscard]] std::string label(StateId s) const;

    [[nodiscard]] LetterIndex output(StateId s, LetterIndex x) const noexcept {
      return _output[s * _codec.size() + x];
    }
    [[nodiscard]] StateId next(StateId s, LetterIndex x) const noexcept {
      return _next[s * _codec.size() + x];
    }
    // Preimage of y under the root permutation of s.
    [[nodiscard]] LetterIndex inverse_output(StateId s,
                                             LetterIndex y) const noexcept {
      return _inverse_output[s * _codec.size() + y];
    }
    // True when the state acts as the identity on the whole tree.
    [[nodiscard]] bool acts_trivially(StateId s) const noexcept {
      return _trivial[s] != 0;
    }

    // The state labelled m_v in component i; nullopt if v is not in V_M.
    [[nodiscard]] std::optional<StateId>
    find_state(std::size_t component, IntVector const& v) const;
    // As find_state, throwing InvalidInput when absent.
    [[nodiscard]] StateId state_id(std::size_t component,
                                   IntVector const& v) const;

    [[nodiscard]] AutomatonState              state(StateId s) const;
    [[nodiscard]] std::vector<AutomatonState> states() const;

    friend bool operator==(Automaton const& a, Automaton const& b);

   private:
    struct Label {
      std::size_t matrix_index;
      IntVector   offset;
    };

    void compute_trivial_states();

    LetterCodec              _codec;
    std::vector<IntMatrix>   _matrices;
    std::vector<Component>   _components;
    std::vector<Label>       _labels;
    std::vector<LetterIndex> _output;
    std::vector<StateId>     _next;
    std::vector<LetterIndex> _inverse_output;
    std::vector<char>        _trivial;
  };

  // A_{M,n}. Throws InvalidInput when det M = 0 or gcd(det M, n) != 1 and
  // ResourceLimit when n^d or the state count exceeds the caps.
  Automaton build_single(IntMatrix const& m, int n,
                         BuildOptions const& opts = {});

  // Disjoint union of A_{M_i,n}; repeated matrices give repeated components.
  Automaton build_union(std::vector<IntMatrix> const& ms, int n,
                        BuildOptions const& opts = {});

  // 2^d * sum_i ||M_i||^d
  Integer state_bound(std::vector<IntMatrix> const& ms);

  struct WellDefinednessViolation {
    StateId     state;
    LetterIndex letter;
    std::string reason;
  };

  struct WellDefinednessReport {
    std::size_t checked  = 0;
    std::size_t failures = 0;
    // the first few failures, up to the requested limit
    std::vector<WellDefinednessViolation> violations;

    [[nodiscard]] bool passed() const noexcept {
      return failures == 0;
    }
  };

  // Recomputes v + M x with big integers for every state and letter and checks
  // the box bound [-||M|| n, ||M|| n - 1], Div(v + M x) in V_M, and that the
  // stored output and next-state agree with Mod and Div.
  WellDefinednessReport well_definedness_check(Automaton const& aut,
                                               std::size_t max_violations
                                               = 16);

  // Merges behaviourally equivalent states (Moore partition refinement). Not
  // part of the plain construction; labels of merged states resolve to the
  // surviving representative, which is the lowest id in its class.
  Automaton dedup(Automaton const& aut);

  // Serialization. The JSON form round-trips exactly.
  std::string to_json(Automaton const& aut);
  Automaton   automaton_from_json(std::string const& text);
  std::string to_dot(Automaton const& aut);

}  // namespace affauto

#endif  // AFFAUTO_AUTOMATON_HPP_
