#ifndef AFFAUTO_NADIC_HPP_
#define AFFAUTO_NADIC_HPP_

// Big-integer evaluation of affine maps u -> v + M u on length-k prefixes of
// n-adic vectors. This is deliberately independent of the automaton code: it
// never looks at states or transition tables, so it can serve as the ground
// truth the automaton action is checked against.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "affauto/linalg.hpp"

namespace affauto {

  // A finite word x_1 x_2 ... x_k over {0..n-1}^d, read least significant
  // letter first: it stands for u = sum_i x_i n^(i-1), coordinatewise.
  struct DigitWord {
    int                 base = 2;
    std::size_t         dim  = 1;
    std::vector<Letter> letters;

    [[nodiscard]] std::size_t size() const noexcept {
      return letters.size();
    }
    friend bool operator==(DigitWord const&, DigitWord const&) = default;
  };

  // Letters separated by whitespace, digits within a letter by commas:
  // "2,0 1,1". For d = 1 each letter is a single digit.
  DigitWord   parse_digit_word(std::string_view text, int base,
                               std::size_t dim);
  std::string to_string(DigitWord const& w);

  // Throws InvalidInput if a coordinate of u is negative or >= n^k.
  DigitWord encode(IntVector const& u, int base, std::size_t length);
  IntVector decode(DigitWord const& w);

  struct AffineMap {
    IntMatrix matrix;
    IntVector offset;
  };

  // f o g
  AffineMap compose(AffineMap const& f, AffineMap const& g);

  // (v + M u) mod n^k, coordinatewise, re-encoded as k digits.
  DigitWord affine_apply_prefix(AffineMap const& f, DigitWord const& w);

  // The same map computed letter by letter: emit Mod(v + M x_1), continue
  // with offset Div(v + M x_1) on the remaining letters.
  DigitWord affine_apply_recursive(AffineMap const& f, DigitWord const& w);

}  // namespace affauto

#endif  // AFFAUTO_NADIC_HPP_
