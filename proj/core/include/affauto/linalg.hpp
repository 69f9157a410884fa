#ifndef AFFAUTO_LINALG_HPP_
#define AFFAUTO_LINALG_HPP_

// Exact integer vectors and square matrices, together with the base-n digit
// split (Mod/Div), the maximal absolute row sum norm and the offset box V_M
// used to index automaton states.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace affauto {

  using Integer = mpz_class;

  // Converts to a machine integer, throwing InvalidInput if it does not fit.
  long to_long(Integer const& x, char const* what = "integer");

  class IntVector {
   public:
    IntVector() = default;
    explicit IntVector(std::size_t dim) : _coords(dim, Integer(0)) {}
    explicit IntVector(std::vector<Integer> coords)
        : _coords(std::move(coords)) {}
    IntVector(std::initializer_list<long> coords);

    static IntVector unit(std::size_t dim, std::size_t axis);

    [[nodiscard]] std::size_t dim() const noexcept {
      return _coords.size();
    }
    Integer&       operator[](std::size_t i) { return _coords[i]; }
    Integer const& operator[](std::size_t i) const { return _coords[i]; }

    [[nodiscard]] std::vector<Integer> const& coords() const noexcept {
      return _coords;
    }
    [[nodiscard]] bool is_zero() const;

    IntVector& operator+=(IntVector const& other);
    IntVector& operator-=(IntVector const& other);

    friend IntVector operator+(IntVector a, IntVector const& b) {
      return a += b;
    }
    friend IntVector operator-(IntVector a, IntVector const& b) {
      return a -= b;
    }
    friend IntVector operator-(IntVector a);
    friend IntVector operator*(Integer const& k, IntVector a);

    friend bool operator==(IntVector const& a, IntVector const& b) {
      return a._coords == b._coords;
    }
    // Lexicographic, last coordinate most significant (the vm_set order).
    friend std::strong_ordering operator<=>(IntVector const& a,
                                            IntVector const& b);

   private:
    std::vector<Integer> _coords;
  };

  std::ostream& operator<<(std::ostream& os, IntVector const& v);
  // "(v1,v2,...)"
  std::string to_string(IntVector const& v);

  class IntMatrix {
   public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t dim)
        : _dim(dim), _entries(dim * dim, Integer(0)) {}
    // Row-major nested rows; throws InvalidInput unless square and nonempty.
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix from_rows(std::vector<std::vector<Integer>> const& rows);
    static IntMatrix identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept {
      return _dim;
    }
    Integer& operator()(std::size_t i, std::size_t j) {
      return _entries[i * _dim + j];
    }
    Integer const& operator()(std::size_t i, std::size_t j) const {
      return _entries[i * _dim + j];
    }
    [[nodiscard]] IntVector column(std::size_t j) const;
    [[nodiscard]] std::vector<std::vector<Integer>> rows() const;

    friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b);
    friend IntVector operator*(IntMatrix const& a, IntVector const& v);
    friend bool      operator==(IntMatrix const& a, IntMatrix const& b) {
      return a._dim == b._dim && a._entries == b._entries;
    }

   private:
    std::size_t          _dim = 0;
    std::vector<Integer> _entries;
  };

  std::ostream& operator<<(std::ostream& os, IntMatrix const& m);
  // "[[a,b],[c,d]]"
  std::string to_string(IntMatrix const& m);

  // A base-n letter: a column of d digits, each in [0, n-1].
  struct Letter {
    std::vector<int> digits;

    friend bool operator==(Letter const&, Letter const&)  = default;
    friend auto operator<=>(Letter const&, Letter const&) = default;
  };

  // Throws InvalidInput unless every digit lies in [0, base-1] and base >= 2.
  void check_letter(Letter const& x, int base, std::size_t dim);
  IntVector to_vector(Letter const& x);
  // "d1,d2,...,dd"
  std::string to_string(Letter const& x);

  struct ModDiv {
    Letter    remainder;
    IntVector quotient;
  };

  // v = remainder + n * quotient with every remainder digit in [0, n-1]
  // (floored division, also for negative coordinates).
  ModDiv mod_div(IntVector const& v, int n);

  // max_i sum_j |m_ij|
  Integer row_sum_norm(IntMatrix const& m);

  // Every integer vector with coordinates in [-norm, norm-1], lexicographic
  // with the first coordinate varying fastest. Throws InvalidInput for the
  // zero matrix.
  std::vector<IntVector> vm_set(IntMatrix const& m);

  // Position of v in vm_set for a matrix of the given norm, or -1 if v lies
  // outside the box. Agrees with the enumeration order of vm_set.
  long vm_index(IntVector const& v, long norm);
  // Inverse of vm_index.
  IntVector vm_vector(long index, long norm, std::size_t dim);

  Integer det(IntMatrix const& m);
  bool    is_unimodular(IntMatrix const& m);
  // det != 0 and gcd(|det|, n) == 1
  bool coprime_to(IntMatrix const& m, int n);

  // diag(upper, lower)
  IntMatrix block_diag(IntMatrix const& upper, IntMatrix const& lower);

  // JSON encodings: row-major nested arrays of integers. Entries may be
  // arbitrarily large; they are written as JSON numbers when they fit in 64
  // bits and as decimal strings otherwise.
  std::string            matrices_to_json(std::vector<IntMatrix> const& ms);
  std::vector<IntMatrix> matrices_from_json(std::string const& text);

}  // namespace affauto

#endif  // AFFAUTO_LINALG_HPP_
