#include "affauto/linalg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "affauto/error.hpp"
#include "json_util.hpp"

namespace affauto {

  long to_long(Integer const& x, char const* what) {
    if (!x.fits_slong_p()) {
      throw InvalidInput(std::string(what) + " " + x.get_str()
                         + " does not fit in a machine integer");
    }
    return x.get_si();
  }

  ////////////////////////////////////////////////////////////////////////
  // IntVector
  ////////////////////////////////////////////////////////////////////////

  IntVector::IntVector(std::initializer_list<long> coords) {
    _coords.reserve(coords.size());
    for (long c : coords) {
      _coords.emplace_back(c);
    }
  }

  IntVector IntVector::unit(std::size_t dim, std::size_t axis) {
    IntVector e(dim);
    e[axis] = 1;
    return e;
  }

  bool IntVector::is_zero() const {
    return std::all_of(_coords.begin(), _coords.end(), [](Integer const& c) {
      return c == 0;
    });
  }

  IntVector& IntVector::operator+=(IntVector const& other) {
    if (other.dim() != dim()) {
      throw InvalidInput("vector dimension mismatch");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
      _coords[i] += other._coords[i];
    }
    return *this;
  }

  IntVector& IntVector::operator-=(IntVector const& other) {
    if (other.dim() != dim()) {
      throw InvalidInput("vector dimension mismatch");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
      _coords[i] -= other._coords[i];
    }
    return *this;
  }

  IntVector operator-(IntVector a) {
    for (auto& c : a._coords) {
      c = -c;
    }
    return a;
  }

  IntVector operator*(Integer const& k, IntVector a) {
    for (auto& c : a._coords) {
      c *= k;
    }
    return a;
  }

  std::strong_ordering operator<=>(IntVector const& a, IntVector const& b) {
    if (a.dim() != b.dim()) {
      return a.dim() <=> b.dim();
    }
    for (std::size_t i = a.dim(); i-- > 0;) {
      int c = cmp(a._coords[i], b._coords[i]);
      if (c != 0) {
        return c < 0 ? std::strong_ordering::less
                     : std::strong_ordering::greater;
      }
    }
    return std::strong_ordering::equal;
  }

  std::ostream& operator<<(std::ostream& os, IntVector const& v) {
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) {
      os << (i ? "," : "") << v[i];
    }
    return os << ')';
  }

  std::string to_string(IntVector const& v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // IntMatrix
  ////////////////////////////////////////////////////////////////////////

  IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
      : _dim(rows.size()) {
    if (_dim == 0) {
      throw InvalidInput("matrix must have at least one row");
    }
    _entries.reserve(_dim * _dim);
    for (auto const& row : rows) {
      if (row.size() != _dim) {
        throw InvalidInput("matrix must be square");
      }
      for (long x : row) {
        _entries.emplace_back(x);
      }
    }
  }

  IntMatrix IntMatrix::from_rows(std::vector<std::vector<Integer>> const& rows) {
    if (rows.empty()) {
      throw InvalidInput("matrix must have at least one row");
    }
    IntMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw InvalidInput("matrix must be square, row "
                           + std::to_string(i) + " has "
                           + std::to_string(rows[i].size()) + " entries");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) {
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  IntMatrix IntMatrix::identity(std::size_t dim) {
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  IntVector IntMatrix::column(std::size_t j) const {
    IntVector c(_dim);
    for (std::size_t i = 0; i < _dim; ++i) {
      c[i] = (*this)(i, j);
    }
    return c;
  }

  std::vector<std::vector<Integer>> IntMatrix::rows() const {
    std::vector<std::vector<Integer>> result(_dim);
    for (std::size_t i = 0; i < _dim; ++i) {
      result[i].assign(_entries.begin() + i * _dim,
                       _entries.begin() + (i + 1) * _dim);
    }
    return result;
  }

  IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
    if (a.dim() != b.dim()) {
      throw InvalidInput("matrix dimension mismatch");
    }
    std::size_t const d = a.dim();
    IntMatrix         c(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (a(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < d; ++j) {
          c(i, j) += a(i, k) * b(k, j);
        }
      }
    }
    return c;
  }

  IntVector operator*(IntMatrix const& a, IntVector const& v) {
    if (a.dim() != v.dim()) {
      throw InvalidInput("matrix/vector dimension mismatch");
    }
    IntVector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        r[i] += a(i, j) * v[j];
      }
    }
    return r;
  }

  std::ostream& operator<<(std::ostream& os, IntMatrix const& m) {
    os << '[';
    for (std::size_t i = 0; i < m.dim(); ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.dim(); ++j) {
        os << (j ? "," : "") << m(i, j);
      }
      os << ']';
    }
    return os << ']';
  }

  std::string to_string(IntMatrix const& m) {
    std::ostringstream os;
    os << m;
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Letters, Mod/Div, norm, V_M
  ////////////////////////////////////////////////////////////////////////

  void check_letter(Letter const& x, int base, std::size_t dim) {
    if (base < 2) {
      throw InvalidInput("base must be at least 2, found "
                         + std::to_string(base));
    }
    if (x.digits.size() != dim) {
      throw InvalidInput("letter " + to_string(x) + " has "
                         + std::to_string(x.digits.size())
                         + " digits, expected " + std::to_string(dim));
    }
    for (int y : x.digits) {
      if (y < 0 || y >= base) {
        throw InvalidInput("digit " + std::to_string(y) + " of letter "
                           + to_string(x) + " is not in [0, "
                           + std::to_string(base - 1) + "]");
      }
    }
  }

  IntVector to_vector(Letter const& x) {
    IntVector v(x.digits.size());
    for (std::size_t i = 0; i < x.digits.size(); ++i) {
      v[i] = x.digits[i];
    }
    return v;
  }

  std::string to_string(Letter const& x) {
    std::string s;
    for (std::size_t i = 0; i < x.digits.size(); ++i) {
      if (i) {
        s += ',';
      }
      s += std::to_string(x.digits[i]);
    }
    return s;
  }

  ModDiv mod_div(IntVector const& v, int n) {
    if (n < 2) {
      throw InvalidInput("base must be at least 2, found " + std::to_string(n));
    }
    ModDiv  result{Letter{std::vector<int>(v.dim())}, IntVector(v.dim())};
    Integer r;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      // floor division: remainder has the sign of the (positive) divisor
      mpz_fdiv_qr_ui(result.quotient[i].get_mpz_t(), r.get_mpz_t(),
                     v[i].get_mpz_t(), static_cast<unsigned long>(n));
      result.remainder.digits[i] = static_cast<int>(r.get_si());
    }
    return result;
  }

  Integer row_sum_norm(IntMatrix const& m) {
    Integer best = 0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      Integer sum = 0;
      for (std::size_t j = 0; j < m.dim(); ++j) {
        sum += abs(m(i, j));
      }
      if (sum > best) {
        best = sum;
      }
    }
    return best;
  }

  std::vector<IntVector> vm_set(IntMatrix const& m) {
    Integer const norm = row_sum_norm(m);
    if (norm == 0) {
      throw InvalidInput("V_M is empty for the zero matrix");
    }
    long const  nrm   = to_long(norm, "matrix norm");
    std::size_t d     = m.dim();
    long        side  = 2 * nrm;
    long        total = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (total > (1L << 40) / side) {
        throw ResourceLimit("V_M of " + to_string(m) + " is too large");
      }
      total *= side;
    }
    std::vector<IntVector> result;
    result.reserve(static_cast<std::size_t>(total));
    for (long idx = 0; idx < total; ++idx) {
      result.push_back(vm_vector(idx, nrm, d));
    }
    return result;
  }

  long vm_index(IntVector const& v, long norm) {
    long const side  = 2 * norm;
    long       index = 0;
    long       scale = 1;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (v[i] < -norm || v[i] > norm - 1) {
        return -1;
      }
      index += (v[i].get_si() + norm) * scale;
      scale *= side;
    }
    return index;
  }

  IntVector vm_vector(long index, long norm, std::size_t dim) {
    long const side = 2 * norm;
    IntVector  v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = index % side - norm;
      index /= side;
    }
    return v;
  }

  // Fraction-free (Bareiss) elimination; every division is exact.
  Integer det(IntMatrix const& m) {
    std::size_t const d = m.dim();
    if (d == 0) {
      return 1;
    }
    IntMatrix a    = m;
    Integer   prev = 1;
    int       sign = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
      if (a(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < d && a(p, k) == 0) {
          ++p;
        }
        if (p == d) {
          return 0;
        }
        for (std::size_t j = 0; j < d; ++j) {
          std::swap(a(k, j), a(p, j));
        }
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < d; ++i) {
        for (std::size_t j = k + 1; j < d; ++j) {
          Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
          mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
      }
      prev = a(k, k);
    }
    return sign * a(d - 1, d - 1);
  }

  bool is_unimodular(IntMatrix const& m) {
    Integer const dt = det(m);
    return dt == 1 || dt == -1;
  }

  bool coprime_to(IntMatrix const& m, int n) {
    Integer const dt = det(m);
    if (dt == 0) {
      return false;
    }
    Integer g;
    Integer nn = n;
    mpz_gcd(g.get_mpz_t(), dt.get_mpz_t(), nn.get_mpz_t());
    return g == 1;
  }

  IntMatrix block_diag(IntMatrix const& upper, IntMatrix const& lower) {
    std::size_t const a = upper.dim();
    std::size_t const b = lower.dim();
    IntMatrix         m(a + b);
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < a; ++j) {
        m(i, j) = upper(i, j);
      }
    }
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        m(a + i, a + j) = lower(i, j);
      }
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    json parse_json(std::string const& text) {
      try {
        return json::parse(text);
      } catch (json::parse_error const& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(),
                         "byte " + std::to_string(e.byte));
      }
    }

    json matrix_to_json(IntMatrix const& m) {
      json rows = json::array();
      for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
          row.push_back(integer_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
      }
      return rows;
    }

    IntMatrix matrix_from_json(json const& j, std::string const& where) {
      if (!j.is_array() || j.empty()) {
        throw ParseError("expected a nonempty array of rows", where);
      }
      std::vector<std::vector<Integer>> rows;
      for (std::size_t i = 0; i < j.size(); ++i) {
        auto const here = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array()) {
          throw ParseError("expected a row array", here);
        }
        if (j[i].size() != j.size()) {
          throw ParseError("matrix is not square", here);
        }
        auto& row = rows.emplace_back();
        for (std::size_t k = 0; k < j[i].size(); ++k) {
          row.push_back(integer_from_json(
              j[i][k], here + "[" + std::to_string(k) + "]"));
        }
      }
      return IntMatrix::from_rows(rows);
    }

    json vector_to_json(IntVector const& v) {
      json arr = json::array();
      for (auto const& c : v.coords()) {
        arr.push_back(integer_to_json(c));
      }
      return arr;
    }

    IntVector vector_from_json(json const& j, std::string const& where) {
      if (!j.is_array()) {
        throw ParseError("expected an integer array", where);
      }
      std::vector<Integer> coords;
      for (std::size_t i = 0; i < j.size(); ++i) {
        coords.push_back(
            integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
      }
      return IntVector(std::move(coords));
    }

  }  // namespace detail

  std::string matrices_to_json(std::vector<IntMatrix> const& ms) {
    detail::json arr = detail::json::array();
    for (auto const& m : ms) {
      arr.push_back(detail::matrix_to_json(m));
    }
    return arr.dump();
  }

  std::vector<IntMatrix> matrices_from_json(std::string const& text) {
    auto const j = detail::parse_json(text);
    // Accept either a bare list or {"matrices": [...]}.
    auto const& list = j.is_object() && j.contains("matrices") ? j["matrices"] : j;
    if (!list.is_array() || list.empty()) {
      throw ParseError("expected a nonempty array of matrices", "$");
    }
    std::vector<IntMatrix> result;
    for (std::size_t i = 0; i < list.size(); ++i) {
      result.push_back(
          detail::matrix_from_json(list[i], "$[" + std::to_string(i) + "]"));
    }
    auto const d = result.front().dim();
    for (std::size_t i = 1; i < result.size(); ++i) {
      if (result[i].dim() != d) {
        throw InvalidInput("matrix " + std::to_string(i) + " has dimension "
                           + std::to_string(result[i].dim()) + ", expected "
                           + std::to_string(d));
      }
    }
    return result;
  }

}  // namespace affauto
