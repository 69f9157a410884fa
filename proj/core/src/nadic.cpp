#include "affauto/nadic.hpp"

#include <cctype>

#include "affauto/error.hpp"

namespace affauto {

  namespace {

    void check_map(AffineMap const& f, DigitWord const& w) {
      if (f.matrix.dim() != w.dim || f.offset.dim() != w.dim) {
        throw InvalidInput("affine map of dimension "
                           + std::to_string(f.matrix.dim())
                           + " applied to a word of dimension "
                           + std::to_string(w.dim));
      }
    }

  }  // namespace

  DigitWord parse_digit_word(std::string_view text, int base,
                             std::size_t dim) {
    DigitWord   w{base, dim, {}};
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size()
             && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    skip_space();
    while (pos < text.size()) {
      Letter      x;
      std::size_t start = pos;
      while (true) {
        if (pos >= text.size()
            || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
          throw ParseError("expected a digit in digit word \""
                               + std::string(text) + "\"",
                           "column " + std::to_string(pos + 1));
        }
        long value = 0;
        while (pos < text.size()
               && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          value = value * 10 + (text[pos] - '0');
          if (value > (1L << 30)) {
            throw ParseError("digit too large",
                             "column " + std::to_string(pos + 1));
          }
          ++pos;
        }
        x.digits.push_back(static_cast<int>(value));
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      if (pos < text.size()
          && !std::isspace(static_cast<unsigned char>(text[pos]))) {
        throw ParseError("unexpected character '" + std::string(1, text[pos])
                             + "' in digit word",
                         "column " + std::to_string(pos + 1));
      }
      try {
        check_letter(x, base, dim);
      } catch (InvalidInput const& e) {
        throw ParseError(e.what(), "column " + std::to_string(start + 1));
      }
      w.letters.push_back(std::move(x));
      skip_space();
    }
    return w;
  }

  std::string to_string(DigitWord const& w) {
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      if (i) {
        s += ' ';
      }
      s += to_string(w.letters[i]);
    }
    return s;
  }

  DigitWord encode(IntVector const& u, int base, std::size_t length) {
    if (base < 2) {
      throw InvalidInput("base must be at least 2");
    }
    Integer limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), static_cast<unsigned long>(base),
                  length);
    for (std::size_t i = 0; i < u.dim(); ++i) {
      if (u[i] < 0 || u[i] >= limit) {
        throw InvalidInput("coordinate " + u[i].get_str()
                           + " does not fit in " + std::to_string(length)
                           + " base-" + std::to_string(base) + " digits");
      }
    }
    DigitWord w{base, u.dim(), {}};
    w.letters.assign(length, Letter{std::vector<int>(u.dim(), 0)});
    Integer r;
    for (std::size_t c = 0; c < u.dim(); ++c) {
      Integer q = u[c];
      for (std::size_t i = 0; i < length; ++i) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(),
                       static_cast<unsigned long>(base));
        w.letters[i].digits[c] = static_cast<int>(r.get_si());
      }
    }
    return w;
  }

  IntVector decode(DigitWord const& w) {
    IntVector u(w.dim);
    for (std::size_t c = 0; c < w.dim; ++c) {
      // Horner from the most significant letter
      for (std::size_t i = w.letters.size(); i-- > 0;) {
        u[c] = u[c] * w.base + w.letters[i].digits[c];
      }
    }
    return u;
  }

  AffineMap compose(AffineMap const& f, AffineMap const& g) {
    return AffineMap{f.matrix * g.matrix, f.offset + f.matrix * g.offset};
  }

  DigitWord affine_apply_prefix(AffineMap const& f, DigitWord const& w) {
    check_map(f, w);
    IntVector image = f.offset + f.matrix * decode(w);
    Integer   modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(w.base),
                  w.size());
    for (std::size_t c = 0; c < image.dim(); ++c) {
      mpz_fdiv_r(image[c].get_mpz_t(), image[c].get_mpz_t(),
                 modulus.get_mpz_t());
    }
    return encode(image, w.base, w.size());
  }

  DigitWord affine_apply_recursive(AffineMap const& f, DigitWord const& w) {
    check_map(f, w);
    DigitWord out{w.base, w.dim, {}};
    out.letters.reserve(w.size());
    IntVector carry = f.offset;
    for (auto const& x : w.letters) {
      auto [digit, next] = mod_div(carry + f.matrix * to_vector(x), w.base);
      out.letters.push_back(std::move(digit));
      carry = std::move(next);
    }
    return out;
  }

}  // namespace affauto
