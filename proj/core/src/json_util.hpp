#ifndef AFFAUTO_SRC_JSON_UTIL_HPP_
#define AFFAUTO_SRC_JSON_UTIL_HPP_

#include <string>

#include "affauto/error.hpp"
#include "affauto/linalg.hpp"
#include "json.hpp"

namespace affauto::detail {

  using json = nlohmann::json;

  inline json integer_to_json(Integer const& x) {
    if (x.fits_slong_p()) {
      return json(x.get_si());
    }
    return json(x.get_str());
  }

  inline Integer integer_from_json(json const& j, std::string const& where) {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) {
        return Integer(std::to_string(j.get<unsigned long long>()));
      }
      return Integer(std::to_string(j.get<long long>()));
    }
    if (j.is_string()) {
      Integer x;
      if (x.set_str(j.get<std::string>(), 10) != 0) {
        throw ParseError("expected a decimal integer string", where);
      }
      return x;
    }
    throw ParseError("expected an integer", where);
  }

  json      matrix_to_json(IntMatrix const& m);
  IntMatrix matrix_from_json(json const& j, std::string const& where);
  json      vector_to_json(IntVector const& v);
  IntVector vector_from_json(json const& j, std::string const& where);

  json parse_json(std::string const& text);

}  // namespace affauto::detail

#endif  // AFFAUTO_SRC_JSON_UTIL_HPP_
