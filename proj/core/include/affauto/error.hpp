#ifndef AFFAUTO_ERROR_HPP_
#define AFFAUTO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace affauto {

  // Malformed or contract-violating input (bad matrix, non-coprime base,
  // dimension mismatch, unknown state label, ...).
  class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // Text that could not be parsed; `where` is a human-readable location.
  class ParseError : public InvalidInput {
   public:
    ParseError(std::string const& msg, std::string where)
        : InvalidInput(msg + " (at " + where + ")"), _where(std::move(where)) {}

    [[nodiscard]] std::string const& where() const noexcept {
      return _where;
    }

   private:
    std::string _where;
  };

  // A configured resource limit (alphabet cap, state cap) was exceeded.
  class ResourceLimit : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

}  // namespace affauto

#endif  // AFFAUTO_ERROR_HPP_
