#include <cctype>
#include <string>

#include "affauto/error.hpp"
#include "affauto/treeaction.hpp"

namespace affauto {

  namespace {

    class WordParser {
     public:
      WordParser(Automaton const& aut, std::string_view text)
          : _aut(aut), _text(text) {}

      GroupWord parse() {
        GroupWord result(_aut);
        skip_separators();
        while (!at_end()) {
          result *= factor();
          skip_separators();
        }
        return result;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg + " in word \"" + std::string(_text) + "\"",
                         "column " + std::to_string(_pos + 1));
      }

      bool at_end() const {
        return _pos >= _text.size();
      }

      char peek() const {
        return at_end() ? '\0' : _text[_pos];
      }

      void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
          ++_pos;
        }
      }

      void skip_separators() {
        while (!at_end()
               && (std::isspace(static_cast<unsigned char>(peek()))
                   || peek() == '*')) {
          ++_pos;
        }
      }

      void expect(char c) {
        skip_space();
        if (peek() != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++_pos;
      }

      Integer integer() {
        skip_space();
        std::size_t const start = _pos;
        if (peek() == '-' || peek() == '+') {
          ++_pos;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
          fail("expected an integer");
        }
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          ++_pos;
        }
        std::string digits(_text.substr(start, _pos - start));
        if (digits.front() == '+') {
          digits.erase(0, 1);
        }
        return Integer(digits);
      }

      std::size_t index() {
        Integer const i = integer();
        if (i < 0 || !i.fits_ulong_p()) {
          fail("expected a nonnegative index");
        }
        return i.get_ui();
      }

      GroupWord factor() {
        std::size_t const start = _pos;
        GroupWord         base(_aut);
        char const        head = peek();
        if (head == 'm') {
          ++_pos;
          expect('[');
          std::size_t const component = index();
          expect(']');
          expect(':');
          expect('(');
          std::vector<Integer> coords;
          coords.push_back(integer());
          skip_space();
          while (peek() == ',') {
            ++_pos;
            coords.push_back(integer());
            skip_space();
          }
          expect(')');
          IntVector const v(std::move(coords));
          auto const      s = _aut.find_state(component, v);
          if (!s) {
            _pos = start;
            fail("no state m[" + std::to_string(component) + "]:" + to_string(v));
          }
          base = GroupWord::state(_aut, *s);
        } else if (head == 't') {
          ++_pos;
          expect('[');
          std::size_t const axis = index();
          expect(']');
          std::size_t component = 0;
          if (peek() == '@') {
            ++_pos;
            component = index();
          }
          if (axis == 0 || axis > _aut.dim()) {
            _pos = start;
            fail("translation axis must be in [1, " + std::to_string(_aut.dim())
                 + "]");
          }
          if (component >= _aut.components().size()) {
            _pos = start;
            fail("no component " + std::to_string(component));
          }
          base = translation_word(_aut, component, axis - 1);
        } else if (head == '1') {
          ++_pos;
        } else {
          fail(std::string("unexpected character '") + head + "'");
        }
        if (peek() == '^') {
          ++_pos;
          Integer const k = integer();
          if (!k.fits_slong_p() || abs(k) > (1L << 20)) {
            fail("exponent out of range");
          }
          return base.power(k.get_si());
        }
        return base;
      }

      Automaton const& _aut;
      std::string_view _text;
      std::size_t      _pos = 0;
    };

  }  // namespace

  GroupWord parse_word(Automaton const& aut, std::string_view text) {
    return WordParser(aut, text).parse();
  }

  std::string to_string(GroupWord const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) {
        s += " * ";
      }
      auto const& f = w.factors()[i];
      s += w.automaton().label(f.state);
      if (f.exponent < 0) {
        s += "^-1";
      }
    }
    return s;
  }

}  // namespace affauto
