#include <sstream>

#include "affauto/automaton.hpp"
#include "affauto/error.hpp"
#include "json_util.hpp"

namespace affauto {

  namespace {

    using detail::json;
    using ordered = nlohmann::ordered_json;

    ordered to_ordered(json const& j) {
      return ordered::parse(j.dump());
    }

    template <typename T>
    T get_index(json const& j, std::string const& where) {
      if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError("expected a nonnegative integer", where);
      }
      return static_cast<T>(j.get<unsigned long long>());
    }

    json const& field(json const& obj, char const* key,
                      std::string const& where) {
      if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"", where);
      }
      return obj[key];
    }

  }  // namespace

  std::string to_json(Automaton const& aut) {
    ordered root   = ordered::object();
    root["n"]      = aut.base();
    root["d"]      = aut.dim();
    ordered mats   = ordered::array();
    for (auto const& m : aut.matrices()) {
      mats.push_back(to_ordered(detail::matrix_to_json(m)));
    }
    root["matrices"] = std::move(mats);

    ordered states = ordered::array();
    for (std::size_t s = 0; s < aut.size(); ++s) {
      auto const st  = aut.state(static_cast<StateId>(s));
      ordered    rec = ordered::object();
      rec["m"]       = st.matrix_index;
      rec["v"]       = to_ordered(detail::vector_to_json(st.offset));
      rec["out"]     = st.output;
      rec["next"]    = st.next;
      states.push_back(std::move(rec));
    }
    root["states"] = std::move(states);

    ordered comps = ordered::array();
    for (auto const& c : aut.components()) {
      ordered rec   = ordered::object();
      rec["matrix"] = c.matrix_index;
      rec["norm"]   = to_ordered(detail::integer_to_json(c.norm));
      rec["states"] = c.by_offset;
      comps.push_back(std::move(rec));
    }
    root["components"] = std::move(comps);
    return root.dump() + "\n";
  }

  Automaton automaton_from_json(std::string const& text) {
    json const root = detail::parse_json(text);
    if (!root.is_object()) {
      throw ParseError("expected a JSON object", "$");
    }
    int const n = static_cast<int>(get_index<long>(field(root, "n", "$"), "$.n"));
    auto const d = get_index<std::size_t>(field(root, "d", "$"), "$.d");

    auto const& mats = field(root, "matrices", "$");
    if (!mats.is_array()) {
      throw ParseError("expected an array", "$.matrices");
    }
    std::vector<IntMatrix> matrices;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      matrices.push_back(detail::matrix_from_json(
          mats[i], "$.matrices[" + std::to_string(i) + "]"));
    }

    auto const& sts = field(root, "states", "$");
    if (!sts.is_array()) {
      throw ParseError("expected an array", "$.states");
    }
    std::vector<AutomatonState> states;
    states.reserve(sts.size());
    for (std::size_t s = 0; s < sts.size(); ++s) {
      auto const     where = "$.states[" + std::to_string(s) + "]";
      AutomatonState st;
      st.matrix_index = get_index<std::size_t>(field(sts[s], "m", where),
                                               where + ".m");
      st.offset = detail::vector_from_json(field(sts[s], "v", where),
                                           where + ".v");
      auto const& out  = field(sts[s], "out", where);
      auto const& next = field(sts[s], "next", where);
      if (!out.is_array() || !next.is_array()) {
        throw ParseError("expected arrays for out and next", where);
      }
      for (std::size_t x = 0; x < out.size(); ++x) {
        st.output.push_back(get_index<LetterIndex>(
            out[x], where + ".out[" + std::to_string(x) + "]"));
      }
      for (std::size_t x = 0; x < next.size(); ++x) {
        st.next.push_back(get_index<StateId>(
            next[x], where + ".next[" + std::to_string(x) + "]"));
      }
      states.push_back(std::move(st));
    }

    std::vector<Component> components;
    if (root.contains("components")) {
      auto const& comps = root["components"];
      if (!comps.is_array()) {
        throw ParseError("expected an array", "$.components");
      }
      for (std::size_t i = 0; i < comps.size(); ++i) {
        auto const where = "$.components[" + std::to_string(i) + "]";
        Component  c;
        c.matrix_index = get_index<std::size_t>(
            field(comps[i], "matrix", where), where + ".matrix");
        c.norm = detail::integer_from_json(field(comps[i], "norm", where),
                                           where + ".norm");
        auto const& ids = field(comps[i], "states", where);
        if (!ids.is_array()) {
          throw ParseError("expected an array", where + ".states");
        }
        for (std::size_t k = 0; k < ids.size(); ++k) {
          c.by_offset.push_back(get_index<StateId>(
              ids[k], where + ".states[" + std::to_string(k) + "]"));
        }
        components.push_back(std::move(c));
      }
    } else {
      // Derive the component maps from the state labels.
      for (std::size_t i = 0; i < matrices.size(); ++i) {
        Component c{i, row_sum_norm(matrices[i]), {}};
        if (c.norm == 0) {
          throw InvalidInput("matrix " + std::to_string(i) + " is zero");
        }
        long const  norm  = to_long(c.norm, "matrix norm");
        std::size_t count = 1;
        for (std::size_t k = 0; k < d; ++k) {
          count *= static_cast<std::size_t>(2 * norm);
        }
        c.by_offset.assign(count, static_cast<StateId>(states.size()));
        components.push_back(std::move(c));
      }
      for (std::size_t s = 0; s < states.size(); ++s) {
        auto const& st = states[s];
        if (st.matrix_index >= components.size()) {
          continue;  // reported by the constructor
        }
        auto&      c   = components[st.matrix_index];
        long const idx = vm_index(st.offset, c.norm.get_si());
        if (idx >= 0) {
          c.by_offset[static_cast<std::size_t>(idx)] = static_cast<StateId>(s);
        }
      }
    }
    return Automaton(n, d, std::move(matrices), std::move(states),
                     std::move(components));
  }

  std::string to_dot(Automaton const& aut) {
    std::ostringstream os;
    auto const&        codec = aut.codec();
    os << "digraph automaton {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    for (std::size_t s = 0; s < aut.size(); ++s) {
      os << "  s" << s << " [label=\"" << aut.label(static_cast<StateId>(s))
         << "\"];\n";
    }
    for (std::size_t s = 0; s < aut.size(); ++s) {
      auto const id = static_cast<StateId>(s);
      for (std::size_t x = 0; x < codec.size(); ++x) {
        auto const xi = static_cast<LetterIndex>(x);
        os << "  s" << s << " -> s" << aut.next(id, xi) << " [label=\""
           << to_string(codec.decode(xi)) << '|'
           << to_string(codec.decode(aut.output(id, xi))) << "\"];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

}  // namespace affauto
