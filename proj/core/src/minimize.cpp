#include <algorithm>
#include <map>

#include "affauto/automaton.hpp"

namespace affauto {

  Automaton dedup(Automaton const& aut) {
    std::size_t const states   = aut.size();
    std::size_t const alphabet = aut.alphabet_size();

    // Initial partition: equal output tables.
    std::vector<std::size_t> cls(states);
    {
      std::map<std::vector<LetterIndex>, std::size_t> ids;
      std::vector<LetterIndex>                        key(alphabet);
      for (std::size_t s = 0; s < states; ++s) {
        for (std::size_t x = 0; x < alphabet; ++x) {
          key[x] = aut.output(static_cast<StateId>(s),
                              static_cast<LetterIndex>(x));
        }
        cls[s] = ids.try_emplace(key, ids.size()).first->second;
      }
    }
    // Refine by the classes of the sections until the count is stable.
    std::size_t count = *std::max_element(cls.begin(), cls.end()) + 1;
    while (true) {
      std::map<std::vector<std::size_t>, std::size_t> ids;
      std::vector<std::size_t>                        next_cls(states);
      std::vector<std::size_t>                        key(alphabet + 1);
      for (std::size_t s = 0; s < states; ++s) {
        key[0] = cls[s];
        for (std::size_t x = 0; x < alphabet; ++x) {
          key[x + 1] = cls[aut.next(static_cast<StateId>(s),
                                    static_cast<LetterIndex>(x))];
        }
        next_cls[s] = ids.try_emplace(key, ids.size()).first->second;
      }
      cls.swap(next_cls);
      if (ids.size() == count) {
        break;
      }
      count = ids.size();
    }

    // Class ids are assigned in order of first occurrence, so the
    // representative of each class is its lowest original id.
    std::vector<StateId> representative(count, 0);
    std::vector<char>    assigned(count, 0);
    for (std::size_t s = 0; s < states; ++s) {
      if (!assigned[cls[s]]) {
        assigned[cls[s]]       = 1;
        representative[cls[s]] = static_cast<StateId>(s);
      }
    }
    std::vector<AutomatonState> merged;
    merged.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
      auto st = aut.state(representative[c]);
      for (auto& t : st.next) {
        t = static_cast<StateId>(cls[t]);
      }
      merged.push_back(std::move(st));
    }
    std::vector<Component> components = aut.components();
    for (auto& c : components) {
      for (auto& s : c.by_offset) {
        s = static_cast<StateId>(cls[s]);
      }
    }
    return Automaton(aut.base(), aut.dim(), aut.matrices(), std::move(merged),
                     std::move(components));
  }

}  // namespace affauto
