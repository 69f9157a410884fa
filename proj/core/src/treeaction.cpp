#include "affauto/treeaction.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

#include "affauto/error.hpp"

namespace affauto {

  ////////////////////////////////////////////////////////////////////////
  // GroupWord
  ////////////////////////////////////////////////////////////////////////

  GroupWord::GroupWord(Automaton const& aut, std::vector<Factor> factors)
      : _aut(&aut), _factors(std::move(factors)) {
    for (auto const& f : _factors) {
      if (f.state >= aut.size()) {
        throw InvalidInput("state id " + std::to_string(f.state)
                           + " is not in the automaton");
      }
      if (f.exponent != 1 && f.exponent != -1) {
        throw InvalidInput("factor exponents must be +1 or -1");
      }
    }
  }

  GroupWord GroupWord::state(Automaton const& aut, StateId s, int exponent) {
    return GroupWord(aut, {Factor{s, exponent}});
  }

  void free_reduce(std::vector<Factor>& factors) {
    std::size_t top = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (top > 0 && factors[top - 1].state == factors[i].state
          && factors[top - 1].exponent == -factors[i].exponent) {
        --top;
      } else {
        factors[top++] = factors[i];
      }
    }
    factors.resize(top);
  }

  GroupWord GroupWord::reduced() const {
    GroupWord result = *this;
    free_reduce(result._factors);
    return result;
  }

  GroupWord GroupWord::inverse() const {
    GroupWord result(*_aut);
    result._factors.reserve(_factors.size());
    for (auto it = _factors.rbegin(); it != _factors.rend(); ++it) {
      result._factors.push_back(Factor{it->state, -it->exponent});
    }
    return result;
  }

  GroupWord GroupWord::power(long k) const {
    GroupWord const base = k < 0 ? inverse() : *this;
    GroupWord       result(*_aut);
    for (long i = 0; i < (k < 0 ? -k : k); ++i) {
      result *= base;
    }
    return result;
  }

  GroupWord& GroupWord::operator*=(GroupWord const& other) {
    if (_aut != other._aut) {
      throw InvalidInput("cannot multiply words over different automata");
    }
    _factors.insert(_factors.end(), other._factors.begin(),
                    other._factors.end());
    return *this;
  }

  GroupWord commutator(GroupWord const& a, GroupWord const& b) {
    return a * b * a.inverse() * b.inverse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Action and wreath recursion
  ////////////////////////////////////////////////////////////////////////

  bool RootPermutation::is_identity() const noexcept {
    for (std::size_t x = 0; x < image.size(); ++x) {
      if (image[x] != x) {
        return false;
      }
    }
    return true;
  }

  void act(Automaton const& aut, std::span<Factor const> w,
           std::vector<LetterIndex>& u) {
    for (auto f = w.rbegin(); f != w.rend(); ++f) {
      StateId s = f->state;
      if (f->exponent > 0) {
        for (auto& x : u) {
          StateId const t = aut.next(s, x);
          x               = aut.output(s, x);
          s               = t;
        }
      } else {
        for (auto& y : u) {
          LetterIndex const x = aut.inverse_output(s, y);
          s                   = aut.next(s, x);
          y                   = x;
        }
      }
    }
  }

  DigitWord act(GroupWord const& w, DigitWord const& u) {
    auto const& codec   = w.automaton().codec();
    auto        letters = codec.encode(u);
    act(w.automaton(), w.factors(), letters);
    return codec.decode(letters);
  }

  namespace {

    // Image of x under the word and the (unreduced) section at x.
    LetterIndex section_at(Automaton const& aut, std::span<Factor const> w,
                           LetterIndex x, std::vector<Factor>& section) {
      section.resize(w.size());
      for (std::size_t i = w.size(); i-- > 0;) {
        StateId const s = w[i].state;
        if (w[i].exponent > 0) {
          section[i] = Factor{aut.next(s, x), 1};
          x          = aut.output(s, x);
        } else {
          LetterIndex const pre = aut.inverse_output(s, x);
          section[i]            = Factor{aut.next(s, pre), -1};
          x                     = pre;
        }
      }
      return x;
    }

  }  // namespace

  WreathRecursion root_and_sections(GroupWord const& w) {
    auto const&         aut      = w.automaton();
    std::size_t const   alphabet = aut.alphabet_size();
    WreathRecursion     result;
    std::vector<Factor> section;
    result.root.image.resize(alphabet);
    result.sections.reserve(alphabet);
    for (std::size_t x = 0; x < alphabet; ++x) {
      result.root.image[x] = section_at(aut, w.factors(),
                                        static_cast<LetterIndex>(x), section);
      free_reduce(section);
      result.sections.emplace_back(aut, section);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word problem
  ////////////////////////////////////////////////////////////////////////

  std::size_t default_node_budget() {
    if (char const* env = std::getenv("AFFAUTO_NODE_BUDGET")) {
      char*                    end   = nullptr;
      unsigned long long const value = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && value > 0) {
        return static_cast<std::size_t>(value);
      }
    }
    return kDefaultNodeBudget;
  }

  std::string_view to_string(WordProblemOutcome o) noexcept {
    switch (o) {
      case WordProblemOutcome::identity:
        return "IDENTITY";
      case WordProblemOutcome::nontrivial:
        return "NONTRIVIAL";
      case WordProblemOutcome::budget_exhausted:
        return "BUDGET-EXCEEDED";
    }
    return "?";
  }

  namespace {

    using Key = std::vector<std::uint32_t>;

    struct KeyHash {
      std::size_t operator()(Key const& k) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : k) {
          h ^= x;
          h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
      }
    };

    // Drops trivially acting states, then freely reduces.
    void normalize(Automaton const& aut, std::vector<Factor>& w) {
      std::erase_if(w, [&](Factor const& f) {
        return aut.acts_trivially(f.state);
      });
      free_reduce(w);
    }

    Key make_key(std::vector<Factor> const& w) {
      Key k;
      k.reserve(w.size());
      for (auto const& f : w) {
        k.push_back((f.state << 1) | (f.exponent < 0 ? 1U : 0U));
      }
      return k;
    }

    std::vector<Factor> from_key(Key const& k) {
      std::vector<Factor> w;
      w.reserve(k.size());
      for (auto x : k) {
        w.push_back(Factor{x >> 1, (x & 1U) ? -1 : 1});
      }
      return w;
    }

    struct Node {
      std::size_t parent;
      LetterIndex letter;
    };

  }  // namespace

  WordProblemResult is_identity(GroupWord const& w, std::size_t budget) {
    auto const&       aut      = w.automaton();
    std::size_t const alphabet = aut.alphabet_size();
    WordProblemResult result;

    std::vector<Factor> start = w.factors();
    normalize(aut, start);
    if (start.empty()) {
      result.visited = 1;
      return result;
    }

    std::unordered_map<Key, std::size_t, KeyHash> index;
    std::vector<Node>                             nodes;
    std::deque<Key>                               queue;
    Key                                           root_key = make_key(start);
    index.emplace(root_key, 0);
    nodes.push_back(Node{0, 0});
    queue.push_back(std::move(root_key));

    std::vector<Factor> current;
    std::vector<Factor> section;
    std::size_t         head = 0;
    while (!queue.empty()) {
      current = from_key(queue.front());
      queue.pop_front();
      std::size_t const here = head++;
      for (std::size_t x = 0; x < alphabet; ++x) {
        auto const letter = static_cast<LetterIndex>(x);
        if (section_at(aut, current, letter, section) != letter) {
          result.outcome = WordProblemOutcome::nontrivial;
          result.visited = nodes.size();
          std::vector<LetterIndex> witness{letter};
          for (std::size_t n = here; n != 0; n = nodes[n].parent) {
            witness.push_back(nodes[n].letter);
          }
          std::reverse(witness.begin(), witness.end());
          result.witness = std::move(witness);
          return result;
        }
        normalize(aut, section);
        if (section.empty()) {
          continue;
        }
        Key key = make_key(section);
        if (index.contains(key)) {
          continue;
        }
        if (nodes.size() >= budget) {
          result.outcome = WordProblemOutcome::budget_exhausted;
          result.visited = nodes.size();
          return result;
        }
        index.emplace(key, nodes.size());
        nodes.push_back(Node{here, letter});
        queue.push_back(std::move(key));
      }
    }
    result.visited = nodes.size();
    return result;
  }

  WordProblemResult equal(GroupWord const& a, GroupWord const& b,
                          std::size_t budget) {
    return is_identity(a * b.inverse(), budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Generators and relations
  ////////////////////////////////////////////////////////////////////////

  GroupWord translation_word(Automaton const& aut, std::size_t component,
                             std::size_t axis) {
    if (axis >= aut.dim()) {
      throw InvalidInput("axis " + std::to_string(axis + 1)
                         + " out of range for dimension "
                         + std::to_string(aut.dim()));
    }
    StateId const zero  = aut.state_id(component, IntVector(aut.dim()));
    StateId const minus = aut.state_id(component,
                                       -IntVector::unit(aut.dim(), axis));
    return GroupWord(aut, {Factor{zero, 1}, Factor{minus, -1}});
  }

  GroupWord linear_word(Automaton const& aut, std::size_t component) {
    return GroupWord::state(aut, aut.state_id(component, IntVector(aut.dim())));
  }

  IntMatrix unimodular_inverse(IntMatrix const& m) {
    Integer const dt = det(m);
    if (dt != 1 && dt != -1) {
      throw InvalidInput("matrix " + to_string(m) + " has determinant "
                         + dt.get_str() + " and no integer inverse");
    }
    std::size_t const d = m.dim();
    IntMatrix         inv(d);
    if (d == 1) {
      inv(0, 0) = dt;
      return inv;
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        // cofactor C_ij goes to position (j, i)
        IntMatrix minor(d - 1);
        for (std::size_t r = 0, mr = 0; r < d; ++r) {
          if (r == i) {
            continue;
          }
          for (std::size_t c = 0, mc = 0; c < d; ++c) {
            if (c == j) {
              continue;
            }
            minor(mr, mc++) = m(r, c);
          }
          ++mr;
        }
        Integer cof = det(minor);
        if ((i + j) % 2 == 1) {
          cof = -cof;
        }
        inv(j, i) = cof * dt;  // dividing by +-1 is multiplying by it
      }
    }
    return inv;
  }

  RelationReport verify_relation(Automaton const& aut, std::size_t component,
                                 std::size_t axis, bool inverse,
                                 std::size_t budget) {
    if (component >= aut.matrices().size()) {
      throw InvalidInput("no component " + std::to_string(component));
    }
    IntMatrix const& m = aut.matrices()[component];
    IntMatrix const  a = inverse ? unimodular_inverse(m) : m;
    GroupWord        l = linear_word(aut, component);
    if (inverse) {
      l = l.inverse();
    }
    GroupWord const lhs
        = l * translation_word(aut, component, axis) * l.inverse();
    GroupWord rhs(aut);
    for (std::size_t r = 0; r < aut.dim(); ++r) {
      rhs *= translation_word(aut, component, r)
                 .power(to_long(a(r, axis), "matrix entry"));
    }
    RelationReport report;
    report.component = component;
    report.axis      = axis;
    report.inverse   = inverse;
    report.lhs       = to_string(lhs);
    report.rhs       = to_string(rhs);
    report.result    = equal(lhs, rhs, budget);
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded conjugacy search
  ////////////////////////////////////////////////////////////////////////

  ConjugacyResult conjugacy_search_bounded(GroupWord const& w1,
                                           GroupWord const& w2,
                                           std::size_t      max_length,
                                           std::size_t      budget) {
    auto const& aut = w1.automaton();
    if (&aut != &w2.automaton()) {
      throw InvalidInput("words live in different automata");
    }
    // symbols 2g and 2g+1 are a generator and its inverse
    std::vector<GroupWord> symbols;
    for (std::size_t c = 0; c < aut.components().size(); ++c) {
      auto g = linear_word(aut, c);
      symbols.push_back(g);
      symbols.push_back(g.inverse());
    }
    for (std::size_t j = 0; j < aut.dim(); ++j) {
      auto g = translation_word(aut, 0, j);
      symbols.push_back(g);
      symbols.push_back(g.inverse());
    }

    ConjugacyResult          result;
    std::vector<std::size_t> word;
    auto try_candidate = [&]() -> bool {
      GroupWord c(aut);
      for (auto s : word) {
        c *= symbols[s];
      }
      ++result.candidates;
      auto const r = equal(c * w1 * c.inverse(), w2, budget);
      if (r.is_identity()) {
        result.conjugator = c;
        return true;
      }
      if (r.outcome == WordProblemOutcome::budget_exhausted) {
        ++result.inconclusive_checks;
      }
      return false;
    };
    // depth-first over freely reduced symbol sequences of exactly `len`
    auto search = [&](auto&& self, std::size_t len) -> bool {
      if (word.size() == len) {
        return try_candidate();
      }
      for (std::size_t s = 0; s < symbols.size(); ++s) {
        if (!word.empty() && (word.back() ^ 1U) == s) {
          continue;
        }
        word.push_back(s);
        bool const hit = self(self, len);
        word.pop_back();
        if (hit) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t len = 0; len <= max_length; ++len) {
      if (search(search, len)) {
        break;
      }
    }
    return result;
  }

}  // namespace affauto
