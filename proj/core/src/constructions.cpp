#include "affauto/constructions.hpp"

#include <algorithm>

#include "affauto/error.hpp"

namespace affauto {

  std::vector<IntMatrix> block_extend(std::vector<IntMatrix> const& uppers,
                                      std::vector<IntMatrix> const& lowers) {
    if (uppers.size() != lowers.size()) {
      throw InvalidInput("block_extend needs equally many upper ("
                         + std::to_string(uppers.size()) + ") and lower ("
                         + std::to_string(lowers.size()) + ") blocks");
    }
    std::vector<IntMatrix> result;
    result.reserve(uppers.size());
    for (std::size_t i = 0; i < uppers.size(); ++i) {
      if (uppers[i].dim() != uppers.front().dim()) {
        throw InvalidInput("upper blocks differ in size");
      }
      if (lowers[i].dim() != 2) {
        throw InvalidInput("lower blocks must be 2x2, block "
                           + std::to_string(i) + " is "
                           + std::to_string(lowers[i].dim()) + "x"
                           + std::to_string(lowers[i].dim()));
      }
      result.push_back(block_diag(uppers[i], lowers[i]));
    }
    return result;
  }

  std::pair<IntMatrix, IntMatrix> sanov_pair() {
    return {IntMatrix{{1, 2}, {0, 1}}, IntMatrix{{1, 0}, {2, 1}}};
  }

  void free_reduce(std::vector<Syllable>& word) {
    std::vector<Syllable> out;
    out.reserve(word.size());
    for (auto const& s : word) {
      if (s.exponent == 0) {
        continue;
      }
      if (!out.empty() && out.back().generator == s.generator) {
        out.back().exponent += s.exponent;
        if (out.back().exponent == 0) {
          out.pop_back();
        }
      } else {
        out.push_back(s);
      }
    }
    word = std::move(out);
  }

  Presentation presentation_for(std::vector<IntMatrix> const& ms) {
    if (ms.empty()) {
      throw InvalidInput("need at least one matrix");
    }
    std::size_t const d = ms.front().dim();
    Presentation      p;
    p.dim = d;
    for (std::size_t i = 0; i < d; ++i) {
      p.generators.push_back(d == 1 ? std::string("a")
                                    : "a" + std::to_string(i + 1));
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
      if (ms[k].dim() != d) {
        throw InvalidInput("matrix dimensions differ");
      }
      p.generators.push_back(ms.size() == 1 ? std::string("t")
                                            : "t" + std::to_string(k + 1));
      if (!is_unimodular(ms[k])) {
        p.ascending_hnn = true;
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        p.relators.push_back(
            Relator{{{i, 1}, {j, 1}, {i, -1}, {j, -1}}, true});
      }
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
      std::size_t const t = d + k;
      for (std::size_t j = 0; j < d; ++j) {
        Relator r;
        r.word = {{t, 1}, {j, 1}, {t, -1}};
        for (std::size_t i = d; i-- > 0;) {
          r.word.push_back({i, -to_long(ms[k](i, j), "matrix entry")});
        }
        free_reduce(r.word);
        p.relators.push_back(std::move(r));
      }
    }
    return p;
  }

  std::string to_string(Presentation const& p, Relator const& rel) {
    if (rel.commutator) {
      return "[" + p.generators[rel.word[0].generator] + ","
             + p.generators[rel.word[1].generator] + "]";
    }
    std::string s;
    for (std::size_t i = 0; i < rel.word.size(); ++i) {
      if (i) {
        s += ' ';
      }
      s += p.generators[rel.word[i].generator];
      if (rel.word[i].exponent != 1) {
        s += "^" + std::to_string(rel.word[i].exponent);
      }
    }
    return s;
  }

  std::string to_string(Presentation const& p) {
    std::string s = "< ";
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      s += (g ? ", " : "") + p.generators[g];
    }
    s += " | ";
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      s += (r ? ", " : "") + to_string(p, p.relators[r]);
    }
    s += " >";
    if (p.ascending_hnn) {
      s += " (ascending HNN)";
    }
    return s;
  }

  GroupWord relator_word(Automaton const& aut, Presentation const& p,
                         Relator const& r) {
    if (aut.dim() != p.dim
        || aut.components().size() != p.stable_letters()) {
      throw InvalidInput("automaton does not match the presentation");
    }
    std::vector<GroupWord> gens;
    for (std::size_t j = 0; j < p.dim; ++j) {
      gens.push_back(translation_word(aut, 0, j));
    }
    for (std::size_t k = 0; k < p.stable_letters(); ++k) {
      gens.push_back(linear_word(aut, k));
    }
    GroupWord w(aut);
    for (auto const& s : r.word) {
      if (s.generator >= gens.size()) {
        throw InvalidInput("relator uses an unknown generator");
      }
      w *= gens[s.generator].power(s.exponent);
    }
    return w;
  }

  bool RelatorReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](RelatorCheck const& c) { return c.passed(); });
  }

  RelatorReport relator_check(Automaton const& aut, Presentation const& p,
                              std::size_t budget) {
    RelatorReport report;
    for (auto const& r : p.relators) {
      report.checks.push_back(RelatorCheck{
          to_string(p, r), is_identity(relator_word(aut, p, r), budget)});
    }
    return report;
  }

}  // namespace affauto
