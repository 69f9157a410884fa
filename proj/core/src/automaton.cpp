#include "affauto/automaton.hpp"

#include <algorithm>
#include <limits>

#include "affauto/error.hpp"

namespace affauto {

  ////////////////////////////////////////////////////////////////////////
  // LetterCodec
  ////////////////////////////////////////////////////////////////////////

  LetterCodec::LetterCodec(int base, std::size_t dim)
      : _base(base), _dim(dim), _size(1) {
    if (base < 2) {
      throw InvalidInput("base must be at least 2, found "
                         + std::to_string(base));
    }
    if (dim == 0) {
      throw InvalidInput("dimension must be at least 1");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (_size > std::numeric_limits<LetterIndex>::max()
                      / static_cast<std::size_t>(base)) {
        throw ResourceLimit("alphabet of size " + std::to_string(base) + "^"
                            + std::to_string(dim) + " is too large");
      }
      _size *= static_cast<std::size_t>(base);
    }
  }

  LetterIndex LetterCodec::encode(Letter const& x) const {
    check_letter(x, _base, _dim);
    LetterIndex index = 0;
    for (std::size_t i = _dim; i-- > 0;) {
      index = index * static_cast<LetterIndex>(_base)
              + static_cast<LetterIndex>(x.digits[i]);
    }
    return index;
  }

  Letter LetterCodec::decode(LetterIndex x) const {
    Letter letter{std::vector<int>(_dim)};
    for (std::size_t i = 0; i < _dim; ++i) {
      letter.digits[i] = static_cast<int>(x % static_cast<LetterIndex>(_base));
      x /= static_cast<LetterIndex>(_base);
    }
    return letter;
  }

  std::vector<LetterIndex> LetterCodec::encode(DigitWord const& w) const {
    if (w.base != _base || w.dim != _dim) {
      throw InvalidInput("digit word over base " + std::to_string(w.base)
                         + ", dimension " + std::to_string(w.dim)
                         + " does not match alphabet base "
                         + std::to_string(_base) + ", dimension "
                         + std::to_string(_dim));
    }
    std::vector<LetterIndex> result;
    result.reserve(w.size());
    for (auto const& x : w.letters) {
      result.push_back(encode(x));
    }
    return result;
  }

  DigitWord LetterCodec::decode(std::span<LetterIndex const> w) const {
    DigitWord result{_base, _dim, {}};
    result.letters.reserve(w.size());
    for (auto x : w) {
      result.letters.push_back(decode(x));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Automaton
  ////////////////////////////////////////////////////////////////////////

  Automaton::Automaton(int base, std::size_t dim,
                       std::vector<IntMatrix>      matrices,
                       std::vector<AutomatonState> states,
                       std::vector<Component>      components)
      : _codec(base, dim),
        _matrices(std::move(matrices)),
        _components(std::move(components)) {
    std::size_t const alphabet = _codec.size();
    if (_matrices.empty()) {
      throw InvalidInput("automaton needs at least one matrix");
    }
    for (auto const& m : _matrices) {
      if (m.dim() != dim) {
        throw InvalidInput("matrix " + to_string(m) + " is not "
                           + std::to_string(dim) + "x" + std::to_string(dim));
      }
    }
    if (states.size() > std::numeric_limits<StateId>::max()) {
      throw ResourceLimit("too many states");
    }
    _labels.reserve(states.size());
    _output.reserve(states.size() * alphabet);
    _next.reserve(states.size() * alphabet);
    _inverse_output.assign(states.size() * alphabet, 0);

    std::vector<char> seen(alphabet);
    for (std::size_t s = 0; s < states.size(); ++s) {
      auto& st = states[s];
      auto  at = "state " + std::to_string(s);
      if (st.matrix_index >= _matrices.size()) {
        throw InvalidInput(at + " refers to matrix "
                           + std::to_string(st.matrix_index)
                           + " which does not exist");
      }
      if (st.offset.dim() != dim) {
        throw InvalidInput(at + " has an offset of the wrong dimension");
      }
      if (st.output.size() != alphabet || st.next.size() != alphabet) {
        throw InvalidInput(at + " has tables of the wrong size");
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t x = 0; x < alphabet; ++x) {
        if (st.output[x] >= alphabet) {
          throw InvalidInput(at + " outputs an out-of-range letter");
        }
        if (seen[st.output[x]]) {
          throw InvalidInput(at + " does not permute the alphabet");
        }
        seen[st.output[x]] = 1;
        if (st.next[x] >= states.size()) {
          throw InvalidInput(at + " has an out-of-range next state");
        }
        _inverse_output[s * alphabet + st.output[x]]
            = static_cast<LetterIndex>(x);
      }
      _output.insert(_output.end(), st.output.begin(), st.output.end());
      _next.insert(_next.end(), st.next.begin(), st.next.end());
      _labels.push_back(Label{st.matrix_index, std::move(st.offset)});
    }

    if (_components.size() != _matrices.size()) {
      throw InvalidInput("expected one component per matrix");
    }
    for (std::size_t i = 0; i < _components.size(); ++i) {
      auto& c = _components[i];
      if (c.matrix_index != i) {
        throw InvalidInput("component " + std::to_string(i)
                           + " is out of order");
      }
      if (c.norm != row_sum_norm(_matrices[i]) || c.norm == 0) {
        throw InvalidInput("component " + std::to_string(i)
                           + " records a wrong norm");
      }
      long const norm     = to_long(c.norm, "matrix norm");
      std::size_t expected = 1;
      for (std::size_t k = 0; k < dim; ++k) {
        expected *= static_cast<std::size_t>(2 * norm);
      }
      if (c.by_offset.size() != expected) {
        throw InvalidInput("component " + std::to_string(i) + " lists "
                           + std::to_string(c.by_offset.size())
                           + " states, expected " + std::to_string(expected));
      }
      for (auto s : c.by_offset) {
        if (s >= _labels.size()) {
          throw InvalidInput("component " + std::to_string(i)
                             + " refers to a missing state");
        }
      }
    }
    // Every state must be reachable under its own label.
    for (std::size_t s = 0; s < _labels.size(); ++s) {
      auto const& c   = _components[_labels[s].matrix_index];
      long const  idx = vm_index(_labels[s].offset, c.norm.get_si());
      if (idx < 0) {
        throw InvalidInput("state " + std::to_string(s) + " has offset "
                           + to_string(_labels[s].offset)
                           + " outside V_M");
      }
      if (c.by_offset[static_cast<std::size_t>(idx)] != s) {
        throw InvalidInput("state " + std::to_string(s) + " label "
                           + label(static_cast<StateId>(s))
                           + " resolves to a different state");
      }
    }
    compute_trivial_states();
  }

  // Greatest fixpoint: start from the states with identity output and drop
  // any state with a section outside the set until nothing changes.
  void Automaton::compute_trivial_states() {
    std::size_t const alphabet = _codec.size();
    _trivial.assign(_labels.size(), 1);
    for (std::size_t s = 0; s < _labels.size(); ++s) {
      for (std::size_t x = 0; x < alphabet; ++x) {
        if (_output[s * alphabet + x] != x) {
          _trivial[s] = 0;
          break;
        }
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < _labels.size(); ++s) {
        if (!_trivial[s]) {
          continue;
        }
        for (std::size_t x = 0; x < alphabet; ++x) {
          if (!_trivial[_next[s * alphabet + x]]) {
            _trivial[s] = 0;
            changed     = true;
            break;
          }
        }
      }
    }
  }

  std::string Automaton::label(StateId s) const {
    auto const& l = _labels.at(s);
    return "m[" + std::to_string(l.matrix_index) + "]:" + to_string(l.offset);
  }

  std::optional<StateId> Automaton::find_state(std::size_t      component,
                                               IntVector const& v) const {
    if (component >= _components.size() || v.dim() != dim()) {
      return std::nullopt;
    }
    auto const& c   = _components[component];
    long const  idx = vm_index(v, c.norm.get_si());
    if (idx < 0) {
      return std::nullopt;
    }
    return c.by_offset[static_cast<std::size_t>(idx)];
  }

  StateId Automaton::state_id(std::size_t component, IntVector const& v) const {
    auto s = find_state(component, v);
    if (!s) {
      throw InvalidInput("no state m[" + std::to_string(component)
                         + "]:" + to_string(v) + " in this automaton");
    }
    return *s;
  }

  AutomatonState Automaton::state(StateId s) const {
    std::size_t const alphabet = _codec.size();
    auto const&       l        = _labels.at(s);
    return AutomatonState{
        l.matrix_index,
        l.offset,
        {_output.begin() + s * alphabet, _output.begin() + (s + 1) * alphabet},
        {_next.begin() + s * alphabet, _next.begin() + (s + 1) * alphabet}};
  }

  std::vector<AutomatonState> Automaton::states() const {
    std::vector<AutomatonState> result;
    result.reserve(size());
    for (std::size_t s = 0; s < size(); ++s) {
      result.push_back(state(static_cast<StateId>(s)));
    }
    return result;
  }

  bool operator==(Automaton const& a, Automaton const& b) {
    if (a.base() != b.base() || a.dim() != b.dim()
        || a._matrices != b._matrices || a._components != b._components
        || a._output != b._output || a._next != b._next
        || a._labels.size() != b._labels.size()) {
      return false;
    }
    for (std::size_t s = 0; s < a._labels.size(); ++s) {
      if (a._labels[s].matrix_index != b._labels[s].matrix_index
          || !(a._labels[s].offset == b._labels[s].offset)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void check_buildable(IntMatrix const& m, int n, std::size_t index) {
      auto const where = "matrix " + std::to_string(index) + " " + to_string(m);
      Integer const dt = det(m);
      if (dt == 0) {
        throw InvalidInput(where + " has determinant 0");
      }
      Integer g;
      Integer nn = n;
      mpz_gcd(g.get_mpz_t(), dt.get_mpz_t(), nn.get_mpz_t());
      if (g != 1) {
        throw InvalidInput(where + ": gcd(det=" + dt.get_str() + ", n="
                           + std::to_string(n) + ") = " + g.get_str()
                           + ", the output letters would not permute");
      }
    }

    // Appends the states of A_{M,n} for matrices[index] to `states`.
    //
    // Offsets lie in [-N, N-1] and letter digits in [0, n-1] with N = ||M||,
    // so every coordinate of v + M x lies in [-N n, N n - 1]; the caller has
    // checked that N n fits in a long, so the arithmetic below is exact.
    Component append_component(IntMatrix const& m, std::size_t index,
                               LetterCodec const&           codec,
                               std::vector<AutomatonState>& states) {
      std::size_t const d        = m.dim();
      std::size_t const alphabet = codec.size();
      long const        n        = codec.base();
      Integer const     norm     = row_sum_norm(m);
      long const        nrm      = to_long(norm, "matrix norm");

      std::vector<long> entries(d * d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          entries[i * d + j] = to_long(m(i, j), "matrix entry");
        }
      }
      // M x for every letter
      std::vector<long> images(alphabet * d, 0);
      for (std::size_t x = 0; x < alphabet; ++x) {
        Letter const letter = codec.decode(static_cast<LetterIndex>(x));
        for (std::size_t i = 0; i < d; ++i) {
          long sum = 0;
          for (std::size_t j = 0; j < d; ++j) {
            sum += entries[i * d + j] * letter.digits[j];
          }
          images[x * d + i] = sum;
        }
      }

      std::size_t count = 1;
      for (std::size_t i = 0; i < d; ++i) {
        count *= static_cast<std::size_t>(2 * nrm);
      }
      StateId const first = static_cast<StateId>(states.size());
      Component     comp{index, norm, {}};
      comp.by_offset.resize(count);

      std::vector<long> v(d);
      std::vector<long> digits(d);
      for (std::size_t k = 0; k < count; ++k) {
        comp.by_offset[k] = first + static_cast<StateId>(k);
        AutomatonState st{index, vm_vector(static_cast<long>(k), nrm, d),
                          std::vector<LetterIndex>(alphabet),
                          std::vector<StateId>(alphabet)};
        for (std::size_t i = 0; i < d; ++i) {
          v[i] = st.offset[i].get_si();
        }
        for (std::size_t x = 0; x < alphabet; ++x) {
          LetterIndex out   = 0;
          long        carry = 0;
          long        scale = 1;
          long        place = 1;
          for (std::size_t i = 0; i < d; ++i) {
            long const t = v[i] + images[x * d + i];
            long       q = t / n;
            long       r = t % n;
            if (r < 0) {
              r += n;
              q -= 1;
            }
            out += static_cast<LetterIndex>(r * place);
            place *= n;
            carry += (q + nrm) * scale;
            scale *= 2 * nrm;
          }
          st.output[x] = out;
          st.next[x]   = first + static_cast<StateId>(carry);
        }
        states.push_back(std::move(st));
      }
      return comp;
    }

  }  // namespace

  Automaton build_union(std::vector<IntMatrix> const& ms, int n,
                        BuildOptions const& opts) {
    if (ms.empty()) {
      throw InvalidInput("need at least one matrix");
    }
    if (n < 2) {
      throw InvalidInput("base n must be at least 2, found "
                         + std::to_string(n));
    }
    std::size_t const d = ms.front().dim();
    if (d == 0) {
      throw InvalidInput("matrices must be at least 1x1");
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (ms[i].dim() != d) {
        throw InvalidInput("matrix " + std::to_string(i) + " has dimension "
                           + std::to_string(ms[i].dim()) + ", expected "
                           + std::to_string(d));
      }
      check_buildable(ms[i], n, i);
    }
    Integer alphabet;
    mpz_ui_pow_ui(alphabet.get_mpz_t(), static_cast<unsigned long>(n), d);
    if (alphabet > opts.alphabet_cap) {
      throw ResourceLimit("alphabet size " + std::to_string(n) + "^"
                          + std::to_string(d) + " = " + alphabet.get_str()
                          + " exceeds the cap of "
                          + std::to_string(opts.alphabet_cap));
    }
    Integer total = 0;
    for (auto const& m : ms) {
      Integer side = 2 * row_sum_norm(m);
      Integer count;
      mpz_pow_ui(count.get_mpz_t(), side.get_mpz_t(), d);
      total += count;
      // keeps N n (the largest |v + M x|) and the offset index in range
      if (side * n > (1L << 30)) {
        throw ResourceLimit("matrix " + to_string(m) + " has too large a norm");
      }
    }
    if (total > opts.state_cap) {
      throw ResourceLimit(total.get_str() + " states exceed the cap of "
                          + std::to_string(opts.state_cap));
    }

    LetterCodec                 codec(n, d);
    std::vector<AutomatonState> states;
    states.reserve(total.get_ui());
    std::vector<Component> components;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      components.push_back(append_component(ms[i], i, codec, states));
    }
    return Automaton(n, d, ms, std::move(states), std::move(components));
  }

  Automaton build_single(IntMatrix const& m, int n, BuildOptions const& opts) {
    return build_union({m}, n, opts);
  }

  Integer state_bound(std::vector<IntMatrix> const& ms) {
    if (ms.empty()) {
      return 0;
    }
    std::size_t const d   = ms.front().dim();
    Integer           sum = 0;
    for (auto const& m : ms) {
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), row_sum_norm(m).get_mpz_t(), d);
      sum += p;
    }
    Integer two_d;
    mpz_ui_pow_ui(two_d.get_mpz_t(), 2, d);
    return two_d * sum;
  }

  ////////////////////////////////////////////////////////////////////////
  // Well-definedness
  ////////////////////////////////////////////////////////////////////////

  WellDefinednessReport well_definedness_check(Automaton const& aut,
                                               std::size_t max_violations) {
    WellDefinednessReport report;
    auto const&           codec = aut.codec();
    int const             n     = aut.base();

    auto violation = [&](StateId s, LetterIndex x, std::string reason) {
      ++report.failures;
      if (report.violations.size() < max_violations) {
        report.violations.push_back({s, x, std::move(reason)});
      }
    };

    // M x for every component and letter
    std::vector<std::vector<IntVector>> images(aut.matrices().size());
    for (std::size_t i = 0; i < aut.matrices().size(); ++i) {
      images[i].reserve(codec.size());
      for (std::size_t x = 0; x < codec.size(); ++x) {
        images[i].push_back(
            aut.matrices()[i]
            * to_vector(codec.decode(static_cast<LetterIndex>(x))));
      }
    }
    std::vector<Integer> norms;
    for (auto const& m : aut.matrices()) {
      norms.push_back(row_sum_norm(m));
    }

    for (std::size_t s = 0; s < aut.size(); ++s) {
      auto const       id   = static_cast<StateId>(s);
      std::size_t      mi   = aut.matrix_index(id);
      Integer const&   norm = norms[mi];
      Integer const    lo   = -norm * n;
      Integer const    hi   = norm * n - 1;
      IntVector const& v    = aut.offset(id);
      for (std::size_t xi = 0; xi < codec.size(); ++xi) {
        auto const x = static_cast<LetterIndex>(xi);
        ++report.checked;
        IntVector const t = v + images[mi][xi];
        for (std::size_t i = 0; i < t.dim(); ++i) {
          if (t[i] < lo || t[i] > hi) {
            violation(id, x,
                      "v+Mx = " + to_string(t) + " leaves [" + lo.get_str()
                          + ", " + hi.get_str() + "]");
            break;
          }
        }
        auto const [digit, quotient] = mod_div(t, n);
        auto const target            = aut.find_state(mi, quotient);
        if (!target) {
          violation(id, x, "Div(v+Mx) = " + to_string(quotient)
                               + " is not in V_M");
          continue;
        }
        if (aut.output(id, x) != codec.encode(digit)) {
          violation(id, x,
                    "output " + to_string(codec.decode(aut.output(id, x)))
                        + " differs from Mod(v+Mx) = " + to_string(digit));
        }
        StateId const actual = aut.next(id, x);
        if (aut.matrix_index(actual) != mi
            || !(aut.offset(actual) == quotient)) {
          // after dedup the stored target is the class representative
          if (actual != *target) {
            violation(id, x,
                      "next state " + aut.label(actual)
                          + " differs from m_{Div(v+Mx)} = m["
                          + std::to_string(mi) + "]:" + to_string(quotient));
          }
        }
      }
    }
    return report;
  }

}  // namespace affauto
