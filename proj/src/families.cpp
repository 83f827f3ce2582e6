#include "bbalg/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace bbalg {

namespace {

using Perm = std::vector<std::size_t>;

Perm compose(const Perm& a, const Perm& b)
{
  // (a ∘ b)(i) = a(b(i))
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[b[i]];
  return r;
}

Perm invert(const Perm& a)
{
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[a[i]] = i;
  return r;
}

std::string cycle_label(const Perm& p)
{
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i)
      continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      if (out.back() != '(')
        out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "0" : out;
}

// Tabulates a permutation group given as an indexed list of permutations.
CayleyAlgebra permutation_group(const std::vector<Perm>& elems, std::vector<std::string> labels)
{
  std::map<Perm, Element> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], static_cast<Element>(i));
  Perm id(elems.front().size());
  std::iota(id.begin(), id.end(), 0);
  auto lookup = [&](const Perm& p) {
    auto it = index.find(p);
    if (it == index.end())
      throw Error(Errc::SpecError, "permutation set is not closed");
    return it->second;
  };
  auto alg = CayleyAlgebra::tabulate(
      Signature{}, elems.size(),
      [&](SymbolId id_, std::span<const Element> a) -> Element {
        switch (id_) {
        case Signature::add_id: return lookup(compose(elems[a[0]], elems[a[1]]));
        case Signature::neg_id: return lookup(invert(elems[a[0]]));
        default: return lookup(id);
        }
      },
      std::move(labels));
  validate_algebra(alg);
  return alg;
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap)
{
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap)
      throw Error(Errc::ParamOutOfRange, "carrier would exceed " + std::to_string(cap) + " elements");
  }
  return r;
}

Signature ring_signature(bool unital)
{
  std::vector<OperationSymbol> omega{mul_symbol};
  if (unital)
    omega.push_back(one_symbol);
  return Signature(std::move(omega));
}

// Generic matrix ring over Z_p on a set of admissible positions.
CayleyAlgebra matrix_algebra(std::size_t k, std::size_t p, bool unital, bool upper)
{
  if (k == 0 || p < 2)
    throw Error(Errc::ParamOutOfRange, "need k >= 1 and p >= 2");
  std::vector<std::size_t> positions; // r*k + c of the stored entries
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = upper ? r : 0; c < k; ++c)
      positions.push_back(r * k + c);
  const std::size_t size = checked_power(p, positions.size(), max_carrier_size);

  auto decode = [&](Element e) {
    std::vector<std::size_t> m(k * k, 0);
    for (std::size_t pos : positions) {
      m[pos] = e % p;
      e /= static_cast<Element>(p);
    }
    return m;
  };
  auto encode = [&](const std::vector<std::size_t>& m) {
    Element e = 0;
    for (std::size_t i = positions.size(); i-- > 0;)
      e = static_cast<Element>(e * p + m[positions[i]] % p);
    return e;
  };

  std::vector<std::string> labels(size);
  for (Element e = 0; e < size; ++e) {
    auto m = decode(e);
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        os << m[r * k + c] << (c + 1 < k ? " " : (r + 1 < k ? ";" : "]"));
    labels[e] = os.str();
  }

  auto alg = CayleyAlgebra::tabulate(
      ring_signature(unital), size,
      [&](SymbolId id, std::span<const Element> a) -> Element {
        std::vector<std::size_t> out(k * k, 0);
        switch (id) {
        case Signature::add_id: {
          auto x = decode(a[0]), y = decode(a[1]);
          for (std::size_t i = 0; i < k * k; ++i)
            out[i] = (x[i] + y[i]) % p;
          break;
        }
        case Signature::neg_id: {
          auto x = decode(a[0]);
          for (std::size_t i = 0; i < k * k; ++i)
            out[i] = (p - x[i]) % p;
          break;
        }
        case Signature::zero_id: break;
        case Signature::gamma_size: { // mul
          auto x = decode(a[0]), y = decode(a[1]);
          for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
              std::size_t acc = 0;
              for (std::size_t t = 0; t < k; ++t)
                acc += x[r * k + t] * y[t * k + c];
              out[r * k + c] = acc % p;
            }
          break;
        }
        default: // one
          for (std::size_t r = 0; r < k; ++r)
            out[r * k + r] = 1;
        }
        return encode(out);
      },
      std::move(labels));
  validate_algebra(alg);
  return alg;
}

long param(const FamilySpec& spec, const std::string& key, std::optional<long> fallback = std::nullopt)
{
  auto it = spec.params.find(key);
  if (it != spec.params.end())
    return it->second;
  if (fallback)
    return *fallback;
  throw Error(Errc::ParamOutOfRange, "family '" + spec.name + "' needs parameter '" + key + "'");
}

std::size_t positive(const FamilySpec& spec, const std::string& key, std::optional<long> fallback = std::nullopt)
{
  const long v = param(spec, key, fallback);
  if (v < 0)
    throw Error(Errc::ParamOutOfRange, spec.name + "." + key + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

} // namespace

CayleyAlgebra cyclic_group(std::size_t n)
{
  if (n == 0 || n > max_carrier_size)
    throw Error(Errc::ParamOutOfRange, "cyclic group order must be in [1, 4096]");
  auto alg = CayleyAlgebra::tabulate(Signature{}, n, [n](SymbolId id, std::span<const Element> a) -> Element {
    switch (id) {
    case Signature::add_id: return static_cast<Element>((a[0] + a[1]) % n);
    case Signature::neg_id: return static_cast<Element>((n - a[0]) % n);
    default: return 0;
    }
  });
  validate_algebra(alg);
  return alg;
}

CayleyAlgebra dihedral_group(std::size_t n)
{
  if (n < 3 || 2 * n > max_carrier_size)
    throw Error(Errc::ParamOutOfRange, "dihedral group needs 3 <= n <= 2048");
  Perm r(n), f(n), id(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = i;
    r[i] = (i + 1) % n;
    f[i] = (n - i) % n;
  }
  std::vector<Perm> elems(2 * n);
  std::vector<std::string> labels(2 * n);
  for (std::size_t b = 0; b < 2; ++b) {
    Perm ra = id;
    for (std::size_t a = 0; a < n; ++a) {
      elems[a + n * b] = b ? compose(ra, f) : ra;
      std::string l = a == 0 ? "" : (a == 1 ? "r" : "r" + std::to_string(a));
      if (b)
        l += "f";
      labels[a + n * b] = l.empty() ? "0" : l;
      ra = compose(r, ra);
    }
  }
  return permutation_group(elems, std::move(labels));
}

CayleyAlgebra symmetric_group(std::size_t n)
{
  if (n < 1 || n > 5)
    throw Error(Errc::ParamOutOfRange, "symmetric group needs 1 <= n <= 5");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> elems;
  std::vector<std::string> labels;
  do {
    elems.push_back(p);
    labels.push_back(cycle_label(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return permutation_group(elems, std::move(labels));
}

CayleyAlgebra ring_mod_n(std::size_t n, bool unital)
{
  if (n == 0 || n > max_carrier_size)
    throw Error(Errc::ParamOutOfRange, "ring order must be in [1, 4096]");
  auto alg = CayleyAlgebra::tabulate(ring_signature(unital), n,
                                     [n](SymbolId id, std::span<const Element> a) -> Element {
                                       switch (id) {
                                       case Signature::add_id: return static_cast<Element>((a[0] + a[1]) % n);
                                       case Signature::neg_id: return static_cast<Element>((n - a[0]) % n);
                                       case Signature::zero_id: return 0;
                                       case Signature::gamma_size:
                                         return static_cast<Element>((std::size_t{a[0]} * a[1]) % n);
                                       default: return static_cast<Element>(1 % n);
                                       }
                                     });
  validate_algebra(alg);
  return alg;
}

CayleyAlgebra matrix_ring(std::size_t k, std::size_t p, bool unital) { return matrix_algebra(k, p, unital, false); }

CayleyAlgebra upper_triangular_ring(std::size_t k, std::size_t p, bool unital)
{
  return matrix_algebra(k, p, unital, true);
}

Element matrix_index(std::size_t k, std::size_t p, const std::vector<std::size_t>& entries)
{
  Element e = 0;
  for (std::size_t i = k * k; i-- > 0;)
    e = static_cast<Element>(e * p + entries.at(i) % p);
  return e;
}

Element upper_triangular_index(std::size_t k, std::size_t p, const std::vector<std::size_t>& entries)
{
  std::vector<std::size_t> positions;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = r; c < k; ++c)
      positions.push_back(r * k + c);
  Element e = 0;
  for (std::size_t i = positions.size(); i-- > 0;)
    e = static_cast<Element>(e * p + entries.at(positions[i]) % p);
  return e;
}

CayleyAlgebra direct_product(const CayleyAlgebra& a, const CayleyAlgebra& b)
{
  if (!(a.signature() == b.signature()))
    throw Error(Errc::SignatureMismatch, "direct product factors need equal signatures");
  const std::size_t nb = b.size();
  const std::size_t size = a.size() * nb;
  if (size > max_carrier_size)
    throw Error(Errc::ParamOutOfRange, "product exceeds 4096 elements");
  std::vector<std::string> labels(size);
  for (std::size_t i = 0; i < size; ++i)
    labels[i] = "(" + a.label(static_cast<Element>(i / nb)) + "," + b.label(static_cast<Element>(i % nb)) + ")";
  std::vector<Element> left, right;
  auto alg = CayleyAlgebra::tabulate(
      a.signature(), size,
      [&](SymbolId id, std::span<const Element> args) -> Element {
        left.resize(args.size());
        right.resize(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) {
          left[i] = static_cast<Element>(args[i] / nb);
          right[i] = static_cast<Element>(args[i] % nb);
        }
        return static_cast<Element>(a.apply(id, left) * nb + b.apply(id, right));
      },
      std::move(labels));
  validate_algebra(alg);
  return alg;
}

CayleyAlgebra build_family(const FamilySpec& spec)
{
  const std::string& name = spec.name;
  if (name == "cyclic")
    return cyclic_group(positive(spec, "n"));
  if (name == "dihedral")
    return dihedral_group(positive(spec, "n"));
  if (name == "symmetric")
    return symmetric_group(positive(spec, "n"));
  if (name == "ring_mod_n")
    return ring_mod_n(positive(spec, "n"), param(spec, "unital", 0) != 0);
  if (name == "ring_mod_n_unital")
    return ring_mod_n(positive(spec, "n"), true);
  if (name == "matrix_ring")
    return matrix_ring(positive(spec, "k"), positive(spec, "p"), param(spec, "unital", 0) != 0);
  if (name == "upper_triangular")
    return upper_triangular_ring(positive(spec, "k"), positive(spec, "p"), param(spec, "unital", 0) != 0);
  if (name == "direct_product") {
    if (spec.factors.empty())
      throw Error(Errc::ParamOutOfRange, "direct_product needs at least one factor");
    CayleyAlgebra acc = build_family(spec.factors.front());
    for (std::size_t i = 1; i < spec.factors.size(); ++i)
      acc = direct_product(acc, build_family(spec.factors[i]));
    return acc;
  }
  throw Error(Errc::UnknownFamily, "'" + name + "'");
}

// ---------------------------------------------------------------- polynomials

std::vector<std::size_t> index_tuple(const Monomial& mono)
{
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < mono.exponents.size(); ++i)
    t.insert(t.end(), mono.exponents[i], i + 1);
  return t;
}

namespace {

bool index_order(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

} // namespace

Polynomial::Polynomial(std::size_t variables, std::vector<Monomial> terms) : variables_(variables)
{
  std::map<std::vector<unsigned>, long> merged;
  for (auto& t : terms) {
    if (t.exponents.size() > variables)
      throw Error(Errc::SpecError, "monomial has more exponents than variables");
    t.exponents.resize(variables, 0);
    merged[t.exponents] += t.coefficient;
  }
  for (auto& [exps, c] : merged)
    if (c != 0)
      terms_.push_back({c, exps});
  std::sort(terms_.begin(), terms_.end(), [](const Monomial& a, const Monomial& b) {
    return index_order(index_tuple(a), index_tuple(b));
  });
}

Polynomial Polynomial::constant(std::size_t variables, long c)
{
  return Polynomial(variables, {{c, std::vector<unsigned>(variables, 0)}});
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t index)
{
  if (index == 0 || index > variables)
    throw Error(Errc::ParamOutOfRange, "variable index out of range");
  std::vector<unsigned> e(variables, 0);
  e[index - 1] = 1;
  return Polynomial(variables, {{1, e}});
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
  auto terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return Polynomial(std::max(a.variables_, b.variables_), std::move(terms));
}

Polynomial operator*(long c, const Polynomial& a)
{
  auto terms = a.terms_;
  for (auto& t : terms)
    t.coefficient *= c;
  return Polynomial(a.variables_, std::move(terms));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1L) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
  const std::size_t m = std::max(a.variables_, b.variables_);
  std::vector<Monomial> terms;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Monomial t{x.coefficient * y.coefficient, std::vector<unsigned>(m, 0)};
      for (std::size_t i = 0; i < x.exponents.size(); ++i)
        t.exponents[i] += x.exponents[i];
      for (std::size_t i = 0; i < y.exponents.size(); ++i)
        t.exponents[i] += y.exponents[i];
      terms.push_back(std::move(t));
    }
  return Polynomial(m, std::move(terms));
}

Term encode_polynomial_term(const Polynomial& p, const Term& v, std::span<const OperationSymbol> actions)
{
  if (actions.size() < p.variables())
    throw Error(Errc::SignatureMismatch, "polynomial has more variables than actions");
  std::vector<Term> plus, minus;
  for (const auto& mono : p.terms()) {
    Term image = v;
    for (std::size_t i : index_tuple(mono))
      image = op(actions[i - 1], {image});
    const long c = mono.coefficient;
    auto& side = c > 0 ? plus : minus;
    for (long r = 0; r < (c > 0 ? c : -c); ++r)
      side.push_back(image);
  }
  if (!plus.empty() && !minus.empty())
    return sum(plus) - sum(minus);
  if (!plus.empty())
    return sum(plus);
  if (!minus.empty())
    return -sum(minus);
  return zero_term();
}

// --------------------------------------------------------------- R-modules

Element apply_polynomial(const CayleyAlgebra& carrier, const std::vector<std::vector<Element>>& actions,
                         const Polynomial& q, Element b)
{
  Element acc = carrier.zero();
  for (const auto& mono : q.terms()) {
    Element image = b;
    for (std::size_t i : index_tuple(mono))
      image = actions.at(i - 1).at(image);
    const Element signed_image = mono.coefficient > 0 ? image : carrier.neg(image);
    const long reps = mono.coefficient > 0 ? mono.coefficient : -mono.coefficient;
    for (long r = 0; r < reps; ++r)
      acc = carrier.add(acc, signed_image);
  }
  return acc;
}

CayleyAlgebra build_rmodule(const RModulePresentation& pres)
{
  const CayleyAlgebra& carrier = pres.carrier;
  const std::size_t n = carrier.size();
  if (carrier.signature().omega_size() != 0)
    throw Error(Errc::SpecError, "module carrier must be a plain group");
  if (pres.actions.size() != pres.m)
    throw Error(Errc::SpecError, "expected " + std::to_string(pres.m) + " actions");
  check_expanded_group(carrier);
  if (!carrier.is_abelian())
    throw Error(Errc::NotAbelian, "module carrier is not abelian");
  for (std::size_t i = 0; i < pres.m; ++i) {
    const auto& act = pres.actions[i];
    if (act.size() != n)
      throw Error(Errc::SpecError, "action " + std::to_string(i + 1) + " is not total");
    for (Element e : act)
      if (e >= n)
        throw Error(Errc::SpecError, "action " + std::to_string(i + 1) + " leaves the carrier");
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (act[carrier.add(a, b)] != carrier.add(act[a], act[b]))
          throw Error(Errc::NonAdditiveAction, "action " + std::to_string(i + 1) + " at (" +
                                                   carrier.label(a) + ", " + carrier.label(b) + ")");
  }
  for (std::size_t i = 0; i < pres.m; ++i)
    for (std::size_t j = i + 1; j < pres.m; ++j)
      for (Element b = 0; b < n; ++b)
        if (pres.actions[i][pres.actions[j][b]] != pres.actions[j][pres.actions[i][b]])
          throw Error(Errc::NonCommutingActions, "actions " + std::to_string(i + 1) + " and " +
                                                     std::to_string(j + 1) + " at " + carrier.label(b));
  for (std::size_t r = 0; r < pres.relations.size(); ++r)
    for (Element b = 0; b < n; ++b)
      if (apply_polynomial(carrier, pres.actions, pres.relations[r], b) != carrier.zero())
        throw Error(Errc::RelationViolated, "relation " + std::to_string(r + 1) + " at " + carrier.label(b));

  std::vector<OperationSymbol> omega;
  for (std::size_t i = 0; i < pres.m; ++i)
    omega.push_back({i < pres.action_names.size() ? pres.action_names[i] : "w" + std::to_string(i + 1), 1});
  auto alg = CayleyAlgebra::tabulate(
      Signature(std::move(omega)), n,
      [&](SymbolId id, std::span<const Element> a) -> Element {
        if (Signature::is_omega(id))
          return pres.actions[id - Signature::gamma_size][a[0]];
        return carrier.apply(id, a);
      },
      carrier.labels());
  validate_algebra(alg);
  return alg;
}

std::vector<Identity> rmodule_identities(std::span<const OperationSymbol> actions,
                                         const std::vector<Polynomial>& relations)
{
  const Term x1 = var(1), x2 = var(2), x3 = var(3);
  std::vector<Identity> ids{
      {(x1 + x2) + x3, x1 + (x2 + x3)},
      {x1 + x2, x2 + x1},
      {x1 + zero_term(), x1},
      {x1 - x1, zero_term()},
  };
  for (const auto& w : actions)
    ids.emplace_back(op(w, {x1 + x2}), op(w, {x1}) + op(w, {x2}));
  for (std::size_t i = 0; i < actions.size(); ++i)
    for (std::size_t j = i + 1; j < actions.size(); ++j)
      ids.emplace_back(op(actions[j], {op(actions[i], {x1})}), op(actions[i], {op(actions[j], {x1})}));
  for (const auto& t : relations)
    ids.emplace_back(encode_polynomial_term(t, x1, actions), zero_term(), 1);
  return ids;
}

RModulePresentation sqrt2_module_z4()
{
  CayleyAlgebra carrier = direct_product(cyclic_group(4), cyclic_group(4));
  std::vector<Element> act(16);
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b)
      act[a * 4 + b] = ((2 * b) % 4) * 4 + a;
  const Polynomial y = Polynomial::variable(1, 1);
  return RModulePresentation{1, {y * y - Polynomial::constant(1, 2)}, std::move(carrier), {act}, {"w1"}};
}

} // namespace bbalg
