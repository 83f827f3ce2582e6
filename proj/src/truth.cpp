#include "bbalg/truth.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bbalg {

namespace {

// Visits every tuple in elems^arity in lexicographic order.
template <class Fn>
void for_each_tuple(const std::vector<Element>& elems, std::size_t arity, Fn&& fn)
{
  std::vector<Element> args(arity);
  if (arity == 0) {
    fn(std::span<const Element>(args));
    return;
  }
  if (elems.empty())
    return;
  std::vector<std::size_t> idx(arity, 0);
  for (;;) {
    for (std::size_t i = 0; i < arity; ++i)
      args[i] = elems[idx[i]];
    fn(std::span<const Element>(args));
    std::size_t pos = arity;
    while (pos > 0 && ++idx[pos - 1] == elems.size())
      idx[--pos] = 0;
    if (pos == 0)
      return;
  }
}

std::vector<Element> all_elements(const CayleyAlgebra& alg)
{
  std::vector<Element> v(alg.size());
  for (Element e = 0; e < alg.size(); ++e)
    v[e] = e;
  return v;
}

} // namespace

ElementSet make_set(const CayleyAlgebra& alg, std::span<const Element> elems)
{
  ElementSet s(alg.size());
  for (Element e : elems)
    s.set(e);
  return s;
}

ElementSet empty_set(const CayleyAlgebra& alg) { return ElementSet(alg.size()); }

ElementSet full_set(const CayleyAlgebra& alg)
{
  ElementSet s(alg.size());
  s.set();
  return s;
}

std::vector<Element> elements_of(const ElementSet& s)
{
  std::vector<Element> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    out.push_back(static_cast<Element>(i));
  return out;
}

ElementSet subgroup_closure(const CayleyAlgebra& alg, const ElementSet& s)
{
  // Positive words in the generators suffice in a finite group. Generators
  // already inside the current closure are skipped, so at most log2|H|
  // extensions happen.
  ElementSet closed(alg.size());
  std::vector<Element> members{alg.zero()};
  closed.set(alg.zero());
  std::vector<Element> gens;
  for (auto x = s.find_first(); x != ElementSet::npos; x = s.find_next(x)) {
    if (closed.test(x))
      continue;
    gens.push_back(static_cast<Element>(x));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Element g : gens) {
        const Element y = alg.add(members[i], g);
        if (!closed.test(y)) {
          closed.set(y);
          members.push_back(y);
        }
      }
  }
  return closed;
}

ElementSet subgroup_closure(const CayleyAlgebra& alg, std::span<const Element> s)
{
  return subgroup_closure(alg, make_set(alg, s));
}

ElementSet omega_image(const CayleyAlgebra& alg, SymbolId omega, const ElementSet& s)
{
  ElementSet out(alg.size());
  for_each_tuple(elements_of(s), alg.signature().arity(omega),
                 [&](std::span<const Element> args) { out.set(alg.apply(omega, args)); });
  return out;
}

ElementSet tau_step(const CayleyAlgebra& alg, const ElementSet& s)
{
  ElementSet t = s;
  for (SymbolId id = Signature::gamma_size; id < alg.signature().size(); ++id)
    t |= omega_image(alg, id, s);
  return subgroup_closure(alg, t);
}

SigmaClosure sigma_closure(const CayleyAlgebra& alg, const ElementSet& s)
{
  SigmaClosure r{s, 0};
  for (;;) {
    ElementSet next = tau_step(alg, r.set);
    if (next == r.set)
      return r;
    r.set = std::move(next);
    ++r.iterations;
  }
}

ElementSet worklist_subalgebra(const CayleyAlgebra& alg, const ElementSet& s)
{
  ElementSet closed = s;
  const Signature& sig = alg.signature();
  bool changed = true;
  while (changed) {
    changed = false;
    const auto members = elements_of(closed);
    for (SymbolId id = 0; id < sig.size(); ++id)
      for_each_tuple(members, sig.arity(id), [&](std::span<const Element> args) {
        const Element y = alg.apply(id, args);
        if (!closed.test(y)) {
          closed.set(y);
          changed = true;
        }
      });
  }
  return closed;
}

std::vector<Element> sigma_generating_set(const CayleyAlgebra& alg)
{
  std::vector<Element> gens;
  ElementSet cur = sigma_closure(alg, empty_set(alg)).set;
  for (Element e = 0; e < alg.size() && !cur.all(); ++e) {
    if (cur.test(e))
      continue;
    gens.push_back(e);
    cur = sigma_closure(alg, make_set(alg, gens)).set;
  }
  return gens;
}

std::vector<Element> additive_generating_set(const CayleyAlgebra& alg)
{
  std::vector<Element> gens;
  ElementSet cur = subgroup_closure(alg, empty_set(alg));
  for (Element e = 0; e < alg.size() && !cur.all(); ++e) {
    if (cur.test(e))
      continue;
    gens.push_back(e);
    cur = subgroup_closure(alg, make_set(alg, gens));
  }
  return gens;
}

bool generates_additively(const CayleyAlgebra& alg, std::span<const Element> elems)
{
  return subgroup_closure(alg, elems).all();
}

bool is_subgroup(const CayleyAlgebra& alg, const ElementSet& a)
{
  return a.test(alg.zero()) && subgroup_closure(alg, a) == a;
}

bool is_normal_subgroup(const CayleyAlgebra& alg, const ElementSet& a)
{
  if (!is_subgroup(alg, a))
    return false;
  const auto gens = additive_generating_set(alg);
  for (auto x = a.find_first(); x != ElementSet::npos; x = a.find_next(x))
    for (Element g : gens)
      if (!a.test(alg.add(alg.add(alg.neg(g), static_cast<Element>(x)), g)))
        return false;
  return true;
}

namespace {

// Images ω(h1, .., a, .., h_ar) with a ∈ A in slot `pos` and h ranging over H.
template <class Fn>
void for_each_absorption(const CayleyAlgebra& alg, const ElementSet& a, Fn&& fn)
{
  const Signature& sig = alg.signature();
  const auto everything = all_elements(alg);
  const auto members = elements_of(a);
  std::vector<Element> args;
  for (SymbolId id = Signature::gamma_size; id < sig.size(); ++id) {
    const std::size_t ar = sig.arity(id);
    if (ar == 0)
      continue;
    args.resize(ar);
    for (std::size_t pos = 0; pos < ar; ++pos)
      for_each_tuple(everything, ar - 1, [&](std::span<const Element> rest) {
        for (Element x : members) {
          for (std::size_t i = 0, r = 0; i < ar; ++i)
            args[i] = (i == pos) ? x : rest[r++];
          fn(id, pos, std::span<const Element>(args));
        }
      });
  }
}

} // namespace

bool is_ideal(const CayleyAlgebra& alg, const ElementSet& a)
{
  if (!is_normal_subgroup(alg, a))
    return false;
  bool ok = true;
  for_each_absorption(alg, a, [&](SymbolId id, std::size_t, std::span<const Element> args) {
    ok = ok && a.test(alg.apply(id, args));
  });
  return ok;
}

bool is_ideal_by_definition(const CayleyAlgebra& alg, const ElementSet& a)
{
  if (!is_normal_subgroup(alg, a))
    return false;
  const Signature& sig = alg.signature();
  const auto everything = all_elements(alg);
  std::vector<Element> shifted;
  for (SymbolId id = Signature::gamma_size; id < sig.size(); ++id) {
    const std::size_t ar = sig.arity(id);
    if (ar == 0)
      continue;
    bool ok = true;
    for_each_tuple(everything, ar, [&](std::span<const Element> h) {
      if (!ok)
        return;
      const Element base = alg.apply(id, h);
      shifted.assign(h.begin(), h.end());
      for (std::size_t pos = 0; pos < ar && ok; ++pos)
        for (auto x = a.find_first(); x != ElementSet::npos && ok; x = a.find_next(x)) {
          shifted[pos] = alg.add(static_cast<Element>(x), h[pos]);
          ok = a.test(alg.sub(alg.apply(id, shifted), base));
          shifted[pos] = h[pos];
        }
    });
    if (!ok)
      return false;
  }
  return true;
}

ElementSet normal_closure(const CayleyAlgebra& alg, const ElementSet& s)
{
  const auto gens = additive_generating_set(alg);
  ElementSet cur = subgroup_closure(alg, s);
  for (;;) {
    ElementSet next = cur;
    for (auto x = cur.find_first(); x != ElementSet::npos; x = cur.find_next(x))
      for (Element g : gens)
        next.set(alg.add(alg.add(alg.neg(g), static_cast<Element>(x)), g));
    next = subgroup_closure(alg, next);
    if (next == cur)
      return cur;
    cur = std::move(next);
  }
}

ElementSet ideal_closure(const CayleyAlgebra& alg, const ElementSet& t)
{
  ElementSet cur = normal_closure(alg, t);
  for (;;) {
    ElementSet next = cur;
    for_each_absorption(alg, cur, [&](SymbolId id, std::size_t, std::span<const Element> args) {
      next.set(alg.apply(id, args));
    });
    next = normal_closure(alg, next);
    if (next == cur)
      return cur;
    cur = std::move(next);
  }
}

std::vector<std::vector<Element>> phi_operation_tables(const CayleyAlgebra& alg, std::span<const Element> g)
{
  const std::size_t n = alg.size();
  const std::size_t m = g.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Element> t(n);
    for (Element h = 0; h < n; ++h)
      t[h] = alg.add(alg.add(alg.neg(g[i]), h), g[i]);
    tables.push_back(std::move(t));
  }
  const Signature& sig = alg.signature();
  std::vector<Element> indices(m);
  for (std::size_t i = 0; i < m; ++i)
    indices[i] = static_cast<Element>(i);
  std::vector<Element> args;
  for (SymbolId id = Signature::gamma_size; id < sig.size(); ++id) {
    const std::size_t ar = sig.arity(id);
    if (ar == 0)
      continue;
    args.resize(ar);
    for (std::size_t j = 0; j < ar; ++j)
      for_each_tuple(indices, ar - 1, [&](std::span<const Element> d) {
        std::vector<Element> t(n);
        for (Element h = 0; h < n; ++h) {
          for (std::size_t i = 0, r = 0; i < ar; ++i)
            args[i] = (i == j) ? h : g[d[r++]];
          t[h] = alg.apply(id, args);
        }
        tables.push_back(std::move(t));
      });
  }
  return tables;
}

ElementSet phi_closure(const CayleyAlgebra& alg, std::span<const Element> g, const ElementSet& t)
{
  const auto tables = phi_operation_tables(alg, g);
  ElementSet cur = subgroup_closure(alg, t);
  for (;;) {
    ElementSet next = cur;
    for (auto x = cur.find_first(); x != ElementSet::npos; x = cur.find_next(x))
      for (const auto& tab : tables)
        next.set(tab[x]);
    next = subgroup_closure(alg, next);
    if (next == cur)
      return cur;
    cur = std::move(next);
  }
}

bool is_phi_subgroup(const CayleyAlgebra& alg, std::span<const Element> g, const ElementSet& a)
{
  if (!is_subgroup(alg, a))
    return false;
  for (const auto& tab : phi_operation_tables(alg, g))
    for (auto x = a.find_first(); x != ElementSet::npos; x = a.find_next(x))
      if (!a.test(tab[x]))
        return false;
  return true;
}

std::vector<ElementSet> all_subgroups(const CayleyAlgebra& alg, std::size_t size_cap, std::size_t count_cap)
{
  if (alg.size() > size_cap)
    throw Error(Errc::BudgetExceeded, "subgroup search is capped at " + std::to_string(size_cap) + " elements");
  std::set<ElementSet> seen;
  std::vector<ElementSet> order;
  ElementSet trivial = subgroup_closure(alg, empty_set(alg));
  seen.insert(trivial);
  order.push_back(trivial);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ElementSet k = order[i];
    for (Element x = 0; x < alg.size(); ++x) {
      if (k.test(x))
        continue;
      ElementSet bigger = k;
      bigger.set(x);
      bigger = subgroup_closure(alg, bigger);
      if (seen.insert(bigger).second) {
        order.push_back(std::move(bigger));
        if (order.size() > count_cap)
          throw Error(Errc::BudgetExceeded, "more than " + std::to_string(count_cap) + " subgroups");
      }
    }
  }
  return order;
}

ChainCertificate longest_subgroup_chain(const CayleyAlgebra& alg, std::size_t size_cap)
{
  auto subs = all_subgroups(alg, size_cap);
  std::sort(subs.begin(), subs.end(),
            [](const ElementSet& a, const ElementSet& b) { return a.count() < b.count(); });
  // subs[0] is the trivial subgroup.
  std::vector<std::size_t> best(subs.size(), 0), prev(subs.size(), 0);
  for (std::size_t i = 1; i < subs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (subs[j].count() < subs[i].count() && subs[j].is_subset_of(subs[i]) && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        prev[i] = j;
      }
  // The whole group ends some longest chain.
  std::size_t top = subs.size() - 1;
  ChainCertificate cert;
  for (std::size_t i = top;; i = prev[i]) {
    cert.chain.push_back(subs[i]);
    if (best[i] == 0)
      break;
  }
  std::reverse(cert.chain.begin(), cert.chain.end());
  return cert;
}

std::size_t max_chain_length(const CayleyAlgebra& alg, std::size_t size_cap)
{
  return longest_subgroup_chain(alg, size_cap).length();
}

std::optional<IdentityViolation> find_identity_violation(const CayleyAlgebra& alg,
                                                         std::span<const Identity> identities)
{
  const std::size_t n = alg.size();
  for (std::size_t k = 0; k < identities.size(); ++k) {
    const Identity& id = identities[k];
    const TermProgram lhs(id.lhs, alg.signature()), rhs(id.rhs, alg.signature());
    std::vector<Element> assignment(id.var_count, 0);
    for (;;) {
      if (eval_term(alg, lhs, assignment) != eval_term(alg, rhs, assignment))
        return IdentityViolation{k, assignment};
      std::size_t pos = assignment.size();
      while (pos > 0 && ++assignment[pos - 1] == n)
        assignment[--pos] = 0;
      if (pos == 0)
        break;
    }
  }
  return std::nullopt;
}

} // namespace bbalg
