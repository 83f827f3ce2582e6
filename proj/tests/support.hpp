// Shared fixtures and deliberately naive reference computations.
//
// Nothing here calls into truth.cpp: these are the second opinion that the
// library's ground-truth module is compared against.
#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bbalg/families.hpp"

namespace testing_support {

using bbalg::CayleyAlgebra;
using bbalg::Element;
using bbalg::Signature;
using bbalg::SymbolId;

struct NamedAlgebra {
  std::string name;
  std::shared_ptr<const CayleyAlgebra> algebra;
};

inline std::shared_ptr<const CayleyAlgebra> share(CayleyAlgebra a)
{
  return std::make_shared<const CayleyAlgebra>(std::move(a));
}

/// Every small algebra the suite knows about, smallest first.
inline std::vector<NamedAlgebra> test_algebras(std::size_t max_size)
{
  using namespace bbalg;
  std::vector<NamedAlgebra> all = {
      {"Z1", share(cyclic_group(1))},
      {"Z2", share(cyclic_group(2))},
      {"Z4", share(cyclic_group(4))},
      {"Z2 ring", share(ring_mod_n(2))},
      {"Z4 ring", share(ring_mod_n(4))},
      {"Z6 ring", share(ring_mod_n(6))},
      {"Z6 ring with 1", share(ring_mod_n(6, true))},
      {"S3", share(symmetric_group(3))},
      {"D4", share(dihedral_group(4))},
      {"Z8", share(cyclic_group(8))},
      {"Z2^3", share(direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))))},
      {"UT2(Z2)", share(upper_triangular_ring(2, 2))},
      {"UT2(Z2) with 1", share(upper_triangular_ring(2, 2, true))},
      {"Z9 ring with 1", share(ring_mod_n(9, true))},
      {"D5", share(dihedral_group(5))},
      {"Z2 ring x Z4 ring", share(direct_product(ring_mod_n(2), ring_mod_n(4)))},
      {"M2(Z2)", share(matrix_ring(2, 2))},
      {"sqrt2 module", share(build_rmodule(sqrt2_module_z4()))},
      {"D8", share(dihedral_group(8))},
      {"S4", share(symmetric_group(4))},
      {"UT2(Z3)", share(upper_triangular_ring(2, 3))},
      {"UT3(Z2)", share(upper_triangular_ring(3, 2))},
  };
  std::vector<NamedAlgebra> out;
  for (auto& a : all)
    if (a.algebra->size() <= max_size)
      out.push_back(std::move(a));
  return out;
}

using Subset = std::vector<bool>;

inline Subset subset_of(std::size_t n, const std::vector<Element>& elems)
{
  Subset s(n, false);
  for (Element e : elems)
    s[e] = true;
  return s;
}

inline Subset subset_from_mask(std::size_t n, unsigned long mask)
{
  Subset s(n, false);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = (mask >> i) & 1u;
  return s;
}

inline std::size_t count(const Subset& s)
{
  std::size_t c = 0;
  for (bool b : s)
    c += b;
  return c;
}

/// Closure under every symbol of `ids` by plain fixpoint iteration over all tuples.
inline Subset naive_closure(const CayleyAlgebra& alg, Subset s, const std::vector<SymbolId>& ids)
{
  const std::size_t n = alg.size();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Element> members;
    for (Element e = 0; e < n; ++e)
      if (s[e])
        members.push_back(e);
    for (SymbolId id : ids) {
      const std::size_t ar = alg.signature().arity(id);
      std::vector<std::size_t> idx(ar, 0);
      std::vector<Element> args(ar);
      if (ar > 0 && members.empty())
        continue;
      for (;;) {
        for (std::size_t i = 0; i < ar; ++i)
          args[i] = members[idx[i]];
        const Element y = alg.apply(id, args);
        if (!s[y]) {
          s[y] = true;
          changed = true;
        }
        std::size_t pos = ar;
        while (pos > 0 && ++idx[pos - 1] == members.size())
          idx[--pos] = 0;
        if (pos == 0)
          break;
      }
    }
  }
  return s;
}

inline Subset naive_subgroup(const CayleyAlgebra& alg, const Subset& s)
{
  return naive_closure(alg, s, {Signature::add_id, Signature::neg_id, Signature::zero_id});
}

inline Subset naive_subalgebra(const CayleyAlgebra& alg, const Subset& s)
{
  std::vector<SymbolId> ids;
  for (SymbolId id = 0; id < alg.signature().size(); ++id)
    ids.push_back(id);
  return naive_closure(alg, s, ids);
}

inline bool naive_is_subgroup(const CayleyAlgebra& alg, const Subset& s)
{
  return naive_subgroup(alg, s) == s;
}

/// Normal subgroup (conjugation by every element) absorbing every non-nullary
/// ω in every position when the other arguments range over the whole carrier.
inline bool naive_is_ideal(const CayleyAlgebra& alg, const Subset& s)
{
  const std::size_t n = alg.size();
  if (!naive_is_subgroup(alg, s))
    return false;
  for (Element a = 0; a < n; ++a)
    if (s[a])
      for (Element h = 0; h < n; ++h)
        if (!s[alg.add(alg.add(alg.neg(h), a), h)])
          return false;
  for (SymbolId id = Signature::gamma_size; id < alg.signature().size(); ++id) {
    const std::size_t ar = alg.signature().arity(id);
    if (ar == 0)
      continue;
    std::vector<Element> args(ar, 0);
    for (;;) {
      for (std::size_t pos = 0; pos < ar; ++pos)
        if (s[args[pos]] && !s[alg.apply(id, args)])
          return false;
      std::size_t pos = ar;
      while (pos > 0 && ++args[pos - 1] == n)
        args[--pos] = 0;
      if (pos == 0)
        break;
    }
  }
  return true;
}

/// Every subgroup, by closing every subset (sizes <= 16 only).
inline std::set<Subset> naive_all_subgroups(const CayleyAlgebra& alg)
{
  std::set<Subset> out;
  const std::size_t n = alg.size();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask)
    out.insert(naive_subgroup(alg, subset_from_mask(n, mask)));
  return out;
}

/// Visits every tuple of carrier elements of the given arity.
inline void for_all_tuples(std::size_t n, std::size_t arity, const std::function<void(const std::vector<Element>&)>& fn)
{
  std::vector<Element> args(arity, 0);
  for (;;) {
    fn(args);
    std::size_t pos = arity;
    while (pos > 0 && ++args[pos - 1] == n)
      args[--pos] = 0;
    if (pos == 0)
      return;
  }
}

inline bool naive_associative(const CayleyAlgebra& alg)
{
  const std::size_t n = alg.size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (alg.add(alg.add(a, b), c) != alg.add(a, alg.add(b, c)))
          return false;
  return true;
}

inline bool naive_distributive(const CayleyAlgebra& alg)
{
  const std::size_t n = alg.size();
  for (SymbolId id = Signature::gamma_size; id < alg.signature().size(); ++id) {
    const std::size_t ar = alg.signature().arity(id);
    if (ar == 0)
      continue;
    bool ok = true;
    for_all_tuples(n, ar, [&](const std::vector<Element>& args) {
      for (std::size_t pos = 0; pos < ar && ok; ++pos)
        for (Element b = 0; b < n && ok; ++b) {
          auto with = [&](Element x) {
            auto a = args;
            a[pos] = x;
            return alg.apply(id, a);
          };
          ok = with(alg.add(args[pos], b)) == alg.add(with(args[pos]), with(b));
        }
    });
    if (!ok)
      return false;
  }
  return true;
}

} // namespace testing_support
