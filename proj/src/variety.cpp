#include "bbalg/variety.hpp"

namespace bbalg {

void validate_basis(const IdentityBasis& basis)
{
  if (basis.identities.empty() && !basis.all_distributive)
    throw Error(Errc::SpecError, "basis '" + basis.name + "' has no identities");
}

IdentityBasis abelian_basis()
{
  return {"abelian", {Identity(var(1) + var(2), var(2) + var(1))}, true, false};
}

IdentityBasis nilpotent_class2_basis()
{
  const Term x1 = var(1), x2 = var(2), x3 = var(3);
  const Term comm = x1 + x2 - x1 - x2;
  return {"nilpotent_class2", {Identity(comm + x3 - comm - x3, zero_term())}, true, false};
}

IdentityBasis commutativity_basis(const OperationSymbol& mul)
{
  return {"commutativity", {Identity(op(mul, {var(1), var(2)}), op(mul, {var(2), var(1)}))}, false, false};
}

IdentityBasis commutative_ring_basis(const OperationSymbol& mul)
{
  const Term x1 = var(1), x2 = var(2), x3 = var(3);
  return {"commutative_ring",
          {Identity(x1 + x2, x2 + x1), Identity(op(mul, {op(mul, {x1, x2}), x3}), op(mul, {x1, op(mul, {x2, x3})})),
           Identity(op(mul, {x1, x2}), op(mul, {x2, x1}))},
          true,
          false};
}

IdentityBasis anticommutative_basis(const OperationSymbol& mul)
{
  const Term x1 = var(1), x2 = var(2);
  return {"anticommutative",
          {Identity(x1 + x2, x2 + x1), Identity(op(mul, {x1, x2}) + op(mul, {x2, x1}), zero_term())},
          true,
          false};
}

EnumeratedAlgebra enumerate_from_additive_gens(Oracle& o, std::span<const Handle> g, std::size_t cap)
{
  // Distinct generators first; the closure loop then touches each element
  // once per generator.
  GenSystem gens = distinct_handles(o, g);
  EnumeratedAlgebra out;
  out.elements.push_back(o.zero());
  for (const auto& h : gens)
    insert_distinct(o, out.elements, h);
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    if (out.elements.size() > cap)
      throw Error(Errc::BudgetExceeded, "enumeration passed " + std::to_string(cap) + " elements");
    const Handle x = out.elements[i];
    insert_distinct(o, out.elements, o.neg(x));
    for (const auto& h : gens)
      insert_distinct(o, out.elements, o.add(x, h));
  }
  if (out.elements.size() > cap)
    throw Error(Errc::BudgetExceeded, "enumeration passed " + std::to_string(cap) + " elements");
  return out;
}

IdentityCheck check_identities(Oracle& o, const EnumeratedAlgebra& elements, const IdentityBasis& basis,
                               std::uint64_t cap)
{
  validate_basis(basis);
  const std::size_t size = elements.size();
  IdentityCheck result;
  auto apply = [&](SymbolId id, std::span<const Handle> args) { return o.query_op(id, args); };
  std::vector<Handle> values;
  for (std::size_t k = 0; k < basis.identities.size(); ++k) {
    const Identity& id = basis.identities[k];
    std::uint64_t assignments = 1;
    for (std::size_t v = 0; v < id.var_count; ++v) {
      assignments *= size;
      if (assignments > cap)
        throw Error(Errc::BudgetExceeded, "identity " + std::to_string(k + 1) + " needs more than " +
                                              std::to_string(cap) + " assignments");
    }
    const TermProgram lhs(id.lhs, o.signature()), rhs(id.rhs, o.signature());
    std::vector<std::size_t> assignment(id.var_count, 0);
    values.resize(id.var_count);
    for (std::uint64_t a = 0; a < assignments; ++a) {
      for (std::size_t v = 0; v < id.var_count; ++v)
        values[v] = elements.elements[assignment[v]];
      const Handle l = lhs.evaluate<Handle>(values, apply);
      const Handle r = rhs.evaluate<Handle>(values, apply);
      if (!o.query_equal(l, r)) {
        result.holds = false;
        result.identity = k;
        result.assignment = assignment;
        return result;
      }
      for (std::size_t pos = assignment.size(); pos > 0;) {
        if (++assignment[pos - 1] < size)
          break;
        assignment[--pos] = 0;
      }
    }
  }
  return result;
}

bool run_d(Oracle& o, unsigned n, const GenSystem& s, const IdentityBasis& basis, const BParams& params,
           const SplitRng& rng)
{
  if (!basis.requires_nilpotent_additive)
    throw Error(Errc::NonNilpotentBasis, "basis '" + basis.name + "' does not assert nilpotent additive groups");
  validate_basis(basis);
  const GenSystem g = run_b(o, n, s, params, rng);
  const EnumeratedAlgebra all = enumerate_from_additive_gens(o, g);
  return check_identities(o, all, basis).holds;
}

} // namespace bbalg
