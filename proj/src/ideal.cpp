#include "bbalg/ideal.hpp"

namespace bbalg {

std::size_t phi_symbol_count(const Signature& base, std::size_t m)
{
  std::size_t count = m;
  for (const auto& w : base.omega()) {
    if (w.arity == 0)
      continue;
    std::size_t p = 1;
    for (std::size_t i = 1; i < w.arity; ++i)
      p *= m;
    count += w.arity * p;
  }
  return count;
}

PhiSignature build_phi(const Signature& base, std::size_t m)
{
  PhiSignature phi;
  phi.m = m;
  for (std::size_t i = 1; i <= m; ++i)
    phi.symbols.push_back({PhiSymbol::Kind::conjugation, i, 0, 0, {}, "chi_" + std::to_string(i)});

  for (SymbolId id = Signature::gamma_size; id < base.size(); ++id) {
    const std::size_t ar = base.arity(id);
    if (ar == 0)
      continue;
    for (std::size_t j = 1; j <= ar; ++j) {
      std::vector<std::size_t> d(ar - 1, 1);
      const bool none = m == 0 && ar > 1;
      while (!none) {
        std::string name = "psi_" + base.symbol(id).name + "_" + std::to_string(j) + "_";
        for (std::size_t r = 0; r < d.size(); ++r)
          name += (r ? "-" : "") + std::to_string(d[r]);
        phi.symbols.push_back({PhiSymbol::Kind::partial, 0, id, j, d, std::move(name)});
        std::size_t pos = d.size();
        while (pos > 0 && ++d[pos - 1] > m)
          d[--pos] = 1;
        if (pos == 0)
          break;
      }
    }
  }

  std::vector<OperationSymbol> omega;
  omega.reserve(phi.symbols.size());
  for (const auto& s : phi.symbols) {
    if (base.find(s.name))
      throw Error(Errc::GammaCollision, "derived symbol '" + s.name + "' clashes with the base signature");
    omega.push_back({s.name, 1});
  }
  phi.signature = Signature(std::move(omega));
  return phi;
}

DerivedOracle::DerivedOracle(Oracle& base, GenSystem g)
    : base_(base), g_(std::move(g)), neg_g_(g_.size()), phi_(build_phi(base.signature(), g_.size()))
{
  counts_.operations.assign(phi_.signature.size(), 0);
}

bool DerivedOracle::query_equal(const Handle& a, const Handle& b)
{
  const bool eq = base_.query_equal(a, b);
  ++counts_.equality;
  return eq;
}

Handle DerivedOracle::query_op(SymbolId sigma, std::span<const Handle> args)
{
  const Signature& sig = phi_.signature;
  if (sigma >= sig.size())
    throw Error(Errc::UnknownSymbol, "symbol id " + std::to_string(sigma));
  if (args.size() != sig.arity(sigma))
    throw Error(Errc::ArityMismatch, "'" + sig.symbol(sigma).name + "' expects " +
                                         std::to_string(sig.arity(sigma)) + " arguments");
  Handle out;
  if (!Signature::is_omega(sigma)) {
    out = base_.query_op(sigma, args);
  } else {
    const PhiSymbol& s = phi_.symbols[sigma - Signature::gamma_size];
    if (s.kind == PhiSymbol::Kind::conjugation) {
      const std::size_t i = s.index - 1;
      if (!neg_g_[i])
        neg_g_[i] = base_.neg(g_[i]);
      out = base_.add(base_.add(*neg_g_[i], args[0]), g_[i]);
    } else {
      const std::size_t ar = base_.signature().arity(s.omega);
      scratch_.resize(ar);
      for (std::size_t pos = 0, r = 0; pos < ar; ++pos)
        scratch_[pos] = (pos + 1 == s.slot) ? args[0] : g_[s.d[r++] - 1];
      out = base_.query_op(s.omega, scratch_);
    }
  }
  ++counts_.operations[sigma];
  return out;
}

GenSystem run_c(Oracle& o, unsigned n, const GenSystem& s, const GenSystem& t, const BParams& params,
                const SplitRng& rng, bool reduce)
{
  GenSystem g = run_b(o, n, s, params, rng.split(1));
  DerivedOracle derived(o, std::move(g));
  GenSystem out = run_b(derived, n, t, params, rng.split(2));
  if (reduce)
    out = reduce_generators(o, n, out, params, rng.split(3));
  return out;
}

} // namespace bbalg
