#ifndef BBALG_IDEAL_HPP
#define BBALG_IDEAL_HPP

#include <string>
#include <vector>

#include "bbalg/blackbox.hpp"
#include "bbalg/generation.hpp"

namespace bbalg {

/// One unary symbol of Φ(m): a conjugation χ_i or a partial application ψ_{ω,j,d}.
struct PhiSymbol {
  enum class Kind { conjugation, partial };

  Kind kind = Kind::conjugation;
  std::size_t index = 0;     // i of χ_i, 1-based
  SymbolId omega = 0;        // ω of ψ, as a SymbolId of the base signature
  std::size_t slot = 0;      // j of ψ, 1-based
  std::vector<std::size_t> d; // arω - 1 generator indices, 1-based
  std::string name;
};

/**
 * Φ(m) over a base signature, and the signature Γ ∪ Φ(m) of H(g).
 *
 * Order: χ_1..χ_m, then ψ grouped by ω (signature order), slot j ascending,
 * d lexicographic. Names are `chi_<i>` and `psi_<ω>_<j>_<d1-d2-...>`.
 */
struct PhiSignature {
  std::size_t m = 0;
  std::vector<PhiSymbol> symbols;
  Signature signature;
};

/// m + Σ_{ω ∉ Ω0} arω · m^{arω - 1}
std::size_t phi_symbol_count(const Signature& base, std::size_t m);

/// Throws GammaCollision when a generated name clashes with a base symbol.
PhiSignature build_phi(const Signature& base, std::size_t m);

/**
 * Σ-oracle for H(g) (signature Γ ∪ Φ(m)) implemented on top of the base
 * oracle. A χ query costs two base additions plus one negation the first
 * time each -g_i is needed; a ψ query costs one base ω query.
 */
class DerivedOracle final : public Oracle {
public:
  DerivedOracle(Oracle& base, GenSystem g);

  const Signature& signature() const override { return phi_.signature; }
  unsigned encoding_length() const override { return base_.encoding_length(); }
  bool query_equal(const Handle& a, const Handle& b) override;
  Handle query_op(SymbolId sigma, std::span<const Handle> args) override;
  const QueryCounts& counts() const override { return counts_; }

  const PhiSignature& phi() const { return phi_; }

private:
  Oracle& base_;
  GenSystem g_;
  std::vector<std::optional<Handle>> neg_g_;
  PhiSignature phi_;
  QueryCounts counts_;
  std::vector<Handle> scratch_;
};

/**
 * Additive generators of the ideal generated by t: run the generating-system
 * algorithm on s to get g, then run it over Φ(|g|) through the derived
 * oracle on t. The output always lies in the ideal Q; it generates Q with
 * probability at least 1 - 2n/c^n. With `reduce`, the output is cut down to
 * kn random subsums afterwards.
 */
GenSystem run_c(Oracle& o, unsigned n, const GenSystem& s, const GenSystem& t, const BParams& params,
                const SplitRng& rng, bool reduce = false);

} // namespace bbalg

#endif // BBALG_IDEAL_HPP
