#ifndef BBALG_ALGEBRA_HPP
#define BBALG_ALGEBRA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbalg/signature.hpp"

namespace bbalg {

/// Elements of an explicit algebra are the indices 0 .. size-1.
using Element = std::uint32_t;

constexpr std::size_t max_carrier_size = 4096;
constexpr std::size_t max_carrier_size_high_arity = 64;

/**
 * An explicit finite Σ-algebra stored as dense operation tables.
 *
 * The table of a symbol of arity k has size^k entries; the entry for
 * (a1, ..., ak) lives at the row-major offset a1*size^(k-1) + ... + ak.
 * Tables are total and in range by construction. Whether the algebra is an
 * expanded group, and whether it is distributive, is checked separately.
 */
class CayleyAlgebra {
public:
  /// Throws ParamOutOfRange on size caps, SpecError on malformed tables.
  CayleyAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Element>> tables,
                std::vector<std::string> labels = {});

  /**
   * Fills every table from `fn(symbol, args)`; the usual way builders
   * construct algebras from first principles.
   */
  static CayleyAlgebra tabulate(Signature sig, std::size_t size,
                                const std::function<Element(SymbolId, std::span<const Element>)>& fn,
                                std::vector<std::string> labels = {});

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return size_; }

  Element apply(SymbolId id, std::span<const Element> args) const
  {
    std::size_t offset = 0;
    for (Element a : args)
      offset = offset * size_ + a;
    return tables_[id][offset];
  }
  Element add(Element a, Element b) const { return tables_[Signature::add_id][a * size_ + b]; }
  Element neg(Element a) const { return tables_[Signature::neg_id][a]; }
  Element zero() const { return tables_[Signature::zero_id][0]; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  const std::vector<Element>& table(SymbolId id) const { return tables_.at(id); }

  /// Human-readable element names; falls back to the index.
  std::string label(Element e) const;
  const std::vector<std::string>& labels() const { return labels_; }
  /// Index of the element with the given label or decimal index.
  std::optional<Element> find_label(std::string_view label) const;

  bool is_abelian() const;

private:
  Signature sig_;
  std::size_t size_ = 0;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::string> labels_;
};

/// Throws NotAGroup with a violating witness.
void check_expanded_group(const CayleyAlgebra& alg);

/// Throws NotDistributive with the symbol, position and tuple of a violation.
void check_distributive(const CayleyAlgebra& alg);

/// Both checks; every builder runs this before returning.
inline void validate_algebra(const CayleyAlgebra& alg)
{
  check_expanded_group(alg);
  check_distributive(alg);
}

/// Value of `t` under `assignment` (x_i maps to assignment[i-1]).
Element eval_term(const CayleyAlgebra& alg, const Term& t, std::span<const Element> assignment);
Element eval_term(const CayleyAlgebra& alg, const TermProgram& program,
                  std::span<const Element> assignment);

/// Elements generating (Add H, +) as a magma, chosen greedily by index.
std::vector<Element> additive_magma_generators(const CayleyAlgebra& alg);

} // namespace bbalg

#endif // BBALG_ALGEBRA_HPP
