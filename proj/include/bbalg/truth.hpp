#ifndef BBALG_TRUTH_HPP
#define BBALG_TRUTH_HPP

#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bbalg/algebra.hpp"

namespace bbalg {

// Brute-force ground truth over explicit algebras. Deliberately exponential
// in the encoding length; every probabilistic result is judged against it.

/// Subset of a carrier, one bit per element index.
using ElementSet = boost::dynamic_bitset<>;

ElementSet make_set(const CayleyAlgebra& alg, std::span<const Element> elems);
ElementSet empty_set(const CayleyAlgebra& alg);
ElementSet full_set(const CayleyAlgebra& alg);
std::vector<Element> elements_of(const ElementSet& s);

/// ⟨S⟩ in Add H.
ElementSet subgroup_closure(const CayleyAlgebra& alg, const ElementSet& s);
ElementSet subgroup_closure(const CayleyAlgebra& alg, std::span<const Element> s);

/// ω(S^{arω}) for one Ω symbol; a nullary symbol yields its constant.
ElementSet omega_image(const CayleyAlgebra& alg, SymbolId omega, const ElementSet& s);

/// τ(S) = ⟨S ∪ ⋃_ω ω(S^{arω})⟩
ElementSet tau_step(const CayleyAlgebra& alg, const ElementSet& s);

struct SigmaClosure {
  ElementSet set;
  /// Least l with τ^l(S) = τ^{l+1}(S).
  std::size_t iterations = 0;
};

/// ⟨S⟩_Σ as the union of the τ-iterates.
SigmaClosure sigma_closure(const CayleyAlgebra& alg, const ElementSet& s);

/// ⟨S⟩_Σ by a plain fixpoint over all of Σ; independent of τ.
ElementSet worklist_subalgebra(const CayleyAlgebra& alg, const ElementSet& s);

/// Greedy Σ-generating tuple (may be empty when constants generate).
std::vector<Element> sigma_generating_set(const CayleyAlgebra& alg);
/// Greedy generating tuple of Add H.
std::vector<Element> additive_generating_set(const CayleyAlgebra& alg);

bool generates_additively(const CayleyAlgebra& alg, std::span<const Element> elems);

bool is_subgroup(const CayleyAlgebra& alg, const ElementSet& a);
bool is_normal_subgroup(const CayleyAlgebra& alg, const ElementSet& a);
/// Normal subgroup absorbing every non-nullary ω in every position.
bool is_ideal(const CayleyAlgebra& alg, const ElementSet& a);
/// Ideal membership by the general definition (differences
/// ω(..., a + h, ...) - ω(..., h, ...)), valid without distributivity.
bool is_ideal_by_definition(const CayleyAlgebra& alg, const ElementSet& a);

/// Least normal subgroup containing S.
ElementSet normal_closure(const CayleyAlgebra& alg, const ElementSet& s);
/// Least ideal containing T (alternating normal closure and ω-absorption).
ElementSet ideal_closure(const CayleyAlgebra& alg, const ElementSet& t);

/**
 * The derived operations of H(g) evaluated directly on tables:
 * conjugations χ_i(h) = -g_i + h + g_i followed by the partial applications
 * ψ_{ω,j,d}(h) = ω(g_d1, ..., h at slot j, ..., g_d(arω-1)).
 */
std::vector<std::vector<Element>> phi_operation_tables(const CayleyAlgebra& alg, std::span<const Element> g);

/// Least Φ(m)-subgroup of H(g) containing T.
ElementSet phi_closure(const CayleyAlgebra& alg, std::span<const Element> g, const ElementSet& t);
bool is_phi_subgroup(const CayleyAlgebra& alg, std::span<const Element> g, const ElementSet& a);

constexpr std::size_t default_chain_search_cap = 256;
constexpr std::size_t default_subgroup_count_cap = 200000;

/// Every subgroup of Add H. Throws BudgetExceeded past the caps.
std::vector<ElementSet> all_subgroups(const CayleyAlgebra& alg, std::size_t size_cap = default_chain_search_cap,
                                      std::size_t count_cap = default_subgroup_count_cap);

/// Strictly increasing chain of subgroups; its length is size() - 1.
struct ChainCertificate {
  std::vector<ElementSet> chain;

  std::size_t length() const { return chain.empty() ? 0 : chain.size() - 1; }
};

ChainCertificate longest_subgroup_chain(const CayleyAlgebra& alg, std::size_t size_cap = default_chain_search_cap);
std::size_t max_chain_length(const CayleyAlgebra& alg, std::size_t size_cap = default_chain_search_cap);

/// Row-major (last variable fastest) assignment of the first violation.
struct IdentityViolation {
  std::size_t identity = 0;
  std::vector<Element> assignment;
};

/// Direct table evaluation over every assignment in the carrier.
std::optional<IdentityViolation> find_identity_violation(const CayleyAlgebra& alg,
                                                         std::span<const Identity> identities);

} // namespace bbalg

#endif // BBALG_TRUTH_HPP
