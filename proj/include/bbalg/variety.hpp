#ifndef BBALG_VARIETY_HPP
#define BBALG_VARIETY_HPP

#include <optional>
#include <string>
#include <vector>

#include "bbalg/blackbox.hpp"
#include "bbalg/generation.hpp"

namespace bbalg {

/**
 * A finite set of identities defining a variety within the distributive
 * expanded groups. `requires_nilpotent_additive` is an assertion by the
 * author of the basis, not something that is verified.
 */
struct IdentityBasis {
  std::string name;
  std::vector<Identity> identities;
  bool requires_nilpotent_additive = false;
  /// An empty identity list is only allowed with this set.
  bool all_distributive = false;
};

/// Throws SpecError on an empty basis that is not marked all_distributive.
void validate_basis(const IdentityBasis& basis);

// Shipped bases. All except `commutativity_basis` describe varieties whose
// additive groups are nilpotent and carry the flag.
IdentityBasis abelian_basis();
/// [[x1, x2], x3] = 0 with [a, b] = a + b - a - b, left-associated.
IdentityBasis nilpotent_class2_basis();
/// x1·x2 = x2·x1 alone; additive groups unrestricted.
IdentityBasis commutativity_basis(const OperationSymbol& mul = {"mul", 2});
/// Abelian addition, associative and commutative multiplication.
IdentityBasis commutative_ring_basis(const OperationSymbol& mul = {"mul", 2});
/// Abelian addition and x1·x2 + x2·x1 = 0.
IdentityBasis anticommutative_basis(const OperationSymbol& mul = {"mul", 2});

/// Every element of Add H as a handle, pairwise distinct.
struct EnumeratedAlgebra {
  GenSystem elements;

  std::size_t size() const { return elements.size(); }
};

constexpr std::size_t default_enumeration_cap = 4096;
constexpr std::uint64_t default_assignment_cap = 50'000'000;

/**
 * Breadth-first closure of g ∪ {0} under + and -, deduplicated with equality
 * queries. When g does not generate Add H the result is the proper subgroup
 * ⟨g⟩; that is not an error. Throws BudgetExceeded past `cap` elements.
 */
EnumeratedAlgebra enumerate_from_additive_gens(Oracle& o, std::span<const Handle> g,
                                               std::size_t cap = default_enumeration_cap);

struct IdentityCheck {
  bool holds = true;
  /// First failing identity and its assignment (indices into the enumeration).
  std::optional<std::size_t> identity;
  std::vector<std::size_t> assignment;
};

/**
 * Evaluates every identity on every assignment of enumerated elements through
 * oracle queries, variables in row-major order (last variable fastest).
 * Throws BudgetExceeded when an identity needs more than `cap` assignments.
 */
IdentityCheck check_identities(Oracle& o, const EnumeratedAlgebra& elements, const IdentityBasis& basis,
                               std::uint64_t cap = default_assignment_cap);

/**
 * Decides membership of the hidden algebra in the variety: run the
 * generating-system algorithm, enumerate Add H from its output, check the
 * identities. Correct with probability at least 1 - n/c^n. The checker is
 * exponential in n (polynomial in |H|).
 *
 * Throws NonNilpotentBasis when the basis does not carry the nilpotency flag.
 */
bool run_d(Oracle& o, unsigned n, const GenSystem& s, const IdentityBasis& basis, const BParams& params,
           const SplitRng& rng);

} // namespace bbalg

#endif // BBALG_VARIETY_HPP
