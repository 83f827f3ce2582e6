#ifndef BBALG_FAMILIES_HPP
#define BBALG_FAMILIES_HPP

#include <map>
#include <string>
#include <vector>

#include "bbalg/algebra.hpp"

namespace bbalg {

// Standard distributive expanded groups, built from first principles
// (modular arithmetic, permutation composition, matrix arithmetic). Every
// builder validates its result before returning it.

/// Names of the ring symbols used by the ring families.
inline const OperationSymbol mul_symbol{"mul", 2};
inline const OperationSymbol one_symbol{"one", 0};

CayleyAlgebra cyclic_group(std::size_t n);
/// D_n as permutations of n points (n >= 3); element r^a f^b has index a + n*b.
CayleyAlgebra dihedral_group(std::size_t n);
/// S_n for 1 <= n <= 5, permutations in lexicographic order (index 0 = identity).
CayleyAlgebra symmetric_group(std::size_t n);
CayleyAlgebra ring_mod_n(std::size_t n, bool unital = false);
/// M_k(Z_p); entry (r, c) is base-p digit r*k + c of the element index.
CayleyAlgebra matrix_ring(std::size_t k, std::size_t p, bool unital = false);
/// Upper-triangular k x k matrices over Z_p; the upper entries, row by row,
/// are the base-p digits of the element index.
CayleyAlgebra upper_triangular_ring(std::size_t k, std::size_t p, bool unital = false);
/// Componentwise product; both factors need the same signature. The pair
/// (i, j) has index i * b.size() + j.
CayleyAlgebra direct_product(const CayleyAlgebra& a, const CayleyAlgebra& b);

/// Element index of a full k x k matrix given row-major entries.
Element matrix_index(std::size_t k, std::size_t p, const std::vector<std::size_t>& entries);
/// Element index of an upper-triangular matrix given its full row-major entries.
Element upper_triangular_index(std::size_t k, std::size_t p, const std::vector<std::size_t>& entries);

struct FamilySpec {
  std::string name;
  std::map<std::string, long> params;
  std::vector<FamilySpec> factors; // direct_product only
};

/**
 * Families: cyclic(n), dihedral(n), symmetric(n), ring_mod_n(n, unital),
 * matrix_ring(k, p, unital), upper_triangular(k, p, unital),
 * direct_product(factors). Throws UnknownFamily or ParamOutOfRange.
 */
CayleyAlgebra build_family(const FamilySpec& spec);

/// c * y1^e1 ... ym^em
struct Monomial {
  long coefficient = 0;
  std::vector<unsigned> exponents;
};

/**
 * Integer polynomial in m commuting variables, kept normalized: like terms
 * merged, zero terms dropped, monomials sorted length-then-lexicographically
 * by their index tuples (y1^2 y3 has index tuple (1,1,3)).
 */
class Polynomial {
public:
  explicit Polynomial(std::size_t variables, std::vector<Monomial> terms = {});

  static Polynomial constant(std::size_t variables, long c);
  static Polynomial variable(std::size_t variables, std::size_t index); // 1-based

  std::size_t variables() const { return variables_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(long c, const Polynomial& a);

private:
  std::size_t variables_;
  std::vector<Monomial> terms_;
};

/// (1,1,3) for y1^2 y3.
std::vector<std::size_t> index_tuple(const Monomial& mono);

/**
 * The term p(ω1,...,ωm)(v): ω_J+(v) - ω_J-(v), ω_J+(v), -ω_J-(v) or 0
 * depending on which of the multisets J+ (positive part) and J- (negative
 * part) are empty. ω_(i1..id)(v) = ω_id(...ω_i1(v)...), and ω_J sums its
 * members left-associated in the fixed index order.
 */
Term encode_polynomial_term(const Polynomial& p, const Term& v, std::span<const OperationSymbol> actions);

/**
 * An R-module for R = Z[y1..ym]/(T), given by an abelian group with one
 * endomorphism per ring generator.
 */
struct RModulePresentation {
  std::size_t m = 0;
  std::vector<Polynomial> relations;
  CayleyAlgebra carrier;                   // Ω = ∅, abelian
  std::vector<std::vector<Element>> actions; // actions[i][b] = s_{i+1} b
  std::vector<std::string> action_names;     // defaults to w1..wm
};

/// Direct evaluation q(ω1..ωm)(b) by endomorphism arithmetic.
Element apply_polynomial(const CayleyAlgebra& carrier, const std::vector<std::vector<Element>>& actions,
                         const Polynomial& q, Element b);

/// Throws NotAbelian, NonAdditiveAction, NonCommutingActions, RelationViolated.
CayleyAlgebra build_rmodule(const RModulePresentation& pres);

/// The module laws: abelian group, additivity of each ω_i, pairwise
/// commutation, and t(ω)(x1) = 0 for every relation t.
std::vector<Identity> rmodule_identities(std::span<const OperationSymbol> actions,
                                         const std::vector<Polynomial>& relations);

/// (Z4)^2 as Z[√2]/(4): ω(a, b) = (2b, a), relation y1^2 - 2.
RModulePresentation sqrt2_module_z4();

} // namespace bbalg

#endif // BBALG_FAMILIES_HPP
