#ifndef BBALG_SIGNATURE_HPP
#define BBALG_SIGNATURE_HPP

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbalg/error.hpp"

namespace bbalg {

/// Position of a symbol inside a Signature. The three group symbols always
/// occupy positions 0, 1, 2; the Ω symbols follow in declaration order.
using SymbolId = std::size_t;

struct OperationSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OperationSymbol&, const OperationSymbol&) = default;
};

/// Throws DuplicateSymbol or GammaCollision.
void validate_signature(std::span<const OperationSymbol> omega);

/**
 * Σ = Γ ∪ Ω where Γ = {+ (2), - (1), 0 (0)}.
 *
 * Construction validates the Ω part, so every Signature value is well formed.
 */
class Signature {
public:
  static constexpr SymbolId add_id = 0;
  static constexpr SymbolId neg_id = 1;
  static constexpr SymbolId zero_id = 2;
  static constexpr std::size_t gamma_size = 3;

  Signature() : Signature(std::vector<OperationSymbol>{}) {}
  explicit Signature(std::vector<OperationSymbol> omega);

  static const OperationSymbol& add_symbol();
  static const OperationSymbol& neg_symbol();
  static const OperationSymbol& zero_symbol();

  std::size_t size() const { return symbols_.size(); }
  const OperationSymbol& symbol(SymbolId id) const { return symbols_.at(id); }
  std::size_t arity(SymbolId id) const { return symbols_.at(id).arity; }
  std::span<const OperationSymbol> symbols() const { return symbols_; }
  std::span<const OperationSymbol> omega() const
  {
    return std::span<const OperationSymbol>(symbols_).subspan(gamma_size);
  }
  std::size_t omega_size() const { return symbols_.size() - gamma_size; }
  static bool is_omega(SymbolId id) { return id >= gamma_size; }

  std::optional<SymbolId> find(std::string_view name) const;

  /// Looks up `sym` by name and checks the arity; throws SignatureMismatch.
  SymbolId resolve(const OperationSymbol& sym) const;

  friend bool operator==(const Signature& a, const Signature& b) { return a.symbols_ == b.symbols_; }

private:
  std::vector<OperationSymbol> symbols_;
};

/**
 * An immutable Σ-term over the variables x1, x2, ...
 *
 * Nodes are shared, so copying a Term is cheap and terms may be shared across
 * threads. Leaves are variables or nullary symbols.
 */
class Term {
public:
  /// x_index, index >= 1.
  static Term variable(std::size_t index);
  /// Throws ArityMismatch when children.size() != sym.arity.
  static Term apply(OperationSymbol sym, std::vector<Term> children);

  bool is_variable() const { return node_->variable != 0; }
  std::size_t variable_index() const { return node_->variable; }
  const OperationSymbol& symbol() const { return node_->symbol; }
  std::span<const Term> children() const { return node_->children; }

  friend bool operator==(const Term& a, const Term& b);

private:
  struct Node {
    std::size_t variable = 0;
    OperationSymbol symbol;
    std::vector<Term> children;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Term builders for the group part of the signature.
Term var(std::size_t index);
Term zero_term();
Term operator+(const Term& a, const Term& b);
Term operator-(const Term& a);
/// a + (-b)
Term operator-(const Term& a, const Term& b);
Term op(const OperationSymbol& sym, std::vector<Term> children);
/// Left-associated sum of the terms; the empty sum is the term 0.
Term sum(std::span<const Term> terms);

std::set<std::size_t> term_variables(const Term& t);
std::size_t max_variable(const Term& t);

/// ∀ x1..x_m (lhs = rhs)
struct Identity {
  Term lhs;
  Term rhs;
  std::size_t var_count = 0;

  Identity(Term l, Term r);
  /// Throws UnboundVariable when a variable index exceeds `m`.
  Identity(Term l, Term r, std::size_t m);
};

/**
 * A term compiled against a concrete signature into postfix form.
 *
 * Compilation resolves every symbol once so that evaluation in tight loops
 * (exhaustive identity checks) does no name lookups.
 */
class TermProgram {
public:
  struct Instr {
    bool is_variable = false;
    std::size_t index = 0; // variable index (1-based) or SymbolId
    std::size_t arity = 0;
  };

  /// Throws SignatureMismatch when `t` uses a symbol not in `sig`.
  TermProgram(const Term& t, const Signature& sig);

  std::span<const Instr> instructions() const { return code_; }
  std::size_t max_variable() const { return max_var_; }
  std::size_t max_depth() const { return max_stack_; }

  /**
   * Generic stack evaluation; `apply(SymbolId, std::span<const Value>)`
   * computes one operation. Throws UnboundVariable if the assignment is too
   * short.
   */
  template <class Value, class ApplyFn>
  Value evaluate(std::span<const Value> assignment, ApplyFn&& apply) const
  {
    if (max_var_ > assignment.size())
      throw Error(Errc::UnboundVariable, "x" + std::to_string(max_var_) + " has no value");
    std::vector<Value> stack;
    stack.reserve(max_stack_);
    for (const Instr& in : code_) {
      if (in.is_variable) {
        stack.push_back(assignment[in.index - 1]);
        continue;
      }
      const std::size_t base = stack.size() - in.arity;
      Value v = apply(in.index, std::span<const Value>(stack.data() + base, in.arity));
      stack.resize(base);
      stack.push_back(std::move(v));
    }
    return std::move(stack.back());
  }

private:
  std::vector<Instr> code_;
  std::size_t max_var_ = 0;
  std::size_t max_stack_ = 0;
};

/**
 * Prefix s-expression syntax: `x<k>` variables, `zero`, `(+ a b)`, `(neg a)`
 * and `(op NAME args...)` for Ω symbols (nullary: `(op NAME)`).
 */
Term parse_term(std::string_view text);
std::string to_string(const Term& t);

} // namespace bbalg

#endif // BBALG_SIGNATURE_HPP
