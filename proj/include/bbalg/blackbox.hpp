#ifndef BBALG_BLACKBOX_HPP
#define BBALG_BLACKBOX_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bbalg/algebra.hpp"
#include "bbalg/rng.hpp"

namespace bbalg {

class OracleSession;

/**
 * An element representation: an n-bit string in the domain of the encoding.
 *
 * The bits are opaque. Only an OracleSession can mint or read them, so code
 * written against the Oracle interface has no way to compare strings.
 */
class Handle {
public:
  Handle() = default;

  unsigned length() const { return length_; }

private:
  friend class OracleSession;

  Handle(std::uint64_t bits, unsigned length) : bits_(bits), length_(length) {}

  std::uint64_t bits_ = 0;
  unsigned length_ = 0;
};

using GenSystem = std::vector<Handle>;

struct QueryCounts {
  std::uint64_t equality = 0;
  std::vector<std::uint64_t> operations; // indexed by SymbolId

  std::uint64_t total_operations() const;
  std::uint64_t total() const { return equality + total_operations(); }
};

/**
 * The Σ-oracle contract. This is the only view of an algebra that the
 * randomized algorithms receive.
 */
class Oracle {
public:
  virtual ~Oracle() = default;

  virtual const Signature& signature() const = 0;
  virtual unsigned encoding_length() const = 0;

  /// Whether both handles represent the same element.
  virtual bool query_equal(const Handle& a, const Handle& b) = 0;
  /// A handle of sigma applied to the represented arguments. Throws
  /// ArityMismatch, UnknownSymbol, InvalidHandle.
  virtual Handle query_op(SymbolId sigma, std::span<const Handle> args) = 0;

  virtual const QueryCounts& counts() const = 0;

  Handle add(const Handle& a, const Handle& b)
  {
    const Handle args[] = {a, b};
    return query_op(Signature::add_id, args);
  }
  Handle neg(const Handle& a) { return query_op(Signature::neg_id, std::span<const Handle>(&a, 1)); }
  Handle zero() { return query_op(Signature::zero_id, {}); }
};

/// Throws UnknownSymbol.
SymbolId symbol_id(const Oracle& o, std::string_view name);

/**
 * ρ maps the string (salt << payload_bits) | index to element `index`.
 * Every element has 2^salt_bits strings; payload values >= size are outside
 * the domain.
 */
struct Encoding {
  unsigned payload_bits = 1;
  unsigned salt_bits = 0;

  unsigned length() const { return payload_bits + salt_bits; }
};

constexpr unsigned default_max_payload_bits = 16;

/// ceil(log2(max(size, 2)))
unsigned payload_bits_for(std::size_t size);

/**
 * Σ-oracle over an explicit algebra. Each answer carries a freshly drawn
 * salt, so the same element comes back under different strings.
 */
class OracleSession final : public Oracle {
public:
  /// Throws SizeOverflow when the payload exceeds `max_payload_bits` or the
  /// total length exceeds 64 bits.
  OracleSession(std::shared_ptr<const CayleyAlgebra> alg, unsigned salt_bits, std::uint64_t seed,
                unsigned max_payload_bits = default_max_payload_bits);

  const Signature& signature() const override { return alg_->signature(); }
  unsigned encoding_length() const override { return encoding_.length(); }
  bool query_equal(const Handle& a, const Handle& b) override;
  Handle query_op(SymbolId sigma, std::span<const Handle> args) override;
  const QueryCounts& counts() const override { return counts_; }

  const Encoding& encoding() const { return encoding_; }
  const CayleyAlgebra& algebra() const { return *alg_; }

  /// A fresh representation of `e`; not an oracle query.
  Handle encode(Element e);
  /// ρ(h). Throws InvalidHandle.
  Element decode(const Handle& h) const;
  /// The raw string, for tests that check salting behaviour.
  std::uint64_t raw_bits(const Handle& h) const { return h.bits_; }

private:
  std::shared_ptr<const CayleyAlgebra> alg_;
  Encoding encoding_;
  SplitRng salt_rng_;
  QueryCounts counts_;
  std::vector<Element> scratch_;
};

struct OracleSetup {
  std::unique_ptr<OracleSession> session;
  GenSystem generators;
};

/**
 * Session plus handles for a Σ-generating tuple of `alg`. When `generators`
 * is absent a generating tuple is computed by brute force.
 */
OracleSetup make_oracle(std::shared_ptr<const CayleyAlgebra> alg, unsigned salt_bits, std::uint64_t seed,
                        std::optional<std::vector<Element>> generators = std::nullopt);

/// Test-only escape hatch: ρ(h).
inline Element decode_for_test(const OracleSession& o, const Handle& h) { return o.decode(h); }
std::vector<Element> decode_for_test(const OracleSession& o, std::span<const Handle> hs);

/**
 * Subsequence of `hs` with exactly one representative per element (first
 * occurrence kept), by pairwise equality queries.
 */
GenSystem distinct_handles(Oracle& o, std::span<const Handle> hs);

/// Appends `h` to `set` unless an equal element is already present.
bool insert_distinct(Oracle& o, GenSystem& set, const Handle& h);

} // namespace bbalg

#endif // BBALG_BLACKBOX_HPP
