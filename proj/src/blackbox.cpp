#include "bbalg/blackbox.hpp"

#include <numeric>

#include "bbalg/truth.hpp"

namespace bbalg {

std::uint64_t QueryCounts::total_operations() const
{
  return std::accumulate(operations.begin(), operations.end(), std::uint64_t{0});
}

SymbolId symbol_id(const Oracle& o, std::string_view name)
{
  auto id = o.signature().find(name);
  if (!id)
    throw Error(Errc::UnknownSymbol, "'" + std::string(name) + "'");
  return *id;
}

unsigned payload_bits_for(std::size_t size)
{
  unsigned bits = 1;
  while ((std::size_t{1} << bits) < size)
    ++bits;
  return bits;
}

OracleSession::OracleSession(std::shared_ptr<const CayleyAlgebra> alg, unsigned salt_bits, std::uint64_t seed,
                             unsigned max_payload_bits)
    : alg_(std::move(alg)), salt_rng_(seed)
{
  encoding_.payload_bits = payload_bits_for(alg_->size());
  encoding_.salt_bits = salt_bits;
  if (encoding_.payload_bits > max_payload_bits)
    throw Error(Errc::SizeOverflow, "payload needs " + std::to_string(encoding_.payload_bits) +
                                        " bits, cap is " + std::to_string(max_payload_bits));
  if (encoding_.length() > 64)
    throw Error(Errc::SizeOverflow, "encoding length " + std::to_string(encoding_.length()) + " exceeds 64");
  counts_.operations.assign(alg_->signature().size(), 0);
}

Element OracleSession::decode(const Handle& h) const
{
  if (h.length_ != encoding_.length())
    throw Error(Errc::InvalidHandle, "handle of length " + std::to_string(h.length_) +
                                         " in a session of length " + std::to_string(encoding_.length()));
  const std::uint64_t payload = h.bits_ & ((std::uint64_t{1} << encoding_.payload_bits) - 1);
  if (payload >= alg_->size())
    throw Error(Errc::InvalidHandle, "string outside the domain of the encoding");
  return static_cast<Element>(payload);
}

Handle OracleSession::encode(Element e)
{
  if (e >= alg_->size())
    throw Error(Errc::InvalidHandle, "element " + std::to_string(e) + " not in the carrier");
  const std::uint64_t salt = salt_rng_.bits(encoding_.salt_bits);
  return Handle((salt << encoding_.payload_bits) | e, encoding_.length());
}

bool OracleSession::query_equal(const Handle& a, const Handle& b)
{
  const Element x = decode(a), y = decode(b);
  ++counts_.equality;
  return x == y;
}

Handle OracleSession::query_op(SymbolId sigma, std::span<const Handle> args)
{
  const Signature& sig = alg_->signature();
  if (sigma >= sig.size())
    throw Error(Errc::UnknownSymbol, "symbol id " + std::to_string(sigma));
  if (args.size() != sig.arity(sigma))
    throw Error(Errc::ArityMismatch, "'" + sig.symbol(sigma).name + "' expects " +
                                         std::to_string(sig.arity(sigma)) + " arguments, got " +
                                         std::to_string(args.size()));
  scratch_.resize(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    scratch_[i] = decode(args[i]);
  ++counts_.operations[sigma];
  return encode(alg_->apply(sigma, scratch_));
}

OracleSetup make_oracle(std::shared_ptr<const CayleyAlgebra> alg, unsigned salt_bits, std::uint64_t seed,
                        std::optional<std::vector<Element>> generators)
{
  std::vector<Element> gens = generators ? std::move(*generators) : sigma_generating_set(*alg);
  OracleSetup setup{std::make_unique<OracleSession>(std::move(alg), salt_bits, seed), {}};
  for (Element e : gens)
    setup.generators.push_back(setup.session->encode(e));
  return setup;
}

std::vector<Element> decode_for_test(const OracleSession& o, std::span<const Handle> hs)
{
  std::vector<Element> out;
  out.reserve(hs.size());
  for (const auto& h : hs)
    out.push_back(o.decode(h));
  return out;
}

bool insert_distinct(Oracle& o, GenSystem& set, const Handle& h)
{
  for (const auto& existing : set)
    if (o.query_equal(existing, h))
      return false;
  set.push_back(h);
  return true;
}

GenSystem distinct_handles(Oracle& o, std::span<const Handle> hs)
{
  GenSystem out;
  for (const auto& h : hs)
    insert_distinct(o, out, h);
  return out;
}

} // namespace bbalg
