#include "bbalg/algebra.hpp"

#include <charconv>
#include <sstream>

namespace bbalg {

namespace {

std::size_t power(std::size_t base, std::size_t exp)
{
  std::size_t r = 1;
  while (exp--)
    r *= base;
  return r;
}

// Decodes a row-major table offset into an argument tuple.
void unrank(std::size_t offset, std::size_t size, std::span<Element> out)
{
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Element>(offset % size);
    offset /= size;
  }
}

std::string tuple_string(std::span<const Element> t)
{
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i)
    os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

void check_caps(const Signature& sig, std::size_t size)
{
  if (size == 0)
    throw Error(Errc::ParamOutOfRange, "carrier must be nonempty");
  if (size > max_carrier_size)
    throw Error(Errc::ParamOutOfRange, "carrier size " + std::to_string(size) + " exceeds " +
                                           std::to_string(max_carrier_size));
  for (const auto& s : sig.symbols())
    if (s.arity >= 3 && size > max_carrier_size_high_arity)
      throw Error(Errc::ParamOutOfRange, "symbol '" + s.name + "' of arity " +
                                             std::to_string(s.arity) + " needs size <= " +
                                             std::to_string(max_carrier_size_high_arity));
}

} // namespace

CayleyAlgebra::CayleyAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Element>> tables,
                             std::vector<std::string> labels)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), labels_(std::move(labels))
{
  check_caps(sig_, size_);
  if (tables_.size() != sig_.size())
    throw Error(Errc::SpecError, "expected " + std::to_string(sig_.size()) + " tables, got " +
                                     std::to_string(tables_.size()));
  for (SymbolId id = 0; id < sig_.size(); ++id) {
    const std::size_t expected = power(size_, sig_.arity(id));
    if (tables_[id].size() != expected)
      throw Error(Errc::SpecError, "table of '" + sig_.symbol(id).name + "' has " +
                                       std::to_string(tables_[id].size()) + " entries, expected " +
                                       std::to_string(expected));
    for (Element e : tables_[id])
      if (e >= size_)
        throw Error(Errc::SpecError, "table of '" + sig_.symbol(id).name + "' contains " +
                                         std::to_string(e) + " outside the carrier");
  }
  if (!labels_.empty() && labels_.size() != size_)
    throw Error(Errc::SpecError, "label count differs from carrier size");
}

CayleyAlgebra CayleyAlgebra::tabulate(Signature sig, std::size_t size,
                                      const std::function<Element(SymbolId, std::span<const Element>)>& fn,
                                      std::vector<std::string> labels)
{
  check_caps(sig, size);
  std::vector<std::vector<Element>> tables(sig.size());
  std::vector<Element> args;
  for (SymbolId id = 0; id < sig.size(); ++id) {
    const std::size_t ar = sig.arity(id);
    const std::size_t n = power(size, ar);
    tables[id].resize(n);
    args.resize(ar);
    for (std::size_t off = 0; off < n; ++off) {
      unrank(off, size, args);
      tables[id][off] = fn(id, args);
    }
  }
  return CayleyAlgebra(std::move(sig), size, std::move(tables), std::move(labels));
}

std::string CayleyAlgebra::label(Element e) const
{
  if (e < labels_.size())
    return labels_[e];
  return std::to_string(e);
}

std::optional<Element> CayleyAlgebra::find_label(std::string_view label) const
{
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label)
      return static_cast<Element>(i);
  std::size_t index = 0;
  auto [p, ec] = std::from_chars(label.data(), label.data() + label.size(), index);
  if (ec == std::errc() && p == label.data() + label.size() && index < size_)
    return static_cast<Element>(index);
  return std::nullopt;
}

bool CayleyAlgebra::is_abelian() const
{
  for (Element a = 0; a < size_; ++a)
    for (Element b = a + 1; b < size_; ++b)
      if (add(a, b) != add(b, a))
        return false;
  return true;
}

std::vector<Element> additive_magma_generators(const CayleyAlgebra& alg)
{
  const std::size_t n = alg.size();
  std::vector<Element> gens;
  std::vector<char> covered(n, 0);
  std::vector<Element> reached;
  // Left-normed sums g1 + g2 + ... of the chosen generators, grown in place.
  for (Element cand = 0; cand < n; ++cand) {
    if (covered[cand])
      continue;
    gens.push_back(cand);
    covered[cand] = 1;
    reached.push_back(cand);
    for (std::size_t i = 0; i < reached.size(); ++i)
      for (Element g : gens) {
        const Element r = alg.add(reached[i], g);
        if (!covered[r]) {
          covered[r] = 1;
          reached.push_back(r);
        }
      }
  }
  return gens;
}

void check_expanded_group(const CayleyAlgebra& alg)
{
  const std::size_t n = alg.size();
  const Element z = alg.zero();
  for (Element a = 0; a < n; ++a) {
    if (alg.add(z, a) != a || alg.add(a, z) != a)
      throw Error(Errc::NotAGroup, "0 is not an identity for element " + alg.label(a));
    if (alg.add(a, alg.neg(a)) != z || alg.add(alg.neg(a), a) != z)
      throw Error(Errc::NotAGroup, "-" + alg.label(a) + " is not an inverse of " + alg.label(a));
  }
  // Light's associativity test against a magma generating set.
  const auto gens = additive_magma_generators(alg);
  for (Element x = 0; x < n; ++x)
    for (Element g : gens)
      for (Element y = 0; y < n; ++y)
        if (alg.add(alg.add(x, g), y) != alg.add(x, alg.add(g, y)))
          throw Error(Errc::NotAGroup, "(" + alg.label(x) + "+" + alg.label(g) + ")+" + alg.label(y) +
                                           " != " + alg.label(x) + "+(" + alg.label(g) + "+" +
                                           alg.label(y) + ")");
}

void check_distributive(const CayleyAlgebra& alg)
{
  const Signature& sig = alg.signature();
  const std::size_t n = alg.size();
  // With associativity known, additivity in one slot only needs b over an
  // additive generating set: f(a + g) = f(a) + f(g) extends to all sums.
  const auto gens = additive_magma_generators(alg);
  std::vector<Element> rest, args;
  for (SymbolId id = Signature::gamma_size; id < sig.size(); ++id) {
    const std::size_t ar = sig.arity(id);
    if (ar == 0)
      continue;
    const std::size_t others = power(n, ar - 1);
    rest.resize(ar - 1);
    args.resize(ar);
    for (std::size_t pos = 0; pos < ar; ++pos) {
      for (std::size_t off = 0; off < others; ++off) {
        unrank(off, n, rest);
        auto at = [&](Element v) {
          for (std::size_t i = 0, r = 0; i < ar; ++i)
            args[i] = (i == pos) ? v : rest[r++];
          return alg.apply(id, args);
        };
        for (Element a = 0; a < n; ++a) {
          const Element fa = at(a);
          for (Element b : gens) {
            if (at(alg.add(a, b)) == alg.add(fa, at(b)))
              continue;
            args[pos] = a;
            throw Error(Errc::NotDistributive,
                        "'" + sig.symbol(id).name + "' position " + std::to_string(pos + 1) +
                            " with a=" + alg.label(a) + ", b=" + alg.label(b) +
                            ", other arguments " + tuple_string(rest));
          }
        }
      }
    }
  }
}

Element eval_term(const CayleyAlgebra& alg, const TermProgram& program, std::span<const Element> assignment)
{
  return program.evaluate<Element>(assignment, [&](SymbolId id, std::span<const Element> args) {
    return alg.apply(id, args);
  });
}

Element eval_term(const CayleyAlgebra& alg, const Term& t, std::span<const Element> assignment)
{
  return eval_term(alg, TermProgram(t, alg.signature()), assignment);
}

} // namespace bbalg
