#include "bbalg/generation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace bbalg {

double subproduct_exponent(unsigned k)
{
  const double kd = k;
  return (kd - 2.0) * (kd - 2.0) / (4.0 * kd);
}

namespace {

// c <= e^{f(k)} compared in log space, allowing for the rounding of log(c)
// when c itself was computed as an exponential.
bool constant_admissible(double c, unsigned k)
{
  const double f = subproduct_exponent(k);
  return std::log(c) <= f + 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, f);
}

} // namespace

unsigned choose_k(double c)
{
  if (!(c > 1.0) || !std::isfinite(c))
    throw Error(Errc::BadConstant, "c must be a finite constant greater than 1");
  unsigned k = 3;
  while (!constant_admissible(c, k))
    ++k;
  return k;
}

BParams BParams::from_constant(double c, bool dedup) { return BParams{c, choose_k(c), dedup}; }

BParams BParams::with_k(double c, unsigned k, bool dedup)
{
  if (!(c > 1.0))
    throw Error(Errc::BadConstant, "c must be greater than 1");
  if (k < 3)
    throw Error(Errc::BadConstant, "k must be at least 3");
  if (!constant_admissible(c, k))
    throw Error(Errc::BadConstant, "k = " + std::to_string(k) + " is too small for c = " + std::to_string(c));
  return BParams{c, k, dedup};
}

double generation_failure_bound(unsigned n, double c) { return n / std::pow(c, n); }

double ideal_failure_bound(unsigned n, double c) { return 2.0 * n / std::pow(c, n); }

double subproduct_failure_bound(unsigned k, std::size_t l)
{
  return std::exp(-subproduct_exponent(k) * static_cast<double>(l));
}

Handle random_subsum(Oracle& o, std::span<const Handle> g, SplitRng& rng)
{
  std::optional<Handle> sum;
  for (const Handle& h : g) {
    if (rng.bit())
      sum = sum ? o.add(*sum, h) : h;
  }
  return sum ? *sum : o.zero();
}

GenSystem random_subsums(Oracle& o, std::span<const Handle> g, std::size_t count, SplitRng& rng)
{
  GenSystem out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(random_subsum(o, g, rng));
  return out;
}

namespace {

// Calls fn on every tuple in base^arity, lexicographic.
template <class Fn>
void for_each_handle_tuple(const GenSystem& base, std::size_t arity, Fn&& fn)
{
  std::vector<Handle> args(arity);
  if (arity == 0) {
    fn(std::span<const Handle>(args));
    return;
  }
  if (base.empty())
    return;
  std::vector<std::size_t> idx(arity, 0);
  for (;;) {
    for (std::size_t i = 0; i < arity; ++i)
      args[i] = base[idx[i]];
    fn(std::span<const Handle>(args));
    std::size_t pos = arity;
    while (pos > 0 && ++idx[pos - 1] == base.size())
      idx[--pos] = 0;
    if (pos == 0)
      return;
  }
}

} // namespace

GenSystem run_b(Oracle& o, unsigned n, GenSystem s, const BParams& params, const SplitRng& rng,
                const BObserver& observer)
{
  const Signature& sig = o.signature();
  const std::size_t draws = std::size_t{params.k} * n;
  GenSystem prev = std::move(s);
  for (unsigned i = 1; i <= n; ++i) {
    SplitRng round_rng = rng.split(i);
    GenSystem subsums = random_subsums(o, prev, draws, round_rng);
    GenSystem next;
    if (params.dedup) {
      const GenSystem distinct = distinct_handles(o, subsums);
      next = distinct;
      for (SymbolId id = Signature::gamma_size; id < sig.size(); ++id)
        for_each_handle_tuple(distinct, sig.arity(id), [&](std::span<const Handle> args) {
          insert_distinct(o, next, o.query_op(id, args));
        });
    } else {
      next = subsums;
      for (SymbolId id = Signature::gamma_size; id < sig.size(); ++id)
        for_each_handle_tuple(subsums, sig.arity(id),
                              [&](std::span<const Handle> args) { next.push_back(o.query_op(id, args)); });
    }
    if (observer)
      observer(BRound{i, subsums, next});
    prev = std::move(next);
  }
  return prev;
}

GenSystem run_b_repeated(Oracle& o, unsigned n, const GenSystem& s, const BParams& params, const SplitRng& rng,
                         unsigned repeats)
{
  GenSystem out;
  for (unsigned r = 0; r < repeats; ++r) {
    GenSystem part = run_b(o, n, s, params, rng.split(r));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

GenSystem reduce_generators(Oracle& o, unsigned n, std::span<const Handle> g, const BParams& params,
                            const SplitRng& rng)
{
  SplitRng stream = rng.split(0);
  return random_subsums(o, g, std::size_t{params.k} * n, stream);
}

} // namespace bbalg
