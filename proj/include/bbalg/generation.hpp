#ifndef BBALG_GENERATION_HPP
#define BBALG_GENERATION_HPP

#include <functional>

#include "bbalg/blackbox.hpp"
#include "bbalg/rng.hpp"

namespace bbalg {

/// (1 - 2/k)^2 k / 4, computed as (k - 2)^2 / (4k).
double subproduct_exponent(unsigned k);

/// Least k >= 3 with c <= e^{(1-2/k)^2 k/4}. Throws BadConstant unless c > 1.
unsigned choose_k(double c);

/**
 * Parameters of the generating-system algorithm.
 *
 * With `dedup` set, each round keeps one representative per element: the
 * subsums are reduced to a set before the Ω-images are formed, and the round
 * system lists every element of S_i once. The generated subgroups are the
 * same as without it; only the lengths of the round tuples shrink.
 */
struct BParams {
  double c = 2.0;
  unsigned k = 7;
  bool dedup = false;

  static BParams from_constant(double c, bool dedup = false);
  /// Explicit k; throws BadConstant when k < 3 or c exceeds e^{(1-2/k)^2 k/4}.
  static BParams with_k(double c, unsigned k, bool dedup = false);
};

/// n / c^n
double generation_failure_bound(unsigned n, double c);
/// 2n / c^n
double ideal_failure_bound(unsigned n, double c);
/// e^{-(1-2/k)^2 k l / 4}
double subproduct_failure_bound(unsigned k, std::size_t l);

/**
 * b1 g1 + ... + bm gm for independent uniform bits, summed left to right
 * over the chosen terms. Consumes exactly m bits; the empty subsum is a
 * zero query.
 */
Handle random_subsum(Oracle& o, std::span<const Handle> g, SplitRng& rng);
GenSystem random_subsums(Oracle& o, std::span<const Handle> g, std::size_t count, SplitRng& rng);

/// State after round `index` of the generating-system algorithm.
struct BRound {
  unsigned index = 0;
  const GenSystem& subsums;
  const GenSystem& system;
};
using BObserver = std::function<void(const BRound&)>;

/**
 * Additive generating system of the hidden algebra from a Σ-generating
 * system `s`: n rounds, each taking kn random subsums of the previous system
 * and closing them under one application of every Ω symbol.
 *
 * Round tuples list the subsums in draw order, then the Ω-images grouped by
 * symbol in signature order with argument tuples in lexicographic order.
 * The output always lies in ⟨s⟩_Σ; it generates Add H with probability at
 * least 1 - n/c^n when s generates H and |H| <= 2^n.
 */
GenSystem run_b(Oracle& o, unsigned n, GenSystem s, const BParams& params, const SplitRng& rng,
                const BObserver& observer = {});

/// Concatenation of `repeats` independent runs (stream r uses rng.split(r)).
GenSystem run_b_repeated(Oracle& o, unsigned n, const GenSystem& s, const BParams& params, const SplitRng& rng,
                         unsigned repeats);

/**
 * kn random subsums of g. The result lies in ⟨g⟩ and generates it except
 * with probability at most e^{-(1-2/k)^2 kn/4} <= c^{-n}.
 */
GenSystem reduce_generators(Oracle& o, unsigned n, std::span<const Handle> g, const BParams& params,
                            const SplitRng& rng);

} // namespace bbalg

#endif // BBALG_GENERATION_HPP
