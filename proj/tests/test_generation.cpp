#include <doctest.h>

#include <cmath>
#include <map>

#include "bbalg/families.hpp"
#include "bbalg/generation.hpp"
#include "bbalg/truth.hpp"
#include "support.hpp"

using namespace bbalg;
using testing_support::share;

namespace {

// Least k >= 3 with ln c <= (1 - 2/k)^2 k / 4, straight from the formula.
unsigned least_k(double c)
{
  for (unsigned k = 3;; ++k) {
    const double f = (1.0 - 2.0 / k) * (1.0 - 2.0 / k) * k / 4.0;
    if (c <= std::exp(f) * (1 + 1e-12))
      return k;
  }
}

bool inside(const CayleyAlgebra& alg, const std::vector<Element>& elems, const ElementSet& set)
{
  for (Element e : elems)
    if (e >= alg.size() || !set.test(e))
      return false;
  return true;
}

} // namespace

TEST_CASE("subproduct exponent")
{
  CHECK(subproduct_exponent(3) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(subproduct_exponent(7) == doctest::Approx(25.0 / 28.0).epsilon(1e-15));
  CHECK(subproduct_exponent(2) == 0.0);
}

TEST_CASE("choice of k")
{
  CHECK(choose_k(std::exp(1.0 / 12.0)) == 3);
  CHECK(choose_k(2.0) == 7);
  CHECK(choose_k(1.0001) == 3);
  for (double c : {1.05, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0, 100.0}) {
    CAPTURE(c);
    CHECK(choose_k(c) == least_k(c));
  }
  CHECK_THROWS_AS(choose_k(1.0), Error);
  CHECK_THROWS_AS(choose_k(0.5), Error);
}

TEST_CASE("explicit k is checked against c")
{
  CHECK_NOTHROW(BParams::with_k(2.0, 7));
  CHECK_NOTHROW(BParams::with_k(2.0, 20));
  CHECK_THROWS_AS(BParams::with_k(2.0, 6), Error);
  CHECK_THROWS_AS(BParams::with_k(1.01, 2), Error);
  const auto p = BParams::from_constant(2.0, true);
  CHECK(p.k == 7);
  CHECK(p.dedup);
}

TEST_CASE("failure bounds")
{
  CHECK(generation_failure_bound(8, 2.0) == doctest::Approx(8.0 / 256.0).epsilon(1e-15));
  CHECK(ideal_failure_bound(8, 2.0) == doctest::Approx(16.0 / 256.0).epsilon(1e-15));
  CHECK(subproduct_failure_bound(7, 3) == doctest::Approx(std::exp(-25.0 / 28.0 * 3.0)).epsilon(1e-15));
  CHECK(subproduct_failure_bound(7, 3) == doctest::Approx(0.0687).epsilon(1e-3));
  CHECK(subproduct_failure_bound(5, 0) == 1.0);
}

TEST_CASE("a random subsum uses exactly one bit per generator")
{
  const auto alg = share(cyclic_group(8));
  OracleSession o(alg, 2, 1);
  GenSystem g;
  for (Element e : {1u, 2u, 4u, 3u, 5u})
    g.push_back(o.encode(e));
  SplitRng rng(99), shadow(99);
  for (int i = 0; i < 20; ++i) {
    const Handle h = random_subsum(o, g, rng);
    Element expected = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (shadow.bit())
        expected = alg->add(expected, o.decode(g[j]));
    CHECK(o.decode(h) == expected);
  }
  CHECK(rng.bit() == shadow.bit());
}

TEST_CASE("the empty subsum is a zero query")
{
  const auto alg = share(cyclic_group(3));
  OracleSession o(alg, 1, 1);
  SplitRng rng(1);
  const Handle h = random_subsum(o, {}, rng);
  CHECK(o.decode(h) == 0);
  CHECK(o.counts().operations[Signature::zero_id] == 1);
}

TEST_CASE("subsums of a basis are uniform")
{
  // Z2^3 with its standard basis: each subsum is uniform on 8 elements.
  const auto alg = share(direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
  OracleSession o(alg, 0, 1);
  GenSystem g{o.encode(1), o.encode(2), o.encode(4)};
  SplitRng rng(5);
  std::map<Element, int> hist;
  const int draws = 16000;
  for (int i = 0; i < draws; ++i)
    ++hist[o.decode(random_subsum(o, g, rng))];
  CHECK(hist.size() == 8);
  for (const auto& [e, c] : hist) {
    CAPTURE(e);
    // Binomial(16000, 1/8): sd ≈ 41.8; 5 sd slack.
    CHECK(std::abs(c - draws / 8) < 210);
  }
}

TEST_CASE("round structure without deduplication")
{
  const auto alg = share(ring_mod_n(6));
  auto setup = make_oracle(alg, 1, 3);
  const unsigned n = 4;
  const BParams params = BParams::with_k(2.0, 7);
  unsigned rounds = 0;
  GenSystem last;
  const GenSystem out = run_b(*setup.session, n, setup.generators, params, SplitRng(8), [&](const BRound& r) {
    ++rounds;
    CHECK(r.index == rounds);
    CHECK(r.subsums.size() == 7 * n);
    CHECK(r.system.size() == 7 * n + 7 * n * 7 * n);
    last = r.system;
  });
  CHECK(rounds == n);
  CHECK(decode_for_test(*setup.session, out) == decode_for_test(*setup.session, last));
}

TEST_CASE("round systems with deduplication list each element once")
{
  const auto alg = share(matrix_ring(2, 2));
  auto setup = make_oracle(alg, 3, 3);
  const BParams params = BParams::from_constant(2.0, true);
  run_b(*setup.session, 8, setup.generators, params, SplitRng(4), [&](const BRound& r) {
    const auto elems = decode_for_test(*setup.session, r.system);
    const std::set<Element> distinct(elems.begin(), elems.end());
    CHECK(distinct.size() == elems.size());
    // The raw draws are reported as drawn.
    CHECK(r.subsums.size() == 7 * 8);
  });
}

TEST_CASE("zero rounds return the input")
{
  const auto alg = share(cyclic_group(5));
  auto setup = make_oracle(alg, 1, 3);
  const GenSystem out = run_b(*setup.session, 0, setup.generators, BParams{}, SplitRng(1));
  CHECK(decode_for_test(*setup.session, out) == decode_for_test(*setup.session, setup.generators));
  CHECK(setup.session->counts().total() == 0);
}

TEST_CASE("property: output stays inside the generated subalgebra")
{
  // Generating systems that do not generate the whole algebra.
  struct Case {
    std::shared_ptr<const CayleyAlgebra> alg;
    std::vector<Element> s;
  };
  const auto d4 = share(dihedral_group(4));
  const auto m2 = share(matrix_ring(2, 2));
  const std::vector<Case> cases = {
      {share(ring_mod_n(6)), {2}},
      {share(ring_mod_n(12)), {4, 6}},
      {d4, {*d4->find_label("r")}},
      {m2, {*m2->find_label("[0 1;0 0]")}},
      {share(symmetric_group(4)), {1}},
      {share(upper_triangular_ring(2, 2)), {1}},
  };
  for (const auto& c : cases) {
    const ElementSet sub = sigma_closure(*c.alg, make_set(*c.alg, c.s)).set;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto setup = make_oracle(c.alg, 2, seed, c.s);
      for (bool dedup : {false, true}) {
        const GenSystem out =
            run_b(*setup.session, 4, setup.generators, BParams::from_constant(2.0, dedup), SplitRng(seed));
        CHECK(inside(*c.alg, decode_for_test(*setup.session, out), sub));
      }
    }
  }
}

TEST_CASE("the algorithm never looks at the strings")
{
  // Same coins, different salts: same decoded output and the same queries.
  const auto alg = share(symmetric_group(4));
  const auto gens = sigma_generating_set(*alg);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = make_oracle(alg, 0, 100 + seed, gens);
    auto b = make_oracle(alg, 9, 200 + seed, gens);
    for (bool dedup : {false, true}) {
      const auto params = BParams::from_constant(2.0, dedup);
      const GenSystem oa = run_b(*a.session, 6, a.generators, params, SplitRng(seed));
      const GenSystem ob = run_b(*b.session, 6, b.generators, params, SplitRng(seed));
      CHECK(decode_for_test(*a.session, oa) == decode_for_test(*b.session, ob));
    }
    CHECK(a.session->counts().operations == b.session->counts().operations);
    CHECK(a.session->counts().equality == b.session->counts().equality);
  }
}

TEST_CASE("repeated runs and generator reduction")
{
  const auto alg = share(ring_mod_n(6));
  auto setup = make_oracle(alg, 2, 1);
  const auto params = BParams::from_constant(2.0, true);
  const GenSystem once = run_b(*setup.session, 5, setup.generators, params, SplitRng(3).split(0));
  const GenSystem twice = run_b_repeated(*setup.session, 5, setup.generators, params, SplitRng(3), 2);
  REQUIRE(twice.size() >= once.size());
  const auto first = decode_for_test(*setup.session, once);
  const auto both = decode_for_test(*setup.session, twice);
  CHECK(std::vector<Element>(both.begin(), both.begin() + static_cast<long>(first.size())) == first);

  const GenSystem reduced = reduce_generators(*setup.session, 5, twice, params, SplitRng(4));
  CHECK(reduced.size() == 7 * 5);
  const ElementSet span = subgroup_closure(*alg, both);
  CHECK(inside(*alg, decode_for_test(*setup.session, reduced), span));
}

TEST_CASE("success at the stated rate on a small ring")
{
  // n = 8, c = 2: failure probability at most 1/32. 100 runs, allow 12.
  const auto alg = share(ring_mod_n(6));
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto setup = make_oracle(alg, 5, seed);
    const GenSystem out = run_b(*setup.session, 8, setup.generators, BParams{}, SplitRng(seed));
    failures += !generates_additively(*alg, decode_for_test(*setup.session, out));
  }
  CHECK(failures <= 12);
}
