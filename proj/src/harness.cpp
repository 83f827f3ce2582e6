#include "bbalg/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "bbalg/ideal.hpp"
#include "bbalg/truth.hpp"

namespace bbalg {

using nlohmann::json;

namespace {

[[noreturn]] void spec_error(const std::string& path, const std::string& msg)
{
  throw Error(Errc::SpecError, path + ": " + msg);
}

const json& require(const json& obj, const char* key, const std::string& path)
{
  if (!obj.is_object())
    spec_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end())
    spec_error(path + "." + key, "missing");
  return *it;
}

long as_integer(const json& v, const std::string& path)
{
  if (v.is_boolean())
    return v.get<bool>() ? 1 : 0;
  if (!v.is_number_integer())
    spec_error(path, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& path)
{
  if (!v.is_string())
    spec_error(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path)
{
  if (!v.is_array())
    spec_error(path, "expected an array");
  return v;
}

// Re-raises library errors with the field path in front; the code is kept
// so that e.g. NotDistributive stays distinguishable from a format error.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f())
{
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::SpecError)
      throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

FamilySpec parse_family(const json& v, const std::string& path)
{
  if (!v.is_object())
    spec_error(path, "expected an object");
  FamilySpec f;
  f.name = as_string(require(v, "name", path), path + ".name");
  for (const auto& [key, value] : v.items()) {
    if (key == "name")
      continue;
    if (key == "factors") {
      const json& arr = as_array(value, path + ".factors");
      for (std::size_t i = 0; i < arr.size(); ++i)
        f.factors.push_back(parse_family(arr[i], path + ".factors[" + std::to_string(i) + "]"));
      continue;
    }
    f.params[key] = as_integer(value, path + "." + key);
  }
  return f;
}

std::vector<OperationSymbol> parse_omega(const json& v, const std::string& path)
{
  std::vector<OperationSymbol> omega;
  const json& arr = as_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const long arity = as_integer(require(arr[i], "arity", p), p + ".arity");
    if (arity < 0)
      spec_error(p + ".arity", "must be non-negative");
    omega.push_back({as_string(require(arr[i], "name", p), p + ".name"), static_cast<std::size_t>(arity)});
  }
  at_path(path, [&] {
    validate_signature(omega);
    return 0;
  });
  return omega;
}

std::vector<std::string> parse_labels(const json& v, const std::string& path)
{
  std::vector<std::string> labels;
  const json& arr = as_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i)
    labels.push_back(as_string(arr[i], path + "[" + std::to_string(i) + "]"));
  return labels;
}

CayleyAlgebra parse_inline(const json& v, const std::string& path)
{
  const Signature sig(parse_omega(v.contains("omega") ? v["omega"] : json::array(), path + ".omega"));
  const long size = as_integer(require(v, "size", path), path + ".size");
  if (size <= 0)
    spec_error(path + ".size", "the carrier must be non-empty");
  const json& tables = require(v, "tables", path);
  if (!tables.is_object())
    spec_error(path + ".tables", "expected an object keyed by symbol name");
  std::vector<std::vector<Element>> out(sig.size());
  for (SymbolId id = 0; id < sig.size(); ++id) {
    const std::string name = sig.symbol(id).name;
    const std::string p = path + ".tables." + name;
    if (!tables.contains(name))
      spec_error(p, "missing");
    const json& arr = as_array(tables[name], p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const long e = as_integer(arr[i], p + "[" + std::to_string(i) + "]");
      if (e < 0 || e >= size)
        spec_error(p + "[" + std::to_string(i) + "]", "element " + std::to_string(e) + " out of range");
      out[id].push_back(static_cast<Element>(e));
    }
  }
  for (const auto& [key, value] : tables.items())
    if (!sig.find(key))
      spec_error(path + ".tables." + key, "no such symbol");
  std::vector<std::string> labels;
  if (v.contains("labels"))
    labels = parse_labels(v["labels"], path + ".labels");
  return at_path(path, [&] { return CayleyAlgebra(sig, static_cast<std::size_t>(size), std::move(out), labels); });
}

CayleyAlgebra parse_carrier(const json& v, const std::string& path)
{
  if (v.contains("family"))
    return at_path(path + ".family", [&] { return build_family(parse_family(v["family"], path + ".family")); });
  if (v.contains("inline"))
    return parse_inline(v["inline"], path + ".inline");
  spec_error(path, "expected 'family' or 'inline'");
}

Polynomial parse_polynomial(const json& v, std::size_t m, const std::string& path)
{
  std::vector<Monomial> terms;
  const json& arr = as_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    Monomial mono;
    mono.coefficient = as_integer(require(arr[i], "coefficient", p), p + ".coefficient");
    const json& ex = as_array(require(arr[i], "exponents", p), p + ".exponents");
    if (ex.size() != m)
      spec_error(p + ".exponents", "expected " + std::to_string(m) + " exponents");
    for (std::size_t j = 0; j < ex.size(); ++j) {
      const long e = as_integer(ex[j], p + ".exponents[" + std::to_string(j) + "]");
      if (e < 0)
        spec_error(p + ".exponents[" + std::to_string(j) + "]", "must be non-negative");
      mono.exponents.push_back(static_cast<unsigned>(e));
    }
    terms.push_back(std::move(mono));
  }
  return Polynomial(m, std::move(terms));
}

std::vector<Element> parse_element_list(const CayleyAlgebra& alg, const json& v, const std::string& path)
{
  std::vector<std::string> refs;
  const json& arr = as_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (arr[i].is_number_integer())
      refs.push_back(std::to_string(arr[i].get<long>()));
    else
      refs.push_back(as_string(arr[i], p));
  }
  return resolve_elements(alg, refs, path);
}

json read_json(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::SpecError, path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SpecError, path.string() + ": " + e.what());
  }
}

} // namespace

std::vector<Element> resolve_elements(const CayleyAlgebra& alg, const std::vector<std::string>& refs,
                                      const std::string& field)
{
  std::vector<Element> out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto e = alg.find_label(refs[i]);
    if (!e)
      spec_error(field + "[" + std::to_string(i) + "]", "no element '" + refs[i] + "'");
    out.push_back(*e);
  }
  return out;
}

AlgebraSpec parse_algebra_spec(const json& doc)
{
  if (!doc.is_object())
    spec_error("$", "expected an object");
  AlgebraSpec spec;
  spec.name = doc.contains("name") ? as_string(doc["name"], "name") : std::string("unnamed");

  const int kinds = int(doc.contains("family")) + int(doc.contains("inline")) + int(doc.contains("rmodule"));
  if (kinds != 1)
    spec_error("$", "exactly one of 'family', 'inline', 'rmodule' is required");

  if (doc.contains("rmodule")) {
    const json& r = doc["rmodule"];
    const std::string path = "rmodule";
    RModulePresentation pres{0, {}, parse_carrier(require(r, "carrier", path), path + ".carrier"), {}, {}};
    const json& acts = as_array(require(r, "actions", path), path + ".actions");
    pres.m = acts.size();
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const std::string p = path + ".actions[" + std::to_string(i) + "]";
      const json& row = as_array(acts[i], p);
      if (row.size() != pres.carrier.size())
        spec_error(p, "expected " + std::to_string(pres.carrier.size()) + " entries");
      std::vector<Element> table;
      for (std::size_t b = 0; b < row.size(); ++b) {
        const long e = as_integer(row[b], p + "[" + std::to_string(b) + "]");
        if (e < 0 || static_cast<std::size_t>(e) >= pres.carrier.size())
          spec_error(p + "[" + std::to_string(b) + "]", "element out of range");
        table.push_back(static_cast<Element>(e));
      }
      pres.actions.push_back(std::move(table));
    }
    if (r.contains("action_names"))
      pres.action_names = parse_labels(r["action_names"], path + ".action_names");
    if (r.contains("relations")) {
      const json& rels = as_array(r["relations"], path + ".relations");
      for (std::size_t i = 0; i < rels.size(); ++i)
        pres.relations.push_back(parse_polynomial(rels[i], pres.m, path + ".relations[" + std::to_string(i) + "]"));
    }
    auto alg = at_path(path, [&] { return build_rmodule(pres); });
    std::vector<OperationSymbol> actions(alg.signature().omega().begin(), alg.signature().omega().end());
    spec.module_basis = IdentityBasis{"rmodule", rmodule_identities(actions, pres.relations), true, false};
    spec.algebra = std::make_shared<const CayleyAlgebra>(std::move(alg));
  } else if (doc.contains("family")) {
    spec.algebra = std::make_shared<const CayleyAlgebra>(
        at_path("family", [&] { return build_family(parse_family(doc["family"], "family")); }));
  } else {
    spec.algebra = std::make_shared<const CayleyAlgebra>(parse_inline(doc["inline"], "inline"));
  }
  at_path("$", [&] {
    validate_algebra(*spec.algebra);
    return 0;
  });

  if (doc.contains("salt_bits")) {
    const long s = as_integer(doc["salt_bits"], "salt_bits");
    if (s < 0 || s > 48)
      spec_error("salt_bits", "must lie in [0, 48]");
    spec.salt_bits = static_cast<unsigned>(s);
  }
  if (doc.contains("generators")) {
    spec.generators = parse_element_list(*spec.algebra, doc["generators"], "generators");
    if (sigma_closure(*spec.algebra, make_set(*spec.algebra, *spec.generators)).set.count() != spec.algebra->size())
      spec_error("generators", "do not generate the algebra");
  }
  if (doc.contains("ideal_generators"))
    spec.ideal_generators = parse_element_list(*spec.algebra, doc["ideal_generators"], "ideal_generators");
  return spec;
}

AlgebraSpec load_algebra_spec(const std::filesystem::path& path)
{
  return parse_algebra_spec(read_json(path));
}

IdentityBasis parse_basis(const json& doc)
{
  if (!doc.is_object())
    spec_error("$", "expected an object");
  IdentityBasis basis;
  basis.name = doc.contains("name") ? as_string(doc["name"], "name") : std::string("unnamed");
  if (doc.contains("requires_nilpotent_additive")) {
    if (!doc["requires_nilpotent_additive"].is_boolean())
      spec_error("requires_nilpotent_additive", "expected a boolean");
    basis.requires_nilpotent_additive = doc["requires_nilpotent_additive"].get<bool>();
  }
  if (doc.contains("all_distributive")) {
    if (!doc["all_distributive"].is_boolean())
      spec_error("all_distributive", "expected a boolean");
    basis.all_distributive = doc["all_distributive"].get<bool>();
  }
  const json& ids = as_array(require(doc, "identities", "$"), "identities");
  if (ids.empty() && !basis.all_distributive)
    spec_error("identities", "empty; set all_distributive to describe every distributive expanded group");
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::string p = "identities[" + std::to_string(i) + "]";
    auto term = [&](const char* key) {
      const std::string text = as_string(require(ids[i], key, p), p + "." + key);
      return at_path(p + "." + key, [&] { return parse_term(text); });
    };
    Term lhs = term("lhs"), rhs = term("rhs");
    if (ids[i].contains("variables")) {
      const long m = as_integer(ids[i]["variables"], p + ".variables");
      if (m < 0)
        spec_error(p + ".variables", "must be non-negative");
      basis.identities.push_back(
          at_path(p, [&] { return Identity(lhs, rhs, static_cast<std::size_t>(m)); }));
    } else {
      basis.identities.push_back(Identity(lhs, rhs));
    }
  }
  at_path("$", [&] {
    validate_basis(basis);
    return 0;
  });
  return basis;
}

IdentityBasis load_basis(const std::filesystem::path& path)
{
  return parse_basis(read_json(path));
}

double binomial_sigma(double bound, std::size_t trials)
{
  const double p = std::min(bound, 1.0);
  return trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
}

nlohmann::ordered_json ExperimentReport::to_json() const
{
  nlohmann::ordered_json j;
  j["command"] = command;
  j["spec"] = spec;
  j["seed"] = seed;
  j["trials"] = trials;
  j["successes"] = successes;
  j["failures"] = trials - successes;
  j["empirical_failure_rate"] = empirical_failure_rate;
  j["bound_kind"] = bound_kind;
  j["paper_bound"] = paper_bound;
  j["sigma"] = sigma;
  j["threshold"] = threshold;
  j["bound_satisfied"] = bound_satisfied;
  j["membership_violations"] = membership_violations;
  j["passed"] = passed();
  j["n"] = n;
  if (c)
    j["c"] = *c;
  j["k"] = k;
  j["m"] = m;
  if (l)
    j["l"] = *l;
  if (ground_truth)
    j["ground_truth"] = *ground_truth;
  if (answers_true)
    j["answers_true"] = *answers_true;
  j["queries"] = {{"operations_mean", queries.operations_mean},
                  {"operations_max", queries.operations_max},
                  {"equality_mean", queries.equality_mean},
                  {"equality_max", queries.equality_max}};
  j["outcomes"] = outcomes;
  if (include_timing)
    j["wall_seconds"] = wall_seconds;
  return j;
}

std::string report_text(const ExperimentReport& report)
{
  return report.to_json().dump(2) + "\n";
}

namespace {

struct TrialResult {
  bool success = false;
  bool members_ok = true;
  bool answer = false;
  std::uint64_t operations = 0;
  std::uint64_t equality = 0;
};

// Results land in per-trial slots, so aggregation never depends on which
// worker ran which trial.
template <class F>
std::vector<TrialResult> run_trials(std::size_t trials, unsigned threads, const F& trial)
{
  std::vector<TrialResult> results(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < trials;) {
      try {
        results[t] = trial(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = trials;
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < count; ++i)
      pool.emplace_back(worker);
    for (auto& th : pool)
      th.join();
  }
  if (failure)
    std::rethrow_exception(failure);
  return results;
}

struct TrialStreams {
  std::uint64_t oracle_seed;
  SplitRng algorithm;
};

// The oracle's salts and the algorithm's coins come from separate streams,
// so changing salt_bits leaves every coin flip of the algorithm unchanged.
TrialStreams trial_streams(std::uint64_t seed, std::size_t trial)
{
  const SplitRng t = SplitRng(seed).split(trial);
  SplitRng o = t.split(0);
  return {o(), t.split(1)};
}

struct Common {
  unsigned salt = 0;
  unsigned n = 0;
  BParams params;
};

Common common_setup(const AlgebraSpec& spec, const ExperimentConfig& cfg)
{
  Common c;
  c.salt = cfg.salt_bits.value_or(spec.salt_bits);
  const unsigned payload = payload_bits_for(spec.algebra->size());
  if (payload + c.salt > 64)
    spec_error("salt_bits", "encoding longer than 64 bits");
  c.n = cfg.n.value_or(payload + c.salt);
  if (c.n < 1 || c.n > 1000)
    spec_error("n", "must lie in [1, 1000]");
  if (c.n < 63 && (std::uint64_t{1} << c.n) < spec.algebra->size())
    spec_error("n", "2^n is smaller than the carrier");
  c.params = cfg.k ? BParams::with_k(cfg.c, *cfg.k, cfg.dedup) : BParams::from_constant(cfg.c, cfg.dedup);
  return c;
}

ExperimentReport finish(ExperimentReport r, const std::vector<TrialResult>& results, const ExperimentConfig& cfg,
                        std::chrono::steady_clock::time_point start)
{
  r.command = cfg.command.empty() ? r.command : cfg.command;
  r.seed = cfg.seed;
  r.trials = results.size();
  std::uint64_t ops_sum = 0, eq_sum = 0;
  r.outcomes.reserve(results.size());
  for (const auto& t : results) {
    r.successes += t.success;
    r.membership_violations += !t.members_ok;
    ops_sum += t.operations;
    eq_sum += t.equality;
    r.queries.operations_max = std::max(r.queries.operations_max, t.operations);
    r.queries.equality_max = std::max(r.queries.equality_max, t.equality);
    r.outcomes.push_back(t.success ? '1' : '0');
  }
  const double trials = static_cast<double>(std::max<std::size_t>(r.trials, 1));
  r.queries.operations_mean = static_cast<double>(ops_sum) / trials;
  r.queries.equality_mean = static_cast<double>(eq_sum) / trials;
  r.empirical_failure_rate = r.trials ? static_cast<double>(r.trials - r.successes) / trials : 0.0;
  r.sigma = binomial_sigma(r.paper_bound, r.trials);
  r.threshold = r.paper_bound + 3.0 * r.sigma;
  r.bound_satisfied = r.empirical_failure_rate <= r.threshold;
  r.include_timing = cfg.timing;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void record_counts(TrialResult& t, const Oracle& o)
{
  t.operations = o.counts().total_operations();
  t.equality = o.counts().equality;
}

bool all_in(const ElementSet& set, const std::vector<Element>& elems)
{
  for (Element e : elems)
    if (!set.test(e))
      return false;
  return true;
}

} // namespace

ExperimentReport run_gen_additive(const AlgebraSpec& spec, const ExperimentConfig& cfg)
{
  const auto start = std::chrono::steady_clock::now();
  const Common c = common_setup(spec, cfg);
  const CayleyAlgebra& alg = *spec.algebra;
  const std::vector<Element> gens = spec.generators.value_or(sigma_generating_set(alg));
  const ElementSet target = sigma_closure(alg, make_set(alg, gens)).set;

  const auto results = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialStreams streams = trial_streams(cfg.seed, t);
    OracleSetup setup = make_oracle(spec.algebra, c.salt, streams.oracle_seed, gens);
    const GenSystem out = run_b(*setup.session, c.n, setup.generators, c.params, streams.algorithm);
    const std::vector<Element> elems = decode_for_test(*setup.session, out);
    TrialResult r;
    r.members_ok = all_in(target, elems);
    r.success = subgroup_closure(alg, elems) == target;
    record_counts(r, *setup.session);
    return r;
  });

  ExperimentReport rep;
  rep.command = "gen-additive";
  rep.spec = spec.name;
  rep.bound_kind = "n/c^n";
  rep.paper_bound = generation_failure_bound(c.n, c.params.c);
  rep.n = c.n;
  rep.c = c.params.c;
  rep.k = c.params.k;
  rep.m = gens.size();
  return finish(std::move(rep), results, cfg, start);
}

ExperimentReport run_gen_ideal(const AlgebraSpec& spec, const std::vector<Element>& t, const ExperimentConfig& cfg)
{
  const auto start = std::chrono::steady_clock::now();
  const Common c = common_setup(spec, cfg);
  const CayleyAlgebra& alg = *spec.algebra;
  for (Element e : t)
    if (e >= alg.size())
      spec_error("t", "element " + std::to_string(e) + " out of range");
  const std::vector<Element> gens = spec.generators.value_or(sigma_generating_set(alg));
  const ElementSet ideal = ideal_closure(alg, make_set(alg, t));

  const auto results = run_trials(cfg.trials, cfg.threads, [&](std::size_t trial) {
    const TrialStreams streams = trial_streams(cfg.seed, trial);
    OracleSetup setup = make_oracle(spec.algebra, c.salt, streams.oracle_seed, gens);
    GenSystem th;
    for (Element e : t)
      th.push_back(setup.session->encode(e));
    const GenSystem out = run_c(*setup.session, c.n, setup.generators, th, c.params, streams.algorithm, cfg.reduce);
    const std::vector<Element> elems = decode_for_test(*setup.session, out);
    TrialResult r;
    r.members_ok = all_in(ideal, elems);
    r.success = subgroup_closure(alg, elems) == ideal;
    record_counts(r, *setup.session);
    return r;
  });

  ExperimentReport rep;
  rep.command = "gen-ideal";
  rep.spec = spec.name;
  rep.bound_kind = cfg.reduce ? "2n/c^n + c^-n" : "2n/c^n";
  rep.paper_bound = ideal_failure_bound(c.n, c.params.c) + (cfg.reduce ? std::pow(c.params.c, -double(c.n)) : 0.0);
  rep.n = c.n;
  rep.c = c.params.c;
  rep.k = c.params.k;
  rep.m = gens.size();
  return finish(std::move(rep), results, cfg, start);
}

ExperimentReport run_decide_variety(const AlgebraSpec& spec, const IdentityBasis& basis, const ExperimentConfig& cfg)
{
  const auto start = std::chrono::steady_clock::now();
  if (!basis.requires_nilpotent_additive)
    throw Error(Errc::NonNilpotentBasis, "basis '" + basis.name + "' does not assert nilpotent additive groups");
  const Common c = common_setup(spec, cfg);
  const CayleyAlgebra& alg = *spec.algebra;
  const std::vector<Element> gens = spec.generators.value_or(sigma_generating_set(alg));
  const bool truth = at_path("basis", [&] { return !find_identity_violation(alg, basis.identities); });

  const auto results = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialStreams streams = trial_streams(cfg.seed, t);
    OracleSetup setup = make_oracle(spec.algebra, c.salt, streams.oracle_seed, gens);
    TrialResult r;
    r.answer = run_d(*setup.session, c.n, setup.generators, basis, c.params, streams.algorithm);
    r.success = r.answer == truth;
    record_counts(r, *setup.session);
    return r;
  });

  ExperimentReport rep;
  rep.command = "decide-variety";
  rep.spec = spec.name;
  rep.bound_kind = "n/c^n";
  rep.paper_bound = generation_failure_bound(c.n, c.params.c);
  rep.n = c.n;
  rep.c = c.params.c;
  rep.k = c.params.k;
  rep.m = gens.size();
  rep.ground_truth = truth;
  std::size_t yes = 0;
  for (const auto& r : results)
    yes += r.answer;
  rep.answers_true = yes;
  return finish(std::move(rep), results, cfg, start);
}

ExperimentReport run_subproduct_bound(const AlgebraSpec& spec, unsigned k, const ExperimentConfig& cfg)
{
  const auto start = std::chrono::steady_clock::now();
  if (k < 3)
    spec_error("k", "must be at least 3");
  const CayleyAlgebra& alg = *spec.algebra;
  const unsigned salt = cfg.salt_bits.value_or(spec.salt_bits);
  const unsigned n = payload_bits_for(alg.size()) + salt;
  if (n > 64)
    spec_error("salt_bits", "encoding longer than 64 bits");
  const std::size_t l = max_chain_length(alg);
  std::vector<Element> gens;
  if (spec.generators && generates_additively(alg, *spec.generators))
    gens = *spec.generators;
  else
    gens = additive_generating_set(alg);
  const std::size_t draws = static_cast<std::size_t>(k) * l;

  const auto results = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    TrialStreams streams = trial_streams(cfg.seed, t);
    OracleSession session(spec.algebra, salt, streams.oracle_seed);
    GenSystem g;
    for (Element e : gens)
      g.push_back(session.encode(e));
    const GenSystem subs = random_subsums(session, g, draws, streams.algorithm);
    TrialResult r;
    r.success = generates_additively(alg, decode_for_test(session, subs));
    record_counts(r, session);
    return r;
  });

  ExperimentReport rep;
  rep.command = "subproduct-bound";
  rep.spec = spec.name;
  rep.bound_kind = "exp(-(1-2/k)^2 k l/4)";
  rep.paper_bound = subproduct_failure_bound(k, l);
  rep.n = n;
  rep.k = k;
  rep.m = gens.size();
  rep.l = l;
  return finish(std::move(rep), results, cfg, start);
}

} // namespace bbalg
