#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "bbalg/harness.hpp"
#include "bbalg/truth.hpp"

using namespace bbalg;
using nlohmann::json;

namespace {

const std::filesystem::path root = BBALG_SOURCE_DIR;

std::string spec_error_message(const json& doc)
{
  try {
    parse_algebra_spec(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "no error";
}

std::string basis_error_message(const json& doc)
{
  try {
    parse_basis(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "no error";
}

bool contains(const std::string& haystack, const std::string& needle)
{
  return haystack.find(needle) != std::string::npos;
}

// 12 significant digits.
bool same_12(double a, double b)
{
  if (a == b)
    return true;
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

int run_cli(const std::string& args)
{
  const int status = std::system((std::string(BBALG_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small(std::size_t trials, std::uint64_t seed = 3)
{
  ExperimentConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.dedup = true;
  return cfg;
}

} // namespace

TEST_CASE("shipped spec files load")
{
  for (const auto& entry : std::filesystem::directory_iterator(root / "specs")) {
    CAPTURE(entry.path().string());
    const auto spec = load_algebra_spec(entry.path());
    CHECK(spec.algebra->size() >= 1);
  }
  const auto m2 = load_algebra_spec(root / "specs" / "m2_z2.json");
  CHECK(m2.algebra->size() == 16);
  REQUIRE(m2.ideal_generators);
  CHECK(m2.algebra->label(m2.ideal_generators->at(0)) == "[1 0;0 0]");
}

TEST_CASE("the module spec matches the built-in presentation")
{
  const auto spec = load_algebra_spec(root / "specs" / "sqrt2_module.json");
  const auto reference = build_rmodule(sqrt2_module_z4());
  REQUIRE(spec.module_basis);
  CHECK(spec.algebra->size() == 16);
  CHECK(spec.algebra->table(Signature::gamma_size) == reference.table(Signature::gamma_size));
  CHECK(spec.algebra->table(Signature::add_id) == reference.table(Signature::add_id));
  CHECK_FALSE(find_identity_violation(*spec.algebra, spec.module_basis->identities));
  // The hand-written basis file describes the same laws.
  const auto file_basis = load_basis(root / "bases" / "sqrt2_module.json");
  CHECK_FALSE(find_identity_violation(*spec.algebra, file_basis.identities));
}

TEST_CASE("inline specs")
{
  const json z3 = {{"name", "Z3"},
                   {"inline",
                    {{"size", 3},
                     {"tables", {{"+", {0, 1, 2, 1, 2, 0, 2, 0, 1}}, {"-", {0, 2, 1}}, {"0", {0}}}},
                     {"labels", {"e", "a", "b"}}}},
                   {"generators", {"a"}},
                   {"salt_bits", 2}};
  const auto spec = parse_algebra_spec(z3);
  CHECK(spec.algebra->size() == 3);
  CHECK(spec.salt_bits == 2);
  CHECK(spec.generators == std::vector<Element>{1});
}

TEST_CASE("spec errors name the offending field")
{
  CHECK(contains(spec_error_message({{"family", {{"name", "dihedral"}}}}), "family"));
  CHECK(contains(spec_error_message({{"family", {{"name", "dihedral"}, {"n", "four"}}}}), "family.n"));
  CHECK(contains(spec_error_message({{"family", {{"n", 4}}}}), "family.name"));
  CHECK(contains(spec_error_message({{"name", "x"}}), "$"));
  CHECK(contains(spec_error_message({{"family", {{"name", "cyclic"}, {"n", 4}}}, {"inline", json::object()}}), "$"));
  CHECK(contains(spec_error_message({{"inline", {{"size", 2}, {"tables", {{"+", {0, 1, 1, 5}}, {"-", {0, 1}}, {"0", {0}}}}}}}),
                 "inline.tables.+[3]"));
  CHECK(contains(spec_error_message({{"inline", {{"size", 2}, {"tables", {{"+", {0, 1, 1, 0}}, {"0", {0}}}}}}}),
                 "inline.tables.-"));
  CHECK(contains(spec_error_message({{"inline", {{"size", 0}, {"tables", json::object()}}}}), "inline.size"));
  CHECK(contains(spec_error_message({{"family", {{"name", "cyclic"}, {"n", 4}}}, {"generators", {"zz"}}}),
                 "generators[0]"));
  CHECK(contains(spec_error_message({{"family", {{"name", "cyclic"}, {"n", 4}}}, {"generators", {2}}}),
                 "generators"));
  CHECK(contains(spec_error_message({{"family", {{"name", "cyclic"}, {"n", 4}}}, {"salt_bits", -1}}), "salt_bits"));
  CHECK(contains(spec_error_message({{"family", {{"name", "direct_product"}, {"factors", {{{"name", "nope"}}}}}}}),
                 "family"));
  CHECK(contains(spec_error_message({{"rmodule",
                                      {{"carrier", {{"family", {{"name", "cyclic"}, {"n", 4}}}}},
                                       {"actions", {{0, 1, 2}}}}}}),
                 "rmodule.actions[0]"));
  CHECK(contains(spec_error_message({{"rmodule",
                                      {{"carrier", {{"family", {{"name", "cyclic"}, {"n", 4}}}}},
                                       {"actions", {{0, 2, 0, 2}}},
                                       {"relations", {{{{"coefficient", 1}, {"exponents", {1, 0}}}}}}}}}),
                 "rmodule.relations[0][0].exponents"));
  // Semantic failures keep their own code but still carry the path.
  try {
    parse_algebra_spec({{"inline",
                         {{"omega", {{{"name", "s"}, {"arity", 1}}}},
                          {"size", 2},
                          {"tables", {{"+", {0, 1, 1, 0}}, {"-", {0, 1}}, {"0", {0}}, {"s", {1, 0}}}}}}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotDistributive);
    CHECK(contains(e.what(), "$"));
  }
}

TEST_CASE("basis files")
{
  for (const auto& entry : std::filesystem::directory_iterator(root / "bases")) {
    CAPTURE(entry.path().string());
    CHECK_FALSE(load_basis(entry.path()).identities.empty());
  }
  CHECK_FALSE(load_basis(root / "bases" / "commutativity.json").requires_nilpotent_additive);
  CHECK(load_basis(root / "bases" / "commutative_ring.json").requires_nilpotent_additive);
  // The class-2 file and the built-in basis agree on every small group.
  const auto file = load_basis(root / "bases" / "nilpotent_class2.json");
  for (const auto& g : {dihedral_group(4), symmetric_group(3), symmetric_group(4), dihedral_group(8)})
    CHECK(find_identity_violation(g, file.identities).has_value() ==
          find_identity_violation(g, nilpotent_class2_basis().identities).has_value());

  CHECK(contains(basis_error_message({{"identities", {{{"lhs", "(+ x1"}, {"rhs", "x1"}}}}}), "identities[0].lhs"));
  CHECK(contains(basis_error_message({{"identities", {{{"lhs", "x1"}}}}}), "identities[0].rhs"));
  CHECK(contains(basis_error_message({{"identities", json::array()}}), "identities"));
  CHECK(contains(basis_error_message(json::array()), "$"));
  CHECK(contains(basis_error_message({{"requires_nilpotent_additive", 1}, {"identities", json::array()}}),
                 "requires_nilpotent_additive"));
  CHECK(contains(basis_error_message({{"identities", {{{"lhs", "x3"}, {"rhs", "x1"}, {"variables", 2}}}}}),
                 "identities[0]"));
}

TEST_CASE("reported bounds match an independent recomputation")
{
  const auto z6 = load_algebra_spec(root / "specs" / "ring_z6.json");
  for (double c : {1.5, 2.0, 3.0}) {
    auto cfg = small(20);
    cfg.c = c;
    const auto r = run_gen_additive(z6, cfg);
    CHECK(r.n == 8);
    CHECK(same_12(r.paper_bound, r.n / std::pow(c, r.n)));
    const auto ri = run_gen_ideal(z6, {2}, cfg);
    CHECK(same_12(ri.paper_bound, 2.0 * ri.n / std::pow(c, ri.n)));
  }
  auto cfg = small(50);
  const auto z8 = load_algebra_spec(root / "specs" / "z8.json");
  for (unsigned k : {3u, 7u}) {
    const auto r = run_subproduct_bound(z8, k, cfg);
    REQUIRE(r.l);
    CHECK(*r.l == 3);
    const double f = (1.0 - 2.0 / k) * (1.0 - 2.0 / k) * k * double(*r.l) / 4.0;
    CHECK(same_12(r.paper_bound, std::exp(-f)));
  }
  const auto j = run_subproduct_bound(z8, 7, cfg).to_json();
  CHECK(j["paper_bound"].get<double>() == doctest::Approx(0.0687).epsilon(1e-3));
}

TEST_CASE("report fields are consistent")
{
  const auto d4 = load_algebra_spec(root / "specs" / "d4.json");
  const auto r = run_gen_ideal(d4, *d4.ideal_generators, small(40));
  CHECK(r.successes <= r.trials);
  CHECK(r.outcomes.size() == r.trials);
  CHECK(r.membership_violations == 0);
  CHECK(r.empirical_failure_rate == doctest::Approx(double(r.trials - r.successes) / r.trials));
  CHECK(r.sigma == doctest::Approx(std::sqrt(r.paper_bound * (1 - r.paper_bound) / r.trials)));
  CHECK(r.threshold == doctest::Approx(r.paper_bound + 3 * r.sigma));
  CHECK(r.queries.operations_max >= r.queries.operations_mean);
  const auto j = r.to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items())
    keys.push_back(k);
  CHECK(keys.front() == "command");
  CHECK(keys.back() == "outcomes");
  CHECK_FALSE(j.contains("wall_seconds"));
  auto timed = r;
  timed.include_timing = true;
  CHECK(timed.to_json().contains("wall_seconds"));
}

TEST_CASE("trivial inputs always succeed")
{
  const auto trivial = load_algebra_spec(root / "specs" / "trivial.json");
  CHECK(run_gen_additive(trivial, small(50)).successes == 50);
  CHECK(run_subproduct_bound(trivial, 7, small(50)).successes == 50);
  const auto d4 = load_algebra_spec(root / "specs" / "d4.json");
  CHECK(run_gen_ideal(d4, {}, small(50)).successes == 50);
}

TEST_CASE("reports do not depend on the number of threads")
{
  const auto m2 = load_algebra_spec(root / "specs" / "m2_z2.json");
  auto one = small(30, 11), many = small(30, 11);
  many.threads = 4;
  CHECK(report_text(run_gen_additive(m2, one)) == report_text(run_gen_additive(m2, many)));
  CHECK(report_text(run_decide_variety(m2, commutative_ring_basis(), one)) ==
        report_text(run_decide_variety(m2, commutative_ring_basis(), many)));
}

TEST_CASE("decide-variety refuses bases without the nilpotency flag")
{
  const auto z6 = load_algebra_spec(root / "specs" / "ring_z6.json");
  try {
    run_decide_variety(z6, commutativity_basis(), small(5));
    FAIL("expected NonNilpotentBasis");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonNilpotentBasis);
  }
  const auto r = run_decide_variety(z6, commutative_ring_basis(), small(20));
  REQUIRE(r.ground_truth);
  CHECK(*r.ground_truth);
}

TEST_CASE("a length parameter too small for the carrier is refused")
{
  const auto s4 = load_algebra_spec(root / "specs" / "s4.json");
  auto cfg = small(5);
  cfg.n = 4;
  CHECK_THROWS_AS(run_gen_additive(s4, cfg), Error);
  cfg.n = 5;
  CHECK_NOTHROW(run_gen_additive(s4, cfg));
}

TEST_CASE("command-line exit codes and reproducible output")
{
  const auto tmp = std::filesystem::temp_directory_path() / "bbalg_cli_test";
  std::filesystem::create_directories(tmp);
  const std::string spec = (root / "specs" / "ring_z6.json").string();
  CHECK(run_cli("") == 2);
  CHECK(run_cli("gen-additive") == 2);
  CHECK(run_cli("gen-additive --spec /nonexistent.json") == 2);
  CHECK(run_cli("gen-additive --spec " + spec + " --c 0.5 --trials 3") == 2);
  CHECK(run_cli("gen-ideal --spec " + spec + " --t 17 --trials 3") == 2);
  CHECK(run_cli("decide-variety --spec " + spec + " --basis " + (root / "bases" / "commutativity.json").string()) == 2);
  CHECK(run_cli("--help") == 0);

  const std::string out1 = (tmp / "a.json").string(), out2 = (tmp / "b.json").string();
  const std::string args = "gen-additive --spec " + spec + " --trials 40 --seed 5 --dedup --out ";
  REQUIRE(run_cli(args + out1) == 0);
  REQUIRE(run_cli(args + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  const auto j = json::parse(slurp(out1));
  CHECK(j["trials"] == 40);
  CHECK(j["n"] == 8);
  CHECK(j["outcomes"].get<std::string>().size() == 40);
  std::filesystem::remove_all(tmp);
}

TEST_CASE("shipped files and reports stay within the schemas")
{
  auto schema = [](const char* name) { return json::parse(slurp(root / "schema" / name)); };
  auto keys_within = [](const json& doc, const json& properties) {
    for (const auto& [key, value] : doc.items()) {
      CAPTURE(key);
      CHECK(properties.contains(key));
    }
  };
  const json spec_schema = schema("algebra_spec.schema.json");
  for (const auto& entry : std::filesystem::directory_iterator(root / "specs")) {
    CAPTURE(entry.path().string());
    keys_within(json::parse(slurp(entry.path())), spec_schema["properties"]);
  }
  const json basis_schema = schema("identity_basis.schema.json");
  for (const auto& entry : std::filesystem::directory_iterator(root / "bases")) {
    CAPTURE(entry.path().string());
    const json doc = json::parse(slurp(entry.path()));
    keys_within(doc, basis_schema["properties"]);
    for (const auto& id : doc["identities"])
      keys_within(id, basis_schema["properties"]["identities"]["items"]["properties"]);
  }

  const json report_schema = schema("report.schema.json");
  const auto z6 = load_algebra_spec(root / "specs" / "ring_z6.json");
  auto cfg = small(5);
  cfg.timing = true;
  for (const json& report : {json::parse(run_gen_additive(z6, cfg).to_json().dump()),
                             json::parse(run_decide_variety(z6, commutative_ring_basis(), small(5)).to_json().dump()),
                             json::parse(run_subproduct_bound(z6, 3, small(5)).to_json().dump())}) {
    keys_within(report, report_schema["properties"]);
    for (const auto& key : report_schema["required"])
      CHECK(report.contains(key.get<std::string>()));
    const auto kinds = report_schema["properties"]["bound_kind"]["enum"];
    CHECK(std::find(kinds.begin(), kinds.end(), report["bound_kind"]) != kinds.end());
  }
}
