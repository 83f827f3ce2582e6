// Monte Carlo experiments for the black-box algorithms.
//
//   bbalg_cli gen-additive     --spec S [--c C] [--trials T] [--seed X]
//   bbalg_cli gen-ideal        --spec S --t E ... [--reduce]
//   bbalg_cli decide-variety   --spec S --basis B
//   bbalg_cli subproduct-bound --spec S --k K
//
// Exit status: 0 bound satisfied, 1 bound violated, 2 usage or spec error.
// The report echoes the command without --out, so reruns that write to
// different files still produce identical reports.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bbalg/generation.hpp"
#include "bbalg/harness.hpp"

namespace {

std::string echo(int argc, char** argv)
{
  std::string out;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out") {
      ++i;
      continue;
    }
    if (arg.rfind("--out=", 0) == 0)
      continue;
    out += (out.empty() ? "" : " ") + arg;
  }
  return out;
}

} // namespace

int main(int argc, char** argv)
{
  using namespace bbalg;

  CLI::App app{"Black-box algorithms for finite distributive expanded groups"};
  app.require_subcommand(1);

  std::string spec_path, basis_path, out_path;
  std::vector<std::string> t_refs;
  bool t_from_spec = true;
  ExperimentConfig cfg;
  std::optional<unsigned> k, salt, n;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "Algebra spec (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    sub->add_option("--salt-bits", salt, "Salt bits per encoding (default: from spec, else 4)");
    sub->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    sub->add_flag("--timing", cfg.timing, "Include wall time in the report");
  };
  auto algorithmic = [&](CLI::App* sub) {
    sub->add_option("--c", cfg.c, "Constant c > 1")->capture_default_str();
    sub->add_option("--k", k, "Subsum factor k (default: least admissible for c)");
    sub->add_option("--n", n, "Length parameter n (default: encoding length)");
    sub->add_flag("--dedup", cfg.dedup, "Keep one representative per element in each round");
  };

  CLI::App* gen_add = app.add_subcommand("gen-additive", "Additive generators from a generating system");
  common(gen_add);
  algorithmic(gen_add);

  CLI::App* gen_ideal = app.add_subcommand("gen-ideal", "Additive generators of the ideal generated by t");
  common(gen_ideal);
  algorithmic(gen_ideal);
  gen_ideal->add_option("--t", t_refs, "Ideal generator (index or label); repeatable")->each([&](const std::string&) {
    t_from_spec = false;
  });
  gen_ideal->add_flag("--empty-t", [&](std::int64_t) { t_from_spec = false; }, "Use t = () (zero ideal)");
  gen_ideal->add_flag("--reduce", cfg.reduce, "Cut the output down to kn random subsums");

  CLI::App* decide = app.add_subcommand("decide-variety", "Variety membership");
  common(decide);
  algorithmic(decide);
  decide->add_option("--basis", basis_path, "Identity basis (JSON)")->required()->check(CLI::ExistingFile);

  CLI::App* subproduct = app.add_subcommand("subproduct-bound", "Random subsum generation vs chain length");
  common(subproduct);
  subproduct->add_option("--k", k, "Subsum factor k >= 3 (default: least admissible for --c)");
  subproduct->add_option("--c", cfg.c, "Constant used to pick k when --k is absent")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = echo(argc, argv);
    cfg.k = k;
    cfg.salt_bits = salt;
    cfg.n = n;
    const AlgebraSpec spec = load_algebra_spec(spec_path);

    ExperimentReport report;
    if (*gen_add) {
      report = run_gen_additive(spec, cfg);
    } else if (*gen_ideal) {
      std::vector<Element> t;
      if (!t_from_spec)
        t = resolve_elements(*spec.algebra, t_refs, "t");
      else if (spec.ideal_generators)
        t = *spec.ideal_generators;
      else
        throw Error(Errc::SpecError, "t: give --t, --empty-t, or ideal_generators in the algebra file");
      report = run_gen_ideal(spec, t, cfg);
    } else if (*decide) {
      report = run_decide_variety(spec, load_basis(basis_path), cfg);
    } else {
      report = run_subproduct_bound(spec, k ? *k : choose_k(cfg.c), cfg);
    }

    const std::string text = report_text(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!(out << text)) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
      }
    }
    return report.passed() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
