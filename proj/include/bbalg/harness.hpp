#ifndef BBALG_HARNESS_HPP
#define BBALG_HARNESS_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbalg/families.hpp"
#include "bbalg/variety.hpp"

namespace bbalg {

/// An algebra description loaded from JSON (see schema/algebra_spec.schema.json).
struct AlgebraSpec {
  std::string name;
  std::shared_ptr<const CayleyAlgebra> algebra;
  unsigned salt_bits = 4;
  /// Σ-generating tuple; computed by brute force when absent.
  std::optional<std::vector<Element>> generators;
  std::optional<std::vector<Element>> ideal_generators;
  /// Present for R-module specs: the module laws of the presentation.
  std::optional<IdentityBasis> module_basis;
};

/// Throws SpecError whose message starts with the offending field path.
AlgebraSpec parse_algebra_spec(const nlohmann::json& doc);
AlgebraSpec load_algebra_spec(const std::filesystem::path& path);

/// Identity basis from JSON (see schema/identity_basis.schema.json).
IdentityBasis parse_basis(const nlohmann::json& doc);
IdentityBasis load_basis(const std::filesystem::path& path);

/// Element references: decimal indices or labels. Throws SpecError.
std::vector<Element> resolve_elements(const CayleyAlgebra& alg, const std::vector<std::string>& refs,
                                      const std::string& field);

struct ExperimentConfig {
  double c = 2.0;
  std::optional<unsigned> k;
  std::optional<unsigned> salt_bits; // overrides the algebra file
  std::optional<unsigned> n;         // overrides the encoding length
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool dedup = false;
  bool reduce = false;
  unsigned threads = 1;
  bool timing = false;
  std::string command;
};

struct QueryStats {
  double operations_mean = 0;
  std::uint64_t operations_max = 0;
  double equality_mean = 0;
  std::uint64_t equality_max = 0;
};

struct ExperimentReport {
  std::string command;
  std::string spec;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double empirical_failure_rate = 0;
  std::string bound_kind;
  double paper_bound = 0;
  double sigma = 0;
  double threshold = 0;
  bool bound_satisfied = false;
  std::size_t membership_violations = 0;
  unsigned n = 0;
  std::optional<double> c;
  unsigned k = 0;
  std::size_t m = 0;
  std::optional<std::size_t> l;
  std::optional<bool> ground_truth;
  std::optional<std::size_t> answers_true;
  QueryStats queries;
  std::string outcomes; // one character per trial, '1' = success
  double wall_seconds = 0;
  bool include_timing = false;

  bool passed() const { return bound_satisfied && membership_violations == 0; }
  nlohmann::ordered_json to_json() const;
};

/// One-sided 3σ test: sqrt(p(1-p)/trials) with p = min(bound, 1).
double binomial_sigma(double bound, std::size_t trials);

/// Algorithm B per trial; success = output generates Add ⟨s⟩_Σ.
ExperimentReport run_gen_additive(const AlgebraSpec& spec, const ExperimentConfig& cfg);
/// Algorithm C per trial; success = output generates the ideal of t.
ExperimentReport run_gen_ideal(const AlgebraSpec& spec, const std::vector<Element>& t, const ExperimentConfig& cfg);
/// Algorithm D per trial; success = agreement with direct table evaluation.
ExperimentReport run_decide_variety(const AlgebraSpec& spec, const IdentityBasis& basis, const ExperimentConfig& cfg);
/// k·l random subsums of an additive generating tuple per trial.
ExperimentReport run_subproduct_bound(const AlgebraSpec& spec, unsigned k, const ExperimentConfig& cfg);

/// Stable JSON text (two-space indent, trailing newline).
std::string report_text(const ExperimentReport& report);

} // namespace bbalg

#endif // BBALG_HARNESS_HPP
