#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psqm/bits.hpp"
#include "psqm/protocols.hpp"
#include "psqm/qsim.hpp"

namespace psqm::verify {

inline constexpr double kDefaultTolerance = 1e-9;

struct SweepOptions {
  /// Input domains up to this size are enumerated; larger ones are sampled.
  std::uint64_t budget = std::uint64_t{1} << 16;
  /// Required whenever a sweep has to sample.
  std::optional<std::uint64_t> seed;
  /// Minimum sampled inputs per output class.
  std::size_t per_class = 64;
  double tol = kDefaultTolerance;
};

struct Coverage {
  bool exhaustive = true;
  /// Size of the full input product domain, saturated at 2^64 - 1.
  std::uint64_t domain_size = 0;
  /// Inputs actually checked (promise inputs only).
  std::size_t inputs = 0;
  /// Randomness values per input; always the whole domain.
  std::size_t randomness = 0;
  std::optional<std::uint64_t> seed;
};

struct InputSweep {
  std::vector<InputTuple> inputs;
  Coverage coverage;
};

std::uint64_t input_domain_size(const protocols::Protocol& protocol);

/// Every promise input when the domain fits the budget, in big-endian order of
/// the concatenated inputs. Otherwise a seeded sample drawn until each output
/// class has options.per_class members (or a draw limit is hit). Throws
/// std::invalid_argument if sampling is needed and no seed was given.
InputSweep sweep_inputs(const protocols::Protocol& protocol, const SweepOptions& options);

struct CorrectnessReport {
  bool pass = false;
  double min_mass = 1.0;
  std::optional<InputTuple> worst_input;
  std::size_t worst_randomness = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  Coverage coverage;
};

CorrectnessReport check_correctness(const protocols::Protocol& protocol, const SweepOptions& options = {});

/// Randomness-averaged message state rho(x) = E_r rho(x; r).
qsim::DensityMatrix averaged_message(const protocols::Protocol& protocol, const InputTuple& inputs);

struct ClassSummary {
  int output = 0;
  std::string label;
  std::size_t inputs = 0;
  /// Largest Frobenius distance from a member's rho(x) to the class representative.
  double max_distance = 0.0;
  std::optional<InputTuple> worst_input;
  double purity = 0.0;
  /// Simulator state rho_y: rho(x) of the first member in sweep order.
  qsim::DensityMatrix rho;
};

struct PrivacyReport {
  bool pass = false;
  std::vector<ClassSummary> classes;
  /// Largest ||rho_y rho_y'||_F over distinct classes.
  double max_cross_product = 0.0;
  bool distinguishable = false;
  /// Classical message protocols with two m-bit messages: mass of the reject class
  /// on pairs where a message is the all-zero string.
  std::optional<double> reject_mass_on_zero_strings;
  Coverage coverage;
};

PrivacyReport check_privacy(const protocols::Protocol& protocol, const SweepOptions& options = {});

/// For orthonormal-or-not state lists indexed by the party's input:
/// sum_{z != x} |<a_x|b_z>|^2 and sum_z |<a_x|b_z>|^2. An empty or single-entry
/// list gives 0 for the first sum.
struct WeightSums {
  double excluding = 0.0;
  double including = 0.0;
};

WeightSums weight_sums(const std::vector<qsim::StateVector>& at_r,
                       const std::vector<qsim::StateVector>& at_r_prime, std::size_t x);

struct WeightLemmaReport {
  int party = 0;
  /// False when the protocol lies outside the lemma's hypothesis; the sums are
  /// still reported but do not gate the result.
  bool applicable = true;
  bool pass = false;
  double max_excluding = 0.0;
  double max_including = 0.0;
  std::optional<InputTuple> worst_context;
  std::size_t worst_r = 0;
  std::size_t worst_r_prime = 0;
  std::size_t cases = 0;
  std::string note;
  Coverage coverage;
};

/// The party's message is the joint pure message state with every other
/// party's input held fixed; each fixing of the others is one context.
WeightLemmaReport check_weight_lemma(const protocols::Protocol& protocol, int party,
                                     const SweepOptions& options = {});

/// Distribution over input tuples.
struct TupleDistribution {
  std::vector<InputTuple> support;
  std::vector<double> weights;

  static TupleDistribution uniform(std::vector<InputTuple> inputs);
  static TupleDistribution point_mass(InputTuple input);
};

struct PurityReport {
  bool pass = false;
  double purity = 0.0;
  double lower = 0.0;
  std::size_t dimension = 0;
  std::size_t support = 0;
};

PurityReport check_purity_bounds(const protocols::Protocol& protocol, const TupleDistribution& mu,
                                 double tol = 1e-10);

struct Claim31Report {
  bool skipped = false;
  std::string skip_reason;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double beta = 0.0;
  /// tr sum_{x != x'} mu(x) mu(x') rho(x) rho(x').
  double cross_terms = 0.0;
};

Claim31Report check_claim31(const protocols::Protocol& protocol, const TupleDistribution& mu,
                            double tol = kDefaultTolerance);

protocols::Cost communication_cost(const protocols::Protocol& protocol);

}  // namespace psqm::verify
