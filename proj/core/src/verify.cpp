#include "psqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "psqm/bounds.hpp"
#include "psqm/rng.hpp"

namespace psqm::verify {

using protocols::Protocol;

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kMaxSampleDraws = std::size_t{1} << 22;
constexpr std::uint64_t kContextBudget = 4096;
constexpr std::size_t kSampledContexts = 64;
constexpr std::uint64_t kPartyDomainLimit = 4096;

std::uint64_t saturating_pow2_product(const std::vector<int>& lengths) {
  int total = 0;
  for (int len : lengths) {
    total += len;
  }
  return total >= 64 ? kSaturated : (std::uint64_t{1} << total);
}

InputTuple split_index(std::uint64_t index, const std::vector<int>& lengths) {
  InputTuple out(lengths.size());
  for (std::size_t p = lengths.size(); p-- > 0;) {
    const auto len = static_cast<std::size_t>(lengths[p]);
    out[p] = BitString::from_index(index & ((std::uint64_t{1} << len) - 1), len);
    index >>= len;
  }
  return out;
}

BitString random_string(Rng& rng, int length) {
  BitString s(static_cast<std::size_t>(length));
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.set(i, rng.bit());
  }
  return s;
}

std::uint64_t require_seed(const SweepOptions& options, const char* what) {
  if (!options.seed) {
    throw std::invalid_argument(std::string(what) + " exceeds the exhaustive budget; a seed is required");
  }
  return *options.seed;
}

}  // namespace

std::uint64_t input_domain_size(const Protocol& protocol) {
  return saturating_pow2_product(protocol.input_lengths());
}

InputSweep sweep_inputs(const Protocol& protocol, const SweepOptions& options) {
  const auto lengths = protocol.input_lengths();
  InputSweep sweep;
  sweep.coverage.domain_size = input_domain_size(protocol);
  sweep.coverage.randomness = protocol.randomness_count();

  if (sweep.coverage.domain_size <= options.budget) {
    for (std::uint64_t idx = 0; idx < sweep.coverage.domain_size; ++idx) {
      auto inputs = split_index(idx, lengths);
      if (protocol.reference(inputs)) {
        sweep.inputs.push_back(std::move(inputs));
      }
    }
    sweep.coverage.inputs = sweep.inputs.size();
    return sweep;
  }

  const auto seed = require_seed(options, "input domain");
  sweep.coverage.exhaustive = false;
  sweep.coverage.seed = seed;
  Rng rng(seed);
  std::vector<std::size_t> taken(static_cast<std::size_t>(protocol.output_count()), 0);
  auto complete = [&] {
    return std::all_of(taken.begin(), taken.end(), [&](std::size_t t) { return t >= options.per_class; });
  };
  for (std::size_t draw = 0; draw < kMaxSampleDraws && !complete(); ++draw) {
    InputTuple inputs;
    for (int len : lengths) {
      inputs.push_back(random_string(rng, len));
    }
    const auto y = protocol.reference(inputs);
    if (!y) {
      continue;
    }
    auto& count = taken.at(static_cast<std::size_t>(*y));
    if (count < options.per_class) {
      ++count;
      sweep.inputs.push_back(std::move(inputs));
    }
  }
  sweep.coverage.inputs = sweep.inputs.size();
  return sweep;
}

CorrectnessReport check_correctness(const Protocol& protocol, const SweepOptions& options) {
  CorrectnessReport report;
  const auto sweep = sweep_inputs(protocol, options);
  report.coverage = sweep.coverage;
  for (const auto& inputs : sweep.inputs) {
    const int y = *protocol.reference(inputs);
    for (const auto& t : protocol.run_all(inputs)) {
      const double mass = t.output_distribution.at(static_cast<std::size_t>(y));
      ++report.cases;
      if (mass < 1.0 - options.tol) {
        ++report.failures;
      }
      if (!report.worst_input || mass < report.min_mass) {
        report.min_mass = mass;
        report.worst_input = inputs;
        report.worst_randomness = t.randomness_index;
      }
    }
  }
  report.pass = report.failures == 0;
  return report;
}

qsim::DensityMatrix averaged_message(const Protocol& protocol, const InputTuple& inputs) {
  const auto transcripts = protocol.run_all(inputs);
  const double w = 1.0 / static_cast<double>(transcripts.size());
  if (protocol.message_kind() == protocols::MessageKind::quantum) {
    std::vector<qsim::WeightedState> ensemble;
    ensemble.reserve(transcripts.size());
    for (const auto& t : transcripts) {
      ensemble.push_back({w, *t.message});
    }
    return qsim::mix(ensemble);
  }
  std::vector<double> probs(transcripts.front().message_distribution.size(), 0.0);
  for (const auto& t : transcripts) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
      probs[i] += w * t.message_distribution[i];
    }
  }
  return qsim::DensityMatrix::diagonal(protocol.message_width(), probs);
}

PrivacyReport check_privacy(const Protocol& protocol, const SweepOptions& options) {
  PrivacyReport report;
  const auto sweep = sweep_inputs(protocol, options);
  report.coverage = sweep.coverage;

  std::vector<std::optional<ClassSummary>> classes(static_cast<std::size_t>(protocol.output_count()));
  for (const auto& inputs : sweep.inputs) {
    const int y = *protocol.reference(inputs);
    auto rho = averaged_message(protocol, inputs);
    auto& slot = classes.at(static_cast<std::size_t>(y));
    if (!slot) {
      slot = ClassSummary{.output = y,
                          .label = protocol.output_label(y),
                          .inputs = 1,
                          .max_distance = 0.0,
                          .worst_input = inputs,
                          .purity = qsim::purity(rho),
                          .rho = std::move(rho)};
      continue;
    }
    ++slot->inputs;
    const double d = qsim::matrix_distance(rho, slot->rho);
    if (d > slot->max_distance) {
      slot->max_distance = d;
      slot->worst_input = inputs;
    }
  }
  for (auto& c : classes) {
    if (c) {
      report.classes.push_back(std::move(*c));
    }
  }

  for (std::size_t a = 0; a < report.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < report.classes.size(); ++b) {
      report.max_cross_product =
          std::max(report.max_cross_product, qsim::product_norm(report.classes[a].rho, report.classes[b].rho));
    }
  }
  report.distinguishable = report.max_cross_product <= options.tol;
  report.pass = std::all_of(report.classes.begin(), report.classes.end(),
                            [&](const ClassSummary& c) { return c.max_distance <= options.tol; });

  const auto sizes = protocol.message_sizes();
  if (protocol.message_kind() == protocols::MessageKind::classical && sizes.size() == 2 &&
      !report.classes.empty() && report.classes.front().output == 0) {
    const auto& rho0 = report.classes.front().rho.entries();
    const std::size_t low = std::size_t{1} << sizes[1];
    double mass = 0.0;
    for (Eigen::Index i = 0; i < rho0.rows(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (idx / low == 0 || idx % low == 0) {
        mass += rho0(i, i).real();
      }
    }
    report.reject_mass_on_zero_strings = mass;
  }
  return report;
}

WeightSums weight_sums(const std::vector<qsim::StateVector>& at_r,
                       const std::vector<qsim::StateVector>& at_r_prime, std::size_t x) {
  WeightSums sums;
  if (at_r.empty()) {
    return sums;
  }
  const auto& psi = at_r.at(x);
  for (std::size_t z = 0; z < at_r_prime.size(); ++z) {
    const double overlap = std::norm(qsim::inner_product(psi, at_r_prime[z]));
    sums.including += overlap;
    if (z != x) {
      sums.excluding += overlap;
    }
  }
  return sums;
}

namespace {

// Columns are the message states for the party's inputs, in order.
Eigen::MatrixXcd stack(const std::vector<const qsim::StateVector*>& states) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(states.front()->dimension()),
                     static_cast<Eigen::Index>(states.size()));
  for (std::size_t c = 0; c < states.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) = states[c]->amplitudes();
  }
  return m;
}

}  // namespace

WeightLemmaReport check_weight_lemma(const Protocol& protocol, int party, const SweepOptions& options) {
  if (party < 0 || party >= protocol.party_count()) {
    throw std::out_of_range("weight lemma: party index out of range");
  }
  WeightLemmaReport report;
  report.party = party;
  const auto lengths = protocol.input_lengths();
  const auto p = static_cast<std::size_t>(party);
  const bool quantum = protocol.message_kind() == protocols::MessageKind::quantum;
  if (!quantum) {
    report.applicable = false;
    report.note =
        "classical messages: evaluated on the pre-measurement entangled state, which does not depend on "
        "the shared randomness; the function is partial, so the sums are informational";
  }

  if (lengths[p] >= 63 || (std::uint64_t{1} << lengths[p]) > kPartyDomainLimit) {
    report.applicable = false;
    report.pass = true;
    report.note = "party input domain too large to enumerate; not evaluated";
    return report;
  }
  const std::size_t party_domain = std::size_t{1} << lengths[p];

  std::vector<int> other_lengths;
  for (std::size_t q = 0; q < lengths.size(); ++q) {
    if (q != p) {
      other_lengths.push_back(lengths[q]);
    }
  }
  std::vector<InputTuple> contexts;
  const auto context_count = saturating_pow2_product(other_lengths);
  report.coverage.domain_size = context_count;
  if (context_count <= kContextBudget) {
    for (std::uint64_t idx = 0; idx < context_count; ++idx) {
      contexts.push_back(split_index(idx, other_lengths));
    }
  } else {
    const auto seed = require_seed(options, "weight-lemma context domain");
    report.coverage.exhaustive = false;
    report.coverage.seed = seed;
    Rng rng(seed);
    for (std::size_t i = 0; i < kSampledContexts; ++i) {
      InputTuple ctx;
      for (int len : other_lengths) {
        ctx.push_back(random_string(rng, len));
      }
      contexts.push_back(std::move(ctx));
    }
  }
  report.coverage.inputs = contexts.size();
  const std::size_t r_count = quantum ? protocol.randomness_count() : 1;
  report.coverage.randomness = r_count;

  for (const auto& ctx : contexts) {
    // Party inputs z for which the full tuple lies inside the promise.
    std::vector<InputTuple> tuples;
    for (std::size_t z = 0; z < party_domain; ++z) {
      InputTuple full = ctx;
      full.insert(full.begin() + party, BitString::from_index(z, static_cast<std::size_t>(lengths[p])));
      if (protocol.reference(full)) {
        tuples.push_back(std::move(full));
      }
    }
    if (tuples.empty()) {
      continue;
    }
    // states[r][z]
    std::vector<std::vector<qsim::StateVector>> states(r_count);
    for (const auto& full : tuples) {
      if (quantum) {
        auto transcripts = protocol.run_all(full);
        for (std::size_t r = 0; r < r_count; ++r) {
          states[r].push_back(std::move(*transcripts[r].message));
        }
      } else {
        states[0].push_back(*protocol.run(full, 0).pre_measurement);
      }
    }
    std::vector<Eigen::MatrixXcd> stacked;
    for (const auto& row : states) {
      std::vector<const qsim::StateVector*> ptrs;
      for (const auto& s : row) {
        ptrs.push_back(&s);
      }
      stacked.push_back(stack(ptrs));
    }
    for (std::size_t r = 0; r < r_count; ++r) {
      for (std::size_t rp = 0; rp < r_count; ++rp) {
        const Eigen::MatrixXd overlaps = (stacked[r].adjoint() * stacked[rp]).cwiseAbs2();
        for (Eigen::Index x = 0; x < overlaps.rows(); ++x) {
          const double including = overlaps.row(x).sum();
          const double excluding = including - overlaps(x, x);
          ++report.cases;
          if (including > report.max_including) {
            report.max_including = including;
          }
          if (report.cases == 1 || excluding > report.max_excluding) {
            report.max_excluding = excluding;
            report.worst_context = tuples[static_cast<std::size_t>(x)];
            report.worst_r = r;
            report.worst_r_prime = rp;
          }
        }
      }
    }
  }
  const bool within = report.max_excluding <= 1.0 + options.tol && report.max_including <= 1.0 + options.tol;
  report.pass = report.applicable ? within : true;
  return report;
}

TupleDistribution TupleDistribution::uniform(std::vector<InputTuple> inputs) {
  if (inputs.empty()) {
    throw std::invalid_argument("uniform distribution over no inputs");
  }
  const double w = 1.0 / static_cast<double>(inputs.size());
  TupleDistribution mu;
  mu.weights.assign(inputs.size(), w);
  mu.support = std::move(inputs);
  return mu;
}

TupleDistribution TupleDistribution::point_mass(InputTuple input) {
  TupleDistribution mu;
  mu.support.push_back(std::move(input));
  mu.weights.push_back(1.0);
  return mu;
}

namespace {

struct MixedMessages {
  std::vector<qsim::DensityMatrix> per_input;
  qsim::DensityMatrix total;
};

MixedMessages mix_messages(const Protocol& protocol, const TupleDistribution& mu) {
  if (mu.support.size() != mu.weights.size() || mu.support.empty()) {
    throw std::invalid_argument("input distribution: support and weights must be non-empty and aligned");
  }
  std::vector<qsim::DensityMatrix> per_input;
  std::vector<qsim::WeightedDensity> ensemble;
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    per_input.push_back(averaged_message(protocol, mu.support[i]));
    ensemble.push_back({mu.weights[i], per_input.back()});
  }
  auto total = qsim::mix_density(ensemble);
  return {std::move(per_input), std::move(total)};
}

}  // namespace

PurityReport check_purity_bounds(const Protocol& protocol, const TupleDistribution& mu, double tol) {
  const auto mixed = mix_messages(protocol, mu);
  PurityReport report;
  report.support = mu.support.size();
  report.dimension = mixed.total.dimension();
  report.purity = qsim::purity(mixed.total);
  report.lower = 1.0 / static_cast<double>(report.dimension);
  report.pass = report.purity >= report.lower - tol && report.purity <= 1.0 + tol;
  return report;
}

Claim31Report check_claim31(const Protocol& protocol, const TupleDistribution& mu, double tol) {
  Claim31Report report;
  std::vector<int> labels;
  for (const auto& x : mu.support) {
    const auto y = protocol.reference(x);
    if (!y) {
      throw std::invalid_argument("purity upper bound: distribution has mass outside the promise");
    }
    labels.push_back(*y);
  }
  report.beta = bounds::beta_from_classes(labels, mu.weights);
  if (!(report.beta > 0.0)) {
    report.skipped = true;
    report.pass = true;
    report.skip_reason = "beta is zero: no output class holds two distinct inputs";
    return report;
  }
  const auto mixed = mix_messages(protocol, mu);
  report.lhs = qsim::purity(mixed.total);
  // sum_{x != x'} mu mu' tr(rho rho') = tr(rho^2) - sum_x mu(x)^2 tr(rho(x)^2).
  double diagonal = 0.0;
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    diagonal += mu.weights[i] * mu.weights[i] * qsim::purity(mixed.per_input[i]);
  }
  report.cross_terms = report.lhs - diagonal;
  report.rhs = report.cross_terms / report.beta;
  report.pass = report.lhs <= report.rhs + tol;
  return report;
}

protocols::Cost communication_cost(const Protocol& protocol) { return protocol.communication_cost(); }

}  // namespace psqm::verify
