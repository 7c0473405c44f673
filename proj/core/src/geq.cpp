#include <cmath>
#include <stdexcept>
#include <string>

#include "psqm/protocols.hpp"

namespace psqm::protocols {

namespace {
BitString coordinate_sum(const InputTuple& inputs) {
  if (inputs.empty()) {
    throw std::invalid_argument("GEQ needs at least one input");
  }
  BitString sum(inputs.front().size());
  for (const auto& x : inputs) {
    sum = sum ^ x;  // throws on width mismatch
  }
  return sum;
}
}  // namespace

int geq_reference(const InputTuple& inputs) {
  const auto sum = coordinate_sum(inputs);
  if (sum.size() == 0 || sum.size() % 2 != 0) {
    throw std::invalid_argument("GEQ inputs must have a positive even width");
  }
  return sum.weight() == 0 ? 1 : 0;
}

bool geq_mask_identity_check(const InputTuple& inputs, const BitString& r_prime,
                             const gf2m::Modulus& modulus) {
  using gf2m::FieldElement;
  const auto mask = FieldElement::from_bits(r_prime, modulus);
  if (mask.is_zero()) {
    throw std::invalid_argument("mask r' must be nonzero");
  }
  auto masked_sum = FieldElement::zero(modulus);
  for (const auto& x : inputs) {
    masked_sum = masked_sum + mask * FieldElement::from_bits(x, modulus);
  }
  const auto rhs = mask * FieldElement::from_bits(coordinate_sum(inputs), modulus);
  return masked_sum == rhs;
}

GeqProtocol::GeqProtocol(int k, int l)
    : k_(k),
      l_(l),
      padded_(k % 2 == 0 ? k : k + 1),
      modulus_(gf2m::find_irreducible(l >= 1 && l <= 16 ? 2 * l : 2)) {
  if (k < 2) {
    throw std::invalid_argument("GEQ needs at least two parties");
  }
  if (l < 1) {
    throw std::invalid_argument("GEQ needs at least one block");
  }
  if (padded_ * l_ > qsim::kMaxQubits) {
    throw std::invalid_argument("GEQ register exceeds the simulator limit");
  }

  const auto parity = even_parity_strings(padded_);
  std::size_t combos = 1;
  for (int i = 0; i < l_; ++i) {
    combos *= parity.size();
  }
  const std::uint64_t field_size = std::uint64_t{1} << (2 * l_);
  for (std::uint64_t rp = 1; rp < field_size; ++rp) {
    const auto r_prime = BitString::from_index(rp, static_cast<std::size_t>(2 * l_));
    for (std::size_t c = 0; c < combos; ++c) {
      BitString shared;
      std::size_t rest = c;
      std::vector<std::size_t> digits(static_cast<std::size_t>(l_));
      for (int i = l_ - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = rest % parity.size();
        rest /= parity.size();
      }
      for (auto d : digits) {
        shared = shared.concat(parity[d]);
      }
      resource_.randomness.push_back(shared.concat(r_prime));
    }
  }

  // Product of l GHZ blocks, block i spanning qubits {j*l + i}.
  const auto q = padded_ * l_;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << q);
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << l_); ++pattern) {
    std::size_t idx = 0;
    for (int party = 0; party < padded_; ++party) {
      for (int block = 0; block < l_; ++block) {
        const std::size_t bit = (pattern >> (l_ - 1 - block)) & 1U;
        idx |= bit << (q - 1 - qubit(party, block));
      }
    }
    v[static_cast<Eigen::Index>(idx)] = std::pow(0.5, 0.5 * l_);
  }
  resource_.entangled = qsim::StateVector(q, std::move(v));
  for (int party = 0; party < padded_; ++party) {
    for (int block = 0; block < l_; ++block) {
      resource_.qubit_owner.push_back(party < k_ ? party : k_ - 1);
    }
  }
  resource_.validate(k_);
}

std::vector<int> GeqProtocol::message_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(k_), l_);
  if (padded_ != k_) {
    sizes.back() = 2 * l_;
  }
  return sizes;
}

std::optional<int> GeqProtocol::reference(const InputTuple& inputs) const {
  validate_inputs(inputs);
  return geq_reference(inputs);
}

BitString GeqProtocol::block_randomness(const BitString& randomness, int block) const {
  return randomness.slice(static_cast<std::size_t>(block * padded_), static_cast<std::size_t>(padded_));
}

BitString GeqProtocol::mask_randomness(const BitString& randomness) const {
  return randomness.slice(static_cast<std::size_t>(l_ * padded_), static_cast<std::size_t>(2 * l_));
}

BitString GeqProtocol::masked_input(const BitString& input, const BitString& randomness) const {
  using gf2m::FieldElement;
  const auto mask = FieldElement::from_bits(mask_randomness(randomness), modulus_);
  return (mask * FieldElement::from_bits(input, modulus_)).to_bits();
}

std::vector<LocalOp> GeqProtocol::local_operations(int party, const BitString& input,
                                                   const BitString& randomness) const {
  if (party < 0 || party >= k_) {
    throw std::out_of_range("GEQ party index out of range");
  }
  if (input.size() != static_cast<std::size_t>(2 * l_)) {
    throw std::invalid_argument("GEQ local map: bad input width");
  }
  const auto a = masked_input(input, randomness);
  const auto p = static_cast<std::size_t>(party);
  std::vector<LocalOp> ops;
  for (int i = 0; i < l_; ++i) {
    if (a[static_cast<std::size_t>(2 * i + 1)] == 1) {
      ops.push_back({qsim::Gate::Z, qubit(party, i)});
    }
  }
  for (int i = 0; i < l_; ++i) {
    if ((a[static_cast<std::size_t>(2 * i)] ^ block_randomness(randomness, i)[p]) == 1) {
      ops.push_back({qsim::Gate::X, qubit(party, i)});
    }
  }
  // Virtual party with input 0^{2l}: its masked string is 0 as well.
  if (padded_ != k_ && party == k_ - 1) {
    for (int i = 0; i < l_; ++i) {
      if (block_randomness(randomness, i)[static_cast<std::size_t>(k_)] == 1) {
        ops.push_back({qsim::Gate::X, qubit(k_, i)});
      }
    }
  }
  return ops;
}

qsim::StateVector GeqProtocol::message_state(const InputTuple& inputs,
                                             std::size_t randomness_index) const {
  validate_inputs(inputs);
  const auto& r = resource_.randomness.at(randomness_index);
  qsim::StateVector state = *resource_.entangled;
  for (int party = 0; party < k_; ++party) {
    for (const auto& op : local_operations(party, inputs[static_cast<std::size_t>(party)], r)) {
      if (resource_.qubit_owner[static_cast<std::size_t>(op.qubit)] != party) {
        throw std::logic_error("party acted on a register it does not own");
      }
      state = qsim::apply_gate(std::move(state), op.gate, op.qubit);
    }
  }
  return state;
}

std::vector<std::vector<int>> GeqProtocol::referee_groups() const {
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(l_));
  for (int i = 0; i < l_; ++i) {
    for (int party = 0; party < padded_; ++party) {
      groups[static_cast<std::size_t>(i)].push_back(qubit(party, i));
    }
  }
  return groups;
}

qsim::MeasurementBasis GeqProtocol::referee_basis() const {
  return qsim::block_basis(qsim::phi_basis(padded_), referee_groups());
}

int GeqProtocol::decode(std::size_t outcome) const {
  const std::size_t block_mask = (std::size_t{1} << padded_) - 1;
  for (int i = 0; i < l_; ++i) {
    const std::size_t bits = (outcome >> ((l_ - 1 - i) * padded_)) & block_mask;
    const auto y = BitString::from_index(bits >> 1, static_cast<std::size_t>(padded_ - 1));
    if ((bits & 1U) != 0 || y.parity() != 0) {
      return 0;
    }
  }
  return 1;
}

Transcript GeqProtocol::run(const InputTuple& inputs, std::size_t randomness_index) const {
  Transcript t;
  t.inputs = inputs;
  t.randomness_index = randomness_index;
  t.randomness = resource_.randomness.at(randomness_index);
  t.message = message_state(inputs, randomness_index);
  t.outcome_distribution = qsim::measure_phi_groups(*t.message, referee_groups());
  t.output_distribution.assign(2, 0.0);
  for (std::size_t o = 0; o < t.outcome_distribution.size(); ++o) {
    t.output_distribution[static_cast<std::size_t>(decode(o))] += t.outcome_distribution[o];
  }
  t.cost = communication_cost();
  return t;
}

}  // namespace psqm::protocols
