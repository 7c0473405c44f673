#include <stdexcept>
#include <string>

#include "psqm/protocols.hpp"

namespace psqm::protocols {

std::pair<int, int> sum2_reference(const InputTuple& inputs) {
  int b1 = 0;
  int b2 = 0;
  for (const auto& x : inputs) {
    if (x.size() != 2) {
      throw std::invalid_argument("Sum2 inputs must be 2-bit strings");
    }
    b1 ^= x[0];
    b2 ^= x[1];
  }
  return {b1, b2};
}

Sum2Protocol::Sum2Protocol(int k) : k_(k), padded_(k % 2 == 0 ? k : k + 1) {
  if (k < 2) {
    throw std::invalid_argument("Sum2 needs at least two parties");
  }
  if (padded_ > qsim::kMaxQubits) {
    throw std::invalid_argument("Sum2 register exceeds the simulator limit");
  }
  resource_.randomness = even_parity_strings(padded_);
  resource_.entangled = qsim::ghz(padded_);
  for (int q = 0; q < padded_; ++q) {
    resource_.qubit_owner.push_back(q < k_ ? q : k_ - 1);
  }
  resource_.validate(k_);
}

std::vector<int> Sum2Protocol::message_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(k_), 1);
  if (padded_ != k_) {
    sizes.back() = 2;
  }
  return sizes;
}

std::string Sum2Protocol::output_label(int output) const {
  return "(" + std::to_string(output >> 1) + "," + std::to_string(output & 1) + ")";
}

std::optional<int> Sum2Protocol::reference(const InputTuple& inputs) const {
  validate_inputs(inputs);
  const auto [b1, b2] = sum2_reference(inputs);
  return 2 * b1 + b2;
}

std::vector<LocalOp> Sum2Protocol::local_operations(int party, const BitString& input,
                                                    const BitString& randomness) const {
  if (party < 0 || party >= k_) {
    throw std::out_of_range("Sum2 party index out of range");
  }
  if (input.size() != 2 || randomness.size() != static_cast<std::size_t>(padded_)) {
    throw std::invalid_argument("Sum2 local map: bad input or randomness width");
  }
  std::vector<LocalOp> ops;
  if (input[1] == 1) {
    ops.push_back({qsim::Gate::Z, party});
  }
  if ((input[0] ^ randomness[static_cast<std::size_t>(party)]) == 1) {
    ops.push_back({qsim::Gate::X, party});
  }
  // The last real party also plays the virtual party holding input 00.
  if (padded_ != k_ && party == k_ - 1 && randomness[static_cast<std::size_t>(k_)] == 1) {
    ops.push_back({qsim::Gate::X, k_});
  }
  return ops;
}

qsim::StateVector Sum2Protocol::message_state(const InputTuple& inputs,
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

int Sum2Protocol::decode(std::size_t outcome) const {
  const int z = static_cast<int>(outcome & 1U);
  const auto y = BitString::from_index(outcome >> 1, static_cast<std::size_t>(padded_ - 1));
  return 2 * y.parity() + z;
}

Transcript Sum2Protocol::run(const InputTuple& inputs, std::size_t randomness_index) const {
  Transcript t;
  t.inputs = inputs;
  t.randomness_index = randomness_index;
  t.randomness = resource_.randomness.at(randomness_index);
  t.message = message_state(inputs, randomness_index);

  std::vector<int> all(static_cast<std::size_t>(padded_));
  for (int q = 0; q < padded_; ++q) {
    all[static_cast<std::size_t>(q)] = q;
  }
  t.outcome_distribution = qsim::measure_phi_groups(*t.message, {all});
  t.output_distribution.assign(4, 0.0);
  for (std::size_t o = 0; o < t.outcome_distribution.size(); ++o) {
    t.output_distribution[static_cast<std::size_t>(decode(o))] += t.outcome_distribution[o];
  }
  t.cost = communication_cost();
  return t;
}

}  // namespace psqm::protocols
