#include "psqm/protocols.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace psqm::protocols {

void SharedResource::validate(int party_count) const {
  if (randomness.empty()) {
    throw std::invalid_argument("shared randomness domain is empty");
  }
  if (!entangled) {
    if (!qubit_owner.empty()) {
      throw std::invalid_argument("qubit owners given without an entangled state");
    }
    return;
  }
  if (qubit_owner.size() != static_cast<std::size_t>(entangled->qubit_count())) {
    throw std::invalid_argument("every entangled qubit needs exactly one owner");
  }
  for (int owner : qubit_owner) {
    if (owner < 0 || owner >= party_count) {
      throw std::invalid_argument("entangled qubit assigned to a nonexistent party");
    }
  }
}

std::vector<Transcript> Protocol::run_all(const InputTuple& inputs) const {
  std::vector<Transcript> out;
  out.reserve(randomness_count());
  for (std::size_t r = 0; r < randomness_count(); ++r) {
    out.push_back(run(inputs, r));
  }
  return out;
}

int Protocol::message_width() const {
  const auto sizes = message_sizes();
  return std::accumulate(sizes.begin(), sizes.end(), 0);
}

Cost Protocol::communication_cost() const {
  return {message_width(), message_kind() == MessageKind::quantum ? "qubits" : "bits"};
}

qsim::DensityMatrix Protocol::message_density(const Transcript& transcript) const {
  if (message_kind() == MessageKind::quantum) {
    if (!transcript.message) {
      throw std::logic_error("quantum transcript without a message state");
    }
    return qsim::DensityMatrix::projector(*transcript.message);
  }
  return qsim::DensityMatrix::diagonal(message_width(), transcript.message_distribution);
}

void Protocol::validate_inputs(const InputTuple& inputs) const {
  const auto lengths = input_lengths();
  if (inputs.size() != lengths.size()) {
    throw std::invalid_argument(name() + " expects " + std::to_string(lengths.size()) +
                                " inputs, got " + std::to_string(inputs.size()));
  }
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (inputs[j].size() != static_cast<std::size_t>(lengths[j])) {
      throw std::invalid_argument(name() + " input " + std::to_string(j + 1) + " must have " +
                                  std::to_string(lengths[j]) + " bits");
    }
  }
}

std::vector<BitString> even_parity_strings(int k) {
  if (k < 1 || k > 30) {
    throw std::invalid_argument("parity string width out of range");
  }
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << (k - 1));
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
    auto s = BitString::from_index(v, static_cast<std::size_t>(k));
    if (s.parity() == 0) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace psqm::protocols
