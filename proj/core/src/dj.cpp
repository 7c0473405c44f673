#include <bit>
#include <cmath>
#include <stdexcept>

#include "psqm/protocols.hpp"

namespace psqm::protocols {

std::optional<int> dj_reference(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("DJ inputs must have equal length");
  }
  if (x.size() < 2 || !std::has_single_bit(x.size())) {
    throw std::invalid_argument("DJ input length must be a power of two >= 2");
  }
  const int d = hamming_distance(x, y);
  if (d == 0) {
    return 1;
  }
  if (2 * static_cast<std::size_t>(d) == x.size()) {
    return 0;
  }
  return std::nullopt;
}

namespace {
int log2_exact(int n) {
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw std::invalid_argument("DJ size n must be a power of two >= 2");
  }
  return std::countr_zero(static_cast<unsigned>(n));
}
}  // namespace

DjProtocol::DjProtocol(int n)
    : n_(n), m_(log2_exact(n)), modulus_(gf2m::find_irreducible(m_)) {
  if (2 * m_ > 8) {
    throw std::invalid_argument("DJ supports n up to 16");
  }
  for (int r = 1; r < n_; ++r) {
    for (int rp = 0; rp < n_; ++rp) {
      resource_.randomness.push_back(
          BitString::from_index(static_cast<std::uint64_t>(r), static_cast<std::size_t>(m_))
              .concat(BitString::from_index(static_cast<std::uint64_t>(rp), static_cast<std::size_t>(m_))));
    }
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * m_));
  for (int i = 0; i < n_; ++i) {
    v[static_cast<Eigen::Index>(i) * n_ + i] = 1.0 / std::sqrt(static_cast<double>(n_));
  }
  resource_.entangled = qsim::StateVector(2 * m_, std::move(v));
  for (int q = 0; q < 2 * m_; ++q) {
    resource_.qubit_owner.push_back(q < m_ ? 0 : 1);
  }
  resource_.validate(2);
  for (const auto& r : resource_.randomness) {
    std::vector<std::uint64_t> row;
    for (int outcome = 0; outcome < n_; ++outcome) {
      row.push_back(
          party_message(BitString::from_index(static_cast<std::uint64_t>(outcome), static_cast<std::size_t>(m_)), r)
              .to_index());
    }
    message_index_.push_back(std::move(row));
  }
}

std::optional<int> DjProtocol::reference(const InputTuple& inputs) const {
  validate_inputs(inputs);
  return dj_reference(inputs[0], inputs[1]);
}

std::vector<int> DjProtocol::local_phase_signs(int party, const BitString& input) const {
  if (party != 0 && party != 1) {
    throw std::out_of_range("DJ has two parties");
  }
  if (input.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("DJ input has the wrong length");
  }
  std::vector<int> signs(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  for (std::size_t idx = 0; idx < signs.size(); ++idx) {
    const std::size_t content = party == 0 ? idx / static_cast<std::size_t>(n_) : idx % static_cast<std::size_t>(n_);
    signs[idx] = input[content] == 1 ? -1 : 1;
  }
  return signs;
}

qsim::StateVector DjProtocol::pre_measurement_state(const InputTuple& inputs) const {
  validate_inputs(inputs);
  qsim::StateVector state = *resource_.entangled;
  for (int party = 0; party < 2; ++party) {
    state = qsim::apply_phase_oracle(std::move(state),
                                     local_phase_signs(party, inputs[static_cast<std::size_t>(party)]));
    for (int q = party * m_; q < (party + 1) * m_; ++q) {
      state = qsim::apply_gate(std::move(state), qsim::Gate::H, q);
    }
  }
  return state;
}

std::vector<double> DjProtocol::kl_distribution(const InputTuple& inputs) const {
  return qsim::measure_computational(pre_measurement_state(inputs));
}

BitString DjProtocol::party_message(const BitString& outcome, const BitString& randomness) const {
  using gf2m::FieldElement;
  const auto m = static_cast<std::size_t>(m_);
  const auto r = FieldElement::from_bits(randomness.slice(0, m), modulus_);
  const auto r_prime = FieldElement::from_bits(randomness.slice(m, m), modulus_);
  return (r * FieldElement::from_bits(outcome, modulus_) + r_prime).to_bits();
}

Transcript DjProtocol::assemble(const InputTuple& inputs, std::size_t randomness_index,
                                const qsim::StateVector& pre, const std::vector<double>& kl) const {
  Transcript t;
  t.inputs = inputs;
  t.randomness_index = randomness_index;
  t.randomness = resource_.randomness.at(randomness_index);
  t.pre_measurement = pre;

  const auto n = static_cast<std::size_t>(n_);
  const auto& message_of = message_index_[randomness_index];
  t.message_distribution.assign(n * n, 0.0);
  t.output_distribution.assign(2, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      const double p = kl[k * n + l];
      if (p == 0.0) {
        continue;
      }
      const auto ma = message_of[k];
      const auto mb = message_of[l];
      t.message_distribution[ma * n + mb] += p;
      t.output_distribution[ma == mb ? 1 : 0] += p;
    }
  }
  // The referee reads the classical messages directly.
  t.outcome_distribution = t.message_distribution;
  t.cost = communication_cost();
  return t;
}

Transcript DjProtocol::run(const InputTuple& inputs, std::size_t randomness_index) const {
  const auto pre = pre_measurement_state(inputs);
  return assemble(inputs, randomness_index, pre, qsim::measure_computational(pre));
}

std::vector<Transcript> DjProtocol::run_all(const InputTuple& inputs) const {
  const auto pre = pre_measurement_state(inputs);
  const auto kl = qsim::measure_computational(pre);
  std::vector<Transcript> out;
  out.reserve(randomness_count());
  for (std::size_t r = 0; r < randomness_count(); ++r) {
    out.push_back(assemble(inputs, r, pre, kl));
  }
  return out;
}

}  // namespace psqm::protocols
