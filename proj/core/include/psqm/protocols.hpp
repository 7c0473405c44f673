#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psqm/bits.hpp"
#include "psqm/gf2m.hpp"
#include "psqm/qsim.hpp"

namespace psqm::protocols {

enum class MessageKind { quantum, classical };

struct Cost {
  int value = 0;
  std::string unit;  // "qubits" or "bits"

  friend bool operator==(const Cost&, const Cost&) = default;
};

/// Shared randomness (uniform over an explicit domain) plus an optional entangled
/// state whose qubits are each owned by one party.
struct SharedResource {
  std::vector<BitString> randomness;
  std::optional<qsim::StateVector> entangled;
  std::vector<int> qubit_owner;

  /// Non-empty randomness domain; every entangled qubit has a valid owner.
  void validate(int party_count) const;
};

/// One single-qubit gate a party applies to a register it owns.
struct LocalOp {
  qsim::Gate gate;
  int qubit;

  friend bool operator==(const LocalOp&, const LocalOp&) = default;
};

/// Everything observable about one execution for a fixed input and randomness value.
struct Transcript {
  InputTuple inputs;
  std::size_t randomness_index = 0;
  BitString randomness;
  /// Joint message register for quantum-message protocols.
  std::optional<qsim::StateVector> message;
  /// Distribution over concatenated classical messages (index = big-endian bits).
  std::vector<double> message_distribution;
  /// Entangled state right before the parties' local measurements, if any.
  std::optional<qsim::StateVector> pre_measurement;
  std::vector<double> outcome_distribution;
  std::vector<double> output_distribution;
  Cost cost;
};

/// A k-party simultaneous-message protocol with a referee.
///
/// Implementations build each party's message only from that party's input, the
/// shared randomness and the entangled qubits it owns; run() composes those local
/// maps and hands the joint register to the referee.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string name() const = 0;
  virtual int party_count() const = 0;
  virtual std::vector<int> input_lengths() const = 0;
  virtual const SharedResource& resource() const = 0;
  virtual MessageKind message_kind() const = 0;
  /// Message register size per party, qubits or bits according to message_kind().
  virtual std::vector<int> message_sizes() const = 0;
  virtual int output_count() const = 0;
  virtual std::string output_label(int output) const = 0;
  /// F(inputs), or nullopt when the inputs are outside the promise.
  virtual std::optional<int> reference(const InputTuple& inputs) const = 0;

  virtual Transcript run(const InputTuple& inputs, std::size_t randomness_index) const = 0;
  /// Transcripts for every randomness value, in domain order.
  virtual std::vector<Transcript> run_all(const InputTuple& inputs) const;

  std::size_t randomness_count() const { return resource().randomness.size(); }
  int message_width() const;
  Cost communication_cost() const;
  /// Message register as a density matrix for one transcript.
  qsim::DensityMatrix message_density(const Transcript& transcript) const;
  /// Throws unless each input has the declared width.
  void validate_inputs(const InputTuple& inputs) const;
};

// -- Sum2 -------------------------------------------------------------------

/// Sum_2(x_1..x_k) = (sum_j x_j^1, sum_j x_j^2) over F_2; output label 2*b1 + b2.
std::pair<int, int> sum2_reference(const InputTuple& inputs);

/// GHZ-based Sum_2 protocol. For odd k a virtual party with input 00 is appended
/// and played by the last real party, who then owns two qubits.
class Sum2Protocol final : public Protocol {
 public:
  explicit Sum2Protocol(int k);

  std::string name() const override { return "sum2"; }
  int party_count() const override { return k_; }
  std::vector<int> input_lengths() const override { return std::vector<int>(static_cast<std::size_t>(k_), 2); }
  const SharedResource& resource() const override { return resource_; }
  MessageKind message_kind() const override { return MessageKind::quantum; }
  std::vector<int> message_sizes() const override;
  int output_count() const override { return 4; }
  std::string output_label(int output) const override;
  std::optional<int> reference(const InputTuple& inputs) const override;
  Transcript run(const InputTuple& inputs, std::size_t randomness_index) const override;

  /// Parties after padding (k or k + 1).
  int padded_parties() const { return padded_; }
  /// Gates party `party` applies given only its own input and the shared string.
  std::vector<LocalOp> local_operations(int party, const BitString& input,
                                        const BitString& randomness) const;
  qsim::StateVector message_state(const InputTuple& inputs, std::size_t randomness_index) const;
  /// Decodes a Phi-basis outcome y_1..y_{k-1} z into the output label.
  int decode(std::size_t outcome) const;
  qsim::MeasurementBasis referee_basis() const { return qsim::phi_basis(padded_); }

 private:
  int k_;
  int padded_;
  SharedResource resource_;
};

inline Sum2Protocol sum2_protocol(int k) { return Sum2Protocol(k); }

// -- GEQ_{2l} -----------------------------------------------------------------

/// 1 iff every one of the 2l coordinate sums vanishes over F_2.
int geq_reference(const InputTuple& inputs);

/// p(sum_j a_j) == p(r') p(sum_j x_j) with p(a_j) = p(r') p(x_j); r' must be nonzero.
bool geq_mask_identity_check(const InputTuple& inputs, const BitString& r_prime,
                             const gf2m::Modulus& modulus);

/// l GHZ blocks with the inputs masked by a random nonzero element of GF(2^{2l}).
/// Qubits are party-major: party j owns qubits j*l .. j*l + l - 1.
class GeqProtocol final : public Protocol {
 public:
  GeqProtocol(int k, int l);

  std::string name() const override { return "geq"; }
  int party_count() const override { return k_; }
  std::vector<int> input_lengths() const override {
    return std::vector<int>(static_cast<std::size_t>(k_), 2 * l_);
  }
  const SharedResource& resource() const override { return resource_; }
  MessageKind message_kind() const override { return MessageKind::quantum; }
  std::vector<int> message_sizes() const override;
  int output_count() const override { return 2; }
  std::string output_label(int output) const override { return std::to_string(output); }
  std::optional<int> reference(const InputTuple& inputs) const override;
  Transcript run(const InputTuple& inputs, std::size_t randomness_index) const override;

  int blocks() const { return l_; }
  int padded_parties() const { return padded_; }
  const gf2m::Modulus& modulus() const { return modulus_; }
  /// Qubit index of block `block` of (padded) party `party`.
  int qubit(int party, int block) const { return party * l_ + block; }
  /// Masked string a_j with p(a_j) = p(r') p(x_j).
  BitString masked_input(const BitString& input, const BitString& randomness) const;
  std::vector<LocalOp> local_operations(int party, const BitString& input,
                                        const BitString& randomness) const;
  qsim::StateVector message_state(const InputTuple& inputs, std::size_t randomness_index) const;
  std::vector<std::vector<int>> referee_groups() const;
  qsim::MeasurementBasis referee_basis() const;
  /// Accept (1) iff every block decodes to (0, 0).
  int decode(std::size_t outcome) const;
  /// r^1 .. r^l (each padded_parties() bits) followed by r' (2l bits).
  BitString block_randomness(const BitString& randomness, int block) const;
  BitString mask_randomness(const BitString& randomness) const;

 private:
  int k_;
  int l_;
  int padded_;
  gf2m::Modulus modulus_;
  SharedResource resource_;
};

inline GeqProtocol geq_protocol(int k, int l) { return GeqProtocol(k, l); }

// -- Distributed Deutsch-Jozsa ----------------------------------------------

/// 1 if x = y, 0 if the Hamming distance is n/2, nullopt otherwise.
std::optional<int> dj_reference(const BitString& x, const BitString& y);

/// Two parties share sum_i |i>_A |i>_B / sqrt(n) and the strings r != 0^m, r'.
/// Messages are classical: p(m_A) = p(r) p(K) + p(r'), likewise for m_B with L.
class DjProtocol final : public Protocol {
 public:
  explicit DjProtocol(int n);

  std::string name() const override { return "dj"; }
  int party_count() const override { return 2; }
  std::vector<int> input_lengths() const override { return {n_, n_}; }
  const SharedResource& resource() const override { return resource_; }
  MessageKind message_kind() const override { return MessageKind::classical; }
  std::vector<int> message_sizes() const override { return {m_, m_}; }
  int output_count() const override { return 2; }
  std::string output_label(int output) const override { return std::to_string(output); }
  std::optional<int> reference(const InputTuple& inputs) const override;
  Transcript run(const InputTuple& inputs, std::size_t randomness_index) const override;
  std::vector<Transcript> run_all(const InputTuple& inputs) const override;

  int n() const { return n_; }
  int m() const { return m_; }
  const gf2m::Modulus& modulus() const { return modulus_; }
  /// +-1 phase pattern party `party` imprints on its own m-qubit register.
  std::vector<int> local_phase_signs(int party, const BitString& input) const;
  /// State after the phase oracles and Hadamards, before measuring A and B.
  qsim::StateVector pre_measurement_state(const InputTuple& inputs) const;
  /// Joint distribution of (K, L), index K * n + L.
  std::vector<double> kl_distribution(const InputTuple& inputs) const;
  /// m-bit classical message of a party that measured `outcome`.
  BitString party_message(const BitString& outcome, const BitString& randomness) const;

 private:
  Transcript assemble(const InputTuple& inputs, std::size_t randomness_index,
                      const qsim::StateVector& pre, const std::vector<double>& kl) const;

  int n_;
  int m_;
  gf2m::Modulus modulus_;
  SharedResource resource_;
  /// message_index_[r][outcome]: party_message as an integer, per randomness value.
  std::vector<std::vector<std::uint64_t>> message_index_;
};

inline DjProtocol dj_protocol(int n) { return DjProtocol(n); }

/// All k-bit strings with even weight, ascending by big-endian index.
std::vector<BitString> even_parity_strings(int k);

}  // namespace psqm::protocols
