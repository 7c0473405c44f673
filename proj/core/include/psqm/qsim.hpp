#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace psqm::qsim {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kDerivedTolerance = 1e-10;

enum class Gate { X, Z, H };

struct WeightedState;
struct WeightedDensity;

/// Pure state on q qubits. Qubit 0 is the leftmost tensor factor, so basis
/// index bit (q - 1 - i) holds qubit i.
class StateVector {
 public:
  /// Throws unless the squared norm is 1 within 1e-12.
  StateVector(int qubit_count, Eigen::VectorXcd amplitudes);

  static StateVector basis(int qubit_count, std::size_t index);

  int qubit_count() const { return qubit_count_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

 private:
  friend StateVector apply_gate(StateVector, Gate, int);
  friend StateVector apply_cnot(StateVector, int, int);
  friend StateVector apply_phase_oracle(StateVector, std::span<const int>);

  int qubit_count_;
  Eigen::VectorXcd amplitudes_;
};

/// (|0^k> + |1^k>) / sqrt(2).
StateVector ghz(int k);

StateVector apply_gate(StateVector state, Gate gate, int qubit);
StateVector apply_cnot(StateVector state, int control, int target);
/// Multiplies the amplitude of basis state i by signs[i] (each +1 or -1).
StateVector apply_phase_oracle(StateVector state, std::span<const int> signs);

/// <a|b>.
Complex inner_product(const StateVector& a, const StateVector& b);
/// |<a|b>|^2 = 1 within tol, i.e. equal up to a global phase.
bool same_ray(const StateVector& a, const StateVector& b, double tol = kDerivedTolerance);

/// Orthonormal basis of the full register; the induced measurement is a PVM.
class MeasurementBasis {
 public:
  /// Throws unless the vectors number 2^q and are orthonormal within 1e-10.
  explicit MeasurementBasis(std::vector<StateVector> vectors);

  std::size_t size() const { return vectors_.size(); }
  int qubit_count() const { return vectors_.front().qubit_count(); }
  const StateVector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<StateVector>& vectors() const { return vectors_; }

 private:
  std::vector<StateVector> vectors_;
};

/// The 2^k vectors (|y,0> + (-1)^z |~y,1>)/sqrt(2), vector index = bits y_1..y_{k-1} z.
MeasurementBasis phi_basis(int k);

/// Places one copy of `block` on each qubit group of a larger register. Outcome
/// index concatenates the per-block outcomes, first group most significant.
MeasurementBasis block_basis(const MeasurementBasis& block,
                             const std::vector<std::vector<int>>& groups);

/// Outcome probabilities |<b_i|psi>|^2.
std::vector<double> measure(const StateVector& state, const MeasurementBasis& basis);
std::vector<double> measure_computational(const StateVector& state);

/// Same distribution as measure(state, block_basis(phi_basis(k), groups)), computed
/// by the disentangling circuit (CNOT from the last qubit of each group onto the
/// others, then H on the last qubit) followed by a computational measurement.
std::vector<double> measure_phi_groups(StateVector state,
                                       const std::vector<std::vector<int>>& groups);

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Checks Hermiticity and trace (1e-12) and PSD (smallest eigenvalue >= -1e-10).
  DensityMatrix(int qubit_count, Eigen::MatrixXcd entries);

  int qubit_count() const { return qubit_count_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  double min_eigenvalue() const;

  static DensityMatrix projector(const StateVector& state);
  /// Classical distribution embedded on the diagonal.
  static DensityMatrix diagonal(int qubit_count, std::span<const double> probabilities);

 private:
  struct Trusted {};
  DensityMatrix(int qubit_count, Eigen::MatrixXcd entries, Trusted);
  friend DensityMatrix mix(std::span<const WeightedState>);
  friend DensityMatrix mix_density(std::span<const WeightedDensity>);

  int qubit_count_;
  Eigen::MatrixXcd entries_;
};

struct WeightedState {
  double weight;
  StateVector state;
};

struct WeightedDensity {
  double weight;
  DensityMatrix rho;
};

/// sum_i w_i |psi_i><psi_i|; weights non-negative and summing to 1 within 1e-12.
DensityMatrix mix(std::span<const WeightedState> ensemble);
DensityMatrix mix_density(std::span<const WeightedDensity> ensemble);

/// tr(rho^2).
double purity(const DensityMatrix& rho);
/// Frobenius norm of a - b.
double matrix_distance(const DensityMatrix& a, const DensityMatrix& b);
/// Frobenius norm of the product a b; zero iff the supports are orthogonal.
double product_norm(const DensityMatrix& a, const DensityMatrix& b);
/// tr(a b), real for Hermitian arguments.
double trace_product(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace psqm::qsim
