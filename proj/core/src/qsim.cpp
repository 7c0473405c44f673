#include "psqm/qsim.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace psqm::qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_qubit_count(int q) {
  if (q < 0 || q > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [0, " + std::to_string(kMaxQubits) + "]");
  }
}

std::size_t bit_mask(int qubit_count, int qubit) {
  if (qubit < 0 || qubit >= qubit_count) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(qubit_count) + " qubits");
  }
  return std::size_t{1} << (qubit_count - 1 - qubit);
}

}  // namespace

StateVector::StateVector(int qubit_count, Eigen::VectorXcd amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
  require_qubit_count(qubit_count);
  if (amplitudes_.size() != (Eigen::Index{1} << qubit_count)) {
    throw std::invalid_argument("amplitude count must be 2^qubit_count");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kConstructionTolerance) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::basis(int qubit_count, std::size_t index) {
  require_qubit_count(qubit_count);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubit_count);
  if (index >= static_cast<std::size_t>(v.size())) {
    throw std::out_of_range("basis index out of range");
  }
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {qubit_count, std::move(v)};
}

StateVector ghz(int k) {
  if (k < 1) {
    throw std::invalid_argument("GHZ state needs at least one qubit");
  }
  require_qubit_count(k);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << k);
  v[0] = kInvSqrt2;
  v[v.size() - 1] = kInvSqrt2;
  return {k, std::move(v)};
}

StateVector apply_gate(StateVector state, Gate gate, int qubit) {
  const std::size_t mask = bit_mask(state.qubit_count_, qubit);
  auto& a = state.amplitudes_;
  const auto dim = static_cast<std::size_t>(a.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) != 0) {
      continue;
    }
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | mask);
    switch (gate) {
      case Gate::X:
        std::swap(a[i0], a[i1]);
        break;
      case Gate::Z:
        a[i1] = -a[i1];
        break;
      case Gate::H: {
        const Complex lo = a[i0];
        const Complex hi = a[i1];
        a[i0] = (lo + hi) * kInvSqrt2;
        a[i1] = (lo - hi) * kInvSqrt2;
        break;
      }
    }
  }
  return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
  if (control == target) {
    throw std::invalid_argument("CNOT control and target coincide");
  }
  const std::size_t cmask = bit_mask(state.qubit_count_, control);
  const std::size_t tmask = bit_mask(state.qubit_count_, target);
  auto& a = state.amplitudes_;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.size()); ++i) {
    if ((i & cmask) != 0 && (i & tmask) == 0) {
      std::swap(a[static_cast<Eigen::Index>(i)], a[static_cast<Eigen::Index>(i | tmask)]);
    }
  }
  return state;
}

StateVector apply_phase_oracle(StateVector state, std::span<const int> signs) {
  if (signs.size() != state.dimension()) {
    throw std::invalid_argument("phase oracle length differs from the state dimension");
  }
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == -1) {
      state.amplitudes_[static_cast<Eigen::Index>(i)] *= -1.0;
    } else if (signs[i] != 1) {
      throw std::invalid_argument("phase oracle entries must be +1 or -1");
    }
  }
  return state;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("inner product of states with different dimensions");
  }
  return a.amplitudes().dot(b.amplitudes());
}

bool same_ray(const StateVector& a, const StateVector& b, double tol) {
  return std::abs(std::norm(inner_product(a, b)) - 1.0) <= tol;
}

MeasurementBasis::MeasurementBasis(std::vector<StateVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) {
    throw std::invalid_argument("measurement basis is empty");
  }
  const auto dim = vectors_.front().dimension();
  if (vectors_.size() != dim) {
    throw std::invalid_argument("measurement basis must contain 2^q vectors");
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].dimension() != dim) {
      throw std::invalid_argument("measurement basis vectors differ in dimension");
    }
    for (std::size_t j = i + 1; j < vectors_.size(); ++j) {
      if (std::abs(inner_product(vectors_[i], vectors_[j])) > kDerivedTolerance) {
        throw std::invalid_argument("measurement basis vectors are not orthogonal");
      }
    }
  }
}

MeasurementBasis phi_basis(int k) {
  if (k < 2) {
    throw std::invalid_argument("phi basis needs k >= 2");
  }
  require_qubit_count(k);
  const std::size_t dim = std::size_t{1} << k;
  const std::size_t y_mask = (dim >> 1) - 1;
  std::vector<StateVector> vectors;
  vectors.reserve(dim);
  for (std::size_t index = 0; index < dim; ++index) {
    const std::size_t y = index >> 1;
    const int z = static_cast<int>(index & 1U);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(y << 1)] = kInvSqrt2;
    v[static_cast<Eigen::Index>(((~y & y_mask) << 1) | 1U)] = (z == 0 ? 1.0 : -1.0) * kInvSqrt2;
    vectors.emplace_back(k, std::move(v));
  }
  return MeasurementBasis(std::move(vectors));
}

namespace {

int total_group_qubits(const std::vector<std::vector<int>>& groups) {
  int total = 0;
  for (const auto& g : groups) {
    total += static_cast<int>(g.size());
  }
  return total;
}

void require_partition(const std::vector<std::vector<int>>& groups, int qubit_count) {
  std::vector<int> seen(static_cast<std::size_t>(qubit_count), 0);
  for (const auto& g : groups) {
    for (int q : g) {
      if (q < 0 || q >= qubit_count || seen[static_cast<std::size_t>(q)]++ != 0) {
        throw std::invalid_argument("qubit groups must partition the register");
      }
    }
  }
  if (total_group_qubits(groups) != qubit_count) {
    throw std::invalid_argument("qubit groups must partition the register");
  }
}

// Bits of `index` at the listed qubits, first listed qubit most significant.
std::size_t gather_bits(std::size_t index, int qubit_count, const std::vector<int>& qubits) {
  std::size_t out = 0;
  for (int q : qubits) {
    out = (out << 1) | ((index >> (qubit_count - 1 - q)) & 1U);
  }
  return out;
}

}  // namespace

MeasurementBasis block_basis(const MeasurementBasis& block,
                             const std::vector<std::vector<int>>& groups) {
  const int per_block = block.qubit_count();
  for (const auto& g : groups) {
    if (static_cast<int>(g.size()) != per_block) {
      throw std::invalid_argument("every qubit group must match the block size");
    }
  }
  const int q = total_group_qubits(groups);
  require_qubit_count(q);
  require_partition(groups, q);
  const std::size_t dim = std::size_t{1} << q;
  const std::size_t block_dim = block.size();

  std::vector<StateVector> vectors;
  vectors.reserve(dim);
  for (std::size_t outcome = 0; outcome < dim; ++outcome) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (std::size_t idx = 0; idx < dim; ++idx) {
      Complex amp = 1.0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t shift = (groups.size() - 1 - g) * static_cast<std::size_t>(per_block);
        const std::size_t block_outcome = (outcome >> shift) & (block_dim - 1);
        amp *= block[block_outcome].amplitude(gather_bits(idx, q, groups[g]));
        if (amp == Complex{0.0}) {
          break;
        }
      }
      v[static_cast<Eigen::Index>(idx)] = amp;
    }
    vectors.emplace_back(q, std::move(v));
  }
  return MeasurementBasis(std::move(vectors));
}

std::vector<double> measure(const StateVector& state, const MeasurementBasis& basis) {
  if (basis.vectors().front().dimension() != state.dimension()) {
    throw std::invalid_argument("measurement basis dimension differs from the state");
  }
  std::vector<double> probabilities(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    probabilities[i] = std::norm(inner_product(basis[i], state));
  }
  return probabilities;
}

std::vector<double> measure_computational(const StateVector& state) {
  std::vector<double> probabilities(state.dimension());
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    probabilities[i] = std::norm(state.amplitude(i));
  }
  return probabilities;
}

std::vector<double> measure_phi_groups(StateVector state,
                                       const std::vector<std::vector<int>>& groups) {
  const int q = state.qubit_count();
  require_partition(groups, q);
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw std::invalid_argument("phi measurement groups need at least two qubits");
    }
    const int last = g.back();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      state = apply_cnot(std::move(state), last, g[i]);
    }
    state = apply_gate(std::move(state), Gate::H, last);
  }
  const auto computational = measure_computational(state);
  std::vector<double> outcomes(computational.size(), 0.0);
  for (std::size_t idx = 0; idx < computational.size(); ++idx) {
    std::size_t outcome = 0;
    for (const auto& g : groups) {
      outcome = (outcome << g.size()) | gather_bits(idx, q, g);
    }
    outcomes[outcome] += computational[idx];
  }
  return outcomes;
}

DensityMatrix::DensityMatrix(int qubit_count, Eigen::MatrixXcd entries, Trusted)
    : qubit_count_(qubit_count), entries_(std::move(entries)) {}

DensityMatrix::DensityMatrix(int qubit_count, Eigen::MatrixXcd entries)
    : qubit_count_(qubit_count), entries_(std::move(entries)) {
  require_qubit_count(qubit_count);
  const Eigen::Index dim = Eigen::Index{1} << qubit_count;
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("density matrix must be 2^q x 2^q");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kConstructionTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex{1.0}) > kConstructionTolerance) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  if (min_eigenvalue() < -kDerivedTolerance) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::projector(const StateVector& state) {
  const auto& v = state.amplitudes();
  return {state.qubit_count(), v * v.adjoint(), Trusted{}};
}

DensityMatrix DensityMatrix::diagonal(int qubit_count, std::span<const double> probabilities) {
  require_qubit_count(qubit_count);
  if (probabilities.size() != (std::size_t{1} << qubit_count)) {
    throw std::invalid_argument("distribution length must be 2^q");
  }
  double total = 0.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(probabilities.size()),
                                              static_cast<Eigen::Index>(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] < 0.0) {
      throw std::invalid_argument("negative probability");
    }
    total += probabilities[i];
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probabilities[i];
  }
  if (std::abs(total - 1.0) > kConstructionTolerance) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
  return {qubit_count, std::move(m), Trusted{}};
}

namespace {
template <typename Item, typename Weight>
void require_weights(std::span<const Item> ensemble, Weight weight_of) {
  if (ensemble.empty()) {
    throw std::invalid_argument("empty ensemble");
  }
  double total = 0.0;
  for (const auto& item : ensemble) {
    if (weight_of(item) < 0.0) {
      throw std::invalid_argument("negative ensemble weight");
    }
    total += weight_of(item);
  }
  if (std::abs(total - 1.0) > kConstructionTolerance) {
    throw std::invalid_argument("ensemble weights do not sum to 1");
  }
}
}  // namespace

DensityMatrix mix(std::span<const WeightedState> ensemble) {
  require_weights(ensemble, [](const WeightedState& w) { return w.weight; });
  const int q = ensemble.front().state.qubit_count();
  const auto dim = static_cast<Eigen::Index>(ensemble.front().state.dimension());
  // Columns sqrt(w_i) |psi_i>; rho = A A^dagger as one product.
  Eigen::MatrixXcd a(dim, static_cast<Eigen::Index>(ensemble.size()));
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto& item = ensemble[i];
    if (item.state.qubit_count() != q) {
      throw std::invalid_argument("ensemble states differ in qubit count");
    }
    a.col(static_cast<Eigen::Index>(i)) = std::sqrt(item.weight) * item.state.amplitudes();
  }
  Eigen::MatrixXcd m(dim, dim);
  m.noalias() = a * a.adjoint();
  return {q, std::move(m), DensityMatrix::Trusted{}};
}

DensityMatrix mix_density(std::span<const WeightedDensity> ensemble) {
  require_weights(ensemble, [](const WeightedDensity& w) { return w.weight; });
  const int q = ensemble.front().rho.qubit_count();
  const auto dim = static_cast<Eigen::Index>(ensemble.front().rho.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& item : ensemble) {
    if (item.rho.qubit_count() != q) {
      throw std::invalid_argument("ensemble states differ in qubit count");
    }
    m.noalias() += item.weight * item.rho.entries();
  }
  return {q, std::move(m), DensityMatrix::Trusted{}};
}

double purity(const DensityMatrix& rho) { return rho.entries().squaredNorm(); }

namespace {
void require_same_dimension(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("density matrices differ in dimension");
  }
}
}  // namespace

double matrix_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dimension(a, b);
  return (a.entries() - b.entries()).norm();
}

double product_norm(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dimension(a, b);
  return (a.entries() * b.entries()).norm();
}

double trace_product(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dimension(a, b);
  return (a.entries().array() * b.entries().array().conjugate()).sum().real();
}

}  // namespace psqm::qsim
