#include "mwwyd/quantum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mwwyd/errors.hpp"

namespace mwwyd {
namespace {

std::string sig3(double value) {
  std::ostringstream os;
  os.precision(3);
  os << value;
  return os.str();
}

void require_damping_strength(double q, const char* who) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw DomainError(std::string(who) + ": q must satisfy 0 <= q < 1, got " + std::to_string(q));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (!mat_.is_finite()) throw DomainError("density matrix: non-finite entry");
  const double asym = hermitian_asymmetry(mat_);
  if (asym > kHermitianTolerance) {
    throw NotHermitianError("density matrix: not Hermitian (max asymmetry " + sig3(asym) + ")");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > kHermitianTolerance) {
    throw DomainError("density matrix: trace " + sig3(tr.real()) + " != 1");
  }
  eig_ = eig_hermitian(mat_);
  const double smallest = eig_.eigenvalues.back();
  if (smallest < -kPsdTolerance) {
    throw NotPositiveSemidefiniteError("density matrix: not positive semidefinite (eigenvalue " +
                                       sig3(smallest) + ")");
  }
}

double completeness_deviation(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw ChannelError("channel: at least one Kraus operator is required");
  const std::size_t dim = ops.front().dim();
  ComplexMatrix acc(dim);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].dim() != dim) {
      throw DimensionError("channel: Kraus operator " + std::to_string(k) + " is " +
                           std::to_string(ops[k].dim()) + "x" + std::to_string(ops[k].dim()) +
                           ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    acc += adjoint(ops[k]) * ops[k];
  }
  return max_abs_diff(acc, ComplexMatrix::identity(dim));
}

KrausChannel::KrausChannel(std::string name, std::vector<ComplexMatrix> ops)
    : name_(std::move(name)), ops_(std::move(ops)) {
  const double dev = completeness_deviation(ops_);
  if (dev > kCompletenessTolerance) {
    throw ChannelError("channel '" + name_ + "': completeness violated, max deviation " + sig3(dev));
  }
}

KrausChannel validate_channel(std::vector<ComplexMatrix> ops, std::string name) {
  return KrausChannel(std::move(name), std::move(ops));
}

UnitaryOp::UnitaryOp(ComplexMatrix mat) : mat_(std::move(mat)) {
  const double dev = max_abs_diff(adjoint(mat_) * mat_, ComplexMatrix::identity(mat_.dim()));
  if (dev > kUnitaryTolerance) {
    throw ChannelError("unitary: U^dag U deviates from I by " + sig3(dev));
  }
}

DensityMatrix bloch_state(const std::array<double, 3>& r) {
  const double len = std::hypot(r[0], r[1], r[2]);
  if (!(len <= 1.0 + 1e-12)) {
    throw DomainError("Bloch vector outside unit ball (|r| = " + std::to_string(len) + ")");
  }
  ComplexMatrix rho = ComplexMatrix::identity(2);
  for (int axis = 1; axis <= 3; ++axis) rho += pauli(axis) * r[axis - 1];
  return DensityMatrix(rho * 0.5);
}

DensityMatrix equatorial_state(double radius, double theta) {
  return bloch_state({radius * std::cos(theta), radius * std::sin(theta), 0.0});
}

KrausChannel amplitude_damping(double q) {
  require_damping_strength(q, "amplitude_damping");
  return KrausChannel("amplitude_damping",
                      {ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - q)}),
                       ComplexMatrix::diagonal({0.0, std::sqrt(q)})});
}

KrausChannel phase_damping(double q) {
  require_damping_strength(q, "phase_damping");
  return KrausChannel("phase_damping", {ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - q)}),
                                        ComplexMatrix{{0.0, std::sqrt(q)}, {0.0, 0.0}}});
}

KrausChannel bit_flip(double q) {
  require_damping_strength(q, "bit_flip");
  return KrausChannel("bit_flip", {ComplexMatrix::identity(2) * std::sqrt(q),
                                   pauli(1) * std::sqrt(1.0 - q)});
}

UnitaryOp pauli_rotation(int axis, double angle) {
  const Complex i{0.0, 1.0};
  return UnitaryOp(ComplexMatrix::identity(2) * std::cos(angle) +
                   pauli(axis) * (i * std::sin(angle)));
}

UnitaryOp printed_z_rotation() {
  const Complex e = std::polar(1.0, std::numbers::pi / 8.0);
  return UnitaryOp(ComplexMatrix{{e, 0.0}, {0.0, -e}});
}

}  // namespace mwwyd
