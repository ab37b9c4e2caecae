#pragma once

#include <array>
#include <string>
#include <vector>

#include "mwwyd/cmatrix.hpp"

// Basis convention: |0> = (1,0)^T, |1> = (0,1)^T, Pauli matrices in the
// standard representation. The placement of entries in the Kraus operators
// below depends on it.
namespace mwwyd {

inline constexpr double kCompletenessTolerance = 1e-8;
inline constexpr double kUnitaryTolerance = 1e-10;

// Hermitian, unit-trace, positive semidefinite matrix. The spectrum is
// computed once at construction and kept for later matrix powers.
class DensityMatrix {
 public:
  // Throws NotHermitianError, NotPositiveSemidefiniteError or DomainError
  // (trace) when the matrix is not a valid state.
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const { return mat_; }
  const EigenDecomposition& spectrum() const { return eig_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
  EigenDecomposition eig_;
};

class KrausChannel {
 public:
  // Throws ChannelError when the completeness relation fails by more than
  // kCompletenessTolerance, DimensionError on mixed dimensions.
  KrausChannel(std::string name, std::vector<ComplexMatrix> ops);

  const std::string& name() const { return name_; }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  std::size_t dim() const { return ops_.front().dim(); }

 private:
  std::string name_;
  std::vector<ComplexMatrix> ops_;
};

class UnitaryOp {
 public:
  // Throws ChannelError if U^dag U deviates from I by more than
  // kUnitaryTolerance entrywise.
  explicit UnitaryOp(ComplexMatrix mat);

  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

// max_ij |(sum_i E_i^dag E_i - I)_ij|. Throws DimensionError on mixed dims.
double completeness_deviation(const std::vector<ComplexMatrix>& ops);

KrausChannel validate_channel(std::vector<ComplexMatrix> ops, std::string name = "channel");

// (I + r.sigma)/2. Throws DomainError when |r| > 1 + 1e-12.
DensityMatrix bloch_state(const std::array<double, 3>& r);

// r = radius * (cos theta, sin theta, 0): the equatorial states of the
// worked examples.
DensityMatrix equatorial_state(double radius, double theta);

// Damping families, 0 <= q < 1 (DomainError otherwise).
//   amplitude damping: A1 = |0><0| + sqrt(1-q)|1><1|, A2 = sqrt(q)|1><1|
//   phase damping:     B1 = |0><0| + sqrt(1-q)|1><1|, B2 = sqrt(q)|0><1|
//   bit flip:          C1 = sqrt(q) I,                C2 = sqrt(1-q) sigma_1
// The amplitude-damping A2 is the diagonal operator, not the usual
// |0><1| decay operator; both satisfy completeness.
KrausChannel amplitude_damping(double q);
KrausChannel phase_damping(double q);
KrausChannel bit_flip(double q);

// exp(i angle sigma_axis) = cos(angle) I + i sin(angle) sigma_axis.
UnitaryOp pauli_rotation(int axis, double angle);

// diag(e^{i pi/8}, -e^{i pi/8}), the alternative z-rotation matrix kept for
// comparison with pauli_rotation(3, pi/8).
UnitaryOp printed_z_rotation();

}  // namespace mwwyd
