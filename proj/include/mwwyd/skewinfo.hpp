#pragma once

#include "mwwyd/cmatrix.hpp"
#include "mwwyd/quantum.hpp"

namespace mwwyd {

// (alpha, beta, gamma) with alpha, beta >= 0, alpha + beta <= 1 and
// 0 <= gamma <= 1. Construction validates and throws DomainError.
class SkewParams {
 public:
  SkewParams(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  // (1 - alpha - beta) / 2, clamped at 0.
  double trailing_exponent() const;

 private:
  double alpha_;
  double beta_;
  double gamma_;
};

// W = (1-gamma) rho^alpha + gamma rho^beta and P = rho^((1-alpha-beta)/2),
// built from the one spectrum stored in the DensityMatrix. Immutable after
// construction; share it across every operator evaluated in the same state.
class WeightedOperatorCache {
 public:
  WeightedOperatorCache(const DensityMatrix& rho, const SkewParams& params);

  const ComplexMatrix& weighted() const { return w_; }
  const ComplexMatrix& trailing() const { return p_; }
  std::size_t dim() const { return w_.dim(); }

  // K(E) = 1/2 || [W, E] P ||^2
  double skew_info(const ComplexMatrix& e) const;

 private:
  ComplexMatrix w_;
  ComplexMatrix p_;
};

WeightedOperatorCache weighted_ops(const DensityMatrix& rho, const SkewParams& params);

double skew_info_op(const DensityMatrix& rho, const ComplexMatrix& e, const SkewParams& params);
double skew_info_channel(const DensityMatrix& rho, const KrausChannel& channel,
                         const SkewParams& params);
double skew_info_channel(const WeightedOperatorCache& cache, const KrausChannel& channel);
double skew_info_unitary(const DensityMatrix& rho, const UnitaryOp& u, const SkewParams& params);

// Cross-checks; the runtime path never uses these.

// -1/2 Tr([W, E^dag][W, E] rho^(1-alpha-beta)), real part.
double skew_info_trace_form(const DensityMatrix& rho, const ComplexMatrix& e,
                            const SkewParams& params);

// 1/2 ||u||^2 for the block row u = ([W,E_1]P, ..., [W,E_n]P).
double skew_info_channel_stacked(const DensityMatrix& rho, const KrausChannel& channel,
                                 const SkewParams& params);

}  // namespace mwwyd
