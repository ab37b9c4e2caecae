#include "mwwyd/skewinfo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mwwyd/errors.hpp"

namespace mwwyd {
namespace {

constexpr double kParamSlack = 1e-12;

void require_dim(std::size_t expected, std::size_t got, const char* who) {
  if (expected != got) {
    throw DimensionError(std::string(who) + ": operator is " + std::to_string(got) + "x" +
                         std::to_string(got) + " but the state is " + std::to_string(expected) +
                         "x" + std::to_string(expected));
  }
}

}  // namespace

SkewParams::SkewParams(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  const bool ok = alpha >= 0.0 && beta >= 0.0 && alpha + beta <= 1.0 + kParamSlack &&
                  gamma >= 0.0 && gamma <= 1.0;
  if (!ok) {
    throw DomainError("skew parameters out of domain (alpha=" + std::to_string(alpha) +
                      ", beta=" + std::to_string(beta) + ", gamma=" + std::to_string(gamma) +
                      "); need alpha, beta >= 0, alpha + beta <= 1, 0 <= gamma <= 1");
  }
}

double SkewParams::trailing_exponent() const {
  return std::max(0.0, (1.0 - alpha_ - beta_) / 2.0);
}

WeightedOperatorCache::WeightedOperatorCache(const DensityMatrix& rho, const SkewParams& params)
    : w_(matrix_power(rho.spectrum(), params.alpha()) * (1.0 - params.gamma()) +
         matrix_power(rho.spectrum(), params.beta()) * params.gamma()),
      p_(matrix_power(rho.spectrum(), params.trailing_exponent())) {}

double WeightedOperatorCache::skew_info(const ComplexMatrix& e) const {
  require_dim(dim(), e.dim(), "skew_info");
  return 0.5 * hs_norm_sq(commutator(w_, e) * p_);
}

WeightedOperatorCache weighted_ops(const DensityMatrix& rho, const SkewParams& params) {
  return WeightedOperatorCache(rho, params);
}

double skew_info_op(const DensityMatrix& rho, const ComplexMatrix& e, const SkewParams& params) {
  return WeightedOperatorCache(rho, params).skew_info(e);
}

double skew_info_channel(const WeightedOperatorCache& cache, const KrausChannel& channel) {
  double acc = 0.0;
  for (const auto& e : channel.ops()) acc += cache.skew_info(e);
  return acc;
}

double skew_info_channel(const DensityMatrix& rho, const KrausChannel& channel,
                         const SkewParams& params) {
  return skew_info_channel(WeightedOperatorCache(rho, params), channel);
}

double skew_info_unitary(const DensityMatrix& rho, const UnitaryOp& u, const SkewParams& params) {
  return skew_info_op(rho, u.matrix(), params);
}

double skew_info_trace_form(const DensityMatrix& rho, const ComplexMatrix& e,
                            const SkewParams& params) {
  require_dim(rho.dim(), e.dim(), "skew_info_trace_form");
  const WeightedOperatorCache cache(rho, params);
  const double full = std::max(0.0, 1.0 - params.alpha() - params.beta());
  const ComplexMatrix tail = matrix_power(rho.spectrum(), full);
  const ComplexMatrix& w = cache.weighted();
  return -0.5 * (commutator(w, adjoint(e)) * commutator(w, e) * tail).trace().real();
}

double skew_info_channel_stacked(const DensityMatrix& rho, const KrausChannel& channel,
                                 const SkewParams& params) {
  require_dim(rho.dim(), channel.dim(), "skew_info_channel_stacked");
  const WeightedOperatorCache cache(rho, params);
  const std::size_t d = rho.dim();
  const std::size_t n = channel.size();
  // d rows, n*d columns; block k occupies columns [k*d, (k+1)*d).
  std::vector<Complex> u(d * n * d);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix block = commutator(cache.weighted(), channel.ops()[k]) * cache.trailing();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) u[i * n * d + k * d + j] = block(i, j);
  }
  double acc = 0.0;
  for (const auto& z : u) acc += std::norm(z);
  return 0.5 * acc;
}

}  // namespace mwwyd
