#include "mwwyd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mwwyd/errors.hpp"

namespace mwwyd {
namespace {

constexpr double kTieTolerance = 1e-12;

double root(double value) {
  // Skew information is a squared norm; tiny negatives can only come from
  // rounding.
  if (value < 0.0 && value >= -1e-12) return 0.0;
  return std::sqrt(value);
}

std::size_t pair_count(std::size_t n_channels) { return n_channels * (n_channels - 1) / 2; }

std::uint64_t factorial_saturating(std::size_t n) {
  std::uint64_t out = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    if (out > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= k;
  }
  return out;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

void require_valid_tuple(const PermutationTuple& tuple, std::size_t channels, std::size_t n) {
  if (tuple.perms.size() != channels) {
    throw DimensionError("permutation tuple has " + std::to_string(tuple.perms.size()) +
                         " entries for " + std::to_string(channels) + " channels");
  }
  for (const auto& perm : tuple.perms) {
    std::vector<bool> seen(n, false);
    if (perm.size() != n) throw DomainError("permutation has wrong length");
    for (std::size_t v : perm) {
      if (v >= n || seen[v]) throw DomainError("permutation tuple entry is not a bijection");
      seen[v] = true;
    }
  }
}

std::vector<int> signs_for(SignPolicy policy) {
  switch (policy) {
    case SignPolicy::kPlus: return {0};
    case SignPolicy::kMinus: return {1};
    case SignPolicy::kMaxOverBoth: return {0, 1};
  }
  return {0, 1};
}

// Running maximum that keeps the first candidate attaining the maximum to
// within kTieTolerance.
struct Best {
  bool set = false;
  BoundResult result;

  void offer(double value, const PermutationTuple& tuple, std::optional<int> sign) {
    if (!set || value > result.value + kTieTolerance) {
      set = true;
      result.value = value;
      result.argmax = tuple;
      result.sign = sign;
    }
  }
};

enum class Which { kLb1, kLb2, kLb3, kOb1, kOb2, kOb3 };

BoundResult maximize(const ChannelBoundContext& ctx, const BoundOptions& options, Which which) {
  if ((which == Which::kLb1 || which == Which::kOb1) && ctx.channel_count() <= 2) {
    throw DomainError(which == Which::kLb1 ? "LB1 requires N > 2" : "OB1 requires N > 2");
  }
  const auto signs = signs_for(options.sign);
  Best best;
  for (TupleEnumerator it(ctx.kraus_count(), ctx.channel_count(), options.cap); !it.done();
       it.advance()) {
    const TupleValues v = ctx.evaluate(it.current());
    switch (which) {
      case Which::kLb1: best.offer(*v.lb1, it.current(), std::nullopt); break;
      case Which::kOb1: best.offer(*v.ob1, it.current(), std::nullopt); break;
      case Which::kLb2: best.offer(v.lb2, it.current(), std::nullopt); break;
      case Which::kOb2: best.offer(v.ob2, it.current(), std::nullopt); break;
      case Which::kLb3:
        for (int x : signs) best.offer(v.lb3[x], it.current(), x);
        break;
      case Which::kOb3:
        for (int x : signs) best.offer(v.ob3[x], it.current(), x);
        break;
    }
  }
  return best.result;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::uint64_t tuple_count(std::size_t n, std::size_t channels) {
  const std::uint64_t per = factorial_saturating(n);
  std::uint64_t out = 1;
  for (std::size_t k = 1; k < channels; ++k) {
    if (per != 0 && out > std::numeric_limits<std::uint64_t>::max() / per) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= per;
  }
  return out;
}

TupleEnumerator::TupleEnumerator(std::size_t n, std::size_t channels, std::uint64_t cap) {
  if (n < 1) throw DomainError("tuple enumeration needs n >= 1");
  if (channels < 2) throw DomainError("tuple enumeration needs at least 2 channels");
  count_ = tuple_count(n, channels);
  if (count_ > cap) {
    throw EnumerationCapError("permutation search needs (" + std::to_string(n) + "!)^" +
                              std::to_string(channels - 1) + " tuples, above the cap of " +
                              std::to_string(cap) + "; raise the cap (--cap) to run it");
  }
  Permutation p = identity_permutation(n);
  do {
    all_perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  digits_.assign(channels - 1, 0);
  current_.perms.assign(channels, all_perms_.front());
}

void TupleEnumerator::advance() {
  if (done_) return;
  for (std::size_t k = digits_.size(); k-- > 0;) {
    if (++digits_[k] < all_perms_.size()) {
      current_.perms[k + 1] = all_perms_[digits_[k]];
      return;
    }
    digits_[k] = 0;
    current_.perms[k + 1] = all_perms_.front();
  }
  done_ = true;
}

std::vector<PermutationTuple> enumerate_tuples(std::size_t n, std::size_t channels,
                                               std::uint64_t cap) {
  std::vector<PermutationTuple> out;
  for (TupleEnumerator it(n, channels, cap); !it.done(); it.advance()) out.push_back(it.current());
  return out;
}

std::string to_string(SignPolicy policy) {
  switch (policy) {
    case SignPolicy::kPlus: return "plus";
    case SignPolicy::kMinus: return "minus";
    case SignPolicy::kMaxOverBoth: return "max";
  }
  return "?";
}

SignPolicy parse_sign_policy(const std::string& text) {
  if (text == "plus") return SignPolicy::kPlus;
  if (text == "minus") return SignPolicy::kMinus;
  if (text == "max") return SignPolicy::kMaxOverBoth;
  throw DomainError("unknown sign policy '" + text + "' (expected plus, minus or max)");
}

ChannelBoundContext::ChannelBoundContext(const DensityMatrix& rho,
                                         std::span<const KrausChannel> channels,
                                         const SkewParams& params)
    : cache_(rho, params) {
  if (channels.size() < 2) throw DomainError("channel bounds need at least 2 channels");
  for (const auto& ch : channels) {
    if (ch.dim() != rho.dim()) {
      throw DimensionError("channel '" + ch.name() + "' acts on dimension " +
                           std::to_string(ch.dim()) + " but the state has dimension " +
                           std::to_string(rho.dim()));
    }
    n_ = std::max(n_, ch.size());
  }
  for (const auto& ch : channels) {
    auto ops = ch.ops();
    ops.resize(n_, ComplexMatrix::zero(rho.dim()));
    sum_ += skew_info_channel(cache_, ch);
    ops_.push_back(std::move(ops));
  }

  const std::size_t big_n = ops_.size();
  pair_cache_.reserve(pair_count(big_n));
  for (std::size_t t = 0; t < big_n; ++t)
    for (std::size_t s = t + 1; s < big_n; ++s) {
      std::vector<std::array<double, 2>> table(n_ * n_);
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) {
          table[a * n_ + b][0] = cache_.skew_info(ops_[t][a] + ops_[s][b]);
          table[a * n_ + b][1] = cache_.skew_info(ops_[t][a] - ops_[s][b]);
        }
      pair_cache_.push_back(std::move(table));
    }
}

double ChannelBoundContext::pair_value(std::size_t t, std::size_t s, std::size_t a, std::size_t b,
                                       int sign) const {
  const std::size_t big_n = ops_.size();
  // index of (t, s), t < s, in row-major upper-triangle order
  const std::size_t idx = t * big_n - t * (t + 1) / 2 + (s - t - 1);
  return pair_cache_[idx][a * n_ + b][sign];
}

TupleValues ChannelBoundContext::evaluate(const PermutationTuple& tuple) const {
  const std::size_t big_n = ops_.size();
  require_valid_tuple(tuple, big_n, n_);
  const double nn = static_cast<double>(big_n);
  const auto& pi = tuple.perms;

  // Per sign: total over pairs and indices, sum over pairs of sqrt(total
  // over indices), and sum over indices of (sum over pairs of sqrt)^2.
  std::array<double, 2> linear{};
  std::array<double, 2> root_of_sums{};
  std::array<double, 2> per_index_squares{};
  for (int sign = 0; sign < 2; ++sign) {
    std::vector<double> per_index_roots(n_, 0.0);
    for (std::size_t t = 0; t < big_n; ++t)
      for (std::size_t s = t + 1; s < big_n; ++s) {
        double pair_total = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
          const double k = pair_value(t, s, pi[t][i], pi[s][i], sign);
          pair_total += k;
          per_index_roots[i] += root(k);
        }
        linear[sign] += pair_total;
        root_of_sums[sign] += root(pair_total);
      }
    for (double r : per_index_roots) per_index_squares[sign] += r * r;
  }

  double collective = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    ComplexMatrix total = ops_[0][pi[0][i]];
    for (std::size_t t = 1; t < big_n; ++t) total += ops_[t][pi[t][i]];
    collective += cache_.skew_info(total);
  }

  TupleValues out;
  if (big_n > 2) {
    const double pre = 1.0 / (nn - 2.0);
    const double sub = 1.0 / ((nn - 1.0) * (nn - 1.0));
    out.lb1 = pre * (linear[0] - sub * root_of_sums[0] * root_of_sums[0]);
    out.ob1 = pre * (linear[0] - sub * per_index_squares[0]);
  }
  const double diff_weight = 2.0 / (nn * nn * (nn - 1.0));
  out.lb2 = collective / nn + diff_weight * root_of_sums[1] * root_of_sums[1];
  out.ob2 = collective / nn + diff_weight * per_index_squares[1];

  const double pre3 = 1.0 / (2.0 * (nn - 1.0));
  const double w3 = 2.0 / (nn * (nn - 1.0));
  for (int x = 0; x < 2; ++x) {
    const int other = 1 - x;
    out.lb3[x] = pre3 * (linear[x] + w3 * root_of_sums[other] * root_of_sums[other]);
    out.ob3[x] = pre3 * (linear[x] + w3 * per_index_squares[other]);
  }
  return out;
}

BoundResult lb1(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options) {
  if (channels.size() <= 2) throw DomainError("LB1 requires N > 2");
  return maximize(ChannelBoundContext(rho, channels, params), options, Which::kLb1);
}

BoundResult lb2(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options) {
  return maximize(ChannelBoundContext(rho, channels, params), options, Which::kLb2);
}

BoundResult lb3(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options) {
  return maximize(ChannelBoundContext(rho, channels, params), options, Which::kLb3);
}

BoundResult ob1(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options) {
  if (channels.size() <= 2) throw DomainError("OB1 requires N > 2");
  return maximize(ChannelBoundContext(rho, channels, params), options, Which::kOb1);
}

BoundResult ob2(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options) {
  return maximize(ChannelBoundContext(rho, channels, params), options, Which::kOb2);
}

BoundResult ob3(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options) {
  return maximize(ChannelBoundContext(rho, channels, params), options, Which::kOb3);
}

std::vector<std::string> BoundReport::violations() const {
  std::vector<std::string> out;
  auto check_le_sum = [&](const char* name, std::optional<double> v) {
    if (v && *v > sum + kSoundnessSlack) {
      out.push_back(std::string(name) + " = " + fmt(*v) + " exceeds sum = " + fmt(sum));
    }
  };
  check_le_sum("lb1", lb1);
  check_le_sum("lb2", lb2);
  check_le_sum("lb3", lb3);
  check_le_sum("ob1", ob1);
  check_le_sum("ob2", ob2);
  check_le_sum("ob3", ob3);
  if (lb2 < ob2 - kSoundnessSlack) out.push_back("lb2 = " + fmt(lb2) + " < ob2 = " + fmt(ob2));
  if (lb3 < ob3 - kSoundnessSlack) out.push_back("lb3 = " + fmt(lb3) + " < ob3 = " + fmt(ob3));
  return out;
}

BoundReport channel_bound_report(const ChannelBoundContext& ctx, const BoundOptions& options) {
  const bool has_first = ctx.channel_count() > 2;
  const auto signs = signs_for(options.sign);
  Best b_lb1, b_lb2, b_lb3, b_ob1, b_ob2, b_ob3;
  BoundReport report;
  report.sum = ctx.sum();
  report.sign = options.sign;
  for (TupleEnumerator it(ctx.kraus_count(), ctx.channel_count(), options.cap); !it.done();
       it.advance()) {
    const TupleValues v = ctx.evaluate(it.current());
    if (has_first) {
      b_lb1.offer(*v.lb1, it.current(), std::nullopt);
      b_ob1.offer(*v.ob1, it.current(), std::nullopt);
    }
    b_lb2.offer(v.lb2, it.current(), std::nullopt);
    b_ob2.offer(v.ob2, it.current(), std::nullopt);
    for (int x : signs) {
      b_lb3.offer(v.lb3[x], it.current(), x);
      b_ob3.offer(v.ob3[x], it.current(), x);
    }
    ++report.tuples;
  }
  if (has_first) {
    report.lb1 = b_lb1.result.value;
    report.ob1 = b_ob1.result.value;
    report.argmax["lb1"] = b_lb1.result;
    report.argmax["ob1"] = b_ob1.result;
  }
  report.lb2 = b_lb2.result.value;
  report.lb3 = b_lb3.result.value;
  report.ob2 = b_ob2.result.value;
  report.ob3 = b_ob3.result.value;
  report.argmax["lb2"] = b_lb2.result;
  report.argmax["lb3"] = b_lb3.result;
  report.argmax["ob2"] = b_ob2.result;
  report.argmax["ob3"] = b_ob3.result;
  return report;
}

BoundReport channel_bound_report(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                                 const SkewParams& params, const BoundOptions& options) {
  return channel_bound_report(ChannelBoundContext(rho, channels, params), options);
}

std::vector<std::string> UnitaryBoundReport::violations() const {
  std::vector<std::string> out;
  if (lb1 && *lb1 > sum + kSoundnessSlack) {
    out.push_back("Lb1 = " + fmt(*lb1) + " exceeds sum = " + fmt(sum));
  }
  if (lb2 > sum + kSoundnessSlack) out.push_back("Lb2 = " + fmt(lb2) + " exceeds sum = " + fmt(sum));
  if (lb3 > sum + kSoundnessSlack) out.push_back("Lb3 = " + fmt(lb3) + " exceeds sum = " + fmt(sum));
  return out;
}

namespace {

struct UnitaryTerms {
  double sum = 0.0;
  double collective = 0.0;
  std::array<double, 2> linear{};
  std::array<double, 2> roots{};
  std::size_t count = 0;
};

UnitaryTerms unitary_terms(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                           const SkewParams& params) {
  if (unitaries.size() < 2) throw DomainError("unitary bounds need at least 2 unitaries");
  const WeightedOperatorCache cache(rho, params);
  UnitaryTerms terms;
  terms.count = unitaries.size();
  ComplexMatrix total(rho.dim());
  for (const auto& u : unitaries) {
    if (u.dim() != rho.dim()) {
      throw DimensionError("unitary acts on dimension " + std::to_string(u.dim()) +
                           " but the state has dimension " + std::to_string(rho.dim()));
    }
    terms.sum += cache.skew_info(u.matrix());
    total += u.matrix();
  }
  terms.collective = cache.skew_info(total);
  for (std::size_t t = 0; t < unitaries.size(); ++t)
    for (std::size_t s = t + 1; s < unitaries.size(); ++s) {
      const double plus = cache.skew_info(unitaries[t].matrix() + unitaries[s].matrix());
      const double minus = cache.skew_info(unitaries[t].matrix() - unitaries[s].matrix());
      terms.linear[0] += plus;
      terms.linear[1] += minus;
      terms.roots[0] += root(plus);
      terms.roots[1] += root(minus);
    }
  return terms;
}

double first_bound(const UnitaryTerms& t) {
  const double nn = static_cast<double>(t.count);
  return (t.linear[0] - t.roots[0] * t.roots[0] / ((nn - 1.0) * (nn - 1.0))) / (nn - 2.0);
}

double second_bound(const UnitaryTerms& t) {
  const double nn = static_cast<double>(t.count);
  return t.collective / nn + 2.0 / (nn * nn * (nn - 1.0)) * t.roots[1] * t.roots[1];
}

double third_bound(const UnitaryTerms& t, int x) {
  const double nn = static_cast<double>(t.count);
  const int other = 1 - x;
  return (t.linear[x] + 2.0 / (nn * (nn - 1.0)) * t.roots[other] * t.roots[other]) /
         (2.0 * (nn - 1.0));
}

}  // namespace

UnitaryBoundReport unitary_bound_report(const DensityMatrix& rho,
                                        std::span<const UnitaryOp> unitaries,
                                        const SkewParams& params, SignPolicy sign) {
  const UnitaryTerms terms = unitary_terms(rho, unitaries, params);
  UnitaryBoundReport report;
  report.sum = terms.sum;
  if (terms.count > 2) report.lb1 = first_bound(terms);
  report.lb2 = second_bound(terms);
  bool set = false;
  for (int x : signs_for(sign)) {
    const double v = third_bound(terms, x);
    if (!set || v > report.lb3 + kTieTolerance) {
      report.lb3 = v;
      report.argmax_x = x;
      set = true;
    }
  }
  return report;
}

double unitary_lb1(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                   const SkewParams& params) {
  if (unitaries.size() <= 2) throw DomainError("Lb1 requires N > 2");
  return first_bound(unitary_terms(rho, unitaries, params));
}

double unitary_lb2(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                   const SkewParams& params) {
  return second_bound(unitary_terms(rho, unitaries, params));
}

std::pair<double, int> unitary_lb3(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                                   const SkewParams& params) {
  const auto report = unitary_bound_report(rho, unitaries, params, SignPolicy::kMaxOverBoth);
  return {report.lb3, report.argmax_x};
}

NormInequalityResult norm_inequality_check(std::span<const std::vector<Complex>> vectors) {
  constexpr double kSlack = 1e-9;
  const std::size_t big_n = vectors.size();
  if (big_n < 2) throw DomainError("norm inequalities need at least 2 vectors");
  const std::size_t len = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != len) throw DimensionError("norm inequalities: vectors differ in length");

  auto norm_sq = [](const std::vector<Complex>& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
  };
  auto combine = [](const std::vector<Complex>& a, const std::vector<Complex>& b, double sign) {
    std::vector<Complex> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + sign * b[k];
    return out;
  };

  const double nn = static_cast<double>(big_n);
  double lhs = 0.0;
  std::vector<Complex> total(len);
  for (const auto& v : vectors) {
    lhs += norm_sq(v);
    for (std::size_t k = 0; k < len; ++k) total[k] += v[k];
  }
  std::array<double, 2> pair_sq{};    // sum ||u_t +- u_s||^2, [0] is +
  std::array<double, 2> pair_norm{};  // sum ||u_t +- u_s||
  for (std::size_t t = 0; t < big_n; ++t)
    for (std::size_t s = t + 1; s < big_n; ++s)
      for (int k = 0; k < 2; ++k) {
        const double sq = norm_sq(combine(vectors[t], vectors[s], k == 0 ? 1.0 : -1.0));
        pair_sq[k] += sq;
        pair_norm[k] += std::sqrt(sq);
      }

  NormInequalityResult result;
  if (big_n > 2) {
    const double rhs =
        (pair_sq[0] - pair_norm[0] * pair_norm[0] / ((nn - 1.0) * (nn - 1.0))) / (nn - 2.0);
    result.first = lhs >= rhs - kSlack;
  }
  const double rhs2 =
      norm_sq(total) / nn + 2.0 / (nn * nn * (nn - 1.0)) * pair_norm[1] * pair_norm[1];
  result.second = lhs >= rhs2 - kSlack;
  result.third = true;
  for (int k = 0; k < 2; ++k) {
    const int other = 1 - k;
    const double rhs3 = (2.0 / (nn * (nn - 1.0)) * pair_norm[k] * pair_norm[k] + pair_sq[other]) /
                        (2.0 * (nn - 1.0));
    result.third = result.third && lhs >= rhs3 - kSlack;
  }
  return result;
}

}  // namespace mwwyd
