#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwwyd/cmatrix.hpp"
#include "mwwyd/quantum.hpp"
#include "mwwyd/skewinfo.hpp"

namespace mwwyd {

// 0-based image list: perm[i] is the Kraus index paired with slot i.
using Permutation = std::vector<std::size_t>;

// One permutation per channel. The enumerator fixes perms[0] to the
// identity; applying a common permutation to every entry leaves each bound
// unchanged, so nothing is lost.
struct PermutationTuple {
  std::vector<Permutation> perms;

  friend bool operator==(const PermutationTuple&, const PermutationTuple&) = default;
};

inline constexpr std::uint64_t kDefaultTupleCap = 1'000'000;

// (n!)^(N-1), saturating at UINT64_MAX.
std::uint64_t tuple_count(std::size_t n, std::size_t channels);

// Lexicographic walk over all tuples with perms[0] = identity; the last
// channel's permutation varies fastest. Throws EnumerationCapError when the
// tuple count exceeds cap.
class TupleEnumerator {
 public:
  TupleEnumerator(std::size_t n, std::size_t channels, std::uint64_t cap = kDefaultTupleCap);

  std::uint64_t size() const { return count_; }
  bool done() const { return done_; }
  const PermutationTuple& current() const { return current_; }
  void advance();

 private:
  std::vector<Permutation> all_perms_;
  std::vector<std::size_t> digits_;
  PermutationTuple current_;
  std::uint64_t count_ = 0;
  bool done_ = false;
};

std::vector<PermutationTuple> enumerate_tuples(std::size_t n, std::size_t channels,
                                               std::uint64_t cap = kDefaultTupleCap);

// Which sign variant x of the third bound family is reported. Variant x puts
// (-1)^x between the paired operators in the linear sum and (-1)^(x+1) under
// the square roots.
enum class SignPolicy {
  kPlus,          // x = 0
  kMinus,         // x = 1; the convention behind the published comparison table
  kMaxOverBoth,
};

std::string to_string(SignPolicy policy);
// Accepts "plus", "minus", "max". Throws DomainError otherwise.
SignPolicy parse_sign_policy(const std::string& text);

struct BoundOptions {
  std::uint64_t cap = kDefaultTupleCap;
  SignPolicy sign = SignPolicy::kMinus;
};

// All six bound expressions for one permutation tuple. lb3/ob3 are indexed
// by sign variant x. lb1/ob1 are empty for two channels.
struct TupleValues {
  std::optional<double> lb1;
  std::optional<double> ob1;
  double lb2 = 0.0;
  double ob2 = 0.0;
  std::array<double, 2> lb3{};
  std::array<double, 2> ob3{};
};

// Shared state for evaluating bounds of N channels in one state: the
// weighted-operator cache, the Kraus lists padded with zero operators to a
// common length n, and K(E^t_a +- E^s_b) for every channel pair and index
// pair. Immutable after construction.
class ChannelBoundContext {
 public:
  ChannelBoundContext(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                      const SkewParams& params);

  std::size_t channel_count() const { return ops_.size(); }
  std::size_t kraus_count() const { return n_; }
  // sum_t K(Phi_t)
  double sum() const { return sum_; }
  double skew_info(const ComplexMatrix& e) const { return cache_.skew_info(e); }

  // Accepts any tuple of valid permutations, identity-first or not.
  TupleValues evaluate(const PermutationTuple& tuple) const;

 private:
  double pair_value(std::size_t t, std::size_t s, std::size_t a, std::size_t b, int sign) const;

  WeightedOperatorCache cache_;
  std::vector<std::vector<ComplexMatrix>> ops_;
  std::size_t n_ = 0;
  double sum_ = 0.0;
  // indexed [pair][a*n+b][sign], sign 0 is +, 1 is -
  std::vector<std::vector<std::array<double, 2>>> pair_cache_;
};

struct BoundResult {
  double value = 0.0;
  PermutationTuple argmax;
  std::optional<int> sign;  // set for lb3/ob3
};

BoundResult lb1(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options = {});
BoundResult lb2(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options = {});
BoundResult lb3(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options = {});
BoundResult ob1(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options = {});
BoundResult ob2(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options = {});
BoundResult ob3(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                const SkewParams& params, const BoundOptions& options = {});

inline constexpr double kSoundnessSlack = 1e-9;

struct BoundReport {
  double sum = 0.0;
  std::optional<double> lb1;
  double lb2 = 0.0;
  double lb3 = 0.0;
  std::optional<double> ob1;
  double ob2 = 0.0;
  double ob3 = 0.0;
  SignPolicy sign = SignPolicy::kMinus;
  std::uint64_t tuples = 0;
  // keys: "lb1".."ob3"
  std::map<std::string, BoundResult> argmax;

  // Empty when every bound is <= sum and lb2 >= ob2, lb3 >= ob3 (1e-9 slack).
  std::vector<std::string> violations() const;
  bool sound() const { return violations().empty(); }
};

// One pass over all tuples. lb1/ob1 are omitted when there are two channels.
BoundReport channel_bound_report(const DensityMatrix& rho, std::span<const KrausChannel> channels,
                                 const SkewParams& params, const BoundOptions& options = {});
BoundReport channel_bound_report(const ChannelBoundContext& context,
                                 const BoundOptions& options = {});

struct UnitaryBoundReport {
  double sum = 0.0;
  std::optional<double> lb1;  // needs N > 2
  double lb2 = 0.0;
  double lb3 = 0.0;
  int argmax_x = 0;

  std::vector<std::string> violations() const;
  bool sound() const { return violations().empty(); }
};

// Unitary-channel bounds; the third one is maximized over x unless the
// policy pins a sign.
UnitaryBoundReport unitary_bound_report(const DensityMatrix& rho,
                                        std::span<const UnitaryOp> unitaries,
                                        const SkewParams& params,
                                        SignPolicy sign = SignPolicy::kMaxOverBoth);

double unitary_lb1(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                   const SkewParams& params);
double unitary_lb2(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                   const SkewParams& params);
// value and maximizing x
std::pair<double, int> unitary_lb3(const DensityMatrix& rho, std::span<const UnitaryOp> unitaries,
                                   const SkewParams& params);

// The three vector-norm inequalities the bounds rest on, checked for
// u_1..u_N with 1e-9 slack:
//   sum||u_t||^2 >= 1/(N-2) [sum||u_t+u_s||^2 - 1/(N-1)^2 (sum||u_t+u_s||)^2]     (N > 2)
//   sum||u_t||^2 >= 1/N ||sum u_t||^2 + 2/(N^2(N-1)) (sum||u_t-u_s||)^2
//   sum||u_t||^2 >= 1/(2(N-1)) [2/(N(N-1)) (sum||u_t+-u_s||)^2 + sum||u_t-+u_s||^2]
// The third is reported as holding only if it holds for both sign choices.
struct NormInequalityResult {
  std::optional<bool> first;  // empty for N < 3
  bool second = false;
  bool third = false;
};

NormInequalityResult norm_inequality_check(std::span<const std::vector<Complex>> vectors);

}  // namespace mwwyd
