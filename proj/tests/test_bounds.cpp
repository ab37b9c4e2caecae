#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mwwyd/bounds.hpp"
#include "mwwyd/errors.hpp"
#include "mwwyd/repro.hpp"
#include "oracle.hpp"

using namespace mwwyd;

namespace {

// Straight transcription of the six bound expressions for one tuple, with
// no shared caches and no padding logic. Channels must have equal length.
TupleValues brute_force(const DensityMatrix& rho, const std::vector<KrausChannel>& chs,
                        const SkewParams& p, const PermutationTuple& tup) {
  const std::size_t big_n = chs.size();
  const std::size_t n = chs.front().size();
  const double nn = static_cast<double>(big_n);
  auto op = [&](std::size_t t, std::size_t i) { return chs[t].ops()[tup.perms[t][i]]; };
  auto k = [&](const ComplexMatrix& e) { return skew_info_op(rho, e, p); };
  auto pair_k = [&](std::size_t t, std::size_t s, std::size_t i, double sign) {
    return k(op(t, i) + op(s, i) * sign);
  };

  auto linear = [&](double sign) {
    double acc = 0.0;
    for (std::size_t t = 0; t < big_n; ++t)
      for (std::size_t s = t + 1; s < big_n; ++s)
        for (std::size_t i = 0; i < n; ++i) acc += pair_k(t, s, i, sign);
    return acc;
  };
  auto outer_root = [&](double sign) {
    double acc = 0.0;
    for (std::size_t t = 0; t < big_n; ++t)
      for (std::size_t s = t + 1; s < big_n; ++s) {
        double inner = 0.0;
        for (std::size_t i = 0; i < n; ++i) inner += pair_k(t, s, i, sign);
        acc += std::sqrt(inner);
      }
    return acc * acc;
  };
  auto inner_root = [&](double sign) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t t = 0; t < big_n; ++t)
        for (std::size_t s = t + 1; s < big_n; ++s) r += std::sqrt(pair_k(t, s, i, sign));
      acc += r * r;
    }
    return acc;
  };
  double collective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix total(rho.dim());
    for (std::size_t t = 0; t < big_n; ++t) total += op(t, i);
    collective += k(total);
  }

  TupleValues v;
  if (big_n > 2) {
    v.lb1 = (linear(1) - outer_root(1) / ((nn - 1) * (nn - 1))) / (nn - 2);
    v.ob1 = (linear(1) - inner_root(1) / ((nn - 1) * (nn - 1))) / (nn - 2);
  }
  v.lb2 = collective / nn + 2.0 / (nn * nn * (nn - 1)) * outer_root(-1);
  v.ob2 = collective / nn + 2.0 / (nn * nn * (nn - 1)) * inner_root(-1);
  for (int x = 0; x < 2; ++x) {
    const double sign = x == 0 ? 1.0 : -1.0;
    v.lb3[x] = (linear(sign) + 2.0 / (nn * (nn - 1)) * outer_root(-sign)) / (2 * (nn - 1));
    v.ob3[x] = (linear(sign) + 2.0 / (nn * (nn - 1)) * inner_root(-sign)) / (2 * (nn - 1));
  }
  return v;
}

std::vector<KrausChannel> identity_channels(std::size_t count) {
  return std::vector<KrausChannel>(count, validate_channel({ComplexMatrix::identity(2)}));
}

}  // namespace

TEST_CASE("tuple enumeration counts and order") {
  CHECK(enumerate_tuples(1, 3).size() == 1);
  CHECK(enumerate_tuples(2, 3).size() == 4);
  CHECK(enumerate_tuples(3, 2).size() == 6);
  CHECK(tuple_count(3, 3) == 36);
  CHECK(tuple_count(21, 2) == UINT64_MAX);

  const auto tuples = enumerate_tuples(2, 3);
  for (const auto& t : tuples) CHECK(t.perms[0] == Permutation{0, 1});
  CHECK(tuples[0].perms[2] == Permutation{0, 1});
  CHECK(tuples[1].perms[2] == Permutation{1, 0});
  CHECK(tuples[2].perms[1] == Permutation{1, 0});
  CHECK(tuples[2].perms[2] == Permutation{0, 1});
  CHECK(std::is_sorted(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
    return a.perms < b.perms;
  }));

  CHECK_THROWS_AS(TupleEnumerator(5, 4, 1000), EnumerationCapError);
  CHECK(TupleEnumerator(5, 4, 2'000'000).size() == 1'728'000);
  CHECK_THROWS_AS(TupleEnumerator(2, 1), DomainError);
}

TEST_CASE("per-tuple evaluation matches the brute-force transcription") {
  oracle::Rng rng(41);
  for (int k = 0; k < 10; ++k) {
    const auto rho = rng.qubit();
    const auto p = rng.params();
    const auto chs = repro::example_channels(rng.uniform() * 0.99);
    const ChannelBoundContext ctx(rho, chs, p);
    for (const auto& tup : enumerate_tuples(2, 3)) {
      const auto got = ctx.evaluate(tup);
      const auto want = brute_force(rho, chs, p, tup);
      CHECK(std::abs(*got.lb1 - *want.lb1) < 1e-12);
      CHECK(std::abs(*got.ob1 - *want.ob1) < 1e-12);
      CHECK(std::abs(got.lb2 - want.lb2) < 1e-12);
      CHECK(std::abs(got.ob2 - want.ob2) < 1e-12);
      for (int x = 0; x < 2; ++x) {
        CHECK(std::abs(got.lb3[x] - want.lb3[x]) < 1e-12);
        CHECK(std::abs(got.ob3[x] - want.ob3[x]) < 1e-12);
      }
    }
  }
  // four qutrit channels with three Kraus operators each
  const auto rho = rng.density(3);
  const auto p = rng.params();
  std::vector<KrausChannel> chs;
  for (int t = 0; t < 4; ++t) chs.push_back(oracle::random_channel(rng, 3, 3));
  const ChannelBoundContext ctx(rho, chs, p);
  int checked = 0;
  for (const auto& tup : enumerate_tuples(3, 4)) {
    if (checked++ % 17 != 0) continue;
    const auto got = ctx.evaluate(tup);
    const auto want = brute_force(rho, chs, p, tup);
    CHECK(std::abs(*got.lb1 - *want.lb1) < 1e-12);
    CHECK(std::abs(got.lb2 - want.lb2) < 1e-12);
    CHECK(std::abs(got.ob3[1] - want.ob3[1]) < 1e-12);
  }
}

TEST_CASE("individual bounds agree with the report") {
  const auto rho = equatorial_state(repro::kChannelRadius, std::numbers::pi / 3);
  const auto chs = repro::example_channels(0.4);
  const auto p = repro::example_params();
  const auto report = channel_bound_report(rho, chs, p);
  CHECK(lb1(rho, chs, p).value == *report.lb1);
  CHECK(lb2(rho, chs, p).value == report.lb2);
  CHECK(lb3(rho, chs, p).value == report.lb3);
  CHECK(ob1(rho, chs, p).value == *report.ob1);
  CHECK(ob2(rho, chs, p).value == report.ob2);
  CHECK(ob3(rho, chs, p).value == report.ob3);
  CHECK(lb3(rho, chs, p).sign == 1);
  CHECK(lb3(rho, chs, p).argmax == report.argmax.at("lb3").argmax);
  CHECK(std::abs(*report.lb1 - 0.168362) <= 5e-6);
  CHECK(std::abs(report.ob2 - 0.204421) <= 5e-6);
}

TEST_CASE("published single values") {
  const auto p = repro::example_params();
  const auto chs4 = repro::example_channels(0.4);
  const auto at = [](double theta) { return equatorial_state(repro::kChannelRadius, theta); };
  CHECK(std::abs(lb1(at(std::numbers::pi / 2), chs4, p).value - 0.222065) <= 5e-6);
  CHECK(std::abs(lb2(at(std::numbers::pi / 2), chs4, p).value - 0.252565) <= 5e-6);
  CHECK(std::abs(lb2(at(std::numbers::pi / 7), chs4, p).value - 0.106043) <= 5e-6);
  CHECK(std::abs(lb3(at(std::numbers::pi / 2), chs4, p).value - 0.252654) <= 5e-6);
  CHECK(std::abs(lb3(at(std::numbers::pi / 5), chs4, p).value - 0.135459) <= 5e-6);
  CHECK(std::abs(ob1(at(std::numbers::pi / 2), chs4, p).value - 0.234918) <= 5e-6);
  CHECK(std::abs(ob3(at(std::numbers::pi / 2), chs4, p).value - 0.241686) <= 5e-6);
  CHECK(std::abs(lb2(at(std::numbers::pi / 2), repro::example_channels(0.2), p).value - 0.26726) <=
        5e-6);
}

TEST_CASE("sign policy") {
  const auto rho = equatorial_state(repro::kChannelRadius, std::numbers::pi / 2);
  const auto chs = repro::example_channels(0.4);
  const auto p = repro::example_params();
  const auto minus = channel_bound_report(rho, chs, p, {kDefaultTupleCap, SignPolicy::kMinus});
  const auto plus = channel_bound_report(rho, chs, p, {kDefaultTupleCap, SignPolicy::kPlus});
  const auto both = channel_bound_report(rho, chs, p, {kDefaultTupleCap, SignPolicy::kMaxOverBoth});
  CHECK(both.lb3 == std::max(minus.lb3, plus.lb3));
  CHECK(both.ob3 == std::max(minus.ob3, plus.ob3));
  CHECK(both.lb3 > minus.lb3);  // the two readings really differ here
  CHECK(minus.lb2 == both.lb2);
  CHECK(both.sound());
  CHECK(parse_sign_policy("max") == SignPolicy::kMaxOverBoth);
  CHECK_THROWS_AS(parse_sign_policy("both"), DomainError);
}

TEST_CASE("identity channels give all-zero bounds") {
  const auto rho = oracle::Rng(42).qubit();
  const auto report = channel_bound_report(rho, identity_channels(3), SkewParams(0.25, 0.75, 0.25));
  CHECK(report.sum == 0.0);
  CHECK(*report.lb1 == 0.0);
  CHECK(report.lb2 == 0.0);
  CHECK(report.lb3 == 0.0);
  CHECK(*report.ob1 == 0.0);
  CHECK(report.ob2 == 0.0);
  CHECK(report.ob3 == 0.0);
}

TEST_CASE("two channels omit the first bound") {
  const auto rho = oracle::Rng(43).qubit();
  const auto chs = repro::example_channels(0.3);
  const std::vector<KrausChannel> two(chs.begin(), chs.begin() + 2);
  const auto report = channel_bound_report(rho, two, repro::example_params());
  CHECK_FALSE(report.lb1.has_value());
  CHECK_FALSE(report.ob1.has_value());
  CHECK(report.argmax.count("lb1") == 0);
  CHECK(report.sound());
  try {
    (void)lb1(rho, two, repro::example_params());
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "LB1 requires N > 2");
  }
}

TEST_CASE("Kraus lists of different lengths are padded with zeros") {
  oracle::Rng rng(44);
  const auto rho = rng.qubit();
  const auto p = rng.params();
  std::vector<KrausChannel> chs = {validate_channel({ComplexMatrix::identity(2)}), bit_flip(0.3),
                                   oracle::random_channel(rng, 2, 3)};
  const ChannelBoundContext ctx(rho, chs, p);
  CHECK(ctx.kraus_count() == 3);
  double direct = 0.0;
  for (const auto& ch : chs) direct += skew_info_channel(rho, ch, p);
  CHECK(std::abs(ctx.sum() - direct) < 1e-14);

  // explicit zero padding gives the same report
  std::vector<KrausChannel> padded;
  for (const auto& ch : chs) {
    auto ops = ch.ops();
    ops.resize(3, ComplexMatrix::zero(2));
    padded.emplace_back(ch.name(), ops);
  }
  const auto a = channel_bound_report(ctx);
  const auto b = channel_bound_report(rho, padded, p);
  CHECK(std::abs(a.lb2 - b.lb2) < 1e-14);
  CHECK(std::abs(a.ob3 - b.ob3) < 1e-14);
  CHECK(a.tuples == 36);
  CHECK(a.sound());
}

TEST_CASE("mismatched dimensions are rejected") {
  const auto rho = oracle::Rng(45).density(3);
  CHECK_THROWS_AS(channel_bound_report(rho, repro::example_channels(0.2), repro::example_params()),
                  DimensionError);
}

TEST_CASE("enumeration cap") {
  oracle::Rng rng(46);
  const auto rho = rng.qubit();
  std::vector<KrausChannel> chs;
  for (int t = 0; t < 3; ++t) chs.push_back(oracle::random_channel(rng, 2, 4));
  CHECK_THROWS_AS(channel_bound_report(rho, chs, rng.params(), {100, SignPolicy::kMinus}),
                  EnumerationCapError);
  CHECK_NOTHROW(channel_bound_report(rho, chs, rng.params(), {576, SignPolicy::kMinus}));
}

TEST_CASE("a common relabeling of all permutations leaves every bound unchanged") {
  oracle::Rng rng(47);
  for (int k = 0; k < 10; ++k) {
    const auto rho = rng.density(2);
    std::vector<KrausChannel> chs;
    for (int t = 0; t < 3; ++t) chs.push_back(oracle::random_channel(rng, 2, 3));
    const ChannelBoundContext ctx(rho, chs, rng.params());
    const Permutation sigma{2, 0, 1};
    for (const auto& tup : enumerate_tuples(3, 3)) {
      PermutationTuple moved = tup;
      for (auto& perm : moved.perms) {
        Permutation composed(3);
        for (std::size_t i = 0; i < 3; ++i) composed[i] = perm[sigma[i]];
        perm = composed;
      }
      const auto a = ctx.evaluate(tup);
      const auto b = ctx.evaluate(moved);
      CHECK(std::abs(*a.lb1 - *b.lb1) <= 1e-12);
      CHECK(std::abs(*a.ob1 - *b.ob1) <= 1e-12);
      CHECK(std::abs(a.lb2 - b.lb2) <= 1e-12);
      CHECK(std::abs(a.ob2 - b.ob2) <= 1e-12);
      CHECK(std::abs(a.lb3[0] - b.lb3[0]) <= 1e-12);
      CHECK(std::abs(a.ob3[1] - b.ob3[1]) <= 1e-12);
    }
  }
}

TEST_CASE("with alpha = beta = 1/2 the bounds do not depend on gamma") {
  oracle::Rng rng(48);
  for (int k = 0; k < 10; ++k) {
    const auto rho = rng.qubit();
    const auto chs = repro::example_channels(rng.uniform() * 0.99);
    const auto a = channel_bound_report(rho, chs, SkewParams(0.5, 0.5, 0.5));
    const auto b = channel_bound_report(rho, chs, SkewParams(0.5, 0.5, rng.uniform()));
    CHECK(std::abs(a.sum - b.sum) < 1e-12);
    CHECK(std::abs(*a.lb1 - *b.lb1) < 1e-12);
    CHECK(std::abs(a.lb2 - b.lb2) < 1e-12);
    CHECK(std::abs(a.lb3 - b.lb3) < 1e-12);
    CHECK(std::abs(*a.ob1 - *b.ob1) < 1e-12);
    CHECK(std::abs(a.ob2 - b.ob2) < 1e-12);
    CHECK(std::abs(a.ob3 - b.ob3) < 1e-12);
  }
}

TEST_CASE("random channels of larger dimension stay sound") {
  oracle::Rng rng(49);
  for (int k = 0; k < 20; ++k) {
    const std::size_t d = 2 + k % 2;
    const auto rho = rng.density(d);
    std::vector<KrausChannel> chs;
    const int count = 3 + k % 2;
    for (int t = 0; t < count; ++t) chs.push_back(oracle::random_channel(rng, d, 2));
    const auto report = channel_bound_report(rho, chs, rng.params(), {kDefaultTupleCap, SignPolicy::kMaxOverBoth});
    CHECK(report.sound());
  }
}

TEST_CASE("unitary bounds") {
  oracle::Rng rng(50);
  SUBCASE("identical unitaries") {
    for (int k = 0; k < 10; ++k) {
      const auto rho = rng.density(3);
      const auto p = rng.params();
      const auto u = rng.unitary(3);
      const std::vector<UnitaryOp> us(4, u);
      const double single = skew_info_unitary(rho, u, p);
      const auto report = unitary_bound_report(rho, us, p);
      CHECK(std::abs(report.sum - 4 * single) < 1e-12);
      CHECK(std::abs(*report.lb1 - report.sum) < 1e-12);
      CHECK(std::abs(report.lb2 - report.sum) < 1e-12);
    }
  }
  SUBCASE("identities") {
    const std::vector<UnitaryOp> us(3, UnitaryOp(ComplexMatrix::identity(2)));
    const auto report = unitary_bound_report(rng.qubit(), us, rng.params());
    CHECK(report.sum == 0.0);
    CHECK(*report.lb1 == 0.0);
    CHECK(report.lb2 == 0.0);
    CHECK(report.lb3 == 0.0);
  }
  SUBCASE("two unitaries have no first bound") {
    const std::vector<UnitaryOp> us{rng.unitary(2), rng.unitary(2)};
    const auto rho = rng.qubit();
    CHECK_FALSE(unitary_bound_report(rho, us, rng.params()).lb1.has_value());
    CHECK_THROWS_AS(unitary_lb1(rho, us, rng.params()), DomainError);
  }
  SUBCASE("golden values for the three rotations") {
    // Direct numpy evaluation at alpha = gamma = 1/4, beta = 3/4, radius
    // sqrt(2)/2.
    const auto p = repro::example_params();
    const auto us = repro::example_unitaries(false);
    auto rho = equatorial_state(repro::kUnitaryRadius, 0.0);
    auto r = unitary_bound_report(rho, us, p);
    CHECK(std::abs(r.sum - 0.05160514394944658) < 1e-12);
    CHECK(std::abs(*r.lb1 - 0.02801608270604658) < 1e-12);
    CHECK(std::abs(r.lb2 - 0.05062136140219174) < 1e-12);
    CHECK(std::abs(r.lb3 - 0.050867307039005445) < 1e-12);

    rho = equatorial_state(repro::kUnitaryRadius, std::numbers::pi / 3);
    r = unitary_bound_report(rho, us, p);
    CHECK(std::abs(r.sum - 0.0516051439494466) < 1e-12);
    CHECK(std::abs(*r.lb1 - 0.030040734864730308) < 1e-12);
    CHECK(std::abs(r.lb2 - 0.05130319149781468) < 1e-12);
    CHECK(std::abs(r.lb3 - 0.051378679610722656) < 1e-12);
    CHECK(r.argmax_x == 0);
    CHECK(std::abs(unitary_lb2(rho, us, p) - r.lb2) == 0.0);
    CHECK(unitary_lb3(rho, us, p).first == r.lb3);

    r = unitary_bound_report(rho, repro::example_unitaries(true), p);
    CHECK(std::abs(r.sum - 0.20199355433513966) < 1e-12);
    CHECK(std::abs(*r.lb1 - 0.16617669496064522) < 1e-12);
    CHECK(std::abs(r.lb2 - 0.19165050168985834) < 1e-12);
    CHECK(std::abs(r.lb3 - 0.19423626485117867) < 1e-12);
  }
}

TEST_CASE("norm inequalities") {
  oracle::Rng rng(51);
  const auto u = rng.vector(5);
  const std::vector<std::vector<Complex>> repeated(3, u);
  const auto same = norm_inequality_check(repeated);
  CHECK(same.first.value());
  CHECK(same.second);
  CHECK(same.third);

  // repeated vectors: the mean term alone saturates the second inequality
  double lhs = 0.0;
  for (const auto& z : u) lhs += 3.0 * std::norm(z);
  double mean = 0.0;
  for (const auto& z : u) mean += std::norm(3.0 * z) / 3.0;
  CHECK(std::abs(lhs - mean) < 1e-12);

  const std::vector<std::vector<Complex>> zeros(4, std::vector<Complex>(3));
  const auto z = norm_inequality_check(zeros);
  CHECK(z.first.value());
  CHECK(z.second);
  CHECK(z.third);

  const std::vector<std::vector<Complex>> pair{rng.vector(4), rng.vector(4)};
  const auto two = norm_inequality_check(pair);
  CHECK_FALSE(two.first.has_value());
  CHECK(two.second);
  CHECK(two.third);
}
