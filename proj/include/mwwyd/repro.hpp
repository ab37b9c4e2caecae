#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mwwyd/bounds.hpp"
#include "mwwyd/quantum.hpp"
#include "mwwyd/skewinfo.hpp"

namespace mwwyd::repro {

inline const double kChannelRadius = std::sqrt(3.0) / 2.0;
inline const double kUnitaryRadius = std::sqrt(2.0) / 2.0;

// alpha = gamma = 1/4, beta = 3/4
SkewParams example_params();

// amplitude damping, phase damping, bit flip at strength q
std::vector<KrausChannel> example_channels(double q);

// exp(i pi sigma_k / 8) for k = 1, 2, 3; with printed_u3 the third is
// replaced by diag(e^{i pi/8}, -e^{i pi/8}).
std::vector<UnitaryOp> example_unitaries(bool printed_u3);

struct SweepConfig {
  double theta_start = 0.0;
  double theta_end = std::numbers::pi;
  int steps = 181;
  double q = 0.4;
  SkewParams params = example_params();
  double bloch_radius = kChannelRadius;

  // Throws DomainError unless steps >= 2, theta_start < theta_end,
  // 0 <= q < 1 and 0 <= bloch_radius <= 1.
  void validate() const;
  // Closed grid: both endpoints are included exactly.
  std::vector<double> grid() const;
};

struct ChannelSweepRow {
  double theta = 0.0;
  BoundReport report;
};

struct UnitarySweepRow {
  double theta = 0.0;
  UnitaryBoundReport report;
};

// Grid points are spread over `threads` workers; rows come back in grid
// order. Throws std::runtime_error naming the grid point if any bound
// exceeds the sum.
std::vector<ChannelSweepRow> run_channel_sweep(const SweepConfig& cfg, const BoundOptions& options,
                                               unsigned threads = 1);
std::vector<UnitarySweepRow> run_unitary_sweep(const SweepConfig& cfg, bool printed_u3,
                                               unsigned threads = 1);

// columns theta,sum,ob1,ob2,ob3,lb1,lb2,lb3
std::string channel_sweep_csv(const std::vector<ChannelSweepRow>& rows);
// columns theta,sum,lb1,lb2,lb3
std::string unitary_sweep_csv(const std::vector<UnitarySweepRow>& rows);

// Share of grid points where lb3 >= max(lb1, lb2).
double fraction_lb3_tightest(const std::vector<UnitarySweepRow>& rows);

// Shortest locale-independent representation with `digits` significant
// digits.
std::string format_sig(double value, int digits = 9);
std::string format_fixed(double value, int decimals = 6);

// Column order used by both published tables below.
inline constexpr std::array<const char*, 7> kTableColumns = {"ob1", "ob2", "ob3", "lb1",
                                                              "lb2", "lb3", "sum"};

struct PublishedRow {
  const char* label;
  double theta;
  std::array<double, 7> values;
};

inline constexpr double kPublishedTolerance = 5e-6;

// q = 0.4 comparison at theta = pi/2, pi/3, pi/5, pi/7
const std::array<PublishedRow, 4>& published_table1();
// q = 0.2, theta = pi/2
const PublishedRow& published_spot_check();

std::array<double, 7> table_values(const BoundReport& report);

struct RowComparison {
  PublishedRow published;
  std::array<double, 7> computed{};
  double max_abs_error = 0.0;
  bool pass = false;
};

RowComparison compare_row(const PublishedRow& row, double q, const BoundOptions& options = {});
std::vector<RowComparison> compare_table1(const BoundOptions& options = {});
RowComparison compare_spot_check(const BoundOptions& options = {});

std::string format_table(const std::vector<RowComparison>& rows);
std::string table_csv(const std::vector<RowComparison>& rows);

// K(Phi_BF) in the standard Kraus form and in a Hadamard-mixed form of the
// same channel, at the Example-1 state.
struct KrausRepresentationCheck {
  double standard = 0.0;
  double mixed = 0.0;
};
KrausRepresentationCheck kraus_representation_check(double q, double theta);

}  // namespace mwwyd::repro
