#include "mwwyd/repro.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mwwyd/errors.hpp"

namespace mwwyd::repro {
namespace {

// Runs fn(k) for k in [0, count) on up to `threads` workers. The first
// exception by grid index is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&](unsigned w) {
    for (std::size_t k = w; k < count; k += threads) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string optional_sig(const std::optional<double>& v) { return v ? format_sig(*v) : "nan"; }

}  // namespace

SkewParams example_params() { return SkewParams(0.25, 0.75, 0.25); }

std::vector<KrausChannel> example_channels(double q) {
  return {amplitude_damping(q), phase_damping(q), bit_flip(q)};
}

std::vector<UnitaryOp> example_unitaries(bool printed_u3) {
  constexpr double angle = std::numbers::pi / 8.0;
  return {pauli_rotation(1, angle), pauli_rotation(2, angle),
          printed_u3 ? printed_z_rotation() : pauli_rotation(3, angle)};
}

void SweepConfig::validate() const {
  if (steps < 2) throw DomainError("sweep: steps must be >= 2, got " + std::to_string(steps));
  if (!(theta_start < theta_end)) {
    throw DomainError("sweep: theta_start must be < theta_end (got " + format_sig(theta_start) +
                      ", " + format_sig(theta_end) + ")");
  }
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("sweep: q must satisfy 0 <= q < 1");
  if (!(bloch_radius >= 0.0 && bloch_radius <= 1.0)) {
    throw DomainError("sweep: Bloch radius must lie in [0, 1]");
  }
}

std::vector<double> SweepConfig::grid() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double width = theta_end - theta_start;
  for (int k = 0; k < steps; ++k) {
    out[k] = theta_start + width * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  out.back() = theta_end;
  return out;
}

std::vector<ChannelSweepRow> run_channel_sweep(const SweepConfig& cfg, const BoundOptions& options,
                                               unsigned threads) {
  const auto thetas = cfg.grid();
  const auto channels = example_channels(cfg.q);
  std::vector<ChannelSweepRow> rows(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t k) {
    const DensityMatrix rho = equatorial_state(cfg.bloch_radius, thetas[k]);
    rows[k].theta = thetas[k];
    rows[k].report = channel_bound_report(rho, channels, cfg.params, options);
    const auto bad = rows[k].report.violations();
    if (!bad.empty()) {
      throw std::runtime_error("soundness check failed at theta = " + format_sig(thetas[k]) +
                               ": " + bad.front());
    }
  });
  return rows;
}

std::vector<UnitarySweepRow> run_unitary_sweep(const SweepConfig& cfg, bool printed_u3,
                                               unsigned threads) {
  const auto thetas = cfg.grid();
  const auto unitaries = example_unitaries(printed_u3);
  std::vector<UnitarySweepRow> rows(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t k) {
    const DensityMatrix rho = equatorial_state(cfg.bloch_radius, thetas[k]);
    rows[k].theta = thetas[k];
    rows[k].report = unitary_bound_report(rho, unitaries, cfg.params);
    const auto bad = rows[k].report.violations();
    if (!bad.empty()) {
      throw std::runtime_error("soundness check failed at theta = " + format_sig(thetas[k]) +
                               ": " + bad.front());
    }
  });
  return rows;
}

std::string channel_sweep_csv(const std::vector<ChannelSweepRow>& rows) {
  std::string out = "theta,sum,ob1,ob2,ob3,lb1,lb2,lb3\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += format_sig(row.theta) + ',' + format_sig(r.sum) + ',' + optional_sig(r.ob1) + ',' +
           format_sig(r.ob2) + ',' + format_sig(r.ob3) + ',' + optional_sig(r.lb1) + ',' +
           format_sig(r.lb2) + ',' + format_sig(r.lb3) + '\n';
  }
  return out;
}

std::string unitary_sweep_csv(const std::vector<UnitarySweepRow>& rows) {
  std::string out = "theta,sum,lb1,lb2,lb3\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += format_sig(row.theta) + ',' + format_sig(r.sum) + ',' + optional_sig(r.lb1) + ',' +
           format_sig(r.lb2) + ',' + format_sig(r.lb3) + '\n';
  }
  return out;
}

double fraction_lb3_tightest(const std::vector<UnitarySweepRow>& rows) {
  if (rows.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& row : rows) {
    const auto& r = row.report;
    const double rival = std::max(r.lb1.value_or(-INFINITY), r.lb2);
    if (r.lb3 >= rival) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

std::string format_sig(double value, int digits) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

const std::array<PublishedRow, 4>& published_table1() {
  static const std::array<PublishedRow, 4> rows = {{
      {"pi/2", std::numbers::pi / 2.0,
       {0.234918, 0.247658, 0.241686, 0.222065, 0.252565, 0.252654, 0.258817}},
      {"pi/3", std::numbers::pi / 3.0,
       {0.17968, 0.204421, 0.20082, 0.168362, 0.208841, 0.208534, 0.211782}},
      {"pi/5", std::numbers::pi / 5.0,
       {0.0954994, 0.13303, 0.132687, 0.0879256, 0.135648, 0.135459, 0.135679}},
      {"pi/7", std::numbers::pi / 7.0,
       {0.066361, 0.104405, 0.104922, 0.0632504, 0.106043, 0.106062, 0.106096}},
  }};
  return rows;
}

const PublishedRow& published_spot_check() {
  static const PublishedRow row = {
      "pi/2", std::numbers::pi / 2.0,
      {0.275596, 0.2644, 0.256419, 0.260707, 0.26726, 0.265758, 0.283955}};
  return row;
}

std::array<double, 7> table_values(const BoundReport& r) {
  return {r.ob1.value_or(NAN), r.ob2, r.ob3, r.lb1.value_or(NAN), r.lb2, r.lb3, r.sum};
}

RowComparison compare_row(const PublishedRow& row, double q, const BoundOptions& options) {
  const DensityMatrix rho = equatorial_state(kChannelRadius, row.theta);
  const auto channels = example_channels(q);
  const BoundReport report = channel_bound_report(rho, channels, example_params(), options);
  RowComparison out{row, table_values(report), 0.0, false};
  for (std::size_t c = 0; c < out.computed.size(); ++c) {
    const double err = std::abs(out.computed[c] - row.values[c]);
    out.max_abs_error = std::isnan(err) ? INFINITY : std::max(out.max_abs_error, err);
  }
  out.pass = out.max_abs_error <= kPublishedTolerance;
  return out;
}

std::vector<RowComparison> compare_table1(const BoundOptions& options) {
  std::vector<RowComparison> out;
  for (const auto& row : published_table1()) out.push_back(compare_row(row, 0.4, options));
  return out;
}

RowComparison compare_spot_check(const BoundOptions& options) {
  return compare_row(published_spot_check(), 0.2, options);
}

std::string format_table(const std::vector<RowComparison>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "theta";
  for (const char* col : kTableColumns) os << std::right << std::setw(11) << col;
  os << std::right << std::setw(12) << "max|err|" << "  status\n";
  for (const auto& row : rows) {
    os << std::left << std::setw(10) << row.published.label;
    for (double v : row.computed) os << std::right << std::setw(11) << format_fixed(v);
    os << std::right << std::setw(12) << format_sig(row.max_abs_error, 3) << "  "
       << (row.pass ? "PASS" : "FAIL") << '\n';
    os << std::left << std::setw(10) << "  printed";
    for (double v : row.published.values) os << std::right << std::setw(11) << format_fixed(v);
    os << '\n';
  }
  return os.str();
}

std::string table_csv(const std::vector<RowComparison>& rows) {
  std::string out = "theta_label,theta";
  for (const char* col : kTableColumns) out += std::string(",") + col;
  out += ",max_abs_error,pass\n";
  for (const auto& row : rows) {
    out += std::string(row.published.label) + ',' + format_sig(row.published.theta);
    for (double v : row.computed) out += ',' + format_sig(v);
    out += ',' + format_sig(row.max_abs_error, 3) + ',' + (row.pass ? "1" : "0") + '\n';
  }
  return out;
}

KrausRepresentationCheck kraus_representation_check(double q, double theta) {
  const DensityMatrix rho = equatorial_state(kChannelRadius, theta);
  const KrausChannel standard = bit_flip(q);
  const auto& c = standard.ops();
  const double h = 1.0 / std::sqrt(2.0);
  const KrausChannel mixed("bit_flip_hadamard_mixed", {(c[0] + c[1]) * h, (c[0] - c[1]) * h});
  const SkewParams params = example_params();
  return {skew_info_channel(rho, standard, params), skew_info_channel(rho, mixed, params)};
}

}  // namespace mwwyd::repro
