// Command-line front end: published-table reproduction, theta sweeps, and
// bound reports for user-supplied channels.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwwyd/bounds.hpp"
#include "mwwyd/errors.hpp"
#include "mwwyd/json_io.hpp"
#include "mwwyd/quantum.hpp"
#include "mwwyd/repro.hpp"
#include "mwwyd/skewinfo.hpp"

namespace {

using namespace mwwyd;

struct ParamFlags {
  double alpha = 0.25;
  double beta = 0.75;
  double gamma = 0.25;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "alpha >= 0")->capture_default_str();
    app->add_option("--beta", beta, "beta >= 0, alpha + beta <= 1")->capture_default_str();
    app->add_option("--gamma", gamma, "0 <= gamma <= 1")->capture_default_str();
  }
  SkewParams params() const { return SkewParams(alpha, beta, gamma); }
};

struct SweepFlags {
  double theta_start = 0.0;
  double theta_end = std::numbers::pi;
  int steps = 181;
  double q = 0.4;
  double radius = -1.0;
  unsigned threads = 1;
  std::string out;

  void attach(CLI::App* app, bool with_q) {
    app->add_option("--theta-start", theta_start, "first grid angle (radians)")->capture_default_str();
    app->add_option("--theta-end", theta_end, "last grid angle (radians)")->capture_default_str();
    app->add_option("--steps", steps, "grid points, endpoints included (default grid: 181 over [0, pi])")
        ->capture_default_str();
    if (with_q) app->add_option("--q", q, "damping strength, 0 <= q < 1")->capture_default_str();
    app->add_option("--radius", radius, "Bloch radius (default sqrt(3)/2 channels, sqrt(2)/2 unitaries)");
    app->add_option("--threads", threads, "worker threads over grid points")->capture_default_str();
    app->add_option("--out", out, "write CSV here instead of stdout");
  }

  repro::SweepConfig config(const ParamFlags& p, double default_radius) const {
    repro::SweepConfig cfg;
    cfg.theta_start = theta_start;
    cfg.theta_end = theta_end;
    cfg.steps = steps;
    cfg.q = q;
    cfg.params = p.params();
    cfg.bloch_radius = radius < 0.0 ? default_radius : radius;
    cfg.validate();
    return cfg;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::array<double, 3> parse_bloch(const std::string& text) {
  std::array<double, 3> r{};
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  char sep = 0;
  if (!(in >> r[0] >> sep >> r[1] >> sep >> r[2])) {
    throw DomainError("--bloch expects x,y,z (got '" + text + "')");
  }
  return r;
}

int cmd_table1(const std::string& sign, const std::string& out) {
  BoundOptions options;
  options.sign = parse_sign_policy(sign);
  const auto rows = repro::compare_table1(options);
  std::cout << "q = 0.4, alpha = gamma = 1/4, beta = 3/4, Bloch radius sqrt(3)/2, sign = "
            << sign << "\n\n"
            << repro::format_table(rows);
  bool ok = true;
  for (const auto& row : rows) ok = ok && row.pass;
  std::cout << "\ntable comparison (abs tol " << repro::format_sig(repro::kPublishedTolerance)
            << "): " << (ok ? "PASS" : "FAIL") << '\n';
  if (!out.empty()) emit(repro::table_csv(rows), out);
  return ok ? 0 : 1;
}

int cmd_sweep(const SweepFlags& f, const ParamFlags& p, std::uint64_t cap, const std::string& sign) {
  BoundOptions options{cap, parse_sign_policy(sign)};
  const auto rows = repro::run_channel_sweep(f.config(p, repro::kChannelRadius), options, f.threads);
  emit(repro::channel_sweep_csv(rows), f.out);
  return 0;
}

int cmd_unitary_sweep(const SweepFlags& f, const ParamFlags& p, bool printed_u3) {
  const auto rows = repro::run_unitary_sweep(f.config(p, repro::kUnitaryRadius), printed_u3, f.threads);
  emit(repro::unitary_sweep_csv(rows), f.out);
  std::cerr << "U3 = " << (printed_u3 ? "printed diag(e^{i pi/8}, -e^{i pi/8})" : "exp(i pi sigma_3 / 8)")
            << "; lb3 >= max(lb1, lb2) at "
            << repro::format_sig(100.0 * repro::fraction_lb3_tightest(rows), 4) << "% of "
            << rows.size() << " grid points\n";
  return 0;
}

int cmd_bounds(const std::string& bloch, const std::string& state_file,
               const std::vector<std::string>& channel_files, const ParamFlags& p,
               std::uint64_t cap, const std::string& sign, const std::string& out) {
  if (bloch.empty() == state_file.empty()) {
    throw DomainError("bounds: give exactly one of --bloch or --state");
  }
  const DensityMatrix rho = bloch.empty() ? json_io::load_state(state_file) : bloch_state(parse_bloch(bloch));
  std::vector<KrausChannel> channels;
  for (const auto& file : channel_files) channels.push_back(json_io::load_channel(file));
  const BoundReport report =
      channel_bound_report(rho, channels, p.params(), BoundOptions{cap, parse_sign_policy(sign)});
  emit(json_io::report_to_json(report).dump(2) + "\n", out);
  for (const auto& v : report.violations()) std::cerr << "soundness violation: " << v << '\n';
  return report.sound() ? 0 : 1;
}

// Random full-rank qubit state, the three example channels at random q and
// random valid parameters; same for three random unitaries.
int cmd_selftest(std::uint64_t seed, int draws) {
  bool ok = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    ok = ok && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "  " << detail << '\n';
  };

  const auto table = repro::compare_table1();
  double worst = 0.0;
  bool table_ok = true;
  for (const auto& row : table) {
    worst = std::max(worst, row.max_abs_error);
    table_ok = table_ok && row.pass;
  }
  line("table1 (q=0.4)", table_ok, "max|err| = " + repro::format_sig(worst, 3));
  const auto spot = repro::compare_spot_check();
  line("spot check (q=0.2, theta=pi/2)", spot.pass,
       "max|err| = " + repro::format_sig(spot.max_abs_error, 3));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_params = [&] {
    const double a = unit(rng);
    const double b = unit(rng) * (1.0 - a);
    return SkewParams(a, b, unit(rng));
  };
  auto random_state = [&] {
    const double radius = 0.999 * std::cbrt(unit(rng));
    const double z = 2.0 * unit(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double s = std::sqrt(1.0 - z * z);
    return bloch_state({radius * s * std::cos(phi), radius * s * std::sin(phi), radius * z});
  };

  int channel_fail = 0;
  int unitary_fail = 0;
  for (int k = 0; k < draws; ++k) {
    const auto rho = random_state();
    const auto params = random_params();
    const auto report = channel_bound_report(rho, repro::example_channels(0.999 * unit(rng)), params);
    if (!report.sound()) ++channel_fail;
    std::vector<UnitaryOp> us;
    for (int t = 0; t < 3; ++t) {
      const int axis = 1 + static_cast<int>(unit(rng) * 3.0) % 3;
      us.push_back(pauli_rotation(axis, 2.0 * std::numbers::pi * unit(rng)));
    }
    if (!unitary_bound_report(rho, us, params).sound()) ++unitary_fail;
  }
  line("channel soundness", channel_fail == 0,
       std::to_string(draws - channel_fail) + "/" + std::to_string(draws) + " draws, seed " +
           std::to_string(seed));
  line("unitary soundness", unitary_fail == 0,
       std::to_string(draws - unitary_fail) + "/" + std::to_string(draws) + " draws, seed " +
           std::to_string(seed));

  const auto rep = repro::kraus_representation_check(0.4, std::numbers::pi / 3.0);
  std::cout << "[INFO] Kraus-representation dependence (bit flip, q=0.4, theta=pi/3): standard "
            << repro::format_sig(rep.standard) << ", Hadamard-mixed "
            << repro::format_sig(rep.mixed) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew-information sum uncertainty bounds for quantum channels"};
  app.require_subcommand(1);

  std::uint64_t cap = kDefaultTupleCap;
  std::string sign = "minus";
  auto add_cap_sign = [&](CLI::App* sub) {
    sub->add_option("--cap", cap, "maximum number of permutation tuples")->capture_default_str();
    sub->add_option("--sign", sign, "third-bound sign variant: minus (x=1), plus (x=0) or max")
        ->check(CLI::IsMember({"plus", "minus", "max"}))
        ->capture_default_str();
  };

  std::string table_out;
  auto* table1 = app.add_subcommand("table1", "reproduce the q=0.4 comparison table");
  table1->add_option("--out", table_out, "also write the table as CSV");
  table1->add_option("--sign", sign, "third-bound sign variant")
      ->check(CLI::IsMember({"plus", "minus", "max"}))
      ->capture_default_str();

  SweepFlags sweep_flags;
  ParamFlags sweep_params;
  auto* sweep = app.add_subcommand("sweep", "theta sweep of the channel bounds (CSV)");
  sweep_flags.attach(sweep, true);
  sweep_params.attach(sweep);
  add_cap_sign(sweep);

  SweepFlags usweep_flags;
  ParamFlags usweep_params;
  bool printed_u3 = false;
  auto* usweep = app.add_subcommand("unitary-sweep", "theta sweep of the unitary bounds (CSV)");
  usweep_flags.attach(usweep, false);
  usweep_params.attach(usweep);
  usweep->add_flag("--printed-u3", printed_u3,
                   "use diag(e^{i pi/8}, -e^{i pi/8}) instead of exp(i pi sigma_3/8)");

  std::string bloch;
  std::string state_file;
  std::vector<std::string> channel_files;
  std::string bounds_out;
  ParamFlags bounds_params;
  auto* bounds = app.add_subcommand("bounds", "bound report for JSON channels (JSON)");
  bounds->add_option("--bloch", bloch, "state as a Bloch vector x,y,z");
  bounds->add_option("--state", state_file, "state JSON file: {\"rho\": matrix} or {\"bloch\": [x,y,z]}");
  bounds->add_option("--channel", channel_files, "channel JSON file (repeat, at least 2)")
      ->required();
  bounds->add_option("--out", bounds_out, "write JSON here instead of stdout");
  bounds_params.attach(bounds);
  add_cap_sign(bounds);

  std::uint64_t seed = 0;
  int draws = 200;
  auto* selftest = app.add_subcommand("selftest", "published values plus seeded soundness draws");
  selftest->add_option("--seed", seed, "RNG seed")->capture_default_str();
  selftest->add_option("--draws", draws, "random configurations")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) return cmd_table1(sign, table_out);
    if (*sweep) return cmd_sweep(sweep_flags, sweep_params, cap, sign);
    if (*usweep) return cmd_unitary_sweep(usweep_flags, usweep_params, printed_u3);
    if (*bounds) {
      return cmd_bounds(bloch, state_file, channel_files, bounds_params, cap, sign, bounds_out);
    }
    if (*selftest) return cmd_selftest(seed, draws);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
