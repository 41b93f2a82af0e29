// grasscode command-line driver.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grasscode/diametral.hpp"
#include "grasscode/io.hpp"
#include "grasscode/montecarlo.hpp"
#include "grasscode/reproduce.hpp"
#include "grasscode/tangent_basis.hpp"

namespace fs = std::filesystem;
using namespace grasscode;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a:b:step" or a single value, in dB.
std::vector<double> parse_snr_range(const std::string& spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    const std::string tok = spec.substr(start, colon == std::string::npos ? colon : colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--snr: cannot parse \"" + tok + "\"");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw UsageError("--snr expects a:b:step or a single value");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || b < a) throw UsageError("--snr needs step > 0 and b >= a");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

void print_summary(const SimResult& r) {
  std::printf("T=%d M=%d L=%d N=%d detector=%s seed=%llu constellation=%s\n", r.T, r.M, r.L,
              r.config.N, std::string(to_string(r.config.detector)).c_str(),
              static_cast<unsigned long long>(r.config.seed), r.constellation_hash.c_str());
  std::printf("%8s %12s %10s %10s %12s %12s\n", "snr_db", "trials", "sym_err", "bit_err", "SER",
              "BER");
  for (const auto& p : r.points) {
    std::printf("%8.2f %12llu %10llu %10llu %12.4e %12.4e\n", p.snr_db,
                static_cast<unsigned long long>(p.trials),
                static_cast<unsigned long long>(p.sym_errors),
                static_cast<unsigned long long>(p.bit_errors), p.ser, p.ber);
  }
  std::printf("wall time %.2f s\n", r.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmannian constellation design, metrics and simulation"};
  app.require_subcommand(1);

  // design
  DesignConfig dcfg;
  std::string criterion = "dp";
  std::string design_out;
  std::string trace_out;
  auto* design_cmd = app.add_subcommand("design", "Design a constellation");
  design_cmd->add_option("--m", dcfg.M, "Subspace dimension M (T = 2M)")->required();
  design_cmd->add_option("--l", dcfg.L, "Number of points, a power of two")->required();
  design_cmd->add_option("--criterion", criterion, "Mapping criterion")
      ->check(CLI::IsMember({"dp", "ub"}));
  design_cmd->add_option("--n-ub", dcfg.n_for_ub, "Receive antennas assumed by UB");
  design_cmd->add_option("--grid", dcfg.x_grid_size, "Mapping-parameter grid size");
  design_cmd->add_option("--out", design_out, "Constellation file to write");
  design_cmd->add_option("--trace", trace_out, "CSV of the mapping-parameter sweep");

  // metrics
  std::string metrics_in;
  int metrics_n = 2;
  auto* metrics_cmd = app.add_subcommand("metrics", "Recompute metrics of a constellation file");
  metrics_cmd->add_option("--in", metrics_in, "Constellation file")->required();
  metrics_cmd->add_option("--n-ub", metrics_n, "Receive antennas assumed by UB");

  // simulate
  ChannelConfig ccfg;
  std::string sim_in;
  std::string snr_spec = "0:20:2";
  std::string detector = "fast";
  std::string sim_out;
  std::string sim_json;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo SER/BER over Rayleigh block fading");
  sim_cmd->add_option("--in", sim_in, "Constellation file")->required();
  sim_cmd->add_option("--n", ccfg.N, "Receive antennas");
  sim_cmd->add_option("--snr", snr_spec, "SNR range in dB, a:b:step");
  sim_cmd->add_option("--trials", ccfg.max_trials, "Maximum trials per SNR point");
  sim_cmd->add_option("--min-errors", ccfg.min_errors, "Stop a point after this many symbol errors");
  sim_cmd->add_option("--seed", ccfg.seed, "Random seed");
  sim_cmd->add_option("--detector", detector, "ML detector")->check(CLI::IsMember({"fast", "naive"}));
  sim_cmd->add_option("--threads", ccfg.threads, "Worker threads (0 = auto)");
  sim_cmd->add_option("--batch", ccfg.batch, "Trials per stopping check");
  sim_cmd->add_option("--out", sim_out, "CSV results file");
  sim_cmd->add_option("--json", sim_json, "JSON results file");

  // diametral
  int dia_m = 2;
  auto* dia_cmd = app.add_subcommand("diametral", "Largest diametral set of the basis");
  dia_cmd->add_option("--m", dia_m, "Subspace dimension M")->required();

  // basis-dump
  int basis_m = 2;
  std::string basis_out;
  auto* basis_cmd = app.add_subcommand("basis-dump", "Write the tangent basis matrices");
  basis_cmd->add_option("--m", basis_m, "Subspace dimension M")->required();
  basis_cmd->add_option("--out", basis_out, "Output file (stdout if omitted)");

  // baseline
  int base_t = 4, base_m = 2, base_l = 16;
  std::uint64_t base_seed = 1;
  std::string base_out;
  auto* base_cmd = app.add_subcommand("baseline", "Random Grassmannian constellation");
  base_cmd->add_option("--t", base_t, "Block length T")->required();
  base_cmd->add_option("--m", base_m, "Subspace dimension M")->required();
  base_cmd->add_option("--l", base_l, "Number of points")->required();
  base_cmd->add_option("--seed", base_seed, "Random seed");
  base_cmd->add_option("--out", base_out, "Constellation file to write")->required();

  // reproduce
  int table = 0;
  int figure = 0;
  std::string repro_dir = ".";
  auto* repro_cmd = app.add_subcommand("reproduce", "Regenerate reference tables or sweeps");
  auto* table_opt = repro_cmd->add_option("--table", table, "Metric table (3 or 4)")
                        ->check(CLI::IsMember({3, 4}));
  auto* fig_opt = repro_cmd->add_option("--figure", figure, "Sweep data (2)")->check(CLI::IsMember({2}));
  repro_cmd->add_option("--out-dir", repro_dir, "Directory for sweep CSVs");
  table_opt->excludes(fig_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*design_cmd) {
      dcfg.criterion = parse_criterion(criterion);
      MappingSweep sweep;
      const auto c = design(dcfg, trace_out.empty() ? nullptr : &sweep);
      if (!design_out.empty()) save_constellation(c, design_out);
      if (!trace_out.empty()) write_text_file(trace_out, sweep_csv(sweep));
      std::printf("case %s, D=%d, x*=%.6f\n", std::string(to_string(c.design_case)).c_str(), c.D,
                  c.x_star);
      std::cout << format_metrics_report(compute_metrics_report(c, dcfg.n_for_ub));
    } else if (*metrics_cmd) {
      if (metrics_n < 1) throw UsageError("--n-ub must be >= 1");
      const auto c = load_constellation(metrics_in);
      std::cout << format_metrics_report(compute_metrics_report(c, metrics_n));
    } else if (*sim_cmd) {
      if (ccfg.max_trials == 0) throw UsageError("--trials must be positive");
      if (ccfg.N < 1) throw UsageError("--n must be >= 1");
      if (ccfg.batch == 0) throw UsageError("--batch must be positive");
      ccfg.snr_db = parse_snr_range(snr_spec);
      ccfg.detector = parse_detector(detector);
      const auto c = load_constellation(sim_in);
      const auto r = run_monte_carlo(ccfg, c);
      if (!sim_out.empty()) write_text_file(sim_out, sim_result_csv(r));
      if (!sim_json.empty()) write_text_file(sim_json, sim_result_json(r));
      print_summary(r);
    } else if (*dia_cmd) {
      if (dia_m < 1) throw UsageError("--m must be >= 1");
      const auto r = max_diametral_set(dia_m);
      const auto basis = weyl_heisenberg_basis(dia_m);
      std::printf("M=%d D=%d (%s search)\n", dia_m, r.D, r.exact ? "exact" : "greedy");
      for (int k : r.set.pairs()) {
        std::printf("  ±%d  %s\n", k, basis[static_cast<std::size_t>(k)].label().c_str());
      }
    } else if (*basis_cmd) {
      if (basis_m < 1) throw UsageError("--m must be >= 1");
      const auto text = write_basis_dump(basis_m);
      if (basis_out.empty()) {
        std::cout << text;
      } else {
        write_text_file(basis_out, text);
      }
    } else if (*base_cmd) {
      const auto c = random_grassmannian_baseline(base_t, base_m, base_l, base_seed);
      save_constellation(c, base_out);
      std::cout << format_metrics_report(compute_metrics_report(c, 2));
    } else if (*repro_cmd) {
      if (table != 0) {
        const auto r = table == 3 ? reproduce_table3() : reproduce_table4();
        std::cout << format_table_report(r);
        return r.pass() ? 0 : kExitRuntime;
      }
      if (figure == 2) {
        const auto f = reproduce_figure2();
        fs::create_directories(repro_dir);
        const fs::path dir(repro_dir);
        write_text_file(dir / "sweep_m2_l4.csv", sweep_csv(f.l4));
        write_text_file(dir / "sweep_m2_l16.csv", sweep_csv(f.l16));
        std::printf("L=4:  x*=%.6f (%zu samples)\nL=16: x*=%.6f (%zu samples)\n", f.l4.x_star,
                    f.l4.trace.size(), f.l16.x_star, f.l16.trace.size());
        std::printf("wrote %s and %s\n", (dir / "sweep_m2_l4.csv").c_str(),
                    (dir / "sweep_m2_l16.csv").c_str());
        return 0;
      }
      throw UsageError("reproduce needs --table or --figure");
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.code() == Errc::InvalidSize || e.code() == Errc::InvalidArgument) ? kExitUsage
                                                                                : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
