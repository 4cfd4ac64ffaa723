#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tridiag/applications.hpp"
#include "tridiag/experiments.hpp"
#include "tridiag/io.hpp"
#include "tridiag/spectrum.hpp"

namespace {

using namespace tridiag;

constexpr double kPi = 3.141592653589793238462643383279502884;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
}

struct ParamFlags {
  std::string b0 = "0", b1 = "0", c0 = "0", cm1 = "0";

  void attach(CLI::App* cmd) {
    cmd->add_option("--b0", b0, "boundary b0, complex literal a+bi");
    cmd->add_option("--b1", b1, "boundary b1");
    cmd->add_option("--c0", c0, "boundary c0");
    cmd->add_option("--cm1", cm1, "boundary c_{-1}");
  }
  BoundaryParams params(int n) const {
    BoundaryParams p;
    p.b0 = io::parse_complex(b0);
    p.b1 = io::parse_complex(b1);
    p.c0 = io::parse_complex(c0);
    p.cm1 = io::parse_complex(cm1);
    p.n = n;
    return p;
  }
};

int run_spectrum(const BoundaryParams& p, const SolveOptions& opts,
                 const std::string& format, const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  SpectrumResult res = solve_spectrum(p, opts);
  double wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  if (format == "csv")
    write_output(out_path, io::spectrum_to_csv(res));
  else
    write_output(out_path, io::spectrum_to_json(res, wall).dump(2) + "\n");
  return 0;
}

std::string region_csv(double a_min, double a_max, double b_min, double b_max,
                       int grid) {
  std::ostringstream os;
  os.precision(17);
  os << "a,b,member\n";
  for (const RegionSample& s :
       failure_region_samples(a_min, a_max, b_min, b_max, grid, grid))
    os << s.a << "," << s.b << "," << (s.member ? 1 : 0) << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fast spectra of complex tridiagonal matrices with arbitrary boundary "
      "rows"};
  app.set_config("--config", "", "key = value configuration file");
  app.fallthrough();  // let --config appear after the subcommand
  app.require_subcommand(1);

  // ---- spectrum ----
  auto* sp =
      app.add_subcommand("spectrum", "solve one boundary-parameter problem");
  int sp_n = 0;
  ParamFlags sp_params;
  SolveOptions sp_opts;
  std::string sp_format = "json", sp_out = "-";
  sp->add_option("--n", sp_n, "interior size index; the matrix is (n+1)x(n+1)")
      ->required();
  sp_params.attach(sp);
  sp->add_option("--eps-t", sp_opts.eps_t, "phase-root bisection tolerance");
  sp->add_option("--eps", sp_opts.eps, "contraction convergence tolerance");
  sp->add_option("--max-iter", sp_opts.max_iter, "contraction iteration cap");
  sp->add_option("--fixed-m", sp_opts.fixed_iterations,
                 "run exactly M contraction steps (experiments)");
  sp->add_option("--grid-n", sp_opts.grid_n, "bracket grid size N (>= 6n)");
  sp->add_option("--circle-tol", sp_opts.circle_tol,
                 "unit-circle collision tolerance");
  sp->add_option("--threads", sp_opts.threads, "worker threads (0 = hardware)");
  sp->add_flag("--vectors", sp_opts.compute_vectors,
               "compute eigenvectors and residuals");
  sp->add_flag("--refine-special", sp_opts.refine_special,
               "Newton-refine special eigenvalues on H");
  sp->add_option("--format", sp_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sp->add_option("--out", sp_out, "output path, '-' for stdout");

  // ---- advdiff ----
  auto* ad = app.add_subcommand(
      "advdiff",
      "advection-diffusion eigenvalues (n^2 B) and leading-value asymptotics");
  double ad_K = 0.0;
  int ad_n = 0;
  std::string ad_bc = "dirichlet", ad_format = "json", ad_out = "-";
  bool ad_leading = false;
  int ad_threads = 0;
  ad->add_option("--K", ad_K, "advection coefficient")->required();
  ad->add_option("--n", ad_n, "grid count")->required();
  ad->add_option("--bc", ad_bc, "dirichlet or mixed")
      ->check(CLI::IsMember({"dirichlet", "mixed"}));
  ad->add_flag("--leading", ad_leading, "report the leading-eigenvalue study");
  ad->add_option("--threads", ad_threads, "worker threads");
  ad->add_option("--format", ad_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  ad->add_option("--out", ad_out, "output path");

  // ---- pbc ----
  auto* pb = app.add_subcommand(
      "pbc", "periodic-boundary-condition failure demonstrator");
  std::string pb_r1, pb_r2 = "1";
  std::string pb_side = "left", pb_out = "-";
  int pb_verify = 0, pb_grid = 0;
  double pb_amin = -0.2, pb_amax = 1.2, pb_bmin = -0.6, pb_bmax = 0.6;
  pb->add_option("--r1", pb_r1, "designated root r1, complex literal");
  pb->add_option("--r2", pb_r2, "second root r2");
  pb->add_option("--side", pb_side, "left, right, or both")
      ->check(CLI::IsMember({"left", "right", "both"}));
  pb->add_option("--verify-n", pb_verify,
                 "confirm against the dense oracle at this size");
  pb->add_option("--region-grid", pb_grid,
                 "emit a CSV raster of the failure region instead");
  pb->add_option("--a-min", pb_amin, "region raster bounds");
  pb->add_option("--a-max", pb_amax, "region raster bounds");
  pb->add_option("--b-min", pb_bmin, "region raster bounds");
  pb->add_option("--b-max", pb_bmax, "region raster bounds");
  pb->add_option("--out", pb_out, "output path");

  // ---- experiment-error-scaling ----
  auto* ee = app.add_subcommand(
      "experiment-error-scaling",
      "fixed-M eigenvalue error vs n, with log-log slopes per M");
  std::vector<int> ee_ns = {50, 150, 250, 350, 450, 550};
  std::vector<int> ee_ms = {1, 2, 3, 4};
  ParamFlags ee_params;
  {
    BoundaryParams def = experiment_params(2);
    ee_params.b0 = io::format_complex(def.b0);
    ee_params.b1 = io::format_complex(def.b1);
    ee_params.c0 = io::format_complex(def.c0);
    ee_params.cm1 = io::format_complex(def.cm1);
  }
  int ee_threads = 0;
  std::string ee_out = "-";
  ee->add_option("--n-list", ee_ns, "matrix sizes");
  ee->add_option("--m-list", ee_ms, "fixed iteration counts");
  ee_params.attach(ee);
  ee->add_option("--threads", ee_threads, "worker threads");
  ee->add_option("--out", ee_out, "output path");

  // ---- experiment-timing ----
  auto* et = app.add_subcommand("experiment-timing",
                                "median solve time vs n and its slope");
  std::vector<long> et_ns = {1000, 10000, 100000};
  int et_reps = 3, et_threads = 1;
  ParamFlags et_params;
  {
    BoundaryParams def = experiment_params(2);
    et_params.b0 = io::format_complex(def.b0);
    et_params.b1 = io::format_complex(def.b1);
    et_params.c0 = io::format_complex(def.c0);
    et_params.cm1 = io::format_complex(def.cm1);
  }
  std::string et_out = "-";
  et->add_option("--n-list", et_ns, "matrix sizes");
  et->add_option("--reps", et_reps, "repetitions per size (median)");
  et_params.attach(et);
  et->add_option("--threads", et_threads, "worker threads (default 1)");
  et->add_option("--out", et_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sp->parsed())
      return run_spectrum(sp_params.params(sp_n), sp_opts, sp_format, sp_out);

    if (ad->parsed()) {
      auto bc = ad_bc == "mixed" ? BoundaryCondition::mixed
                                 : BoundaryCondition::dirichlet;
      AdvDiffSystem sys = advdiff_build(ad_K, ad_n, bc);
      SolveOptions opts;
      opts.threads = ad_threads;
      std::vector<double> nus = advdiff_spectrum(sys, opts);
      if (ad_format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "nu\n";
        for (double v : nus) os << v << "\n";
        write_output(ad_out, os.str());
        return 0;
      }
      nlohmann::ordered_json j;
      j["schema"] = "tridiag/1";
      j["K"] = ad_K;
      j["n"] = ad_n;
      j["bc"] = ad_bc;
      j["eigenvalues"] = nus;
      if (ad_leading) {
        nlohmann::ordered_json lead;
        lead["nu_solver"] = nus.front();
        if (bc == BoundaryCondition::mixed && ad_K > 1.0) {
          LeadingAsymptotic la = leading_eigenvalue_asymptotic(ad_K);
          lead["zeta"] = la.zeta;
          lead["nu_zeta"] = la.nu;
          lead["nu_closed_form"] = la.nu_closed_form;
        }
        if (bc == BoundaryCondition::dirichlet)
          lead["nu_limit"] = -ad_K * ad_K - kPi * kPi;
        j["leading"] = std::move(lead);
      }
      write_output(ad_out, j.dump(2) + "\n");
      return 0;
    }

    if (pb->parsed()) {
      if (pb_grid > 0) {
        write_output(pb_out,
                     region_csv(pb_amin, pb_amax, pb_bmin, pb_bmax, pb_grid));
        return 0;
      }
      if (pb_r1.empty())
        throw Error("pbc needs --r1 (or --region-grid for the raster)");
      FailureSpec spec;
      spec.r1 = io::parse_complex(pb_r1);
      spec.r2 = io::parse_complex(pb_r2);
      spec.side = pb_side == "right"  ? FailureSpec::Side::right
                  : pb_side == "both" ? FailureSpec::Side::both
                                      : FailureSpec::Side::left;
      PbcReport rep = pbc_failure(spec, pb_verify);
      nlohmann::ordered_json j;
      j["schema"] = "tridiag/1";
      j["r1"] = io::format_complex(spec.r1);
      j["r2"] = io::format_complex(spec.r2);
      j["side"] = pb_side;
      j["params"] = {{"b0", io::format_complex(rep.params.b0)},
                     {"b1", io::format_complex(rep.params.b1)},
                     {"c0", io::format_complex(rep.params.c0)},
                     {"cm1", io::format_complex(rep.params.cm1)}};
      j["region_member"] = rep.region_member;
      j["unstable_eigenvalue"] = {{"re", rep.unstable_eigenvalue.real()},
                                  {"im", rep.unstable_eigenvalue.imag()}};
      j["shifted_growth"] = rep.shifted_growth;
      j["deflation_note"] = rep.deflation_note;
      if (rep.oracle_checked)
        j["oracle"] = {{"n", pb_verify}, {"distance", rep.oracle_distance}};
      write_output(pb_out, j.dump(2) + "\n");
      return 0;
    }

    if (ee->parsed()) {
      ErrorScalingResult res = error_scaling_experiment(
          ee_ns, ee_ms, ee_params.params(2), ee_threads);
      std::ostringstream os;
      os.precision(17);
      os << "n,M,max_error\n";
      for (const ErrorScalingRow& r : res.rows)
        os << r.n << "," << r.M << "," << r.max_error << "\n";
      for (const auto& [M, slope] : res.slopes)
        os << "# slope_M" << M << "=" << slope << "\n";
      write_output(ee_out, os.str());
      return 0;
    }

    if (et->parsed()) {
      TimingResult res =
          timing_experiment(et_ns, et_reps, et_params.params(2), et_threads);
      std::ostringstream os;
      os.precision(17);
      os << "n,wall_time_ms\n";
      for (const TimingRow& r : res.rows) os << r.n << "," << r.median_ms << "\n";
      os << "# loglog_slope=" << res.slope << "\n";
      write_output(et_out, os.str());
      return 0;
    }
  } catch (const DegenerateCircleRoot& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 2;
  } catch (const BracketCountMismatch& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
