// speig: interval eigenvalues of sparse symmetric matrices via the filtered
// Lanczos procedure.  Subcommands: solve, filter-info, info, bench.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "speig/kernels.hpp"
#include "speig/lanczos.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;        // parse/file errors
constexpr int kExitInterval = 2;     // invalid interval
constexpr int kExitUnconverged = 3;  // solve hit max_dim without converging

struct SolveOptions {
  std::string matrix;
  double lo = 0.0;
  double hi = 0.0;
  int block = 3;
  int degree = 0;  // 0 = auto
  double epsilon = speig::kDefaultFilterEpsilon;
  double tol = 1e-10;
  int max_dim = 0;
  std::uint64_t seed = 20177;
  int check_every = 10;
  bool plain = false;
  std::string out;
  std::string vectors;
};

speig::LanczosConfig make_config(const SolveOptions& opt) {
  speig::LanczosConfig cfg;
  cfg.block_size = opt.block;
  cfg.tol = opt.tol;
  cfg.max_dim = opt.max_dim;
  cfg.seed = opt.seed;
  cfg.check_every = opt.check_every;
  cfg.epsilon = opt.epsilon;
  if (opt.degree > 0) cfg.degree = opt.degree;
  return cfg;
}

double percent(double part, double total) {
  if (total <= 0.0) return 0.0;
  return std::clamp(100.0 * part / total, 0.0, 100.0);
}

json report_json(const std::string& matrix, double lo, double hi, bool plain,
                 const speig::EigenResult& result, const speig::LanczosConfig& cfg) {
  const speig::SolveStats& s = result.stats;
  double max_residual = 0.0;
  for (double r : result.residuals) max_residual = std::max(max_residual, r);

  json j;
  j["matrix"] = matrix;
  j["interval"] = {lo, hi};
  j["eigs"] = result.eigenvalues.size();
  j["degree"] = s.degree;
  j["iters"] = s.block_steps;
  j["basis_vectors"] = s.basis_vectors;
  j["mv"] = s.mv_iteration;
  j["mv_bounds"] = s.mv_bounds;
  j["mv_total"] = s.mv_total;
  j["time_s"] = s.time_total_s;
  j["max_residual"] = max_residual;
  j["preproc_pct"] = percent(s.time_preproc_s, s.time_total_s);
  j["orth_pct"] = percent(s.time_orth_s, s.time_total_s);
  j["mv_pct"] = percent(s.time_mv_s, s.time_total_s);
  j["converged"] = s.converged;
  j["eigenvalues"] = result.eigenvalues;
  j["config"] = {{"block", cfg.block_size},
                 {"tol", cfg.tol},
                 {"max_dim", cfg.max_dim},
                 {"seed", cfg.seed},
                 {"check_every", cfg.check_every},
                 {"epsilon", cfg.epsilon},
                 {"degree", cfg.degree ? json(*cfg.degree) : json("auto")},
                 {"plain", plain}};
  return j;
}

int write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

int cmd_solve(const SolveOptions& opt) {
  speig::SparseSymMatrix A = speig::load_matrix_market(opt.matrix);
  const speig::LanczosConfig cfg = make_config(opt);

  speig::EigenResult result;
  try {
    result = opt.plain ? speig::plain_lanczos(A, opt.lo, opt.hi, cfg)
                       : speig::filtered_lanczos(A, opt.lo, opt.hi, cfg);
  } catch (const speig::IntervalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInterval;
  }

  if (!opt.out.empty()) {
    const json j = report_json(opt.matrix, opt.lo, opt.hi, opt.plain, result, cfg);
    const int rc = write_text(opt.out, j.dump(2) + "\n");
    if (rc != kExitOk) return rc;
  }
  if (!opt.vectors.empty())
    speig::save_dense_matrix_market(result.eigenvectors, opt.vectors);

  const speig::SolveStats& s = result.stats;
  double max_residual = 0.0;
  for (double r : result.residuals) max_residual = std::max(max_residual, r);

  std::printf("matrix        %s (n=%zu, nnz=%zu)\n", opt.matrix.c_str(), A.dim(), A.nnz());
  std::printf("interval      [%.17g, %.17g]%s\n", opt.lo, opt.hi, opt.plain ? "  (plain)" : "");
  if (!opt.plain) std::printf("degree        %d%s\n", s.degree, s.degree_clamped ? "  (clamped)" : "");
  std::printf("iters         %d  (basis vectors: %d)\n", s.block_steps, s.basis_vectors);
  std::printf("MV            %llu  (+%llu for bounds)\n",
              static_cast<unsigned long long>(s.mv_iteration),
              static_cast<unsigned long long>(s.mv_bounds));
  std::printf("time          %.3fs  (preproc %.1f%%, orth %.1f%%, mv %.1f%%)\n",
              s.time_total_s, percent(s.time_preproc_s, s.time_total_s),
              percent(s.time_orth_s, s.time_total_s), percent(s.time_mv_s, s.time_total_s));
  std::printf("max residual  %.3e\n", max_residual);
  std::printf("eigenvalues   %zu\n", result.eigenvalues.size());
  for (double v : result.eigenvalues) std::printf("%.17g\n", v);

  if (!s.converged) {
    std::cerr << "warning: not converged within max_dim="
              << cfg.resolved_max_dim(A.dim()) << " basis vectors\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

struct FilterInfoOptions {
  double lo = 0.0, hi = 0.0;
  int degree = 0;  // 0 = auto
  double epsilon = speig::kDefaultFilterEpsilon;
  std::vector<double> bounds{-1.0, 1.0};
  int samples = 2001;
  bool as_json = false;
};

int cmd_filter_info(const FilterInfoOptions& opt) {
  if (opt.bounds.size() != 2) {
    std::cerr << "error: --bounds expects two values lo,hi\n";
    return kExitUsage;
  }
  speig::SpectralBounds bounds(opt.bounds[0], opt.bounds[1]);
  speig::ChebyshevFilter filter = speig::build_filter(
      bounds, opt.lo, opt.hi,
      opt.degree > 0 ? std::optional<int>(opt.degree) : std::nullopt, opt.epsilon);

  const int s = std::max(2, opt.samples);
  std::vector<double> grid(s), vals(s);
  for (int i = 0; i < s; ++i) {
    grid[i] = bounds.lambda_min() +
              (bounds.lambda_max() - bounds.lambda_min()) * i / (s - 1);
    vals[i] = filter.evaluate(grid[i]);
  }

  if (opt.as_json) {
    json j;
    j["degree"] = filter.degree();
    j["clamped"] = filter.degree_clamped();
    j["interval"] = {filter.alpha(), filter.beta()};
    j["bounds"] = {bounds.lambda_min(), bounds.lambda_max()};
    j["coefficients"] = std::vector<double>(filter.coefficients().begin(),
                                            filter.coefficients().end());
    json samples = json::array();
    for (int i = 0; i < s; ++i) samples.push_back({grid[i], vals[i]});
    j["samples"] = samples;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::printf("# degree,%d\n", filter.degree());
  if (filter.degree_clamped()) std::printf("# clamped,1\n");
  std::printf("# alpha,%.17g\n", filter.alpha());
  std::printf("# beta,%.17g\n", filter.beta());
  std::printf("# bounds,%.17g,%.17g\n", bounds.lambda_min(), bounds.lambda_max());
  std::printf("record,x,value\n");
  const auto coeffs = filter.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    std::printf("coef,%zu,%.17g\n", i, coeffs[i]);
  for (int i = 0; i < s; ++i) std::printf("sample,%.17g,%.17g\n", grid[i], vals[i]);
  return kExitOk;
}

int cmd_info(const std::string& matrix, int bounds_steps) {
  speig::SparseSymMatrix A = speig::load_matrix_market(matrix);
  std::printf("matrix    %s\n", matrix.c_str());
  std::printf("n         %zu\n", A.dim());
  std::printf("nnz       %zu\n", A.nnz());
  std::printf("nnz/n     %.1f\n", A.dim() ? static_cast<double>(A.nnz()) / A.dim() : 0.0);
  std::printf("kernels   %s\n", speig::kernels::backend_name(speig::kernels::active_backend()));
  try {
    const speig::SpectralBounds b = speig::estimate_spectral_bounds(A, bounds_steps);
    std::printf("spectral interval  [%.6g, %.6g]  (estimated, %d Lanczos steps)\n",
                b.lambda_min(), b.lambda_max(), bounds_steps);
  } catch (const speig::Error& e) {
    std::printf("spectral interval  unavailable (%s)\n", e.what());
  }
  return kExitOk;
}

struct BenchOptions {
  SolveOptions base;
  std::string degrees = "auto";
  std::string csv;
  std::string out;
};

int cmd_bench(const BenchOptions& opt) {
  speig::SparseSymMatrix A = speig::load_matrix_market(opt.base.matrix);

  struct Row {
    std::string degree_label;
    bool failed = false;
    std::string error;
    json report;
  };
  std::vector<Row> rows;

  std::vector<std::string> tokens;
  {
    std::string tok;
    for (char c : opt.degrees) {
      if (c == ',') {
        if (!tok.empty()) tokens.push_back(tok);
        tok.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        tok += c;
      }
    }
    if (!tok.empty()) tokens.push_back(tok);
  }
  if (tokens.empty()) {
    std::cerr << "error: --degrees expects a comma-separated list (integers or 'auto')\n";
    return kExitUsage;
  }

  bool all_ok = true;
  for (const std::string& tok : tokens) {
    Row row;
    row.degree_label = tok;
    SolveOptions one = opt.base;
    if (tok == "auto") {
      one.degree = 0;
    } else {
      try {
        one.degree = std::stoi(tok);
      } catch (...) {
        std::cerr << "error: bad degree '" << tok << "'\n";
        return kExitUsage;
      }
      if (one.degree < 1) {
        std::cerr << "error: degree must be >= 1\n";
        return kExitUsage;
      }
    }
    const speig::LanczosConfig cfg = make_config(one);
    try {
      speig::EigenResult result = one.plain
                                      ? speig::plain_lanczos(A, one.lo, one.hi, cfg)
                                      : speig::filtered_lanczos(A, one.lo, one.hi, cfg);
      row.report = report_json(one.matrix, one.lo, one.hi, one.plain, result, cfg);
      if (!result.stats.converged) {
        row.failed = true;
        row.error = "not converged";
      }
    } catch (const speig::Error& e) {
      row.failed = true;
      row.error = e.what();
    }
    all_ok = all_ok && !row.failed;
    rows.push_back(std::move(row));
  }

  std::printf("%-8s %6s %6s %10s %10s %12s %7s %7s %7s  %s\n", "degree", "eigs",
              "iters", "MV", "time(s)", "residual", "PRE%", "ORTH%", "MV%", "status");
  for (const Row& row : rows) {
    if (row.report.is_null()) {
      std::printf("%-8s %6s %6s %10s %10s %12s %7s %7s %7s  error: %s\n",
                  row.degree_label.c_str(), "-", "-", "-", "-", "-", "-", "-", "-",
                  row.error.c_str());
      continue;
    }
    const json& r = row.report;
    std::printf("%-8d %6zu %6d %10llu %10.3f %12.3e %7.1f %7.1f %7.1f  %s\n",
                r["degree"].get<int>(), r["eigs"].get<std::size_t>(),
                r["iters"].get<int>(),
                static_cast<unsigned long long>(r["mv"].get<std::uint64_t>()),
                r["time_s"].get<double>(), r["max_residual"].get<double>(),
                r["preproc_pct"].get<double>(), r["orth_pct"].get<double>(),
                r["mv_pct"].get<double>(), row.failed ? row.error.c_str() : "ok");
  }

  if (!opt.csv.empty()) {
    std::string csv = "matrix,lo,hi,eigs,degree,iters,mv,time_s,max_residual,"
                      "preproc_pct,orth_pct,mv_pct,converged\n";
    char buf[512];
    for (const Row& row : rows) {
      if (row.report.is_null()) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,,,,,,,,,,error\n",
                      opt.base.matrix.c_str(), opt.base.lo, opt.base.hi);
        csv += buf;
        continue;
      }
      const json& r = row.report;
      std::snprintf(buf, sizeof(buf),
                    "%s,%.17g,%.17g,%zu,%d,%d,%llu,%.6g,%.6g,%.6g,%.6g,%.6g,%s\n",
                    opt.base.matrix.c_str(), opt.base.lo, opt.base.hi,
                    r["eigs"].get<std::size_t>(), r["degree"].get<int>(),
                    r["iters"].get<int>(),
                    static_cast<unsigned long long>(r["mv"].get<std::uint64_t>()),
                    r["time_s"].get<double>(), r["max_residual"].get<double>(),
                    r["preproc_pct"].get<double>(), r["orth_pct"].get<double>(),
                    r["mv_pct"].get<double>(), r["converged"].get<bool>() ? "true" : "false");
      csv += buf;
    }
    const int rc = write_text(opt.csv, csv);
    if (rc != kExitOk) return rc;
  }

  if (!opt.out.empty()) {
    json all = json::array();
    for (const Row& row : rows) {
      if (row.report.is_null())
        all.push_back({{"degree", row.degree_label}, {"error", row.error}});
      else
        all.push_back(row.report);
    }
    const int rc = write_text(opt.out, all.dump(2) + "\n");
    if (rc != kExitOk) return rc;
  }

  return all_ok ? kExitOk : kExitUnconverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interval eigenvalues of sparse symmetric matrices "
               "(filtered block Lanczos)"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "compute all eigenpairs in [lo, hi]");
  solve->add_option("--matrix", solve_opt.matrix, "Matrix Market file")->required();
  solve->add_option("--lo", solve_opt.lo, "interval lower endpoint")->required();
  solve->add_option("--hi", solve_opt.hi, "interval upper endpoint")->required();
  solve->add_option("--block", solve_opt.block, "Lanczos block size (default 3)");
  solve->add_option("--degree", solve_opt.degree, "fixed filter degree (default: auto)");
  solve->add_option("--epsilon", solve_opt.epsilon, "auto-degree tolerance");
  solve->add_option("--tol", solve_opt.tol, "relative residual tolerance");
  solve->add_option("--max-dim", solve_opt.max_dim, "basis size cap (default min(n, 3000))");
  solve->add_option("--seed", solve_opt.seed, "random seed");
  solve->add_option("--check-every", solve_opt.check_every, "blocks between convergence checks");
  solve->add_flag("--plain", solve_opt.plain, "iterate with A itself (no filter)");
  solve->add_option("--out", solve_opt.out, "write a JSON report here");
  solve->add_option("--vectors", solve_opt.vectors, "write eigenvectors (MM array format)");

  FilterInfoOptions fi_opt;
  CLI::App* fi = app.add_subcommand("filter-info", "dump a filter's coefficients and samples");
  fi->add_option("--lo", fi_opt.lo, "interval lower endpoint")->required();
  fi->add_option("--hi", fi_opt.hi, "interval upper endpoint")->required();
  fi->add_option("--degree", fi_opt.degree, "fixed degree (default: auto)");
  fi->add_option("--epsilon", fi_opt.epsilon, "auto-degree tolerance");
  fi->add_option("--bounds", fi_opt.bounds, "spectral bounds lo,hi (default -1,1)")
      ->delimiter(',')->expected(2);
  fi->add_option("--samples", fi_opt.samples, "evaluation grid size (default 2001)");
  fi->add_flag("--json", fi_opt.as_json, "emit JSON instead of CSV");

  std::string info_matrix;
  int info_steps = 50;
  CLI::App* info = app.add_subcommand("info", "matrix summary and estimated spectral interval");
  info->add_option("--matrix", info_matrix, "Matrix Market file")->required();
  info->add_option("--bounds-steps", info_steps, "Lanczos steps for the estimate");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "one solve per filter degree, tabulated");
  bench->add_option("--matrix", bench_opt.base.matrix, "Matrix Market file")->required();
  bench->add_option("--lo", bench_opt.base.lo, "interval lower endpoint")->required();
  bench->add_option("--hi", bench_opt.base.hi, "interval upper endpoint")->required();
  bench->add_option("--degrees", bench_opt.degrees,
                    "comma-separated degrees; 'auto' selects automatically")->required();
  bench->add_option("--block", bench_opt.base.block, "Lanczos block size (default 3)");
  bench->add_option("--epsilon", bench_opt.base.epsilon, "auto-degree tolerance");
  bench->add_option("--tol", bench_opt.base.tol, "relative residual tolerance");
  bench->add_option("--max-dim", bench_opt.base.max_dim, "basis size cap");
  bench->add_option("--seed", bench_opt.base.seed, "random seed");
  bench->add_option("--check-every", bench_opt.base.check_every, "blocks between checks");
  bench->add_flag("--plain", bench_opt.base.plain, "iterate with A itself");
  bench->add_option("--csv", bench_opt.csv, "write rows as CSV here");
  bench->add_option("--out", bench_opt.out, "write rows as JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opt);
    if (fi->parsed()) return cmd_filter_info(fi_opt);
    if (info->parsed()) return cmd_info(info_matrix, info_steps);
    if (bench->parsed()) return cmd_bench(bench_opt);
  } catch (const speig::IntervalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInterval;
  } catch (const speig::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
