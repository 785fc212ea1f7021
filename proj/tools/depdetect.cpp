#include <filesystem>
#include <iostream>
#include <set>
#include <variant>

#include "CLI11.hpp"

#include "depdetect/cache_io.hpp"
#include "depdetect/detector.hpp"
#include "depdetect/height.hpp"
#include "depdetect/jobfile.hpp"
#include "depdetect/multiplicative.hpp"
#include "depdetect/numutil.hpp"
#include "depdetect/orders.hpp"
#include "depdetect/report.hpp"

namespace dd = depdetect;

namespace {

struct Flags {
  std::string input;
  long bound = 0;  // 0: job-level bound, then the default
  int threads = 1;
  std::string cache_path;
  long box = 12;
  double tol = 1e-8;
  bool no_oracle = false;
  bool verbose = false;
  bool no_timestamp = false;
};

long effective_bound(const Flags& f, long job_bound) {
  if (f.bound > 0) return f.bound;
  if (job_bound > 0) return job_bound;
  return 10000;
}

int verdict_exit(dd::VerdictKind k) {
  switch (k) {
    case dd::VerdictKind::Dependent:
      return 0;
    case dd::VerdictKind::Independent:
      return 1;
    default:
      return 2;
  }
}

dd::ScanConfig scan_config(const Flags& f) {
  dd::ScanConfig cfg;
  cfg.threads = f.threads;
  cfg.use_oracle = !f.no_oracle;
  cfg.tol = f.tol;
  cfg.box = f.box;
  cfg.keep_detail = f.verbose;
  return cfg;
}

int run_check(const Flags& f) {
  dd::ParsedJob pj = dd::load_job(f.input);
  const dd::ReportOptions ropt{!f.no_timestamp, f.verbose};
  const long bound = effective_bound(f, pj.bound);
  dd::ScanConfig cfg = scan_config(f);

  if (auto* inst = std::get_if<dd::Instance>(&pj.job)) {
    dd::StructureCache cache;
    std::vector<std::string> cache_warnings;
    std::set<dd::Int> known;
    if (!f.cache_path.empty()) {
      if (std::filesystem::exists(f.cache_path))
        cache_warnings = dd::load_cache(f.cache_path, inst->E, cache);
      for (const auto& [p, S] : cache.snapshot()) known.insert(p);
      cfg.cache = &cache;
    }

    dd::Verdict v = dd::scan(*inst, bound, cfg);
    v.warnings.insert(v.warnings.begin(), cache_warnings.begin(),
                      cache_warnings.end());

    if (!f.cache_path.empty()) {
      std::vector<dd::Int> fresh;
      for (const auto& [p, S] : cache.snapshot())
        if (!known.count(p)) fresh.push_back(p);
      dd::append_cache(f.cache_path, cache, fresh);
    }
    std::cout << dd::render_check_report(v, "elliptic", ropt);
    return verdict_exit(v.kind);
  }

  if (auto* m = std::get_if<dd::MultInstance>(&pj.job)) {
    dd::Verdict v = dd::scan_gm(*m, bound, cfg);
    std::cout << dd::render_check_report(v, "multiplicative", ropt);
    return verdict_exit(v.kind);
  }

  throw dd::InvalidInstance(
      "check: job file holds an orders spec; use the orders command");
}

int run_orders(const Flags& f) {
  dd::ParsedJob pj = dd::load_job(f.input);
  auto* oj = std::get_if<dd::OrdersJob>(&pj.job);
  if (!oj)
    throw dd::InvalidInstance("orders: job file must carry l and targets");
  if (f.bound > 0) oj->spec.bound = f.bound;
  dd::DensityReport rep = dd::find_prescribed_orders(oj->E, oj->points, oj->spec);
  std::cout << dd::render_orders_report(rep, oj->spec,
                                        {!f.no_timestamp, f.verbose});
  return 0;
}

int run_height(const Flags& f) {
  dd::ParsedJob pj = dd::load_job(f.input);
  auto* inst = std::get_if<dd::Instance>(&pj.job);
  if (!inst)
    throw dd::InvalidInstance(
        "height: an elliptic job with basis and candidate is required");
  dd::HeightReport rep;
  rep.gram = dd::gram_matrix(inst->E, inst->basis, f.tol);
  for (const dd::PointQ& P : inst->basis)
    rep.basis.emplace_back(P, dd::canonical_height(inst->E, P, f.tol));
  if (!inst->candidate.infinity)
    rep.candidate.emplace(inst->candidate,
                          dd::canonical_height(inst->E, inst->candidate, f.tol));
  std::cout << dd::render_height_report(rep, {!f.no_timestamp, f.verbose});
  return 0;
}

int run_cache_warm(const Flags& f) {
  dd::ParsedJob pj = dd::load_job(f.input);
  const dd::CurveQ* E = nullptr;
  if (auto* inst = std::get_if<dd::Instance>(&pj.job))
    E = &inst->E;
  else if (auto* oj = std::get_if<dd::OrdersJob>(&pj.job))
    E = &oj->E;
  else
    throw dd::InvalidInstance("cache-warm: multiplicative jobs have no cache");

  dd::StructureCache cache;
  std::vector<std::string> warnings;
  if (std::filesystem::exists(f.cache_path))
    warnings = dd::load_cache(f.cache_path, *E, cache);

  const long bound = effective_bound(f, pj.bound);
  for (unsigned long p : dd::primes_up_to(static_cast<unsigned long>(bound))) {
    try {
      cache.get_or_compute(dd::reduce_curve(*E, dd::Int(p)));
    } catch (const dd::BadReduction&) {
    }
  }
  dd::save_cache(f.cache_path, cache);
  std::cout << dd::render_cache_report(cache.size(), f.cache_path, warnings,
                                       {!f.no_timestamp, f.verbose});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependence detector for elliptic-curve and multiplicative groups over Q"};
  app.fallthrough();
  app.require_subcommand(1);

  Flags f;
  app.add_option("--input", f.input, "job file (JSON)")->required();
  app.add_option("--bound", f.bound, "prime scan bound (default 10000)")
      ->check(CLI::Range(3L, 2000000000L));
  app.add_option("--threads", f.threads, "worker threads for the scan")
      ->check(CLI::Range(1, 512));
  app.add_option("--cache", f.cache_path, "per-curve structure cache file");
  app.add_option("--box", f.box, "oracle fallback search box")
      ->check(CLI::Range(0L, 1000000L));
  app.add_option("--tol", f.tol, "height convergence tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-oracle", f.no_oracle,
               "disable the closing oracles (forces Inconclusive on all-pass)");
  app.add_flag("--verbose", f.verbose, "include per-prime detail in the report");
  app.add_flag("--no-timestamp", f.no_timestamp,
               "omit the timestamp (byte-reproducible reports)");

  auto* cmd_check = app.add_subcommand("check", "run the local-global scan");
  auto* cmd_orders =
      app.add_subcommand("orders", "search primes with prescribed l-part orders");
  auto* cmd_height =
      app.add_subcommand("height", "print canonical heights and the gram matrix");
  auto* cmd_warm =
      app.add_subcommand("cache-warm", "precompute group structures up to bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  if (app.got_subcommand(cmd_warm) && f.cache_path.empty()) {
    std::cerr << "cache-warm requires --cache PATH\n";
    return 64;
  }

  try {
    if (app.got_subcommand(cmd_check)) return run_check(f);
    if (app.got_subcommand(cmd_orders)) return run_orders(f);
    if (app.got_subcommand(cmd_height)) return run_height(f);
    if (app.got_subcommand(cmd_warm)) return run_cache_warm(f);
    std::cerr << "no command\n";
    return 64;
  } catch (const dd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const dd::InvalidInstance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const dd::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const dd::SingularCurve& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const dd::FactorizationOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const dd::UnsupportedScale& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const dd::Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
