#include "depdetect/report.hpp"

#include <ctime>

#include <nlohmann/json.hpp>

namespace depdetect {

namespace {

using nlohmann::json;

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json point_json(const PointQ& P) {
  if (P.infinity) return "infinity";
  return json::array({P.x.get_str(), P.y.get_str()});
}

json int_list(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

void finish(json& j, const ReportOptions& opt) {
  if (opt.timestamp) j["timestamp"] = now_utc();
}

}  // namespace

std::string render_check_report(const Verdict& v, const std::string& system,
                                const ReportOptions& opt) {
  json j;
  j["command"] = "check";
  j["system"] = system;
  j["bound"] = v.bound;
  j["primes_tested"] = v.primes_tested;
  j["primes_skipped"] = v.primes_skipped;
  j["warnings"] = v.warnings;
  switch (v.kind) {
    case VerdictKind::Dependent:
      j["verdict"] = "dependent";
      j["coefficients"] = int_list(v.coefficients);
      break;
    case VerdictKind::Independent:
      j["verdict"] = "independent";
      j["witness_prime"] = v.witness.get_str();
      break;
    case VerdictKind::Inconclusive:
      j["verdict"] = "inconclusive";
      break;
  }
  if (opt.verbose) {
    json detail = json::array();
    for (const LocalResult& lr : v.detail) {
      json d;
      d["p"] = lr.p.get_str();
      d["outcome"] = lr.pass ? "pass" : "fail";
      if (lr.pass) {
        d["coefficients"] = int_list(lr.coeffs);
        d["n1"] = lr.n1.get_str();
        d["n2"] = lr.n2.get_str();
      }
      detail.push_back(std::move(d));
    }
    j["detail"] = std::move(detail);
  }
  finish(j, opt);
  return j.dump(2) + "\n";
}

std::string render_orders_report(const DensityReport& rep, const OrderSpec& spec,
                                 const ReportOptions& opt) {
  json j;
  j["command"] = "orders";
  j["l"] = spec.l.get_str();
  j["targets"] = spec.targets;
  j["bound"] = spec.bound;
  j["good_primes_tested"] = rep.good_primes_tested;
  j["matching_count"] = rep.matching_primes.size();
  j["frequency"] = rep.frequency.get_str();
  if (opt.verbose || rep.matching_primes.size() <= 64) {
    j["matching_primes"] = int_list(rep.matching_primes);
  } else {
    json a = json::array();
    for (std::size_t i = 0; i < 64; ++i)
      a.push_back(rep.matching_primes[i].get_str());
    j["matching_primes"] = std::move(a);
    j["matching_primes_truncated"] = true;
  }
  finish(j, opt);
  return j.dump(2) + "\n";
}

std::string render_height_report(const HeightReport& rep,
                                 const ReportOptions& opt) {
  json j;
  j["command"] = "height";
  json basis = json::array();
  for (const auto& [P, h] : rep.basis) {
    json e;
    e["point"] = point_json(P);
    e["height"] = h.value;
    e["tolerance"] = h.tolerance;
    basis.push_back(std::move(e));
  }
  j["basis"] = std::move(basis);
  if (rep.candidate) {
    json e;
    e["point"] = point_json(rep.candidate->first);
    e["height"] = rep.candidate->second.value;
    e["tolerance"] = rep.candidate->second.tolerance;
    j["candidate"] = std::move(e);
  }
  json gram = json::array();
  for (std::size_t i = 0; i < rep.gram.n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < rep.gram.n; ++k) row.push_back(rep.gram.at(i, k));
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  finish(j, opt);
  return j.dump(2) + "\n";
}

std::string render_cache_report(std::size_t records, const std::string& path,
                                const std::vector<std::string>& warnings,
                                const ReportOptions& opt) {
  json j;
  j["command"] = "cache-warm";
  j["records"] = records;
  j["path"] = path;
  j["warnings"] = warnings;
  finish(j, opt);
  return j.dump(2) + "\n";
}

}  // namespace depdetect
