#include "depdetect/cache_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace depdetect {

namespace {

constexpr const char* kHeader = "p,N,n1,n2,g1x,g1y,g2x,g2y";

std::string record_line(const Int& p, const GroupStructureFp& S) {
  auto coord = [](const PointFp& G, bool want_x) -> std::string {
    if (G.infinity) return "-1";
    return (want_x ? G.x : G.y).get_str();
  };
  std::ostringstream ss;
  ss << p.get_str() << ',' << S.N.get_str() << ',' << S.n1.get_str() << ','
     << S.n2.get_str() << ',' << coord(S.G1, true) << ',' << coord(S.G1, false)
     << ',' << coord(S.G2, true) << ',' << coord(S.G2, false);
  return ss.str();
}

// 8 comma-separated integers, or nothing on any syntactic problem.
std::optional<std::vector<Int>> split_record(const std::string& line) {
  std::vector<Int> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    try {
      out.emplace_back(field);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  if (out.size() != 8) return std::nullopt;
  return out;
}

PointFp sentinel_point(const PrimeField& F, const Int& x, const Int& y) {
  if (x == -1 && y == -1) return PointFp::at_infinity();
  return PointFp::affine(F.reduce(x), F.reduce(y));
}

}  // namespace

std::vector<std::string> load_cache(const std::string& path, const CurveQ& E,
                                    StructureCache& cache) {
  std::vector<std::string> warnings;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read cache file: " + path);

  std::string line;
  long lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      saw_header = true;
      if (line == kHeader) continue;
      warnings.push_back("cache: missing header line; parsing anyway");
      // fall through and try the line as a record
    }
    auto f = split_record(line);
    if (!f) {
      warnings.push_back("cache: line " + std::to_string(lineno) +
                         " malformed; discarded");
      continue;
    }
    const Int& p = (*f)[0];
    if (p < 2 || (*f)[1] < 1) {
      warnings.push_back("cache: line " + std::to_string(lineno) +
                         " out of range; discarded");
      continue;
    }
    try {
      const CurveFp Ep = reduce_curve(E, p);
      GroupStructureFp S;
      S.N = (*f)[1];
      S.n1 = (*f)[2];
      S.n2 = (*f)[3];
      S.G1 = sentinel_point(Ep.field(), (*f)[4], (*f)[5]);
      S.G2 = sentinel_point(Ep.field(), (*f)[6], (*f)[7]);
      if (auto problem = structure_problem(Ep, S)) {
        warnings.push_back("cache: line " + std::to_string(lineno) + " (p=" +
                           p.get_str() + ") rejected: " + *problem);
        continue;
      }
      cache.preload(p, S);
    } catch (const Error& e) {
      warnings.push_back("cache: line " + std::to_string(lineno) + " (p=" +
                         p.get_str() + ") rejected: " + e.what());
    }
  }
  return warnings;
}

void save_cache(const std::string& path, const StructureCache& cache) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write cache file: " + path);
  out << kHeader << '\n';
  for (const auto& [p, S] : cache.snapshot()) out << record_line(p, S) << '\n';
  if (!out) throw IoError("write failure on cache file: " + path);
}

void append_cache(const std::string& path, const StructureCache& cache,
                  const std::vector<Int>& new_primes) {
  std::set<Int> wanted(new_primes.begin(), new_primes.end());
  if (wanted.empty()) return;
  bool fresh = false;
  {
    std::ifstream probe(path);
    fresh = !probe || probe.peek() == std::ifstream::traits_type::eof();
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot write cache file: " + path);
  if (fresh) out << kHeader << '\n';
  for (const auto& [p, S] : cache.snapshot())
    if (wanted.count(p)) out << record_line(p, S) << '\n';
  if (!out) throw IoError("write failure on cache file: " + path);
}

}  // namespace depdetect
