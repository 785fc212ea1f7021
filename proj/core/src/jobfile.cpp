#include "depdetect/jobfile.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace depdetect {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field: ") + key);
  return *it;
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string())
    throw ParseError(std::string("field must be a string: ") + key);
  return v.get<std::string>();
}

Int parse_int(const std::string& s, const std::string& where) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw ParseError(where + ": not a decimal integer: '" + s + "'");
  }
}

Rat parse_rational(const std::string& s, const std::string& where) {
  const auto slash = s.find('/');
  if (s.find('/', slash + 1) != std::string::npos)
    throw ParseError(where + ": malformed rational: '" + s + "'");
  Int num, den = 1;
  if (slash == std::string::npos) {
    num = parse_int(s, where);
  } else {
    num = parse_int(s.substr(0, slash), where);
    den = parse_int(s.substr(slash + 1), where);
  }
  if (den == 0) throw ParseError(where + ": zero denominator: '" + s + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

PointQ parse_point(const json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "infinity") return PointQ::at_infinity();
    throw ParseError(where + ": a point is [\"x\",\"y\"] or \"infinity\"");
  }
  if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
    throw ParseError(where + ": a point is [\"x\",\"y\"] or \"infinity\"");
  return PointQ::affine(parse_rational(v[0].get<std::string>(), where + ".x"),
                        parse_rational(v[1].get<std::string>(), where + ".y"));
}

long parse_bound(const json& j) {
  auto it = j.find("bound");
  if (it == j.end()) return 0;
  if (!it->is_number_integer() || it->get<long>() < 3)
    throw ParseError("bound: must be an integer >= 3");
  return it->get<long>();
}

ParsedJob parse_elliptic(const json& j) {
  const json& cj = need(j, "curve");
  if (!cj.is_object()) throw ParseError("curve: must be an object {a, b}");
  CurveQ E(parse_int(need_string(cj, "a"), "curve.a"),
           parse_int(need_string(cj, "b"), "curve.b"));

  const json& bj = need(j, "basis");
  if (!bj.is_array()) throw ParseError("basis: must be an array of points");
  std::vector<PointQ> basis;
  basis.reserve(bj.size());
  for (std::size_t i = 0; i < bj.size(); ++i)
    basis.push_back(parse_point(bj[i], "basis[" + std::to_string(i) + "]"));

  long bound = parse_bound(j);

  if (j.contains("l") || j.contains("targets")) {
    OrdersJob job{E, basis, OrderSpec{}};
    job.spec.l = parse_int(need_string(j, "l"), "l");
    const json& tj = need(j, "targets");
    if (!tj.is_array()) throw ParseError("targets: must be an array of integers");
    for (const json& t : tj) {
      if (!t.is_number_integer() || t.get<long>() < 0)
        throw ParseError("targets: entries must be integers >= 0");
      job.spec.targets.push_back(static_cast<int>(t.get<long>()));
    }
    job.spec.bound = bound > 0 ? bound : 10000;
    for (std::size_t i = 0; i < job.points.size(); ++i) {
      if (!E.contains(job.points[i]))
        throw InvalidInstance("basis[" + std::to_string(i) + "] not on curve");
    }
    return ParsedJob{std::move(job), bound};
  }

  Instance inst{E, std::move(basis), parse_point(need(j, "candidate"), "candidate")};
  validate_instance(inst);
  return ParsedJob{std::move(inst), bound};
}

ParsedJob parse_multiplicative(const json& j) {
  MultInstance inst;
  const json& gj = need(j, "gammas");
  if (!gj.is_array()) throw ParseError("gammas: must be an array of rationals");
  for (std::size_t i = 0; i < gj.size(); ++i) {
    if (!gj[i].is_string())
      throw ParseError("gammas[" + std::to_string(i) + "]: must be a string");
    inst.gammas.push_back(parse_rational(gj[i].get<std::string>(),
                                         "gammas[" + std::to_string(i) + "]"));
  }
  inst.beta = parse_rational(need_string(j, "beta"), "beta");
  validate_mult_instance(inst);

  return ParsedJob{std::move(inst), parse_bound(j)};
}

}  // namespace

ParsedJob parse_job(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("job must be a JSON object");

  const std::string system = need_string(j, "system");
  if (system == "elliptic") return parse_elliptic(j);
  if (system == "multiplicative") return parse_multiplicative(j);
  throw ParseError("system: expected \"elliptic\" or \"multiplicative\", got \"" +
                   system + "\"");
}

ParsedJob load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read job file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str());
}

}  // namespace depdetect
