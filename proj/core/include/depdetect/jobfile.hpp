#pragma once

#include <string>
#include <variant>
#include <vector>

#include "depdetect/instance.hpp"
#include "depdetect/multiplicative.hpp"
#include "depdetect/orders.hpp"

namespace depdetect {

// Prescribed-order search job: the curve, the points to track, the OrderSpec.
struct OrdersJob {
  CurveQ E;
  std::vector<PointQ> points;
  OrderSpec spec;
};

using Job = std::variant<Instance, MultInstance, OrdersJob>;

struct ParsedJob {
  Job job;
  long bound = 0;  // job-level scan bound; 0 = not set
};

// Job files are JSON with every arithmetic value as a string, so arbitrary
// precision survives any JSON implementation:
//   {"system": "elliptic", "curve": {"a": "1", "b": "1"},
//    "basis": [["0/1", "1/1"]], "candidate": ["1/4", "-9/8"],  // or "infinity"
//    "bound": 2000}                                            // optional
//   {"system": "multiplicative", "gammas": ["2", "3"], "beta": "6"}
// An elliptic job with "l" and "targets" parses as an OrdersJob over the
// basis points ("candidate" is then optional).
// ParseError carries the offending field; InvalidInstance the violated
// hypothesis (off-curve point, torsion basis point, zero gamma, ...).
ParsedJob parse_job(const std::string& text);

// parse_job on the contents of `path`; IoError when unreadable.
ParsedJob load_job(const std::string& path);

}  // namespace depdetect
