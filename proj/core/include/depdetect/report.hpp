#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depdetect/detector.hpp"
#include "depdetect/height.hpp"
#include "depdetect/orders.hpp"

namespace depdetect {

// Reports are single JSON documents with sorted keys and all arithmetic
// values rendered as strings: identical inputs and flags give byte-identical
// output once timestamps are disabled.
struct ReportOptions {
  bool timestamp = true;
  bool verbose = false;
};

std::string render_check_report(const Verdict& v, const std::string& system,
                                const ReportOptions& opt);

std::string render_orders_report(const DensityReport& rep, const OrderSpec& spec,
                                 const ReportOptions& opt);

struct HeightReport {
  std::vector<std::pair<PointQ, HeightValue>> basis;
  std::optional<std::pair<PointQ, HeightValue>> candidate;
  GramMatrix gram;
};
std::string render_height_report(const HeightReport& rep,
                                 const ReportOptions& opt);

std::string render_cache_report(std::size_t records, const std::string& path,
                                const std::vector<std::string>& warnings,
                                const ReportOptions& opt);

}  // namespace depdetect
