#pragma once

#include <string>
#include <vector>

#include "depdetect/detector.hpp"
#include "depdetect/ec.hpp"

namespace depdetect {

// Cache file: one `p,N,n1,n2,g1x,g1y,g2x,g2y` record per line under exactly
// that header; generators at infinity use the -1,-1 sentinel. Records are
// validated against the curve on load; corrupt or invalid lines are discarded
// and reported in the returned warnings, never trusted.
std::vector<std::string> load_cache(const std::string& path, const CurveQ& E,
                                    StructureCache& cache);

// Full rewrite: header plus every cached record, ascending p. IoError when
// the file cannot be written.
void save_cache(const std::string& path, const StructureCache& cache);

// Append records for the given primes only (the append-only contract for a
// running scan); writes the header first when the file is empty or absent.
void append_cache(const std::string& path, const StructureCache& cache,
                  const std::vector<Int>& new_primes);

}  // namespace depdetect
