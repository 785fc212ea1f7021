#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depdetect/abelian.hpp"
#include "depdetect/basics.hpp"
#include "depdetect/instance.hpp"
#include "depdetect/reduction.hpp"

namespace depdetect {

// One local membership test at a good prime. Pass carries a witness
// coefficient vector mod (n1, n2), re-verified in E(F_p) before storage.
struct LocalResult {
  Int p;
  bool pass = false;
  std::vector<Int> coeffs;           // Pass only; reduced mod n2
  Int n1 = 1, n2 = 1;                // structure moduli at p
  bool unique_mod_exponent = false;  // local solution unique mod n2
};

enum class VerdictKind { Dependent, Independent, Inconclusive };

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::vector<Int> coefficients;  // Dependent: candidate = sum n_i basis_i
  Int witness = 0;                // Independent: smallest failing good prime
  long bound = 0;
  long primes_tested = 0;
  long primes_skipped = 0;
  std::vector<std::string> warnings;
  std::vector<LocalResult> detail;  // filled when ScanConfig.keep_detail
};

// Thread-safe per-curve map p -> certified group structure. Computation is
// deterministic in p, so duplicated work across threads is harmless.
class StructureCache {
 public:
  GroupStructureFp get_or_compute(const CurveFp& E);
  void preload(const Int& p, const GroupStructureFp& S);
  std::vector<std::pair<Int, GroupStructureFp>> snapshot() const;  // by p asc
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<Int, GroupStructureFp> map_;
};

struct ScanConfig {
  int threads = 1;
  bool use_oracle = true;  // false: no closers at all; all-Pass ends Inconclusive
  double tol = 1e-8;
  long box = 12;
  StructureCache* cache = nullptr;
  bool keep_detail = false;
};

// Reduce everything mod p, decompose against the certified structure, solve
// membership. Throws BadReduction at bad primes (callers skip those).
LocalResult local_check(const Instance& inst, const Int& p,
                        StructureCache* cache = nullptr);

// CRT accelerator: when every local solution is unique mod its n2, combine
// residues coordinatewise; nullopt on ambiguity or inconsistency. Output is
// a proposal only -- callers must verify exactly over Q before use.
std::optional<std::vector<Int>> reconstruct_crt(
    const std::vector<LocalResult>& results);

// The full local-global scan over good primes <= bound (ascending order
// logically; execution may be concurrent -- verdicts are schedule-independent).
// Any local Fail => Independent(smallest failing prime), unconditionally
// sound. All Pass => closers (CRT proposal, then height oracle), each gated
// by exact rational verification => Dependent, else Inconclusive(bound).
Verdict scan(const Instance& inst, long bound, const ScanConfig& config);

}  // namespace depdetect
