#include <vector>

#include "depdetect/detector.hpp"
#include "helpers.hpp"
#include "doctest.h"

using namespace depdetect;
using tst::pq;

namespace {

Instance dep11() {  // 2P in <P> on y^2 = x^3 + x + 1
  CurveQ E(1, 1);
  PointQ P = pq(0, 1);
  return Instance{E, {P}, E.mul(2, P)};
}

Instance indep11() {  // P not in <2P>
  CurveQ E(1, 1);
  PointQ P = pq(0, 1);
  return Instance{E, {E.mul(2, P)}, P};
}

}  // namespace

TEST_SUITE("detector") {

TEST_CASE("local_check: pinned pass at p = 5") {
  LocalResult r = local_check(dep11(), 5);
  CHECK(r.pass);
  CHECK(r.n1 == 1);
  CHECK(r.n2 == 9);  // E(F_5) is cyclic of order 9
  CHECK(r.coeffs == tst::coeffs({2}));
  CHECK(r.unique_mod_exponent);
}

TEST_CASE("local_check: pinned fail at p = 3") {
  // ord((0,1) mod 3) = 4 is even, so P never lands in <2P>
  LocalResult r = local_check(indep11(), 3);
  CHECK_FALSE(r.pass);
  CHECK(r.p == 3);
  // and the odd-order prime 5 passes (ord mod 5 = 9)
  CHECK(local_check(indep11(), 5).pass);
}

TEST_CASE("local_check: bad prime throws") {
  CHECK_THROWS_AS(local_check(dep11(), 31), BadReduction);  // 31 | disc
  CHECK_THROWS_AS(local_check(dep11(), 2), BadReduction);
}

TEST_CASE("local_check: empty basis tests the trivial subgroup") {
  Instance inst{CurveQ(1, 1), {}, pq(0, 1)};
  CHECK_FALSE(local_check(inst, 3).pass);
  LocalResult r = local_check(Instance{CurveQ(1, 1), {}, PointQ::at_infinity()}, 3);
  CHECK(r.pass);
  CHECK(r.coeffs.empty());
}

TEST_CASE("scan: dependent with exact coefficients") {
  Verdict v = scan(dep11(), 200, ScanConfig{});
  CHECK(v.kind == VerdictKind::Dependent);
  CHECK(v.coefficients == tst::coeffs({2}));
  CHECK(v.primes_tested == 44);  // 46 primes up to 200, minus 2 and 31
  CHECK(v.primes_skipped == 2);
  CHECK(v.warnings.empty());

  CurveQ E(-7, 10);
  std::vector<PointQ> B{pq(1, 2), pq(3, 4)};
  Instance inst{E, B, linear_combination(E, B, {2, -1})};
  Verdict w = scan(inst, 300, ScanConfig{});
  CHECK(w.kind == VerdictKind::Dependent);
  CHECK(w.coefficients == tst::coeffs({2, -1}));
}

TEST_CASE("scan: independent with verified witness") {
  Verdict v = scan(indep11(), 200, ScanConfig{});
  REQUIRE(v.kind == VerdictKind::Independent);
  CHECK(v.witness == 3);
  CHECK(v.primes_tested == 1);   // 3 is the first good prime
  CHECK(v.primes_skipped == 1);  // 2 is bad

  // re-verify the witness by exhaustive enumeration in E(F_3)
  Instance inst = indep11();
  CurveFp Ep = reduce_curve(inst.E, v.witness);
  std::vector<PointFp> gens;
  for (const auto& P : inst.basis) gens.push_back(reduce_point(inst.E, P, Ep));
  CHECK_FALSE(tst::in_span(Ep, gens, reduce_point(inst.E, inst.candidate, Ep)));
}

TEST_CASE("scan: empty basis, nontorsion candidate") {
  Instance inst{CurveQ(1, 1), {}, pq(0, 1)};
  Verdict v = scan(inst, 100, ScanConfig{});
  REQUIRE(v.kind == VerdictKind::Independent);
  CHECK(v.witness == 3);
}

TEST_CASE("scan: candidate at infinity short-circuits") {
  Instance inst{CurveQ(1, 1), {pq(0, 1)}, PointQ::at_infinity()};
  Verdict v = scan(inst, 100, ScanConfig{});
  REQUIRE(v.kind == VerdictKind::Dependent);
  CHECK(v.coefficients == tst::coeffs({0}));
  CHECK(v.primes_tested == 0);
}

TEST_CASE("scan: no-oracle stops at inconclusive") {
  ScanConfig cfg;
  cfg.use_oracle = false;
  Verdict v = scan(dep11(), 100, cfg);
  CHECK(v.kind == VerdictKind::Inconclusive);
  CHECK(v.coefficients.empty());
  REQUIRE(v.warnings.size() == 1);
  // independence is still detected without the oracle
  CHECK(scan(indep11(), 100, cfg).kind == VerdictKind::Independent);
}

TEST_CASE("scan: detail when asked") {
  ScanConfig cfg;
  cfg.keep_detail = true;
  Verdict v = scan(dep11(), 50, cfg);
  REQUIRE_FALSE(v.detail.empty());
  CHECK(v.detail.size() == static_cast<std::size_t>(v.primes_tested));
  CHECK(v.detail.front().p == 3);
  for (const auto& r : v.detail) CHECK(r.pass);
  CHECK(scan(dep11(), 50, ScanConfig{}).detail.empty());
}

TEST_CASE("scan: determinism across thread counts") {
  for (const Instance& inst : {dep11(), indep11()}) {
    ScanConfig one, four;
    four.threads = 4;
    Verdict a = scan(inst, 500, one);
    Verdict b = scan(inst, 500, four);
    CHECK(a.kind == b.kind);
    CHECK(a.coefficients == b.coefficients);
    CHECK(a.witness == b.witness);
    CHECK(a.primes_tested == b.primes_tested);
    CHECK(a.primes_skipped == b.primes_skipped);
    CHECK(a.warnings == b.warnings);
  }
}

TEST_CASE("scan: witness stable as the bound grows") {
  Verdict a = scan(indep11(), 10, ScanConfig{});
  Verdict b = scan(indep11(), 1000, ScanConfig{});
  REQUIRE(a.kind == VerdictKind::Independent);
  REQUIRE(b.kind == VerdictKind::Independent);
  CHECK(a.witness == b.witness);
}

TEST_CASE("scan: guards") {
  CHECK_THROWS_AS(scan(dep11(), 2, ScanConfig{}), InvalidInstance);
  Instance bad{CurveQ(1, 1), {pq(0, 1)}, pq(1, 1)};  // candidate off curve
  CHECK_THROWS_AS(scan(bad, 100, ScanConfig{}), InvalidInstance);
  Instance tors{CurveQ(0, 4), {pq(0, 2)}, pq(0, 2)};  // torsion basis point
  CHECK_THROWS_AS(scan(tors, 100, ScanConfig{}), InvalidInstance);
}

TEST_CASE("reconstruct_crt") {
  LocalResult a{5, true, tst::coeffs({2}), 1, 9, true};
  LocalResult b{7, true, tst::coeffs({2}), 1, 5, true};
  auto r = reconstruct_crt({a, b});
  REQUIRE(r.has_value());
  CHECK(*r == tst::coeffs({2}));

  // -1 presented as 8 mod 9 and 4 mod 5: symmetric representative wins
  LocalResult c{5, true, tst::coeffs({8}), 1, 9, true};
  LocalResult d{7, true, tst::coeffs({4}), 1, 5, true};
  r = reconstruct_crt({c, d});
  REQUIRE(r.has_value());
  CHECK(*r == tst::coeffs({-1}));

  // inconsistent residues
  LocalResult e{7, true, tst::coeffs({1}), 1, 6, true};
  LocalResult f{11, true, tst::coeffs({2}), 1, 4, true};
  CHECK_FALSE(reconstruct_crt({e, f}).has_value());

  // nothing unique: no proposal
  LocalResult g{5, true, tst::coeffs({2}), 1, 9, false};
  CHECK_FALSE(reconstruct_crt({g}).has_value());

  LocalResult fail{3, false, {}, 1, 1, false};
  CHECK_THROWS_AS(reconstruct_crt({a, fail}), Error);
}

TEST_CASE("structure cache") {
  StructureCache cache;
  CurveFp E5 = reduce_curve(CurveQ(1, 1), 5);
  GroupStructureFp S = cache.get_or_compute(E5);
  CHECK(S.N == 9);
  CHECK(cache.size() == 1);
  cache.get_or_compute(E5);
  CHECK(cache.size() == 1);
  cache.preload(7, group_structure(reduce_curve(CurveQ(1, 1), 7)));
  CHECK(cache.size() == 2);
  auto snap = cache.snapshot();
  REQUIRE(snap.size() == 2);
  CHECK(snap[0].first == 5);
  CHECK(snap[1].first == 7);

  // a scan through the cache agrees with a cold scan
  ScanConfig cfg;
  cfg.cache = &cache;
  Verdict v = scan(dep11(), 200, cfg);
  CHECK(v.kind == VerdictKind::Dependent);
  CHECK(v.coefficients == tst::coeffs({2}));
  CHECK(cache.size() >= 44);
}

}  // TEST_SUITE
