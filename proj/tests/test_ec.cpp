#include <vector>

#include "depdetect/ec.hpp"
#include "helpers.hpp"
#include "doctest.h"

using namespace depdetect;
using tst::pq;

TEST_SUITE("ec") {

TEST_CASE("construction rejects singular curves") {
  CHECK_THROWS_AS(CurveQ(0, 0), SingularCurve);
  CHECK_THROWS_AS(CurveQ(-3, 2), SingularCurve);  // 4*(-27) + 27*4 = 0
  CHECK_NOTHROW(CurveQ(1, 1));
  CHECK(CurveQ(1, 1).disc() == -16 * (4 + 27));
}

TEST_CASE("group law on y^2 = x^3 + x + 1") {
  CurveQ E(1, 1);
  PointQ P = pq(0, 1);
  REQUIRE(E.contains(P));
  PointQ P2 = E.add(P, P);
  CHECK(P2 == pq("1/4", "-9/8"));
  CHECK(E.add(P, E.neg(P)).infinity);
  CHECK(E.add(P, PointQ::at_infinity()) == P);
  CHECK(E.sub(P2, P) == P);
  CHECK(E.mul(2, P) == P2);
  CHECK(E.mul(-2, P) == E.neg(P2));
  CHECK(E.mul(0, P).infinity);
  // associativity spot check: (P + 2P) + 4P == P + (2P + 4P)
  PointQ P4 = E.mul(4, P);
  CHECK(E.add(E.add(P, P2), P4) == E.add(P, E.add(P2, P4)));
  CHECK(E.mul(7, P) == E.add(E.add(P, P2), P4));
  CHECK_THROWS_AS(E.add(P, pq(1, 1)), PointNotOnCurve);
}

TEST_CASE("known multiples on y^2 = x^3 + 3x + 5") {
  CurveQ E(3, 5);
  PointQ G = pq(1, 3);
  CHECK(E.mul(-2, G) == pq(-1, 1));
  CHECK(E.mul(4, G) == pq(11, 37));
  CHECK(E.mul(-3, G) == pq(4, 9));
}

TEST_CASE("torsion classification") {
  CurveQ E(-1, 0);  // full rational 2-torsion
  for (auto P : {pq(0, 0), pq(1, 0), pq(-1, 0)}) {
    TorsionInfo t = E.torsion_info(P);
    CHECK(t.torsion);
    CHECK(t.order == 2);
  }
  CurveQ E2(0, 4);
  TorsionInfo t = E2.torsion_info(pq(0, 2));
  CHECK(t.torsion);
  CHECK(t.order == 3);
  CHECK(E2.mul(3, pq(0, 2)).infinity);

  CurveQ E3(1, 1);
  CHECK_FALSE(E3.torsion_info(pq(0, 1)).torsion);
  CHECK(E3.torsion_info(PointQ::at_infinity()).torsion);
}

TEST_CASE("linear_combination") {
  CurveQ E(-7, 10);
  std::vector<PointQ> B{pq(1, 2), pq(3, 4)};
  CHECK(linear_combination(E, B, {1, 1}) == pq(-3, 2));
  CHECK(linear_combination(E, B, {1, -1}) == pq(5, 10));
  CHECK(linear_combination(E, B, {-2, 0}) == pq(-1, 4));
  CHECK(linear_combination(E, B, {-2, -1}) == pq(2, 2));
  CHECK(linear_combination(E, B, {0, 0}).infinity);
  CHECK(linear_combination(E, {}, {}).infinity);
  CHECK_THROWS_AS(linear_combination(E, B, {1}), DimensionMismatch);
}

TEST_CASE("denominators stay reduced") {
  CurveQ E(1, 1);
  PointQ P = pq(0, 1);
  PointQ Q = E.mul(5, P);
  // x, y in lowest terms with square / cube denominators
  Int d = Q.x.get_den();
  Int e = Q.y.get_den();
  Int r;
  mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
  CHECK(r * r == d);
  mpz_root(r.get_mpz_t(), e.get_mpz_t(), 3);
  CHECK(r * r * r == e);
}

}  // TEST_SUITE
