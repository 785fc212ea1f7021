#include <vector>

#include "depdetect/ff.hpp"
#include "doctest.h"

using namespace depdetect;

TEST_SUITE("ff") {

TEST_CASE("construction") {
  CHECK_NOTHROW(PrimeField(Int(2)));
  CHECK_NOTHROW(PrimeField(Int("1000000007")));
  CHECK_THROWS_AS(PrimeField(Int(1)), NotPrime);
  CHECK_THROWS_AS(PrimeField(Int(561)), NotPrime);
}

TEST_CASE("field axioms, p = 10007") {
  PrimeField F(Int(10007));
  for (long a : {0L, 1L, 2L, 5003L, 10006L, -17L}) {
    FFElement x = F.reduce(a);
    CHECK(F.add(x, F.neg(x)) == 0);
    if (x != 0) {
      CHECK(F.mul(x, F.inv(x)) == 1);
      CHECK(F.pow(x, 10006) == 1);  // Fermat
      CHECK(F.pow(x, -1) == F.inv(x));
    }
  }
  CHECK(F.reduce(-17) == 10007 - 17);
  CHECK_THROWS_AS(F.inv(F.reduce(0)), ZeroInverse);
}

TEST_CASE("legendre and sqrt agree, several primes") {
  for (long p : {3L, 5L, 13L, 10007L, 1000003L}) {
    PrimeField F((Int(p)));
    long squares = 0;
    for (long a = 0; a < std::min(p, 200L); ++a) {
      FFElement x = F.reduce(a);
      int chi = (x == 0) ? 0 : F.legendre(x);
      auto roots = F.sqrt(x);
      if (chi == 0) {
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == 0);
      } else if (chi == 1) {
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] < roots[1]);
        CHECK(F.mul(roots[0], roots[0]) == x);
        CHECK(F.mul(roots[1], roots[1]) == x);
        CHECK(F.add(roots[0], roots[1]) == 0);
        ++squares;
      } else {
        CHECK(roots.empty());
      }
    }
    (void)squares;
  }
}

TEST_CASE("tonelli-shanks on p = 1 mod 8") {
  PrimeField F(Int(41));  // 41 - 1 = 2^3 * 5
  long count = 0;
  for (long a = 1; a < 41; ++a)
    if (F.legendre(F.reduce(a)) == 1) {
      auto r = F.sqrt(F.reduce(a));
      REQUIRE(r.size() == 2);
      CHECK(F.mul(r[0], r[0]) == F.reduce(a));
      ++count;
    }
  CHECK(count == 20);  // (p-1)/2 residues
}

TEST_CASE("p = 2 refuses legendre/sqrt") {
  PrimeField F(Int(2));
  CHECK_THROWS_AS(F.legendre(F.reduce(1)), EvenCharacteristic);
  CHECK_THROWS_AS(F.sqrt(F.reduce(1)), EvenCharacteristic);
}

}  // TEST_SUITE
