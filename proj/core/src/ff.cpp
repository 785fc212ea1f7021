#include "depdetect/ff.hpp"

#include "depdetect/numutil.hpp"

namespace depdetect {

PrimeField::PrimeField(Int p) : p_(std::move(p)) {
  if (!is_prime(p_))
    throw NotPrime("PrimeField: " + p_.get_str() + " is not prime");
}

FFElement PrimeField::reduce(const Int& a) const { return mod_floor(a, p_); }

FFElement PrimeField::add(const FFElement& a, const FFElement& b) const {
  Int r = a + b;
  if (r >= p_) r -= p_;
  return r;
}

FFElement PrimeField::sub(const FFElement& a, const FFElement& b) const {
  Int r = a - b;
  if (r < 0) r += p_;
  return r;
}

FFElement PrimeField::mul(const FFElement& a, const FFElement& b) const {
  return a * b % p_;
}

FFElement PrimeField::neg(const FFElement& a) const {
  return a == 0 ? a : Int(p_ - a);
}

FFElement PrimeField::inv(const FFElement& a) const {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
    throw ZeroInverse("inverse of " + a.get_str() + " mod " + p_.get_str());
  return r;
}

FFElement PrimeField::pow(const FFElement& base, const Int& e) const {
  if (e < 0) return pow(inv(base), Int(-e));
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
  return r;
}

int PrimeField::legendre(const FFElement& a) const {
  if (p_ == 2) throw EvenCharacteristic("legendre symbol undefined mod 2");
  return mpz_legendre(a.get_mpz_t(), p_.get_mpz_t());
}

std::vector<FFElement> PrimeField::sqrt(const FFElement& a) const {
  if (p_ == 2) throw EvenCharacteristic("square roots mod 2 not supported");
  if (a == 0) return {Int(0)};
  if (legendre(a) == -1) return {};

  Int r;
  if (mpz_fdiv_ui(p_.get_mpz_t(), 4) == 3) {
    r = pow(a, (p_ + 1) / 4);
  } else {
    // Tonelli-Shanks. p - 1 = q * 2^s with q odd.
    Int q = p_ - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
      q >>= 1;
      ++s;
    }
    // Any quadratic non-residue does for z; scan from 2.
    Int z = 2;
    while (legendre(z) != -1) ++z;
    Int m(s), c = pow(z, q), t = pow(a, q), rr = pow(a, (q + 1) / 2);
    while (t != 1) {
      Int t2 = t;
      unsigned long i = 0;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      Int b = c;
      for (Int j = 0; j < m - i - 1; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      rr = mul(rr, b);
    }
    r = rr;
  }
  Int other = p_ - r;
  if (r > other) std::swap(r, other);
  return {r, other};
}

}  // namespace depdetect
