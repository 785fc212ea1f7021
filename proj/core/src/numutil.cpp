#include "depdetect/numutil.hpp"

#include <mutex>

namespace depdetect {

std::vector<unsigned long> primes_up_to(unsigned long n) {
  static std::mutex mu;
  static std::vector<unsigned long> cached;
  static unsigned long cached_bound = 0;

  std::lock_guard<std::mutex> lock(mu);
  if (n > cached_bound) {
    std::vector<bool> composite(n + 1, false);
    for (unsigned long i = 2; i * i <= n; ++i)
      if (!composite[i])
        for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
    cached.clear();
    for (unsigned long i = 2; i <= n; ++i)
      if (!composite[i]) cached.push_back(i);
    cached_bound = n;
    return cached;
  }
  std::vector<unsigned long> out;
  for (unsigned long p : cached) {
    if (p > n) break;
    out.push_back(p);
  }
  return out;
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned r) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witness found
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul,
                          29ul, 31ul, 37ul}) {
    if (mpz_cmp_ui(n.get_mpz_t(), q) == 0) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  Int d = n - 1;
  unsigned r = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++r;
  }
  // Bases 2..17 are proven below 3.4e14; the rest extend the deterministic
  // range far past anything this pipeline produces.
  for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul,
                          29ul, 31ul, 37ul}) {
    if (miller_rabin_witness(n, Int(a), d, r)) return false;
  }
  return true;
}

std::vector<std::pair<Int, int>> factorize(const Int& n) {
  if (n < 1) throw FactorizationOverflow("factorize: input must be positive");
  std::vector<std::pair<Int, int>> out;
  if (n == 1) return out;
  Int m = n;
  for (unsigned long q : primes_up_to(1000000ul)) {
    if (Int(q) * q > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      int e = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
        ++e;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), q));
      out.emplace_back(Int(q), e);
    }
  }
  if (m > 1) {
    if (!is_prime(m))
      throw FactorizationOverflow("factorize: cofactor " + m.get_str() +
                                  " resists trial division");
    out.emplace_back(m, 1);
  }
  return out;
}

std::optional<std::pair<Int, Int>> crt_pair(const Int& r1, const Int& m1,
                                            const Int& r2, const Int& m2) {
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(),
             m2.get_mpz_t());
  Int diff = r2 - r1;
  if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  Int lcm = m1 / g * m2;
  Int x = r1 + m1 * (diff / g % (m2 / g)) * s;
  return std::make_pair(mod_floor(x, lcm), lcm);
}

int valuation(const Int& n, const Int& q) {
  int e = 0;
  Int m = n;
  while (m != 0 && mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
    m /= q;
    ++e;
  }
  return e;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int symmetric_mod(const Int& a, const Int& m) {
  Int r = mod_floor(a, m);
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace depdetect
