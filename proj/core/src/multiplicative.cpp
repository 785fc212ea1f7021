#include "depdetect/multiplicative.hpp"

#include <set>
#include <unordered_map>
#include <utility>

#include "depdetect/abelian.hpp"
#include "depdetect/numutil.hpp"
#include "scan_common.hpp"

namespace depdetect {

namespace {

const Int kFactorCap = Int("1000000000000");  // 10^12

using u64 = unsigned long;  // 64-bit here; matches the gmp ui interface

u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

// smallest primitive root mod p (deterministic); 1 for p = 2
u64 primitive_root(u64 p, const std::vector<std::pair<u64, int>>& pm1_factors) {
  if (p == 2) return 1;
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : pm1_factors)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error("primitive_root: none found (p not prime?)");
}

// dlog of t in the order-q cyclic group generated by gq (q prime)
u64 bsgs_prime(u64 gq, u64 t, u64 q, u64 p) {
  u64 m = 1;
  while (m * m < q) ++m;  // ceil(sqrt(q)), q fits comfortably
  std::unordered_map<u64, u64> baby;
  baby.reserve(2 * m);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, gq, p);
  }
  const u64 giant = powmod(gq, q - (m % q), p);  // gq^{-m}
  u64 s = t;
  for (u64 i = 0; i * m < q + m; ++i) {
    auto it = baby.find(s);
    if (it != baby.end()) {
      u64 d = i * m + it->second;
      if (d < q) return d;
    }
    s = mulmod(s, giant, p);
  }
  throw Error("bsgs_prime: target outside the subgroup");
}

// Pohlig-Hellman: dlog of x to the primitive root g of F_p^*, n = p - 1
u64 dlog(u64 p, u64 g, u64 x,
         const std::vector<std::pair<u64, int>>& n_factors) {
  const u64 n = p - 1;
  Int res = 0, mod = 1;
  for (const auto& [q, e] : n_factors) {
    u64 qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    const u64 gamma = powmod(g, n / qe, p);  // order qe
    const u64 h = powmod(x, n / qe, p);
    const u64 gq = powmod(gamma, qe / q, p);  // order q
    u64 d = 0, qj = 1;
    for (int j = 0; j < e; ++j) {
      const u64 y = mulmod(h, powmod(gamma, qe - (d % qe), p), p);
      const u64 t = powmod(y, qe / (qj * q), p);
      d += bsgs_prime(gq, t, q, p) * qj;
      qj *= q;
    }
    auto c = crt_pair(res, mod, Int(d), Int(qe));
    if (!c) throw Error("dlog: crt failure");
    res = c->first;
    mod = c->second;
  }
  return mpz_get_ui(mod_floor(res, Int(n == 0 ? 1 : n)).get_mpz_t());
}

u64 reduce_rational(const Rat& x, u64 p) {
  const u64 num = mpz_fdiv_ui(x.get_num().get_mpz_t(), p);
  const u64 den = mpz_fdiv_ui(x.get_den().get_mpz_t(), p);
  return mulmod(num, powmod(den, p - 2, p), p);  // den invertible: p is good
}

int parity(const std::vector<Int>& x, const std::vector<int>& signs) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (signs[i]) s += x[i];
  return mpz_odd_p(s.get_mpz_t()) ? 1 : 0;
}

}  // namespace

void validate_mult_instance(const MultInstance& inst) {
  if (inst.beta == 0) throw InvalidInstance("beta must be nonzero");
  for (std::size_t i = 0; i < inst.gammas.size(); ++i)
    if (inst.gammas[i] == 0)
      throw InvalidInstance("gamma[" + std::to_string(i) + "] must be nonzero");
}

ExponentVector factor_rational(const Rat& x) {
  if (x == 0) throw InvalidInstance("factor_rational: zero input");
  Rat c = x;
  c.canonicalize();
  Int num = c.get_num(), den = c.get_den();
  ExponentVector v;
  if (num < 0) {
    v.sign = 1;
    num = -num;
  }
  if (num > kFactorCap || den > kFactorCap)
    throw FactorizationOverflow("factor_rational: value exceeds the 10^12 cap");
  for (const auto& [q, e] : factorize(num)) v.exponents[q] += e;
  for (const auto& [q, e] : factorize(den)) v.exponents[q] -= e;
  for (auto it = v.exponents.begin(); it != v.exponents.end();)
    it = (it->second == 0) ? v.exponents.erase(it) : std::next(it);
  return v;
}

Rat unfactor(const ExponentVector& v) {
  Int num = v.sign ? -1 : 1, den = 1;
  for (const auto& [q, e] : v.exponents) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(),
               static_cast<unsigned long>(e > 0 ? e : -e));
    (e > 0 ? num : den) *= pw;
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

LocalResult local_check_gm(const MultInstance& inst, const Int& p_) {
  validate_mult_instance(inst);
  if (p_ < 2 || !is_prime(p_)) throw BadPrime("local_check_gm: p not prime");
  const u64 p = mpz_get_ui(p_.get_mpz_t());

  auto meets = [&](const Rat& x) {
    return mpz_fdiv_ui(x.get_num().get_mpz_t(), p) == 0 ||
           mpz_fdiv_ui(x.get_den().get_mpz_t(), p) == 0;
  };
  if (meets(inst.beta)) throw BadPrime("local_check_gm: p meets beta");
  for (const Rat& g : inst.gammas)
    if (meets(g)) throw BadPrime("local_check_gm: p meets a gamma");

  std::vector<std::pair<u64, int>> pm1;
  for (const auto& [q, e] : factorize(Int(p - 1)))
    pm1.emplace_back(mpz_get_ui(q.get_mpz_t()), e);
  const u64 g = primitive_root(p, pm1);

  const std::size_t r = inst.gammas.size();
  IntMatrix M(1, r);
  for (std::size_t i = 0; i < r; ++i)
    M.at(0, i) = Int(dlog(p, g, reduce_rational(inst.gammas[i], p), pm1));
  const Int t = Int(dlog(p, g, reduce_rational(inst.beta, p), pm1));

  LocalResult res;
  res.p = p_;
  res.n1 = 1;
  res.n2 = Int(p - 1);
  auto sol = solve_congruence_full(M, {t}, {res.n2});
  if (!sol) return res;  // Fail

  // re-verify the witness in F_p^* before storage
  u64 acc = 1;
  for (std::size_t i = 0; i < r; ++i) {
    const u64 e = mpz_get_ui(mod_floor(sol->x[i], res.n2).get_mpz_t());
    acc = mulmod(acc, powmod(reduce_rational(inst.gammas[i], p), e, p), p);
  }
  if (acc != reduce_rational(inst.beta, p))
    throw Error("local_check_gm: witness failed re-verification");

  res.pass = true;
  res.coeffs = std::move(sol->x);
  res.unique_mod_exponent = true;
  for (const auto& k : sol->kernel)
    for (const Int& c : k)
      if (mod_floor(c, res.n2) != 0) res.unique_mod_exponent = false;
  return res;
}

std::optional<std::vector<Int>> global_oracle_gm(const MultInstance& inst) {
  validate_mult_instance(inst);
  const std::size_t r = inst.gammas.size();

  const ExponentVector eb = factor_rational(inst.beta);
  std::vector<ExponentVector> eg;
  eg.reserve(r);
  for (const Rat& g : inst.gammas) eg.push_back(factor_rational(g));

  std::set<Int> support;
  for (const auto& [q, e] : eb.exponents) support.insert(q);
  for (const auto& ev : eg)
    for (const auto& [q, e] : ev.exponents) support.insert(q);

  const std::size_t m = support.size();
  IntMatrix M(m, r);
  std::vector<Int> v(m);
  {
    std::size_t row = 0;
    for (const Int& q : support) {
      for (std::size_t i = 0; i < r; ++i) {
        auto it = eg[i].exponents.find(q);
        if (it != eg[i].exponents.end()) M.at(row, i) = it->second;
      }
      auto it = eb.exponents.find(q);
      if (it != eb.exponents.end()) v[row] = it->second;
      ++row;
    }
  }

  // exact integer solve: D = U M V, invert through the diagonal
  SnfResult s = snf(M);
  std::vector<Int> w(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) w[i] += s.U.at(i, k) * v[k];
  std::vector<Int> z(r);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(m, r); ++i)
    if (s.D.at(i, i) != 0) ++rank;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < rank) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), s.D.at(i, i).get_mpz_t()))
        return std::nullopt;
      z[i] = w[i] / s.D.at(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < rank; ++k) x[j] += s.V.at(j, k) * z[k];

  // sign congruence mod 2 on top of the free part
  std::vector<int> signs(r);
  for (std::size_t i = 0; i < r; ++i) signs[i] = eg[i].sign;
  if (parity(x, signs) != eb.sign) {
    bool fixed = false;
    for (std::size_t k = rank; k < r && !fixed; ++k) {
      std::vector<Int> ker(r);
      for (std::size_t j = 0; j < r; ++j) ker[j] = s.V.at(j, k);
      if (parity(ker, signs) == 1) {
        for (std::size_t j = 0; j < r; ++j) x[j] += ker[j];
        fixed = true;
      }
    }
    if (!fixed) return std::nullopt;
  }

  // verification in exponent space (exact, no big powers)
  std::map<Int, Int> acc;
  Int sig = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (signs[i]) sig += x[i];
    for (const auto& [q, e] : eg[i].exponents) acc[q] += x[i] * e;
  }
  bool ok = (mpz_odd_p(sig.get_mpz_t()) ? 1 : 0) == eb.sign;
  for (const auto& [q, e] : acc) {
    auto it = eb.exponents.find(q);
    const Int want = (it == eb.exponents.end()) ? Int(0) : Int(it->second);
    if (e != want) ok = false;
  }
  for (const auto& [q, e] : eb.exponents)
    if (!acc.count(q) && e != 0) ok = false;
  if (!ok) throw Error("global_oracle_gm: solution failed exponent verification");
  return x;
}

Verdict scan_gm(const MultInstance& inst, long bound,
                const ScanConfig& config) {
  validate_mult_instance(inst);
  if (bound < 3) throw InvalidInstance("scan_gm: bound must be >= 3");

  Verdict v;
  v.bound = bound;

  auto check = [&](const Int& p) -> std::optional<LocalResult> {
    try {
      return local_check_gm(inst, p);
    } catch (const BadPrime&) {
      return std::nullopt;
    }
  };
  detail::ScanOutcome out = detail::run_scan(bound, config.threads, check);
  v.primes_tested = out.tested;
  v.primes_skipped = out.skipped;
  if (config.keep_detail) {
    v.detail = out.passes;
    if (out.failure) v.detail.push_back(*out.failure);
  }

  if (out.failure) {
    v.kind = VerdictKind::Independent;
    v.witness = out.failure->p;
    return v;
  }

  if (!config.use_oracle) {
    v.kind = VerdictKind::Inconclusive;
    v.warnings.push_back(
        "all local checks passed, but closers are disabled (--no-oracle)");
    return v;
  }

  try {
    if (auto n = global_oracle_gm(inst)) {
      v.kind = VerdictKind::Dependent;
      v.coefficients = std::move(*n);
      return v;
    }
    v.kind = VerdictKind::Inconclusive;
    v.warnings.push_back(
        "oracle certifies non-membership but no witness prime within bound");
  } catch (const FactorizationOverflow&) {
    v.kind = VerdictKind::Inconclusive;
    v.warnings.push_back(
        "values exceed the factorization cap; exact oracle unavailable");
  }
  return v;
}

}  // namespace depdetect
