#include "depdetect/reduction.hpp"

#include <random>
#include <vector>

#include "depdetect/numutil.hpp"

namespace depdetect {

namespace {
constexpr unsigned long kCountCap = 1000000ul;
}

CurveFp::CurveFp(PrimeField F, Int a, Int b)
    : F_(std::move(F)), a_(F_.reduce(a)), b_(F_.reduce(b)) {
  if (F_.p() == 2)
    throw EvenCharacteristic("curves over F_2 are outside this pipeline");
  Int d = F_.reduce(4 * a_ * a_ * a_ + 27 * b_ * b_);
  if (d == 0)
    throw SingularCurve("curve is singular mod " + F_.p().get_str());
}

bool CurveFp::contains(const PointFp& P) const {
  if (P.infinity) return true;
  Int lhs = F_.mul(P.y, P.y);
  Int rhs = F_.add(F_.mul(F_.mul(P.x, P.x), P.x),
                   F_.add(F_.mul(a_, P.x), b_));
  return lhs == rhs;
}

PointFp CurveFp::add(const PointFp& P, const PointFp& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  FFElement lambda;
  if (P.x == Q.x) {
    if (F_.add(P.y, Q.y) == 0) return PointFp::at_infinity();
    lambda = F_.mul(F_.add(F_.mul(Int(3), F_.mul(P.x, P.x)), a_),
                    F_.inv(F_.mul(Int(2), P.y)));
  } else {
    lambda = F_.mul(F_.sub(Q.y, P.y), F_.inv(F_.sub(Q.x, P.x)));
  }
  FFElement x3 = F_.sub(F_.sub(F_.mul(lambda, lambda), P.x), Q.x);
  FFElement y3 = F_.sub(F_.mul(lambda, F_.sub(P.x, x3)), P.y);
  return PointFp::affine(std::move(x3), std::move(y3));
}

PointFp CurveFp::neg(const PointFp& P) const {
  if (P.infinity) return P;
  return PointFp::affine(P.x, F_.neg(P.y));
}

PointFp CurveFp::sub(const PointFp& P, const PointFp& Q) const {
  return add(P, neg(Q));
}

PointFp CurveFp::mul(const Int& n, const PointFp& P) const {
  Int k = n;
  PointFp base = P;
  if (k < 0) {
    k = -k;
    base = neg(base);
  }
  PointFp acc = PointFp::at_infinity();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add(acc, base);
    k >>= 1;
    if (k > 0) base = add(base, base);
  }
  return acc;
}

CurveFp reduce_curve(const CurveQ& E, const Int& p) {
  if (mpz_divisible_p(Int(2 * E.disc()).get_mpz_t(), p.get_mpz_t()))
    throw BadReduction("p = " + p.get_str() + " divides 2*disc = " +
                       Int(2 * E.disc()).get_str());
  return CurveFp(PrimeField(p), E.a(), E.b());
}

PointFp reduce_point(const CurveQ& E, const PointQ& P, const CurveFp& Ep) {
  if (!E.contains(P)) throw PointNotOnCurve("reduce_point: point off curve");
  if (P.infinity) return PointFp::at_infinity();

  // x = u/e^2, y = w/e^3 in lowest terms; for an integral model the
  // denominators have exactly this shape, so e = den(y)/den(x) exactly.
  const Int& dx = P.x.get_den();
  const Int& dy = P.y.get_den();
  Int e;
  if (!mpz_divisible_p(dy.get_mpz_t(), dx.get_mpz_t()))
    throw PointNotOnCurve("reduce_point: denominators not in e^2/e^3 form");
  e = dy / dx;
  if (e * e != dx || e * e * e != dy)
    throw PointNotOnCurve("reduce_point: denominators not in e^2/e^3 form");

  const PrimeField& F = Ep.field();
  if (mpz_divisible_p(e.get_mpz_t(), F.p().get_mpz_t()))
    return PointFp::at_infinity();  // kernel of reduction

  FFElement e2inv = F.inv(F.reduce(e * e));
  FFElement xbar = F.mul(F.reduce(P.x.get_num()), e2inv);
  FFElement ybar = F.mul(F.reduce(P.y.get_num()),
                         F.mul(e2inv, F.inv(F.reduce(e))));
  PointFp R = PointFp::affine(std::move(xbar), std::move(ybar));
  if (!Ep.contains(R))
    throw Error("reduce_point: reduced point off curve (internal)");
  return R;
}

Int count_points(const CurveFp& E) {
  if (E.p() > kCountCap)
    throw UnsupportedScale("point counting is capped at p <= 10^6");
  // p fits a machine word (guarded above), so this O(p) pass deliberately
  // runs on words: mark the nonzero squares, then walk x.
  unsigned long p = mpz_get_ui(E.p().get_mpz_t());
  unsigned long a = mpz_get_ui(E.a().get_mpz_t());
  unsigned long b = mpz_get_ui(E.b().get_mpz_t());
  std::vector<unsigned char> qr(p, 0);
  for (unsigned long u = 1; u <= (p - 1) / 2; ++u) qr[u * u % p] = 1;
  long long sum = 0;
  for (unsigned long x = 0; x < p; ++x) {
    unsigned long t = ((x * x % p) * x + a * x + b) % p;
    if (t != 0) sum += qr[t] ? 1 : -1;
  }
  Int N = Int(p) + 1 + Int((long)sum);
  if ((N - (Int(p) + 1)) * (N - (Int(p) + 1)) > 4 * Int(p))
    throw Error("count_points: Hasse bound violated (internal)");
  return N;
}

Int point_order(const CurveFp& E, const PointFp& P, const Int& N) {
  if (!E.mul(N, P).infinity)
    throw DecompositionFailure("point_order: N*P != O, N is not a group order");
  Int n = N;
  for (const auto& [q, e] : factorize(N)) {
    for (int i = 0; i < e; ++i) {
      if (!mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) break;
      Int candidate = n / q;
      if (!E.mul(candidate, P).infinity) break;
      n = candidate;
    }
  }
  return n;
}

namespace {

// Point of order lcm(ord(A), ord(B)) out of A, B: split each prime of the lcm
// to whichever argument carries the higher power, then add the coprime parts.
PointFp combine_orders(const CurveFp& E, const PointFp& A, const Int& oa,
                       const PointFp& B, const Int& ob, Int* out_order) {
  Int keep_a = 1, keep_b = 1;
  auto fa = factorize(oa);
  auto fb = factorize(ob);
  for (const auto& [q, ea] : fa) {
    int eb = 0;
    for (const auto& [qb, e] : fb)
      if (qb == q) eb = e;
    if (ea >= eb)
      for (int i = 0; i < ea; ++i) keep_a *= q;
  }
  for (const auto& [q, eb] : fb) {
    int ea = 0;
    for (const auto& [qa, e] : fa)
      if (qa == q) ea = e;
    if (eb > ea)
      for (int i = 0; i < eb; ++i) keep_b *= q;
  }
  *out_order = keep_a * keep_b;
  return E.add(E.mul(oa / keep_a, A), E.mul(ob / keep_b, B));
}

}  // namespace

GroupStructureFp group_structure(const CurveFp& E) {
  Int N = count_points(E);
  if (N == 1)
    return {N, Int(1), Int(1), PointFp::at_infinity(), PointFp::at_infinity()};

  unsigned long p = mpz_get_ui(E.p().get_mpz_t());
  std::mt19937_64 rng(p);  // deterministic: structure depends only on (E, p)
  std::uniform_int_distribution<unsigned long> pick_x(0, p - 1);
  const PrimeField& F = E.field();

  auto sample_point = [&]() -> PointFp {
    for (;;) {
      Int x(pick_x(rng));
      Int t = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(E.a(), x), E.b()));
      if (t == 0) return PointFp::affine(std::move(x), Int(0));
      auto roots = F.sqrt(t);
      if (roots.empty()) continue;
      return PointFp::affine(std::move(x), roots[rng() & 1]);
    }
  };

  Int pm1 = E.p() - 1;
  PointFp G2 = PointFp::at_infinity();
  Int m = 1;  // ord(G2), grows to the group exponent n2

  for (int rounds = 0; rounds < 4096; ++rounds) {
    PointFp Q = sample_point();
    Int oq = point_order(E, Q, N);
    if (!mpz_divisible_p(m.get_mpz_t(), oq.get_mpz_t())) {
      Int nm;
      G2 = combine_orders(E, G2, m, Q, oq, &nm);
      m = nm;
    }
    Int n1 = N / m;
    if (m * n1 != N) continue;  // can't happen (Lagrange), cheap guard
    if (!mpz_divisible_p(m.get_mpz_t(), n1.get_mpz_t())) continue;
    if (!mpz_divisible_p(pm1.get_mpz_t(), n1.get_mpz_t())) continue;

    if (n1 == 1) return {N, n1, m, PointFp::at_infinity(), G2};

    // Hunt a G1 of order n1 independent of G2, one prime component at a time.
    // If m is not actually the exponent this fails and we go back to sampling.
    PointFp G1 = PointFp::at_infinity();
    Int o1 = 1;
    bool ok = true;
    for (const auto& [q, e] : factorize(n1)) {
      int f = valuation(m, q);
      Int qe = 1, qf = 1;
      for (int i = 0; i < e; ++i) qe *= q;
      for (int i = 0; i < f; ++i) qf *= q;
      Int cofactor = N;  // N / q^(e+f), coprime to q
      for (int i = 0; i < e + f; ++i) cofactor /= q;

      PointFp W = E.mul(m / qf, G2);        // order q^f
      PointFp Wq = E.mul(qf / q, W);        // order q
      bool found = false;
      for (int tries = 0; tries < 64 && !found; ++tries) {
        PointFp R = E.mul(cofactor, sample_point());  // lands in q-part
        Int orr = point_order(E, R, qe * qf);
        int gamma = valuation(orr, q);
        if (gamma < e) continue;
        Int down = 1;
        for (int i = 0; i < gamma - e; ++i) down *= q;
        PointFp V = E.mul(down, R);          // order exactly q^e
        PointFp Vq = E.mul(qe / q, V);       // order q
        // independence at level q: Vq outside <Wq> (brute enumeration, q small)
        PointFp T = PointFp::at_infinity();
        bool inside = false;
        for (Int k = 0; k < q; ++k) {
          if (T == Vq) {
            inside = true;
            break;
          }
          T = E.add(T, Wq);
        }
        if (inside) continue;
        G1 = E.add(G1, V);
        o1 *= qe;
        found = true;
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (point_order(E, G1, N) != n1) continue;  // paranoia; components coprime
    return {N, n1, m, G1, G2};
  }
  throw DecompositionFailure("group_structure: sampling failed to certify");
}

std::optional<std::string> structure_problem(const CurveFp& E,
                                             const GroupStructureFp& S) {
  const Int& p = E.p();
  Int diff = S.N - (p + 1);
  if (diff * diff > 4 * p) return "Hasse bound violated";
  if (S.n1 * S.n2 != S.N) return "n1*n2 != N";
  if (!mpz_divisible_p(S.n2.get_mpz_t(), S.n1.get_mpz_t())) return "n1 does not divide n2";
  if (!mpz_divisible_p(Int(p - 1).get_mpz_t(), S.n1.get_mpz_t()))
    return "n1 does not divide p-1";
  if (!E.contains(S.G1)) return "G1 off curve";
  if (!E.contains(S.G2)) return "G2 off curve";
  if (S.n1 == 1 && !S.G1.infinity) return "n1 = 1 but G1 finite";
  if (point_order(E, S.G1, S.N) != S.n1) return "ord(G1) != n1";
  if (point_order(E, S.G2, S.N) != S.n2) return "ord(G2) != n2";
  // independence: for each prime q | n1 the order-q part of <G1> avoids <G2>
  if (S.n1 > 1) {
    for (const auto& [q, e] : factorize(S.n1)) {
      PointFp Vq = E.mul(S.n1 / q, S.G1);
      PointFp Wq = E.mul(S.n2 / q, S.G2);
      PointFp T = PointFp::at_infinity();
      for (Int k = 0; k < q; ++k) {
        if (T == Vq) return "G1 not independent of G2";
        T = E.add(T, Wq);
      }
    }
  }
  return std::nullopt;
}

}  // namespace depdetect
