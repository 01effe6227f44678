#include "core/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ddgeom {

namespace {

bool scan_integer(const std::string& s, std::size_t& i) {
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  return digits > 0;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

}  // namespace

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  bool ok = scan_integer(text, i);
  if (ok && i < text.size() && text[i] == '/') {
    ++i;
    ok = scan_integer(text, i);
  }
  if (!ok || i != text.size())
    throw std::invalid_argument("malformed rational: '" + text + "'");
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational: '" + text + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("zero denominator in rational: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rational_to_double(const Rational& q) {
  // mpq_get_d truncates, so round by hand: scale |q| into [2^52, 2^53),
  // round that to an integer with ties to even, and scale back. Every
  // intermediate is exact.
  const int sign = sgn(q);
  if (sign == 0) return 0.0;
  const Rational a = sign > 0 ? q : Rational(-q);

  long e = floor_log2(a.get_num()) - floor_log2(a.get_den());
  const auto pow2 = [](long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(1, p) : Rational(p);
  };
  if (a < pow2(e)) --e;
  if (e > 1020 || e < -1020) return q.get_d();

  const Rational m = a * pow2(52 - e);
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), m.get_num().get_mpz_t(), m.get_den().get_mpz_t());
  const Rational frac = m - Rational(n);
  const int half = cmp(frac, Rational(1, 2));
  if (half > 0 || (half == 0 && mpz_odd_p(n.get_mpz_t()))) n += 1;

  return sign * std::ldexp(n.get_d(), static_cast<int>(e - 52));
}

std::uint64_t hash_integer(const Integer& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::uint64_t h = kFnvOffset;
  const int sign = mpz_sgn(p);
  h = (h ^ static_cast<std::uint64_t>(sign + 1)) * kFnvPrime;
  const std::size_t n = mpz_size(p);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t limb = static_cast<std::uint64_t>(mpz_getlimbn(p, i));
    for (int b = 0; b < 8; ++b) {
      h = (h ^ (limb & 0xff)) * kFnvPrime;
      limb >>= 8;
    }
  }
  return h;
}

std::uint64_t hash_rational(const Rational& q) {
  return hash_combine(hash_integer(q.get_num()), hash_integer(q.get_den()));
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ull + (seed << 12) + (seed >> 4);
  return seed;
}

Rational pow_rational(const Rational& x, long k) {
  if (k == 0) return Rational(1);
  const bool invert = k < 0;
  const unsigned long e = invert ? static_cast<unsigned long>(-(k + 1)) + 1ul
                                 : static_cast<unsigned long>(k);
  if (invert && x == 0) throw std::domain_error("0 raised to a negative power");
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), e);
  if (invert) mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  return r;
}

int cmp_pow(const Rational& x, unsigned long p, const Rational& y, unsigned long q) {
  if (x <= 0 || y <= 0) throw std::domain_error("cmp_pow requires positive bases");
  // x^p vs y^q with x = a/b, y = c/d reduces to a^p d^q vs c^q b^p.
  Integer lhs, rhs, t;
  mpz_pow_ui(lhs.get_mpz_t(), mpq_numref(x.get_mpq_t()), p);
  mpz_pow_ui(t.get_mpz_t(), mpq_denref(y.get_mpq_t()), q);
  lhs *= t;
  mpz_pow_ui(rhs.get_mpz_t(), mpq_numref(y.get_mpq_t()), q);
  mpz_pow_ui(t.get_mpz_t(), mpq_denref(x.get_mpq_t()), p);
  rhs *= t;
  return cmp(lhs, rhs);
}

int cmp_rational_pow(const Rational& x, const Rational& y, const Rational& e) {
  if (sgn(e) < 0) throw std::domain_error("cmp_rational_pow requires e >= 0");
  if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
    throw std::domain_error("exponent too large");
  // x vs y^(p/q) is x^q vs y^p for positive x, y.
  return cmp_pow(x, e.get_den().get_ui(), y, e.get_num().get_ui());
}

Integer ceil_pow(const Integer& L, const Rational& e) {
  if (L < 1) throw std::domain_error("ceil_pow requires L >= 1");
  if (sgn(e) < 0) throw std::domain_error("ceil_pow requires e >= 0");
  if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
    throw std::domain_error("exponent too large");
  const unsigned long p = e.get_num().get_ui();
  const unsigned long q = e.get_den().get_ui();
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), L.get_mpz_t(), p);
  Integer root;
  const int exact = mpz_root(root.get_mpz_t(), power.get_mpz_t(), q);
  if (!exact) root += 1;
  return root;
}

Integer floor_pow(const Integer& L, const Rational& e) {
  if (L < 1) throw std::domain_error("floor_pow requires L >= 1");
  if (sgn(e) < 0) throw std::domain_error("floor_pow requires e >= 0");
  if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
    throw std::domain_error("exponent too large");
  const unsigned long p = e.get_num().get_ui();
  const unsigned long q = e.get_den().get_ui();
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), L.get_mpz_t(), p);
  Integer root;
  mpz_root(root.get_mpz_t(), power.get_mpz_t(), q);
  return root;
}

namespace {

// Stern-Brocot walk over non-negative intervals. Assumes 0 <= lo < hi.
Rational simplest_nonneg(const Rational& lo, const Rational& hi) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), mpq_numref(lo.get_mpq_t()), mpq_denref(lo.get_mpq_t()));
  const Rational candidate(fl + 1);
  if (candidate < hi) return candidate;
  if (lo == Rational(fl)) {
    // (fl, hi) contains no integer; the simplest fractional offset in
    // (0, g) with g <= 1 is 1/(floor(1/g) + 1).
    const Rational g = hi - Rational(fl);
    Integer k;
    const Rational inv = 1 / g;
    mpz_fdiv_q(k.get_mpz_t(), mpq_numref(inv.get_mpq_t()), mpq_denref(inv.get_mpq_t()));
    return Rational(fl) + Rational(1) / Rational(k + 1);
  }
  const Rational lo_frac = lo - Rational(fl);
  const Rational hi_frac = hi - Rational(fl);
  const Rational inner = simplest_nonneg(1 / hi_frac, 1 / lo_frac);
  return Rational(fl) + 1 / inner;
}

}  // namespace

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo >= hi) throw std::invalid_argument("simplest_rational_between: empty interval");
  if (sgn(lo) < 0 && sgn(hi) > 0) return Rational(0);
  if (sgn(hi) <= 0) return -simplest_rational_between(-hi, -lo);
  return simplest_nonneg(lo, hi);
}

long floor_log2(const Integer& n) {
  if (n < 1) throw std::domain_error("floor_log2 requires n >= 1");
  return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1;
}

}  // namespace ddgeom
