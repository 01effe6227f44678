#include "core/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ddgeom {

std::vector<Monomial> monomials_up_to(int d) {
  if (d < 0) throw std::invalid_argument("monomials_up_to: negative degree");
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(monomial_count(d)));
  for (int total = 0; total <= d; ++total)
    for (int e0 = 0; e0 <= total; ++e0)
      for (int e1 = 0; e1 <= total - e0; ++e1)
        out.push_back({e0, e1, total - e0 - e1});
  return out;
}

long monomial_count(int d) {
  if (d < 0) return 0;
  return static_cast<long>(d + 1) * (d + 2) * (d + 3) / 6;
}

TriPoly::TriPoly(TermMap terms) : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    const Monomial& e = it->first;
    if (e[0] < 0 || e[1] < 0 || e[2] < 0)
      throw std::invalid_argument("monomial with negative exponent");
    if (sgn(it->second) == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

TriPoly TriPoly::constant(const Rational& c) {
  TermMap t;
  if (sgn(c) != 0) t[{0, 0, 0}] = c;
  return TriPoly(std::move(t));
}

TriPoly TriPoly::variable(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("variable index out of range");
  Monomial e{0, 0, 0};
  e[i] = 1;
  TermMap t;
  t[e] = 1;
  return TriPoly(std::move(t));
}

TriPoly TriPoly::term(const Rational& c, const Monomial& e) {
  TermMap t;
  if (sgn(c) != 0) t[e] = c;
  return TriPoly(std::move(t));
}

TriPoly TriPoly::product_of(const std::vector<TriPoly>& factors) {
  TriPoly result = constant(1);
  for (const TriPoly& f : factors) result = result * f;
  result.factors_ = factors;
  return result;
}

int TriPoly::degree() const {
  if (terms_.empty()) return -1;
  const Monomial& e = terms_.rbegin()->first;
  return e[0] + e[1] + e[2];
}

Rational TriPoly::eval(const Point3& p) const {
  int maxe[3] = {0, 0, 0};
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < 3; ++i) maxe[i] = std::max(maxe[i], e[i]);
  std::vector<Rational> pw[3];
  for (int i = 0; i < 3; ++i) {
    pw[i].resize(static_cast<std::size_t>(maxe[i]) + 1);
    pw[i][0] = 1;
    for (int k = 1; k <= maxe[i]; ++k) pw[i][k] = pw[i][k - 1] * p[i];
  }
  Rational acc(0);
  for (const auto& [e, c] : terms_) acc += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
  return acc;
}

TriPoly TriPoly::partial(int var) const {
  if (var < 0 || var > 2) throw std::invalid_argument("variable index out of range");
  TermMap t;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Monomial d = e;
    d[var] -= 1;
    t[d] = c * e[var];
  }
  return TriPoly(std::move(t));
}

UniPoly TriPoly::restrict_to_line(const Line3& line) const {
  int maxe[3] = {0, 0, 0};
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < 3; ++i) maxe[i] = std::max(maxe[i], e[i]);
  std::vector<UniPoly> pw[3];
  for (int i = 0; i < 3; ++i) {
    pw[i].resize(static_cast<std::size_t>(maxe[i]) + 1);
    pw[i][0] = UniPoly::constant(1);
    const UniPoly lin({line.base()[i], line.dir()[i]});
    for (int k = 1; k <= maxe[i]; ++k) pw[i][k] = pw[i][k - 1] * lin;
  }
  UniPoly acc;
  for (const auto& [e, c] : terms_)
    acc = acc + (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]) * c;
  return acc;
}

TriPoly TriPoly::normalized() const {
  if (terms_.empty()) return TriPoly();
  Integer den_lcm(1);
  for (const auto& [e, c] : terms_)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Integer num_gcd(0);
  for (const auto& [e, c] : terms_) {
    const Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(terms_.rbegin()->second) < 0) scale = -scale;
  TermMap t;
  for (const auto& [e, c] : terms_) t[e] = c * scale;
  return TriPoly(std::move(t));
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
  TermMap t = terms_;
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = t.emplace(e, c);
    if (!inserted) it->second += c;
  }
  return TriPoly(std::move(t));
}

TriPoly TriPoly::operator-(const TriPoly& o) const { return *this + (-o); }

TriPoly TriPoly::operator*(const TriPoly& o) const {
  TermMap t;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      const Monomial e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      auto [it, inserted] = t.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  return TriPoly(std::move(t));
}

TriPoly TriPoly::operator-() const {
  TermMap t;
  for (const auto& [e, c] : terms_) t[e] = -c;
  return TriPoly(std::move(t));
}

TriPoly TriPoly::operator*(const Rational& s) const {
  if (sgn(s) == 0) return TriPoly();
  TermMap t;
  for (const auto& [e, c] : terms_) t[e] = c * s;
  return TriPoly(std::move(t));
}

std::string TriPoly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"x", "y", "z"};
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    const Rational a = abs(c);
    const bool is_const = e[0] == 0 && e[1] == 0 && e[2] == 0;
    if (a != 1 || is_const) os << rational_to_string(a);
    bool star = a != 1 && !is_const;
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (star) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      star = true;
    }
  }
  return os.str();
}

bool divisible_by(const TriPoly& w, const TriPoly& q) {
  if (q.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const auto& qlead = *q.terms().rbegin();
  TriPoly rem = w;
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().rbegin();
    const Monomial& er = rlead.first;
    const Monomial& eq = qlead.first;
    if (er[0] < eq[0] || er[1] < eq[1] || er[2] < eq[2]) return false;
    const Monomial shift{er[0] - eq[0], er[1] - eq[1], er[2] - eq[2]};
    rem = rem - q * TriPoly::term(rlead.second / qlead.second, shift);
  }
  return true;
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::term(const Rational& c, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::strip() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (coeffs_.empty() || o.coeffs_.empty()) return UniPoly();
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const Rational& s) const {
  std::vector<Rational> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] * s;
  return UniPoly(std::move(v));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& div) const {
  if (div.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  UniPoly rem = *this;
  const int dd = div.degree();
  if (degree() < dd) return {UniPoly(), rem};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
  while (rem.degree() >= dd) {
    const int k = rem.degree() - dd;
    const Rational c = rem.leading() / div.leading();
    quot[static_cast<std::size_t>(k)] = c;
    std::vector<Rational> v = rem.coeffs_;
    for (int i = 0; i <= dd; ++i)
      v[static_cast<std::size_t>(i + k)] -= c * div.coeffs_[static_cast<std::size_t>(i)];
    rem = UniPoly(std::move(v));
  }
  return {UniPoly(std::move(quot)), rem};
}

UniPoly UniPoly::primitive() const {
  if (coeffs_.empty()) return UniPoly();
  Integer den_lcm(1);
  for (const Rational& c : coeffs_)
    if (sgn(c) != 0)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Integer num_gcd(0);
  for (const Rational& c : coeffs_) {
    if (sgn(c) == 0) continue;
    const Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return *this * scale;
}

std::string UniPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    const Rational a = abs(c);
    if (a != 1 || i == 0) os << rational_to_string(a);
    if (i > 0) {
      if (a != 1) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.primitive();
  UniPoly y = b.primitive();
  while (!y.is_zero()) {
    UniPoly r = x.divrem(y).second.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.is_zero() && sgn(x.leading()) < 0) x = -x;
  return x;
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree part of zero polynomial");
  if (p.degree() == 0) return UniPoly::constant(1);
  const UniPoly g = gcd(p, p.derivative());
  UniPoly q = p.divrem(g).first.primitive();
  if (sgn(q.leading()) < 0) q = -q;
  return q;
}

Rational cauchy_root_bound(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("root bound of zero polynomial");
  if (p.degree() == 0) return Rational(1);
  Rational m(0);
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    const Rational r = abs(p.coeffs()[static_cast<std::size_t>(i)]) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.primitive());
  if (p.degree() == 0) return chain;
  chain.push_back(p.derivative().primitive());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    UniPoly r = chain[chain.size() - 2].divrem(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back((-r).primitive());
  }
  return chain;
}

namespace {

long sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  long v = 0;
  int last = 0;
  for (const UniPoly& p : chain) {
    const int s = p.is_zero() ? 0 : sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

long count_roots_between(const std::vector<UniPoly>& chain, const Rational& a,
                         const Rational& b) {
  if (chain.empty()) throw std::invalid_argument("empty Sturm chain");
  if (a >= b) throw std::invalid_argument("count_roots_between: empty interval");
  if (sgn(chain[0].eval(a)) == 0 || sgn(chain[0].eval(b)) == 0)
    throw std::invalid_argument("count_roots_between: endpoint is a root");
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("root isolation of zero polynomial");
  std::vector<RootInterval> out;
  const UniPoly u = squarefree_part(p);
  if (u.degree() == 0) return out;
  const auto chain = sturm_sequence(u);
  const Rational bound = cauchy_root_bound(u);

  std::function<void(const Rational&, const Rational&, long)> bisect =
      [&](const Rational& lo, const Rational& hi, long count) {
        if (count == 0) return;
        if (count == 1) {
          out.push_back({lo, hi});
          return;
        }
        const Rational mid = (lo + hi) / 2;
        if (sgn(u.eval(mid)) == 0) {
          // Exact rational root at mid; carve out a root-free margin so the
          // singleton never touches its neighbors.
          Rational w = (hi - lo) / 4;
          while (sgn(u.eval(mid - w)) == 0 || sgn(u.eval(mid + w)) == 0 ||
                 count_roots_between(chain, mid - w, mid + w) > 1)
            w /= 2;
          const long left = count_roots_between(chain, lo, mid - w);
          bisect(lo, mid - w, left);
          out.push_back({mid, mid});
          bisect(mid + w, hi, count - 1 - left);
          return;
        }
        const long left = count_roots_between(chain, lo, mid);
        bisect(lo, mid, left);
        bisect(mid, hi, count - left);
      };

  const long total = count_roots_between(chain, -bound, bound);
  bisect(-bound, bound, total);
  return out;
}

std::vector<Rational> interleaving_samples(const std::vector<RootInterval>& roots) {
  if (roots.empty()) return {Rational(0)};
  std::vector<Rational> out;
  out.reserve(roots.size() + 1);
  out.push_back(roots.front().lo < roots.front().hi ? roots.front().lo
                                                    : roots.front().lo - 1);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const Rational& a = roots[i].hi;
    const Rational& b = roots[i + 1].lo;
    out.push_back(a < b ? simplest_rational_between(a, b) : a);
  }
  out.push_back(roots.back().lo < roots.back().hi ? roots.back().hi
                                                  : roots.back().hi + 1);
  return out;
}

}  // namespace ddgeom
