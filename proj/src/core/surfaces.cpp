#include "core/surfaces.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "core/rng.hpp"

namespace ddgeom {

namespace {

std::vector<Rational> monomial_row(const Point3& p,
                                   const std::vector<Monomial>& basis) {
  std::vector<Rational> row(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    row[j] = pow_rational(p.x, basis[j][0]) * pow_rational(p.y, basis[j][1]) *
             pow_rational(p.z, basis[j][2]);
  }
  return row;
}

/// Full nullspace basis by Gauss-Jordan elimination: one vector per free
/// column, that column set to one and the pivot entries back-solved.
std::vector<std::vector<Rational>> nullspace_basis(
    std::vector<std::vector<Rational>> rows, std::size_t width) {
  std::vector<long> pivot_col(rows.size(), -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t lead = rank;
    while (lead < rows.size() && sgn(rows[lead][col]) == 0) ++lead;
    if (lead == rows.size()) continue;
    std::swap(rows[rank], rows[lead]);
    pivot_col[rank] = static_cast<long>(col);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < width; ++c) {
        rows[r][c] -= f * rows[rank][c];
      }
    }
    ++rank;
  }
  std::vector<char> is_pivot(width, 0);
  for (std::size_t r = 0; r < rank; ++r) {
    is_pivot[static_cast<std::size_t>(pivot_col[r])] = 1;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < width; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(width);
    v[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) {
      const std::size_t col = static_cast<std::size_t>(pivot_col[r]);
      if (sgn(rows[r][f]) != 0) v[col] = -rows[r][f] / rows[r][col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

TriPoly poly_from_coef(const std::vector<Rational>& coef,
                       const std::vector<Monomial>& basis) {
  TriPoly::TermMap terms;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    if (sgn(coef[j]) != 0) terms[basis[j]] = coef[j];
  }
  return TriPoly(std::move(terms));
}

/// Exact square root of a nonnegative rational, when one exists.
std::optional<Rational> sqrt_rational(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  const Integer num = q.get_num();
  const Integer den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn) / Rational(rd);
}

/// Exact quotient w / q when the division is exact, via leading-term
/// reduction against the single divisor.
std::optional<TriPoly> try_divide(const TriPoly& w, const TriPoly& q) {
  if (q.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const auto& qlead = *q.terms().rbegin();
  TriPoly rem = w;
  TriPoly quot;
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().rbegin();
    const Monomial& er = rlead.first;
    const Monomial& eq = qlead.first;
    if (er[0] < eq[0] || er[1] < eq[1] || er[2] < eq[2]) return std::nullopt;
    const Monomial shift{er[0] - eq[0], er[1] - eq[1], er[2] - eq[2]};
    const TriPoly t = TriPoly::term(rlead.second / qlead.second, shift);
    rem = rem - q * t;
    quot = quot + t;
  }
  return quot;
}

/// Linear polynomial l with l*l == w, when one exists. w must be nonzero.
std::optional<TriPoly> linear_square_root(const TriPoly& w) {
  const auto coef_of = [&](const Monomial& e) {
    const auto it = w.terms().find(e);
    return it == w.terms().end() ? Rational(0) : it->second;
  };
  TriPoly l;
  int lead = -1;
  for (int v = 0; v < 3 && lead < 0; ++v) {
    Monomial sq{0, 0, 0};
    sq[v] = 2;
    const Rational c = coef_of(sq);
    if (sgn(c) == 0) continue;
    const auto s = sqrt_rational(c);
    if (!s) return std::nullopt;
    lead = v;
    l = TriPoly::variable(v) * *s;
    for (int u = v + 1; u < 3; ++u) {
      Monomial cross{0, 0, 0};
      cross[v] = 1;
      cross[u] = 1;
      l = l + TriPoly::variable(u) * (coef_of(cross) / (*s * 2));
    }
    Monomial lin{0, 0, 0};
    lin[v] = 1;
    l = l + TriPoly::constant(coef_of(lin) / (*s * 2));
  }
  if (lead < 0) {
    const auto s = sqrt_rational(coef_of(Monomial{0, 0, 0}));
    if (!s || w.degree() > 0) return std::nullopt;
    l = TriPoly::constant(*s);
  }
  if (l * l != w) return std::nullopt;
  return l;
}

/// Rational split of a degree-2 polynomial along one variable: collects
/// poly = A v^2 + B v + C with B, C free of v, then factors through the
/// discriminant when it is a perfect square. Every claimed factorization
/// is re-multiplied and checked before being returned.
bool split_quadric_in(const TriPoly& poly, int v, SurfaceClass& out) {
  Rational A;
  TriPoly B, C;
  for (const auto& [mono, c] : poly.terms()) {
    Monomial rest = mono;
    rest[v] = 0;
    if (mono[v] == 2) {
      A = c;
    } else if (mono[v] == 1) {
      B = B + TriPoly::term(c, rest);
    } else {
      C = C + TriPoly::term(c, rest);
    }
  }
  if (sgn(A) == 0) {
    if (B.is_zero()) return false;
    // poly = B v + C factors iff B divides C.
    TriPoly quot;
    if (!C.is_zero()) {
      const auto q = try_divide(C, B);
      if (!q) return false;
      quot = *q;
    }
    const TriPoly f = TriPoly::variable(v) + quot;
    if (B * f != poly) return false;
    out.status = Irreducibility::ReducibleWithFactors;
    out.factors = {B.normalized(), f.normalized()};
    return true;
  }
  const TriPoly disc = B * B - C * (A * 4);
  const TriPoly lead = TriPoly::variable(v) * (A * 2) + B;
  if (disc.is_zero()) {
    if (lead * lead != poly * (A * 4)) return false;
    out.status = Irreducibility::ReducibleWithFactors;
    out.factors = {lead.normalized()};
    return true;
  }
  const auto root = linear_square_root(disc);
  if (!root) return false;
  const TriPoly f1 = lead - *root;
  const TriPoly f2 = lead + *root;
  if (f1 * f2 != poly * (A * 4)) return false;
  out.status = Irreducibility::ReducibleWithFactors;
  out.factors = {f1.normalized(), f2.normalized()};
  return true;
}

/// Inertia (positives, negatives) of the symmetric 4x4 homogenization of a
/// degree-2 polynomial, by exact congruence reduction: nonzero diagonal
/// pivots are cleared; a zero diagonal with a nonzero off-diagonal entry
/// contributes one hyperbolic (+1, -1) pair.
std::pair<long, long> quadric_inertia(const TriPoly& poly) {
  const auto coef_of = [&](int a, int b, int c) {
    const auto it = poly.terms().find(Monomial{a, b, c});
    return it == poly.terms().end() ? Rational(0) : it->second;
  };
  std::array<std::array<Rational, 4>, 4> M;
  M[0][0] = coef_of(2, 0, 0);
  M[1][1] = coef_of(0, 2, 0);
  M[2][2] = coef_of(0, 0, 2);
  M[3][3] = coef_of(0, 0, 0);
  M[0][1] = M[1][0] = coef_of(1, 1, 0) / 2;
  M[0][2] = M[2][0] = coef_of(1, 0, 1) / 2;
  M[1][2] = M[2][1] = coef_of(0, 1, 1) / 2;
  M[0][3] = M[3][0] = coef_of(1, 0, 0) / 2;
  M[1][3] = M[3][1] = coef_of(0, 1, 0) / 2;
  M[2][3] = M[3][2] = coef_of(0, 0, 1) / 2;

  std::vector<int> active{0, 1, 2, 3};
  long pos = 0, neg = 0;
  while (!active.empty()) {
    std::size_t pi = active.size();
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (sgn(M[active[i]][active[i]]) != 0) {
        pi = i;
        break;
      }
    }
    if (pi < active.size()) {
      const int i = active[pi];
      const Rational d = M[i][i];
      if (sgn(d) > 0) {
        ++pos;
      } else {
        ++neg;
      }
      active.erase(active.begin() + static_cast<long>(pi));
      for (const int r : active) {
        for (const int c : active) M[r][c] -= M[r][i] * M[i][c] / d;
      }
      continue;
    }
    int i = -1, j = -1;
    for (std::size_t a = 0; a < active.size() && i < 0; ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        if (sgn(M[active[a]][active[b]]) != 0) {
          i = active[a];
          j = active[b];
          break;
        }
      }
    }
    if (i < 0) break;
    const Rational d = M[i][j];
    ++pos;
    ++neg;
    active.erase(std::remove_if(active.begin(), active.end(),
                                [&](int k) { return k == i || k == j; }),
                 active.end());
    for (const int r : active) {
      for (const int c : active) {
        M[r][c] -= (M[r][i] * M[j][c] + M[r][j] * M[i][c]) / d;
      }
    }
  }
  return {pos, neg};
}

/// Plane through two coplanar distinct lines; zero polynomial otherwise.
TriPoly pair_plane(const Line3& a, const Line3& b) {
  if (sgn(plucker_side(a, b)) != 0) return TriPoly::zero();
  Vec3 n = cross(a.dir(), b.dir());
  if (is_zero(n)) n = cross(a.dir(), b.base() - a.base());
  if (is_zero(n)) return TriPoly::zero();
  return TriPoly::variable(0) * n.x + TriPoly::variable(1) * n.y +
         TriPoly::variable(2) * n.z + TriPoly::constant(-dot(n, a.base()));
}

}  // namespace

const char* irreducibility_name(Irreducibility s) {
  switch (s) {
    case Irreducibility::VerifiedIrreducible:
      return "verified-irreducible";
    case Irreducibility::Unverified:
      return "unverified";
    case Irreducibility::ReducibleWithFactors:
      return "reducible-with-factors";
  }
  return "unverified";
}

bool line_in_zero_set(const TriPoly& poly, const Line3& line) {
  return poly.restrict_to_line(line).is_zero();
}

std::vector<TriPoly> vanishing_space(const std::vector<Line3>& lines,
                                     int degree) {
  if (degree < 1) {
    throw std::invalid_argument("vanishing_space: degree must be at least 1");
  }
  const std::vector<Monomial> basis = monomials_up_to(degree);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(lines.size() * (static_cast<std::size_t>(degree) + 1));
  for (const Line3& l : lines) {
    for (long k = 0; k <= degree; ++k) {
      rows.push_back(monomial_row(l.point_at(Rational(k)), basis));
    }
  }
  std::vector<TriPoly> space;
  for (auto& v : nullspace_basis(std::move(rows), basis.size())) {
    space.push_back(poly_from_coef(v, basis));
  }
  return space;
}

SurfaceClass classify_surface(const TriPoly& poly) {
  if (poly.is_zero()) {
    throw std::invalid_argument("classify_surface: zero polynomial");
  }
  SurfaceClass out;
  const int deg = poly.degree();
  if (deg == 1) {
    out.status = Irreducibility::VerifiedIrreducible;
    return out;
  }
  if (deg != 2) return out;
  const auto [pos, neg] = quadric_inertia(poly);
  if (pos + neg >= 3) {
    // A product of two linear forms has matrix rank at most 2, so rank 3
    // or 4 rules out any splitting, over any field.
    out.status = Irreducibility::VerifiedIrreducible;
    return out;
  }
  for (int v = 0; v < 3; ++v) {
    if (split_quadric_in(poly, v, out)) return out;
  }
  // Rank <= 2 splits over some extension of Q, but no rational
  // factorization exists to exhibit.
  return out;
}

std::vector<SurfaceCandidate> greedy_surface_clusters(
    const std::vector<Line3>& lines, int degree, long threshold,
    std::uint64_t seed) {
  if (degree < 1) {
    throw std::invalid_argument(
        "greedy_surface_clusters: degree must be at least 1");
  }
  if (threshold < 2) {
    throw std::invalid_argument(
        "greedy_surface_clusters: threshold must be at least 2");
  }
  const long L = static_cast<long>(lines.size());
  Rng rng(seed);
  std::vector<char> alive(lines.size(), 1);
  std::vector<SurfaceCandidate> accepted;

  while (true) {
    std::vector<long> idx;
    for (long i = 0; i < L; ++i) {
      if (alive[static_cast<std::size_t>(i)]) idx.push_back(i);
    }
    if (static_cast<long>(idx.size()) < threshold) break;

    // Candidate pool, deduped on the normalized polynomial.
    std::map<std::string, TriPoly> pool;
    const auto add_candidate = [&](const TriPoly& q) {
      if (q.is_zero()) return;
      TriPoly n = q.normalized();
      std::string key = n.to_string();
      pool.emplace(std::move(key), std::move(n));
    };
    const auto add_subset = [&](const std::vector<long>& subset) {
      std::vector<Line3> chosen;
      chosen.reserve(subset.size());
      for (const long i : subset) chosen.push_back(lines[static_cast<std::size_t>(i)]);
      for (const TriPoly& q : vanishing_space(chosen, degree)) add_candidate(q);
    };

    if (degree == 1) {
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          add_candidate(pair_plane(lines[static_cast<std::size_t>(idx[a])],
                                   lines[static_cast<std::size_t>(idx[b])]));
        }
      }
    } else {
      const long n = static_cast<long>(idx.size());
      const long all_pairs = n * (n - 1) / 2;
      if (all_pairs <= 1500) {
        for (std::size_t a = 0; a < idx.size(); ++a) {
          for (std::size_t b = a + 1; b < idx.size(); ++b) {
            add_subset({idx[a], idx[b]});
          }
        }
      } else {
        for (int t = 0; t < 1500; ++t) {
          const long a = rng.uniform_long(0, n - 1);
          long b = rng.uniform_long(0, n - 2);
          if (b >= a) ++b;
          add_subset({idx[static_cast<std::size_t>(a)],
                      idx[static_cast<std::size_t>(b)]});
        }
      }
      const auto random_subset = [&](long k) {
        std::set<long> pick;
        while (static_cast<long>(pick.size()) < k) {
          pick.insert(idx[static_cast<std::size_t>(rng.uniform_long(0, n - 1))]);
        }
        return std::vector<long>(pick.begin(), pick.end());
      };
      if (n >= 3) {
        for (int t = 0; t < 300; ++t) add_subset(random_subset(3));
      }
      if (n >= 4) {
        for (int t = 0; t < 150; ++t) add_subset(random_subset(4));
      }
    }

    long best_cnt = 0;
    TriPoly best;
    for (const auto& [key, q] : pool) {
      long cnt = 0;
      for (const long i : idx) {
        if (line_in_zero_set(q, lines[static_cast<std::size_t>(i)])) ++cnt;
      }
      if (cnt > best_cnt) {
        best_cnt = cnt;
        best = q;
      }
    }
    if (best_cnt < threshold) break;

    SurfaceCandidate cand;
    cand.poly = best;
    for (long i = 0; i < L; ++i) {
      if (line_in_zero_set(best, lines[static_cast<std::size_t>(i)])) {
        cand.lines_contained.push_back(i);
      }
    }
    const SurfaceClass cls = classify_surface(best);
    cand.irreducibility = cls.status;
    cand.factors = cls.factors;
    for (const long i : cand.lines_contained) {
      alive[static_cast<std::size_t>(i)] = 0;
    }
    accepted.push_back(std::move(cand));
  }
  return accepted;
}

SurfcountReport verify_surfcount(
    const std::vector<SurfaceCandidate>& candidates, long line_count,
    long threshold, int degree) {
  if (line_count < 1) {
    throw std::invalid_argument("verify_surfcount: line_count must be positive");
  }
  if (threshold < 2) {
    throw std::invalid_argument("verify_surfcount: threshold must be at least 2");
  }
  if (degree < 1) {
    throw std::invalid_argument("verify_surfcount: degree must be at least 1");
  }
  for (const SurfaceCandidate& c : candidates) {
    if (static_cast<long>(c.lines_contained.size()) < threshold) {
      throw std::invalid_argument(
          "verify_surfcount: a candidate holds fewer lines than the threshold");
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (candidates[i].poly.normalized() == candidates[j].poly.normalized()) {
        throw std::invalid_argument(
            "verify_surfcount: candidates must be pairwise distinct");
      }
    }
  }

  SurfcountReport rep;
  rep.candidates = static_cast<long>(candidates.size());
  rep.count_bound = Rational(2 * line_count) / Rational(threshold);
  rep.shared_bound = static_cast<long>(degree) * degree;
  rep.applicable =
      threshold * threshold > 4 * static_cast<long>(degree) * degree * line_count;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      std::vector<long> shared;
      std::set_intersection(candidates[i].lines_contained.begin(),
                            candidates[i].lines_contained.end(),
                            candidates[j].lines_contained.begin(),
                            candidates[j].lines_contained.end(),
                            std::back_inserter(shared));
      rep.max_shared = std::max(rep.max_shared, static_cast<long>(shared.size()));
    }
  }
  if (!rep.applicable) return rep;

  if (Rational(rep.candidates) > rep.count_bound) {
    throw std::logic_error(
        "verify_surfcount: candidate count exceeds 2L/threshold");
  }
  if (rep.max_shared > rep.shared_bound) {
    throw std::logic_error(
        "verify_surfcount: two surfaces share more than degree^2 lines");
  }
  return rep;
}

}  // namespace ddgeom
