#include "core/partition.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>

#include "core/rng.hpp"

#ifdef DDGEOM_SEARCH_TRACE
#include <cstdio>
#define DDGEOM_TRACE(...) std::fprintf(stderr, __VA_ARGS__)
#else
#define DDGEOM_TRACE(...)
#endif

namespace ddgeom {

namespace {

struct Dir {
  long a = 0;
  long b = 0;
  long c = 0;
};

constexpr Dir kFixedDirs[] = {
    {1, 0, 0},  {0, 1, 0},  {0, 0, 1},  {1, 1, 0},  {1, 0, 1},
    {0, 1, 1},  {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {1, 1, 1},
    {1, -1, 1}, {1, 1, -1}, {-1, 1, 1},
};
constexpr std::size_t kFixedDirCount = sizeof(kFixedDirs) / sizeof(kFixedDirs[0]);

Dir direction_at(std::size_t idx, Rng& rng) {
  if (idx < kFixedDirCount) return kFixedDirs[idx];
  while (true) {
    const Dir d{rng.uniform_long(-9, 9), rng.uniform_long(-9, 9),
                rng.uniform_long(-9, 9)};
    if (d.a != 0 || d.b != 0 || d.c != 0) return d;
  }
}

Rational dot(const Dir& d, const Point3& p) {
  return p.x * d.a + p.y * d.b + p.z * d.c;
}

TriPoly plane_poly(const Dir& d, const Rational& c) {
  TriPoly p = TriPoly::constant(-c);
  if (d.a != 0) p = p + TriPoly::term(Rational(d.a), Monomial{1, 0, 0});
  if (d.b != 0) p = p + TriPoly::term(Rational(d.b), Monomial{0, 1, 0});
  if (d.c != 0) p = p + TriPoly::term(Rational(d.c), Monomial{0, 0, 1});
  return p;
}

/// Plane value splitting the sorted cell values at the lower median: the
/// simplest rational strictly between the two middle values when they
/// differ, the shared middle value itself otherwise. Either way each open
/// side keeps at most ceil(M/2) of the M values. Fails only when every
/// value is equal.
struct SplitPlan {
  bool ok = false;
  Rational threshold;
};

SplitPlan median_threshold(std::vector<Rational> vals) {
  std::sort(vals.begin(), vals.end());
  const std::size_t m = vals.size();
  if (vals.front() == vals.back()) return {};
  const std::size_t k = (m + 1) / 2;
  SplitPlan plan;
  plan.ok = true;
  if (vals[k - 1] < vals[k]) {
    plan.threshold = simplest_rational_between(vals[k - 1], vals[k]);
  } else {
    plan.threshold = vals[k - 1];
  }
  return plan;
}

/// Median plane through the given cell in the next workable rotation
/// direction. A cell whose points all share one location gets the plane
/// through that location, parking the cell on the boundary.
TriPoly median_plane_cut(const std::vector<Point3>& points,
                         const std::vector<long>& cell, std::size_t& dir_idx,
                         Rng& rng) {
  bool coincident = true;
  for (const long i : cell) {
    if (!(points[i] == points[cell.front()])) {
      coincident = false;
      break;
    }
  }
  if (coincident) return plane_poly(Dir{1, 0, 0}, points[cell.front()].x);

  for (int tries = 0;; ++tries) {
    Dir dir;
    if (tries < 61) {
      dir = direction_at(dir_idx, rng);
      ++dir_idx;
    } else {
      dir = kFixedDirs[static_cast<std::size_t>(tries - 61) % 3];
    }
    std::vector<Rational> vals;
    vals.reserve(cell.size());
    for (const long i : cell) vals.push_back(dot(dir, points[i]));
    const SplitPlan plan = median_threshold(std::move(vals));
    if (plan.ok) return plane_poly(dir, plan.threshold);
  }
}

PartitionResult assemble(const std::vector<Point3>& points,
                         std::vector<TriPoly> factors,
                         const std::vector<SignVector>& signs,
                         const std::vector<char>& interior, std::string backend,
                         int degree_budget, std::vector<int> round_degrees,
                         long fallback_rounds) {
  PartitionResult out;
  out.poly = TriPoly::product_of(factors);
  out.factors = std::move(factors);
  out.backend = std::move(backend);
  out.degree_budget = degree_budget;
  out.round_degrees = std::move(round_degrees);
  out.fallback_rounds = fallback_rounds;

  std::map<SignVector, long> cell_index;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (interior[i]) cell_index.emplace(signs[i], 0);
  }
  long next = 0;
  for (auto& [sv, idx] : cell_index) idx = next++;
  out.cells.resize(cell_index.size());
  for (const auto& [sv, idx] : cell_index) {
    out.cells[static_cast<std::size_t>(idx)].signs = sv;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (interior[i]) {
      const long idx = cell_index.at(signs[i]);
      out.cells[static_cast<std::size_t>(idx)].count += 1;
      out.assignments[points[i]] = idx;
    } else {
      out.on_boundary.push_back(points[i]);
      out.assignments[points[i]] = -1;
    }
  }
  return out;
}

/// Applies one more factor: every still-interior point gets one more sign,
/// and points landing on the new zero set leave the interior for good.
void apply_factor(const TriPoly& f, const std::vector<Point3>& points,
                  std::vector<SignVector>& signs, std::vector<char>& interior) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!interior[i]) continue;
    const int s = sgn(f.eval(points[i]));
    signs[i].push_back(s);
    if (s == 0) interior[i] = 0;
  }
}

long half_up(long m) { return (m + 1) / 2; }

Rational lower_median(std::vector<Rational> vals) {
  std::sort(vals.begin(), vals.end());
  return vals[(vals.size() - 1) / 2];
}

/// A nonzero rational vector in the nullspace of the rows (#rows < width),
/// by Gaussian elimination. Free columns take small random values when an
/// rng is given (forced nonzero overall), otherwise the first free column
/// is set to one; the pivot entries are back-solved.
std::vector<Rational> nullspace_vector(std::vector<std::vector<Rational>> rows,
                                       std::size_t width, Rng* rng = nullptr) {
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
  std::vector<Rational> v(width);
  std::size_t first_free = width;
  bool any = false;
  for (std::size_t c = 0; c < width; ++c) {
    if (is_pivot[c]) continue;
    if (first_free == width) first_free = c;
    if (rng != nullptr) {
      v[c] = Rational(rng->uniform_long(-1, 1));
      if (sgn(v[c]) != 0) any = true;
    }
  }
  if (!any) v[first_free] = 1;
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t col = static_cast<std::size_t>(pivot_col[r]);
    Rational s = 0;
    for (std::size_t c = col + 1; c < width; ++c) {
      if (sgn(v[c]) != 0) s += rows[r][c] * v[c];
    }
    v[col] = -s / rows[r][col];
  }
  return v;
}

/// A particular rational solution of rows * x = rhs with free variables set
/// to zero, or an empty vector when the system is inconsistent.
std::vector<Rational> solve_affine(std::vector<std::vector<Rational>> rows,
                                   std::vector<Rational> rhs,
                                   std::size_t width) {
  std::vector<long> pivot_col(rows.size(), -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t lead = rank;
    while (lead < rows.size() && sgn(rows[lead][col]) == 0) ++lead;
    if (lead == rows.size()) continue;
    std::swap(rows[rank], rows[lead]);
    std::swap(rhs[rank], rhs[lead]);
    pivot_col[rank] = static_cast<long>(col);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < width; ++c) {
        rows[r][c] -= f * rows[rank][c];
      }
      rhs[r] -= f * rhs[rank];
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (sgn(rhs[r]) != 0) return {};
  }
  std::vector<Rational> x(width);
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t col = static_cast<std::size_t>(pivot_col[r]);
    x[col] = rhs[r] / rows[r][col];
  }
  return x;
}

/// Coordinate descent for one lifted round: find a polynomial of degree at
/// most d whose open sides each hold at most ceil(M/2) points of every
/// part. One coordinate sweep walks the exact sign-flip values
/// t = -rest(x)/phi_i(x) in order, maintaining per-part side counts, and
/// lands on the best candidate; interval candidates take the simplest
/// rational inside. The first restarts are axis-median planes, later ones
/// random; a stalled descent gets a few random single-coefficient kicks
/// before restarting. Returns the zero polynomial when the sweep budget
/// runs out without a bisecting polynomial.
TriPoly search_bisecting_poly(const std::vector<Point3>& points,
                              const std::vector<std::vector<long>>& parts,
                              int d, Rng& rng) {
  const std::vector<Monomial> basis = monomials_up_to(d);
  const std::size_t m = basis.size();

  std::vector<long> pts;
  std::vector<std::size_t> part_of;
  std::vector<long> part_size(parts.size(), 0);
  std::vector<std::vector<std::size_t>> members(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    part_size[p] = static_cast<long>(parts[p].size());
    for (const long i : parts[p]) {
      members[p].push_back(pts.size());
      pts.push_back(i);
      part_of.push_back(p);
    }
  }
  const std::size_t np = pts.size();

  std::vector<std::vector<Rational>> phi(np, std::vector<Rational>(m));
  for (std::size_t a = 0; a < np; ++a) {
    const Point3& p = points[static_cast<std::size_t>(pts[a])];
    for (std::size_t j = 0; j < m; ++j) {
      phi[a][j] = pow_rational(p.x, basis[j][0]) *
                  pow_rational(p.y, basis[j][1]) *
                  pow_rational(p.z, basis[j][2]);
    }
  }

  // Ordered by how badly the halving constraint is broken, then by how
  // many points sit on the zero set, then by how lopsided the sides are.
  struct Objective {
    long excess = 0;
    long parked = 0;
    long imbalance = 0;
    bool operator<(const Objective& o) const {
      if (excess != o.excess) return excess < o.excess;
      if (parked != o.parked) return parked < o.parked;
      return imbalance < o.imbalance;
    }
  };

  const auto monomial_index = [&](const Monomial& e) {
    for (std::size_t j = 0; j < m; ++j) {
      if (basis[j] == e) return static_cast<long>(j);
    }
    return -1L;
  };

  const auto eval_all = [&](const std::vector<Rational>& c) {
    std::vector<Rational> v(np);
    for (std::size_t a = 0; a < np; ++a) {
      Rational s = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (sgn(c[j]) != 0) s += c[j] * phi[a][j];
      }
      v[a] = s;
    }
    return v;
  };

  const auto objective_of = [&](const std::vector<Rational>& v) {
    Objective obj;
    std::vector<long> pos(parts.size(), 0), neg(parts.size(), 0);
    for (std::size_t a = 0; a < np; ++a) {
      const int s = sgn(v[a]);
      if (s > 0) {
        ++pos[part_of[a]];
      } else if (s < 0) {
        ++neg[part_of[a]];
      } else {
        ++obj.parked;
      }
    }
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const long h = half_up(part_size[p]);
      obj.excess += std::max(0L, pos[p] - h) + std::max(0L, neg[p] - h);
      obj.imbalance += pos[p] > neg[p] ? pos[p] - neg[p] : neg[p] - pos[p];
    }
    return obj;
  };

  const auto phi_row = [&](const Point3& q) {
    std::vector<Rational> row(m);
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = pow_rational(q.x, basis[j][0]) * pow_rational(q.y, basis[j][1]) *
               pow_rational(q.z, basis[j][2]);
    }
    return row;
  };

  // Exact elimination brings huge numerators; scale the largest magnitude
  // to one and snap every entry to the simplest rational within 1/256 so
  // the vector stays cheap to compute with. The largest entry snaps to
  // one, so the result is never zero.
  const auto snap_unit = [](std::vector<Rational>& c) {
    Rational mx = 0;
    for (const auto& e : c) {
      const Rational a = abs(e);
      if (a > mx) mx = a;
    }
    const Rational radius(1, 256);
    for (auto& e : c) {
      e /= mx;
      if (sgn(e) != 0) {
        e = simplest_rational_between(e - radius, e + radius);
      }
    }
  };

  const auto value_median_row = [&](std::size_t p,
                                    const std::vector<Rational>& v) {
    std::vector<std::size_t> by_value(members[p]);
    std::sort(by_value.begin(), by_value.end(),
              [&](std::size_t a, std::size_t b) {
                const int c3 = cmp(v[a], v[b]);
                return c3 != 0 ? c3 < 0 : a < b;
              });
    const std::size_t mid = by_value[(by_value.size() - 1) / 2];
    return phi_row(points[static_cast<std::size_t>(pts[mid])]);
  };

  // One sweep costs a pass over every point, so larger inputs get fewer
  // sweeps; the cap keeps a failed search from dominating the round.
  long sweep_budget = std::clamp<long>(
      3000L * 1500 / static_cast<long>(np), 800, 3000);
  std::vector<Rational> g_coef, g_val;
  Objective g_obj;
  bool g_have = false;
  for (int restart = 0; restart < 11 && sweep_budget > 0; ++restart) {
    std::vector<Rational> coef(m);
    bool seeded = false;
    if (parts.size() >= 2 && parts.size() < m && restart < 10) {
      // Fixed-point seeding. A polynomial vanishing at a value-median
      // point of every part bisects them all, so: force vanishing at one
      // pivot per part (exact nullspace, which is nonzero whenever parts
      // outnumber coefficients strictly), then move each pivot to the
      // point carrying its part's median value and re-solve. Restart 0
      // starts from coordinatewise medians, restart 1 from an actual
      // middle point of each part, later restarts from random points.
      std::vector<std::vector<Rational>> rows(parts.size());
      for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto& part = parts[p];
        if (restart == 0) {
          std::vector<Rational> xs, ys, zs;
          xs.reserve(part.size());
          ys.reserve(part.size());
          zs.reserve(part.size());
          for (const long i : part) {
            const Point3& q = points[static_cast<std::size_t>(i)];
            xs.push_back(q.x);
            ys.push_back(q.y);
            zs.push_back(q.z);
          }
          rows[p] = phi_row(Point3{lower_median(std::move(xs)),
                                   lower_median(std::move(ys)),
                                   lower_median(std::move(zs))});
        } else {
          const std::size_t at =
              restart == 1 ? (part.size() - 1) / 2
                           : static_cast<std::size_t>(rng.uniform_long(
                                 0, static_cast<long>(part.size()) - 1));
          rows[p] = phi_row(points[static_cast<std::size_t>(part[at])]);
        }
      }
      Objective seed_obj;
      const int fp_iters = restart <= 1 ? 15 : 6;
      for (int it = 0; it < fp_iters && sweep_budget > 0; ++it) {
        --sweep_budget;
        std::vector<Rational> c = nullspace_vector(rows, m, &rng);
        snap_unit(c);
        const std::vector<Rational> v = eval_all(c);
        const Objective obj = objective_of(v);
        DDGEOM_TRACE("    fp it=%d excess=%ld parked=%ld imb=%ld\n", it,
                     obj.excess, obj.parked, obj.imbalance);
        if (!seeded || obj < seed_obj) {
          seed_obj = obj;
          coef = std::move(c);
          seeded = true;
        }
        if (seed_obj.excess == 0) break;
        for (std::size_t p = 0; p < parts.size(); ++p) {
          rows[p] = value_median_row(p, v);
        }
      }
    } else if (parts.size() == 1 && restart <= 2) {
      // Median plane orthogonal to one axis; the descent tilts it from
      // there. Skipped when the points are flat along the axis.
      Monomial axis{0, 0, 0};
      axis[static_cast<std::size_t>(restart)] = 1;
      const long idx = monomial_index(axis);
      std::vector<Rational> vals;
      vals.reserve(np);
      for (std::size_t a = 0; a < np; ++a) {
        vals.push_back(phi[a][static_cast<std::size_t>(idx)]);
      }
      const SplitPlan plan = median_threshold(std::move(vals));
      if (plan.ok) {
        coef[0] = -plan.threshold;
        coef[static_cast<std::size_t>(idx)] = 1;
        seeded = true;
      }
    }
    if (!seeded) {
      bool any = false;
      for (auto& c : coef) {
        c = Rational(rng.uniform_long(-3, 3));
        if (sgn(c) != 0) any = true;
      }
      if (!any) coef[1] = 1;
    }

    std::vector<Rational> val = eval_all(coef);

    const auto state_objective = [&]() { return objective_of(val); };

    const auto nonzero_poly = [&]() {
      for (const auto& c : coef) {
        if (sgn(c) != 0) return true;
      }
      return false;
    };

    std::vector<std::size_t> order(m);
    for (std::size_t j = 0; j < m; ++j) order[j] = j;

    Objective current = state_objective();
    DDGEOM_TRACE("  restart=%d seeded=%d budget=%ld start excess=%ld parked=%ld imb=%ld\n",
                 restart, int(seeded), sweep_budget, current.excess,
                 current.parked, current.imbalance);
    // Basin hopping: resume from the best state of earlier restarts when
    // it beats the fresh seed; restarts then differ by their shuffles and
    // kicks rather than throwing converged work away.
    if (g_have && g_obj < current) {
      coef = g_coef;
      val = g_val;
      current = g_obj;
    } else if (!g_have || current < g_obj) {
      g_obj = current;
      g_coef = coef;
      g_val = val;
      g_have = true;
    }

    const auto success = [&]() {
      TriPoly::TermMap tm;
      for (std::size_t j = 0; j < m; ++j) {
        if (sgn(coef[j]) != 0) tm[basis[j]] = coef[j];
      }
      return TriPoly(std::move(tm));
    };

    // One exact line search along a direction polynomial: the points see
    // P + t*dir, and each sign flips at most once as t grows, so walking
    // the sorted flip values with running side counts finds the best
    // offset. Candidate 2g is the open interval below the g-th distinct
    // flip (taking the simplest rational inside), 2g+1 that flip itself.
    // When the direction is parallel to P, the offset cancelling P
    // exactly is not offered. Adopts strict improvements, plus sideways
    // moves when allow_equal lets the search walk a plateau; only strict
    // improvements count in the return value.
    const auto sweep_along = [&](const auto& dval_at,
                                 const std::vector<Rational>& dircoef,
                                 bool allow_equal) {
      --sweep_budget;
      Rational t_zero;
      bool parallel = false;
      {
        std::size_t j0 = 0;
        while (j0 < m && sgn(dircoef[j0]) == 0) ++j0;
        if (j0 < m) {
          const Rational t0 = -coef[j0] / dircoef[j0];
          parallel = true;
          for (std::size_t j = 0; j < m; ++j) {
            if (sgn(coef[j] + t0 * dircoef[j]) != 0) {
              parallel = false;
              break;
            }
          }
          if (parallel) t_zero = t0;
        }
      }

      struct Event {
        Rational t;
        std::size_t a;
      };
      std::vector<Event> events;
      std::vector<long> pos(parts.size(), 0), neg(parts.size(), 0);
      long parked = 0;
      for (std::size_t a = 0; a < np; ++a) {
        const Rational& d = dval_at(a);
        if (sgn(d) == 0) {
          const int s = sgn(val[a]);
          if (s > 0) {
            ++pos[part_of[a]];
          } else if (s < 0) {
            ++neg[part_of[a]];
          } else {
            ++parked;
          }
        } else {
          events.push_back({Rational(-val[a] / d), a});
        }
      }
      if (events.empty()) return false;
      std::sort(events.begin(), events.end(),
                [](const Event& x, const Event& y) { return x.t < y.t; });
      std::vector<Rational> flips;
      std::vector<std::pair<std::size_t, std::size_t>> batches;
      for (std::size_t i = 0; i < events.size();) {
        std::size_t j = i;
        while (j < events.size() && events[j].t == events[i].t) ++j;
        flips.push_back(events[i].t);
        batches.emplace_back(i, j);
        i = j;
      }
      // Below every flip a point moving upward sits negative, one moving
      // downward positive.
      for (const Event& e : events) {
        if (sgn(dval_at(e.a)) > 0) {
          ++neg[part_of[e.a]];
        } else {
          ++pos[part_of[e.a]];
        }
      }

      long excess = 0, imbalance = 0;
      for (std::size_t p = 0; p < parts.size(); ++p) {
        const long h = half_up(part_size[p]);
        excess += std::max(0L, pos[p] - h) + std::max(0L, neg[p] - h);
        imbalance += pos[p] > neg[p] ? pos[p] - neg[p] : neg[p] - pos[p];
      }

      const auto bump = [&](std::size_t p, long dpos, long dneg,
                            long dparked) {
        const long h = half_up(part_size[p]);
        excess -= std::max(0L, pos[p] - h) + std::max(0L, neg[p] - h);
        imbalance -= pos[p] > neg[p] ? pos[p] - neg[p] : neg[p] - pos[p];
        pos[p] += dpos;
        neg[p] += dneg;
        parked += dparked;
        excess += std::max(0L, pos[p] - h) + std::max(0L, neg[p] - h);
        imbalance += pos[p] > neg[p] ? pos[p] - neg[p] : neg[p] - pos[p];
      };

      Objective best;
      long best_candidate = -1;
      const auto consider = [&](long candidate, bool poly_is_zero) {
        if (poly_is_zero) return;
        const Objective obj{excess, parked, imbalance};
        if (best_candidate < 0 || obj < best) {
          best = obj;
          best_candidate = candidate;
        }
      };

      consider(0, false);
      for (std::size_t g = 0; g < flips.size(); ++g) {
        for (std::size_t k = batches[g].first; k < batches[g].second; ++k) {
          const std::size_t p = part_of[events[k].a];
          if (sgn(dval_at(events[k].a)) > 0) {
            bump(p, 0, -1, 1);
          } else {
            bump(p, -1, 0, 1);
          }
        }
        consider(2 * static_cast<long>(g) + 1, parallel && flips[g] == t_zero);
        for (std::size_t k = batches[g].first; k < batches[g].second; ++k) {
          const std::size_t p = part_of[events[k].a];
          if (sgn(dval_at(events[k].a)) > 0) {
            bump(p, 1, 0, -1);
          } else {
            bump(p, 0, 1, -1);
          }
        }
        consider(2 * static_cast<long>(g) + 2, false);
      }

      const bool strict = best < current;
      if (!strict && !allow_equal) return false;
      Rational chosen;
      if (best_candidate % 2 == 1) {
        chosen = flips[static_cast<std::size_t>(best_candidate / 2)];
      } else {
        const std::size_t g = static_cast<std::size_t>(best_candidate / 2);
        if (g == 0) {
          chosen = flips.front() - 1;
        } else if (g == flips.size()) {
          chosen = flips.back() + 1;
        } else {
          chosen = simplest_rational_between(flips[g - 1], flips[g]);
        }
      }
      if (!strict && sgn(chosen) == 0) return false;
      if (parallel && chosen == t_zero) return false;
      for (std::size_t j = 0; j < m; ++j) {
        if (sgn(dircoef[j]) != 0) coef[j] += chosen * dircoef[j];
      }
      for (std::size_t a = 0; a < np; ++a) {
        const Rational& d = dval_at(a);
        if (sgn(d) != 0) val[a] += chosen * d;
      }
      current = best;
      return strict;
    };

    // Exact fitted steps can leave coefficients with enormous numerators
    // that slow every later evaluation. Snap them back to nearby simple
    // rationals whenever that does not cost anything.
    const auto trim_coef = [&]() {
      std::size_t bits = 0;
      for (const Rational& c : coef) {
        bits = std::max(bits, mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
        bits = std::max(bits, mpz_sizeinbase(c.get_den().get_mpz_t(), 2));
      }
      if (bits <= 256) return;
      const Rational eps = Rational(1) / Rational(mpz_class(1) << 80);
      std::vector<Rational> snapped(m);
      for (std::size_t j = 0; j < m; ++j) {
        snapped[j] = simplest_rational_between(coef[j] - eps, coef[j] + eps);
      }
      const std::vector<Rational> sval = eval_all(snapped);
      const Objective sobj = objective_of(sval);
      if (!(current < sobj)) {
        coef = std::move(snapped);
        val = sval;
        current = sobj;
      }
    };

    std::vector<Rational> best_coef = coef;
    std::vector<Rational> best_val = val;
    Objective best_seen = current;

    int kicks = 0;
    for (int pass = 0; sweep_budget > 0; ++pass) {
      if (pass > 0) rng.shuffle(order);
      // After a couple of fruitless kicks, sideways moves are allowed so
      // the search can walk plateaus instead of rattling in place.
      const bool allow_equal = kicks >= 2;
      bool improved = false;
      for (std::size_t oi = 0;
           oi < m && current.excess > 0 && sweep_budget > 0; ++oi) {
        const std::size_t ci = order[oi];
        std::vector<Rational> dircoef(m);
        dircoef[ci] = 1;
        if (sweep_along(
                [&](std::size_t a) -> const Rational& { return phi[a][ci]; },
                dircoef, allow_equal)) {
          improved = true;
        }
      }
      // Per-part rebalancing: a direction pinned to zero at a value-median
      // point of every other part leaves their balance anchored while the
      // offset rebalances the remaining part.
      if (parts.size() >= 2 && parts.size() < m) {
        for (std::size_t skip = 0;
             skip < parts.size() && current.excess > 0 && sweep_budget > 0;
             ++skip) {
          std::vector<std::vector<Rational>> rows;
          rows.reserve(parts.size() - 1);
          for (std::size_t p = 0; p < parts.size(); ++p) {
            if (p != skip) rows.push_back(value_median_row(p, val));
          }
          std::vector<Rational> dircoef =
              nullspace_vector(std::move(rows), m, &rng);
          snap_unit(dircoef);
          const std::vector<Rational> dv = eval_all(dircoef);
          if (sweep_along(
                  [&](std::size_t a) -> const Rational& { return dv[a]; },
                  dircoef, allow_equal)) {
            improved = true;
          }
        }
      }
      // Endgame move: pin the points just past each overfull half to the
      // zero set, alongside every part's value-median point, and sweep
      // toward a polynomial vanishing at all of them. At step one the
      // offenders land exactly on the zero set and stop counting against
      // either side.
      if (current.excess > 0 && sweep_budget > 0 &&
          parts.size() + static_cast<std::size_t>(current.excess) < m) {
        std::vector<std::vector<Rational>> rows;
        rows.reserve(parts.size() + static_cast<std::size_t>(current.excess));
        for (std::size_t p = 0; p < parts.size(); ++p) {
          rows.push_back(value_median_row(p, val));
          long pos = 0;
          long neg = 0;
          for (const std::size_t a : members[p]) {
            const int s = sgn(val[a]);
            if (s > 0) ++pos;
            if (s < 0) ++neg;
          }
          const long h = half_up(part_size[p]);
          const long over = std::max(pos - h, neg - h);
          if (over <= 0) continue;
          const int side = pos - h > 0 ? 1 : -1;
          std::vector<std::size_t> edge;
          for (const std::size_t a : members[p]) {
            if (sgn(val[a]) == side) edge.push_back(a);
          }
          std::sort(edge.begin(), edge.end(),
                    [&](std::size_t x, std::size_t y) {
                      return abs(val[x]) < abs(val[y]);
                    });
          for (long e = 0; e < over; ++e) {
            rows.push_back(phi[edge[static_cast<std::size_t>(e)]]);
          }
        }
        std::vector<Rational> target = nullspace_vector(std::move(rows), m, &rng);
        std::vector<Rational> dircoef(m);
        bool moved = false;
        for (std::size_t j = 0; j < m; ++j) {
          dircoef[j] = target[j] - coef[j];
          if (sgn(dircoef[j]) != 0) moved = true;
        }
        if (moved) {
          const std::vector<Rational> dv = eval_all(dircoef);
          if (sweep_along(
                  [&](std::size_t a) -> const Rational& { return dv[a]; },
                  dircoef, allow_equal)) {
            improved = true;
          }
          trim_coef();
        }
      }
      // Surgical variant: solve for a direction whose unit step drops the
      // offenders exactly onto the zero set while the nearest bystanders
      // are pinned to zero displacement, so they cannot cross at all.
      if (current.excess > 0 && sweep_budget > 0 &&
          static_cast<std::size_t>(current.excess) + 1 < m) {
        std::vector<std::size_t> offenders;
        for (std::size_t p = 0; p < parts.size(); ++p) {
          long pos = 0;
          long neg = 0;
          for (const std::size_t a : members[p]) {
            const int s = sgn(val[a]);
            if (s > 0) ++pos;
            if (s < 0) ++neg;
          }
          const long h = half_up(part_size[p]);
          const long over = std::max(pos - h, neg - h);
          if (over <= 0) continue;
          const int side = pos - h > 0 ? 1 : -1;
          std::vector<std::size_t> edge;
          for (const std::size_t a : members[p]) {
            if (sgn(val[a]) == side) edge.push_back(a);
          }
          std::sort(edge.begin(), edge.end(),
                    [&](std::size_t x, std::size_t y) {
                      return abs(val[x]) < abs(val[y]);
                    });
          for (long e = 0; e < over; ++e) {
            offenders.push_back(edge[static_cast<std::size_t>(e)]);
          }
        }
        std::vector<char> is_offender(np, 0);
        for (const std::size_t a : offenders) is_offender[a] = 1;
        std::vector<std::size_t> bystanders;
        for (std::size_t a = 0; a < np; ++a) {
          if (!is_offender[a] && sgn(val[a]) != 0) bystanders.push_back(a);
        }
        std::sort(bystanders.begin(), bystanders.end(),
                  [&](std::size_t x, std::size_t y) {
                    return abs(val[x]) < abs(val[y]);
                  });
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        rows.reserve(m - 1);
        rhs.reserve(m - 1);
        for (const std::size_t a : offenders) {
          rows.push_back(phi[a]);
          rhs.push_back(-val[a]);
        }
        for (std::size_t i = 0;
             i < bystanders.size() && rows.size() + 1 < m; ++i) {
          rows.push_back(phi[bystanders[i]]);
          rhs.push_back(Rational(0));
        }
        std::vector<Rational> dircoef = solve_affine(std::move(rows),
                                                     std::move(rhs), m);
        bool moved = false;
        for (const Rational& c : dircoef) {
          if (sgn(c) != 0) {
            moved = true;
            break;
          }
        }
        if (moved) {
          const std::vector<Rational> dv = eval_all(dircoef);
          if (sweep_along(
                  [&](std::size_t a) -> const Rational& { return dv[a]; },
                  dircoef, allow_equal)) {
            improved = true;
          }
          trim_coef();
        }
      }
      trim_coef();
      DDGEOM_TRACE("    pass=%d excess=%ld parked=%ld imb=%ld improved=%d budget=%ld\n",
                   pass, current.excess, current.parked, current.imbalance,
                   int(improved), sweep_budget);
      if (current.excess == 0 && nonzero_poly()) return success();
      if (current < best_seen) {
        best_seen = current;
        best_coef = coef;
        best_val = val;
        kicks = 0;
        if (current < g_obj) {
          g_obj = current;
          g_coef = coef;
          g_val = val;
        }
      }
      // A kick whose follow-up pass drifted well above the best state is
      // a lost trial; cut it short instead of crawling back.
      const bool lost = kicks > 0 && current.excess > best_seen.excess + 2;
      bool need_kick = lost;
      if (!improved && !lost) {
        // Random directions widen the escape moves beyond the axes.
        for (int rt = 0; rt < 2 && !improved && sweep_budget > 0; ++rt) {
          std::vector<Rational> dircoef(m);
          bool any = false;
          for (auto& c : dircoef) {
            c = Rational(rng.uniform_long(-2, 2));
            if (sgn(c) != 0) any = true;
          }
          if (!any) dircoef[1] = 1;
          const std::vector<Rational> dv = eval_all(dircoef);
          improved = sweep_along(
              [&](std::size_t a) -> const Rational& { return dv[a]; },
              dircoef, allow_equal);
        }
        if (current.excess == 0 && nonzero_poly()) return success();
        need_kick = !improved;
      }
      if (need_kick) {
        if (kicks >= 10) break;
        ++kicks;
        // Resume from the best state seen, then nudge one coefficient by
        // a small rational step, finer as kicks accumulate.
        if (best_seen < current) {
          coef = best_coef;
          val = best_val;
          current = best_seen;
        }
        const std::size_t j = static_cast<std::size_t>(
            rng.uniform_long(0, static_cast<long>(m) - 1));
        long num = rng.uniform_long(-3, 3);
        if (num == 0) num = 1;
        const Rational delta =
            Rational(num) /
            Rational(1L << rng.uniform_long(3, 6 + std::min(kicks, 3)));
        coef[j] += delta;
        for (std::size_t a = 0; a < np; ++a) val[a] += delta * phi[a][j];
        if (!nonzero_poly()) {
          const Rational lift = Rational(1) - coef[1];
          coef[1] = 1;
          for (std::size_t a = 0; a < np; ++a) val[a] += lift * phi[a][1];
        }
        current = state_objective();
      }
    }
  }
  return TriPoly::zero();
}

}  // namespace

PartitionResult partition_planes(const std::vector<Point3>& points, int degree,
                                 std::uint64_t seed) {
  if (points.empty()) {
    throw std::invalid_argument("partition_planes: empty point set");
  }
  if (degree < 1) {
    throw std::invalid_argument("partition_planes: degree must be at least 1");
  }

  Rng rng(seed);
  std::vector<TriPoly> factors;
  std::vector<SignVector> signs(points.size());
  std::vector<char> interior(points.size(), 1);
  std::size_t dir_idx = 0;

  while (static_cast<int>(factors.size()) < degree) {
    std::map<SignVector, std::vector<long>> cells;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (interior[i]) cells[signs[i]].push_back(static_cast<long>(i));
    }
    if (cells.empty()) break;

    const std::vector<long>* heaviest = nullptr;
    for (const auto& [sv, idxs] : cells) {
      if (!heaviest || idxs.size() > heaviest->size()) heaviest = &idxs;
    }

    const TriPoly f = median_plane_cut(points, *heaviest, dir_idx, rng);
    apply_factor(f, points, signs, interior);
    factors.push_back(f);
  }

  const long rounds = static_cast<long>(factors.size());
  return assemble(points, std::move(factors), signs, interior, "planes",
                  degree, std::vector<int>(static_cast<std::size_t>(rounds), 1),
                  0);
}

PartitionResult partition_lifted(const std::vector<Point3>& points, int degree,
                                 std::uint64_t seed) {
  if (points.size() < 2) {
    throw std::invalid_argument("partition_lifted: need at least two points");
  }
  if (degree < 2) {
    throw std::invalid_argument("partition_lifted: degree must be at least 2");
  }

  Rng rng(seed);
  std::vector<TriPoly> factors;
  std::vector<int> round_degrees;
  long fallbacks = 0;
  std::vector<SignVector> signs(points.size());
  std::vector<char> interior(points.size(), 1);
  std::size_t dir_idx = 0;
  int used = 0;

  while (true) {
    std::map<SignVector, std::vector<long>> groups;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (interior[i]) groups[signs[i]].push_back(static_cast<long>(i));
    }
    std::vector<std::vector<long>> parts;
    parts.reserve(groups.size());
    bool splittable = false;
    for (auto& [sv, idxs] : groups) {
      if (idxs.size() >= 2) splittable = true;
      parts.push_back(std::move(idxs));
    }
    if (!splittable) break;

    // Half again as many coefficients as parts: with the count merely one
    // above the constraints the solution set is too thin for the descent
    // to hit reliably.
    int d = 1;
    const long want = (3 * static_cast<long>(parts.size()) + 1) / 2 + 1;
    while (monomial_count(d) < want) ++d;
    if (used + d > degree) break;

    TriPoly cut = search_bisecting_poly(points, parts, d, rng);
    if (cut.is_zero()) {
      std::size_t heaviest = 0;
      for (std::size_t p = 1; p < parts.size(); ++p) {
        if (parts[p].size() > parts[heaviest].size()) heaviest = p;
      }
      cut = median_plane_cut(points, parts[heaviest], dir_idx, rng);
      d = 1;
      ++fallbacks;
    } else {
      // Re-derive every side count from the polynomial itself; the sweep's
      // incremental bookkeeping is not trusted.
      std::vector<long> pos(parts.size(), 0), neg(parts.size(), 0);
      for (std::size_t p = 0; p < parts.size(); ++p) {
        for (const long i : parts[p]) {
          const int s = sgn(cut.eval(points[static_cast<std::size_t>(i)]));
          if (s > 0) ++pos[p];
          if (s < 0) ++neg[p];
        }
      }
      for (std::size_t p = 0; p < parts.size(); ++p) {
        const long h = half_up(static_cast<long>(parts[p].size()));
        if (pos[p] > h || neg[p] > h) {
          throw std::logic_error(
              "partition_lifted: a bisection round failed its exact check");
        }
      }
    }

    apply_factor(cut, points, signs, interior);
    factors.push_back(std::move(cut));
    round_degrees.push_back(d);
    used += d;
  }

  return assemble(points, std::move(factors), signs, interior, "lifted",
                  degree, std::move(round_degrees), fallbacks);
}

LineCellIncidence line_cell_incidence(const std::vector<Line3>& lines,
                                      const PartitionResult& part) {
  if (part.factors.empty() || part.poly.is_zero()) {
    throw std::invalid_argument("line_cell_incidence: partition has no cuts");
  }
  const long degree = part.poly.degree();

  LineCellIncidence out;
  out.cells_met.resize(lines.size());
  out.in_zero_set.assign(lines.size(), 0);
  out.lines_in_cell.resize(part.cells.size());

  std::map<SignVector, long> cell_index;
  for (std::size_t ci = 0; ci < part.cells.size(); ++ci) {
    cell_index.emplace(part.cells[ci].signs, static_cast<long>(ci));
  }

  for (std::size_t li = 0; li < lines.size(); ++li) {
    UniPoly product = UniPoly::constant(1);
    bool in_z = false;
    for (const TriPoly& f : part.factors) {
      const UniPoly r = f.restrict_to_line(lines[li]);
      if (r.is_zero()) {
        in_z = true;
        break;
      }
      product = product * r;
    }
    if (in_z) {
      out.in_zero_set[li] = 1;
      continue;
    }

    const std::vector<Rational> samples =
        interleaving_samples(isolate_real_roots(product));
    std::set<SignVector> regions;
    std::set<long> met;
    for (const Rational& t : samples) {
      const Point3 p = lines[li].point_at(t);
      SignVector sv;
      sv.reserve(part.factors.size());
      for (const TriPoly& f : part.factors) sv.push_back(sgn(f.eval(p)));
      regions.insert(sv);
      const auto it = cell_index.find(sv);
      if (it != cell_index.end()) met.insert(it->second);
    }
    if (static_cast<long>(regions.size()) > degree + 1) {
      throw std::logic_error(
          "line_cell_incidence: an off-Z line met more than deg+1 regions");
    }
    out.cells_met[li].assign(met.begin(), met.end());
    out.total_incidences += static_cast<long>(met.size());
    out.max_cells_met =
        std::max(out.max_cells_met, static_cast<long>(met.size()));
    for (const long ci : met) {
      out.lines_in_cell[static_cast<std::size_t>(ci)].push_back(
          static_cast<long>(li));
    }
  }

  if (out.total_incidences >
      (degree + 1) * static_cast<long>(lines.size())) {
    throw std::logic_error(
        "line_cell_incidence: total incidences exceed (deg+1) * #lines");
  }
  return out;
}

PolyhamReport verify_polyham(const PartitionResult& part,
                             const std::vector<Point3>& points) {
  if (points.empty()) {
    throw std::invalid_argument("verify_polyham: empty point set");
  }
  if (part.factors.empty()) {
    throw std::invalid_argument("verify_polyham: partition has no cuts");
  }

  std::map<SignVector, long> cell_index;
  for (std::size_t ci = 0; ci < part.cells.size(); ++ci) {
    cell_index.emplace(part.cells[ci].signs, static_cast<long>(ci));
  }

  const auto mismatch = []() {
    return std::invalid_argument(
        "verify_polyham: partition does not match the point set");
  };

  std::vector<long> recount(part.cells.size(), 0);
  std::vector<Point3> boundary;
  for (const Point3& p : points) {
    SignVector sv;
    sv.reserve(part.factors.size());
    bool on_z = false;
    for (const TriPoly& f : part.factors) {
      const int s = sgn(f.eval(p));
      sv.push_back(s);
      if (s == 0) on_z = true;
    }
    const auto assigned = part.assignments.find(p);
    if (assigned == part.assignments.end()) throw mismatch();
    if (on_z) {
      boundary.push_back(p);
      if (assigned->second != -1) throw mismatch();
    } else {
      const auto it = cell_index.find(sv);
      if (it == cell_index.end()) throw mismatch();
      recount[static_cast<std::size_t>(it->second)] += 1;
      if (assigned->second != it->second) throw mismatch();
    }
  }

  long total = 0;
  long max_cell = 0;
  for (std::size_t ci = 0; ci < part.cells.size(); ++ci) {
    if (recount[ci] != part.cells[ci].count || recount[ci] == 0) {
      throw mismatch();
    }
    total += recount[ci];
    max_cell = std::max(max_cell, recount[ci]);
  }
  if (boundary.size() != part.on_boundary.size()) throw mismatch();
  std::vector<Point3> recorded = part.on_boundary;
  std::sort(boundary.begin(), boundary.end());
  std::sort(recorded.begin(), recorded.end());
  if (boundary != recorded) throw mismatch();
  if (total + static_cast<long>(boundary.size()) !=
      static_cast<long>(points.size())) {
    throw std::logic_error("verify_polyham: counts do not cover the points");
  }

  const long n = static_cast<long>(points.size());
  const long budget = part.degree_budget;
  if (part.backend == "planes") {
    if (max_cell * budget > 2 * n) {
      throw std::logic_error(
          "verify_polyham: planes cut exceeded its max-cell bound");
    }
    // At most 1 + k + C(k,2) + C(k,3) open regions for k planes.
    const long k = static_cast<long>(part.factors.size());
    const long region_bound =
        1 + k + k * (k - 1) / 2 + k * (k - 1) * (k - 2) / 6;
    if (static_cast<long>(part.cells.size()) > region_bound) {
      throw std::logic_error(
          "verify_polyham: more cells than a plane arrangement allows");
    }
  }

  PolyhamReport report;
  report.backend = part.backend;
  report.points = n;
  report.cells = static_cast<long>(part.cells.size());
  report.max_cell = max_cell;
  report.boundary = static_cast<long>(boundary.size());
  const Rational d3 = pow_rational(Rational(budget), 3);
  report.cells_over_d3 = Rational(report.cells) / d3;
  report.maxcell_ratio = Rational(max_cell) * d3 / Rational(n);
  report.planes_bound = Rational(2 * n) / Rational(budget);
  return report;
}

}  // namespace ddgeom
