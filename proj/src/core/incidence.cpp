#include "core/incidence.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

namespace ddgeom {

namespace {

struct PairAccum {
  std::unordered_map<Point3, std::vector<int>, Point3Hash> lines_at;
  long pairs = 0;
};

}  // namespace

RichPointMap compute_rich_points(const std::vector<Line3>& lines, int workers) {
  const long n = static_cast<long>(lines.size());
  {
    std::set<Line3> dedup(lines.begin(), lines.end());
    if (static_cast<long>(dedup.size()) != n)
      throw std::invalid_argument("compute_rich_points: duplicate lines in family");
  }
  if (workers < 1) workers = 1;
  if (workers > n) workers = n > 0 ? static_cast<int>(n) : 1;

  std::vector<PairAccum> accums(static_cast<std::size_t>(workers));
  std::atomic<long> next_row{0};
  auto sweep_rows = [&](int w) {
    PairAccum& acc = accums[static_cast<std::size_t>(w)];
    for (;;) {
      const long i = next_row.fetch_add(1);
      if (i >= n) break;
      for (long j = i + 1; j < n; ++j) {
        PairClassification c = classify_pair(lines[static_cast<std::size_t>(i)],
                                             lines[static_cast<std::size_t>(j)]);
        if (c.kind != PairClass::Intersecting) continue;
        std::vector<int>& ids = acc.lines_at[*c.point];
        ids.push_back(static_cast<int>(i));
        ids.push_back(static_cast<int>(j));
        ++acc.pairs;
      }
    }
  };
  if (workers == 1) {
    sweep_rows(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(sweep_rows, w);
    for (std::thread& t : pool) t.join();
  }

  std::map<Point3, std::vector<int>> grouped;
  long pair_total = 0;
  for (PairAccum& acc : accums) {
    pair_total += acc.pairs;
    for (auto& [point, ids] : acc.lines_at) {
      std::vector<int>& into = grouped[point];
      into.insert(into.end(), ids.begin(), ids.end());
    }
    acc.lines_at.clear();
  }

  RichPointMap out;
  out.total_lines = n;
  long pairs_from_mults = 0;
  for (auto& [point, ids] : grouped) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const long mult = static_cast<long>(ids.size());
    out.entries.emplace(point, mult);
    pairs_from_mults += mult * (mult - 1) / 2;
  }
  if (pairs_from_mults != pair_total)
    throw std::logic_error(
        "compute_rich_points: pair count disagrees with recovered multiplicities");
  out.intersecting_pairs = pair_total;
  return out;
}

std::map<long, long> multiplicity_histogram(const RichPointMap& map) {
  std::map<long, long> hist;
  for (const auto& [point, mult] : map.entries) ++hist[mult];
  return hist;
}

std::vector<Point3> p_r(const RichPointMap& map, long r) {
  if (r < 2) throw std::invalid_argument("p_r: r must be at least 2");
  std::vector<Point3> out;
  for (const auto& [point, mult] : map.entries)
    if (mult >= r) out.push_back(point);
  return out;
}

long p_r_count(const RichPointMap& map, long r) {
  if (r < 2) throw std::invalid_argument("p_r: r must be at least 2");
  long count = 0;
  for (const auto& [point, mult] : map.entries)
    if (mult >= r) ++count;
  return count;
}

BigRReport verify_bigr(const RichPointMap& map, long r) {
  const long l = map.total_lines;
  if (r < 2 || Integer(r) * Integer(r) <= 4 * Integer(l))
    throw std::invalid_argument("verify_bigr: the 2L/r bound needs r > 2*sqrt(L)");
  BigRReport report;
  report.rich_count = p_r_count(map, r);
  report.bound = Rational(2 * l, r);
  report.bound.canonicalize();
  report.margin = report.bound - Rational(report.rich_count);
  if (sgn(report.margin) < 0)
    throw std::logic_error("verify_bigr: rich-point count exceeds 2L/r");
  return report;
}

SzReport verify_szemeredi_trotter(const RichPointMap& map) {
  SzReport report;
  report.max_ratio = 0;
  report.argmax_r = 2;
  const long l = map.total_lines;
  if (l < 2 || map.entries.empty()) return report;

  std::vector<long> mults;
  mults.reserve(map.entries.size());
  for (const auto& [point, mult] : map.entries) mults.push_back(mult);
  std::sort(mults.begin(), mults.end());

  const Integer li(l);
  for (long r = 2; r <= l; ++r) {
    const auto first = std::lower_bound(mults.begin(), mults.end(), r);
    const long rich = static_cast<long>(mults.end() - first);
    if (rich == 0) break;
    const Integer ri(r);
    Rational ratio(Integer(rich) * ri * ri * ri, li * li + li * ri * ri);
    ratio.canonicalize();
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax_r = r;
    }
  }
  return report;
}

}  // namespace ddgeom
