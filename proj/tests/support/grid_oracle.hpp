#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cdops/shapes.hpp"

// Second, independent minimizer used only by the tests: exhaustive grids over
// the product of bounding cubes, refined around the best cells.  A beam of
// candidate cells survives each level, so one misleading coarse cell cannot
// hide the global basin.  Slower and cruder than the pattern search in the
// library, but it shares no code with it, which is the point.

namespace cdops_test {

namespace grid_detail {

struct Box {
  std::vector<double> lo_a, hi_a, lo_b, hi_b;
};

struct Hit {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> pa, pb;      // flat coordinates, t first
  std::vector<double> wa, wb;      // cell widths the hit was found at
};

}  // namespace grid_detail

template <class F>
double grid_min(const cdops::Shape& a, const cdops::Shape& b, F objective,
                int per_axis, int refinements, int beam = 12) {
  using cdops::Point;
  using grid_detail::Box;
  using grid_detail::Hit;
  const std::size_t n = a.dim();
  const int m = per_axis;

  Box root;
  root.lo_a.resize(n), root.hi_a.resize(n), root.lo_b.resize(n), root.hi_b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ca = i == 0 ? a.center.t : a.center.x[i - 1];
    const double cb = i == 0 ? b.center.t : b.center.x[i - 1];
    root.lo_a[i] = ca - a.radius, root.hi_a[i] = ca + a.radius;
    root.lo_b[i] = cb - b.radius, root.hi_b[i] = cb + b.radius;
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<Box> frontier = {root};

  for (int pass = 0; pass <= refinements; ++pass) {
    std::vector<Hit> hits;
    for (const Box& box : frontier) {
      std::vector<std::size_t> idx(2 * n, 0);
      bool carry = false;
      while (!carry) {
        Point p(0.0, std::vector<double>(n - 1, 0.0));
        Point q(0.0, std::vector<double>(n - 1, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
          const double va =
              box.lo_a[i] + (box.hi_a[i] - box.lo_a[i]) * idx[i] / (m - 1);
          const double vb =
              box.lo_b[i] + (box.hi_b[i] - box.lo_b[i]) * idx[n + i] / (m - 1);
          if (i == 0)
            p.t = va, q.t = vb;
          else
            p.x[i - 1] = va, q.x[i - 1] = vb;
        }
        if (a.gauge(p) <= a.radius && b.gauge(q) <= b.radius) {
          Hit h;
          h.value = objective(p, q);
          h.pa.resize(n), h.pb.resize(n), h.wa.resize(n), h.wb.resize(n);
          for (std::size_t i = 0; i < n; ++i) {
            h.pa[i] = i == 0 ? p.t : p.x[i - 1];
            h.pb[i] = i == 0 ? q.t : q.x[i - 1];
            h.wa[i] = (box.hi_a[i] - box.lo_a[i]) / (m - 1);
            h.wb[i] = (box.hi_b[i] - box.lo_b[i]) / (m - 1);
          }
          hits.push_back(std::move(h));
        }
        std::size_t d = 0;
        while (d < 2 * n) {
          if (++idx[d] < static_cast<std::size_t>(m)) break;
          idx[d] = 0;
          ++d;
        }
        carry = d == 2 * n;
      }
    }
    if (hits.empty()) break;
    std::sort(hits.begin(), hits.end(),
              [](const Hit& x, const Hit& y) { return x.value < y.value; });
    best = std::min(best, hits.front().value);
    if (pass == refinements) break;

    // Survivors: the best hits, spaced at least one cell apart so that the
    // beam keeps distinct basins alive.
    std::vector<const Hit*> keep;
    for (const Hit& h : hits) {
      bool fresh = true;
      for (const Hit* k : keep) {
        bool separated = false;
        for (std::size_t i = 0; i < n && !separated; ++i)
          separated = std::abs(h.pa[i] - k->pa[i]) > k->wa[i] ||
                      std::abs(h.pb[i] - k->pb[i]) > k->wb[i];
        if (!separated) {
          fresh = false;
          break;
        }
      }
      if (fresh) keep.push_back(&h);
      if (keep.size() == static_cast<std::size_t>(beam)) break;
    }

    frontier.clear();
    for (const Hit* k : keep) {
      Box next;
      next.lo_a.resize(n), next.hi_a.resize(n), next.lo_b.resize(n), next.hi_b.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        next.lo_a[i] = k->pa[i] - k->wa[i], next.hi_a[i] = k->pa[i] + k->wa[i];
        next.lo_b[i] = k->pb[i] - k->wb[i], next.hi_b[i] = k->pb[i] + k->wb[i];
      }
      frontier.push_back(std::move(next));
    }
  }
  return best;
}

inline double grid_min_separation(const cdops::Shape& a, const cdops::Shape& b,
                                  int per_axis = 9, int refinements = 6) {
  return grid_min(
      a, b,
      [](const cdops::Point& p, const cdops::Point& q) {
        return cdops::separation_value(p, q);
      },
      per_axis, refinements);
}

}  // namespace cdops_test
