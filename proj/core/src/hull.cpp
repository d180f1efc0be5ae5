// Copyright 2026 The monoest authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "monoest/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace monoest {

namespace {

constexpr double kTieTol = 1e-12;

struct Point {
  double x;
  double y;
};

struct Arc {
  Segment seg;
  double lo;
  double hi;
};

// Root of an increasing function on [lo, hi] with f(lo) < 0 < f(hi).
template <typename F>
double bisect_increasing(const F& f, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-16 * (1.0 + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Interior tangency point of the line through (cx, cy), cy below the arc,
// touching the convex arc from below; the chord slope to (cx, cy) is
// minimized there.
std::optional<double> tangent_from_right(const Segment& seg, double lo, double hi, double cx,
                                         double cy) {
  const auto num = [&](double t) { return seg.derivative(t) * (cx - t) + seg.eval(t) - cy; };
  if (!(hi > lo)) return std::nullopt;
  if (num(lo) >= 0 || num(hi) <= 0) return std::nullopt;
  return bisect_increasing(num, lo, hi);
}

// Point where the tangent line through (px, py), left of the arc, touches
// it; `lo` when the touch would fall before the arc starts.
double tangent_from_left(const Segment& seg, double lo, double hi, double px, double py) {
  const auto q = [&](double t) { return seg.derivative(t) * (t - px) - (seg.eval(t) - py); };
  if (q(lo) >= 0) return lo;
  if (q(hi) <= 0) return hi;
  return bisect_increasing(q, lo, hi);
}

struct Constraints {
  std::vector<Point> points;  // sorted by x, one per x (minimal y)
  std::vector<Arc> arcs;
};

void push_point(std::vector<Point>& pts, double x, double y) { pts.push_back({x, y}); }

// Sort by x and merge near-duplicates, keeping the lower (binding) value.
void finalize_points(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  std::vector<Point> merged;
  for (const auto& p : pts) {
    if (!merged.empty() && std::abs(merged.back().x - p.x) <= kTieTol) {
      merged.back().y = std::min(merged.back().y, p.y);
    } else {
      merged.push_back(p);
    }
  }
  pts = std::move(merged);
}

Constraints collect_constraints(const PiecewiseCurve& curve, double rho) {
  Constraints out;
  for (const auto& seg : curve.segments()) {
    if (!(seg.lo < rho)) break;
    const double xhi = std::min(seg.hi, rho);
    push_point(out.points, seg.lo, seg.eval(seg.lo));
    if (seg.is_convex_arc()) {
      Arc arc{seg, seg.lo, xhi};
      if (!out.arcs.empty()) {
        Arc& prev = out.arcs.back();
        if (prev.seg.form == seg.form && std::abs(prev.hi - seg.lo) <= kTieTol &&
            prev.seg.a == seg.a && prev.seg.b == seg.b && prev.seg.p == seg.p) {
          prev.hi = xhi;  // same analytic arc split at a curve breakpoint
          continue;
        }
      }
      out.arcs.push_back(arc);
      if (xhi < rho) push_point(out.points, xhi, seg.eval(xhi));
    } else if (seg.form == SegmentForm::kTabulated) {
      for (const auto& [x, y] : seg.nodes) {
        if (x > seg.lo && x < xhi) push_point(out.points, x, y);
      }
      if (xhi < rho) push_point(out.points, xhi, seg.eval(xhi));
    } else {
      if (xhi < rho) push_point(out.points, xhi, seg.eval(xhi));
    }
  }
  if (out.arcs.size() > 1) {
    // The built-in curve kinds produce at most one convex arc; curves with
    // several (range functions over 3+ entries with unequal rates) fall
    // back to a dense tabulation of every arc. The grid is fine enough
    // that the chord error stays near rounding level.
    for (const auto& arc : out.arcs) {
      const int n = 2048;
      for (int i = 1; i < n; ++i) {
        const double u = arc.lo + (arc.hi - arc.lo) * i / n;
        push_point(out.points, u, arc.seg.eval(u));
      }
      push_point(out.points, arc.hi, arc.seg.eval(arc.hi));
    }
    out.arcs.clear();
  }
  finalize_points(out.points);
  return out;
}

struct Candidate {
  double lambda = std::numeric_limits<double>::infinity();
  bool is_arc = false;
  double support_x = 0.0;  // point x, or tangency t on the arc
  double support_y = 0.0;
};

// Least chord slope from `cur` to the constraint set left of cur.x.
std::optional<Candidate> best_support(const Constraints& cons, Point cur) {
  Candidate best;
  bool found = false;
  for (const auto& p : cons.points) {
    if (!(p.x < cur.x - kTieTol)) continue;
    const double lam = (p.y - cur.y) / (cur.x - p.x);
    if (!found || lam < best.lambda - kTieTol * (1.0 + std::abs(lam)) ||
        (std::abs(lam - best.lambda) <= kTieTol * (1.0 + std::abs(lam)) && p.x < best.support_x)) {
      best = {lam, false, p.x, p.y};
      found = true;
    }
  }
  for (const auto& arc : cons.arcs) {
    if (!(arc.lo < cur.x - kTieTol)) continue;
    const double thi = std::min(arc.hi, cur.x);
    const auto t = tangent_from_right(arc.seg, arc.lo, thi, cur.x, cur.y);
    if (!t) continue;
    const double y = arc.seg.eval(*t);
    const double lam = (y - cur.y) / (cur.x - *t);
    if (!found || lam < best.lambda - kTieTol * (1.0 + std::abs(lam))) {
      best = {lam, true, *t, y};
      found = true;
    }
  }
  if (!found) return std::nullopt;
  return best;
}

// The arc that `cur` sits on (at its value), if any.
const Arc* arc_under(const Constraints& cons, Point cur) {
  for (const auto& arc : cons.arcs) {
    if (arc.lo < cur.x - kTieTol && cur.x <= arc.hi + kTieTol) {
      const double y = arc.seg.eval(std::min(cur.x, arc.hi));
      if (std::abs(y - cur.y) <= 1e-11 * (1.0 + std::abs(y))) return &arc;
    }
  }
  return nullptr;
}

}  // namespace

double HullPiece::estimate(double u) const {
  if (kind == Kind::kChord) return slope;
  return -arc.derivative(u);
}

double AnchoredHull::value(double u) const { return anchor_ + estimate_integral(u, rho_); }

double AnchoredHull::estimate(double u) const {
  if (!(u > 0) || u > rho_ + kTieTol) throw std::out_of_range("hull estimate outside (0, rho]");
  for (const auto& piece : pieces_) {
    if (u <= piece.hi + kTieTol) return piece.estimate(std::min(u, piece.hi));
  }
  return pieces_.back().estimate(rho_);
}

double AnchoredHull::estimate_integral(double a, double b) const {
  double total = 0.0;
  for (const auto& piece : pieces_) {
    const double lo = std::max(a, piece.lo);
    const double hi = std::min(b, piece.hi);
    if (!(hi > lo)) continue;
    if (piece.kind == HullPiece::Kind::kChord) {
      total += piece.slope * (hi - lo);
    } else {
      total += piece.arc.eval(lo) - piece.arc.eval(hi);
    }
  }
  return total;
}

double AnchoredHull::estimate_square_integral(double a, double b) const {
  double total = 0.0;
  for (const auto& piece : pieces_) {
    const double lo = std::max(a, piece.lo);
    const double hi = std::min(b, piece.hi);
    if (!(hi > lo)) continue;
    if (piece.kind == HullPiece::Kind::kChord) {
      total += piece.slope * piece.slope * (hi - lo);
      continue;
    }
    const Segment& s = piece.arc;
    if (s.form == SegmentForm::kPower) {
      // slope^2 = (b p)^2 (a - b u)^(2p-2); arcs only exist for p > 1.
      const double coef = (s.b * s.p) * (s.b * s.p);
      const auto prim = [&](double u) {
        return -coef * std::pow(std::max(0.0, s.a - s.b * u), 2.0 * s.p - 1.0) /
               (s.b * (2.0 * s.p - 1.0));
      };
      total += prim(hi) - prim(lo);
    } else if (s.form == SegmentForm::kTightPower) {
      if (s.p >= 0.5) return std::numeric_limits<double>::infinity();
      const double coef = std::pow(s.b, 2.0 - 2.0 * s.p);
      const auto prim = [&](double u) {
        return coef * std::pow(u, 1.0 - 2.0 * s.p) / (1.0 - 2.0 * s.p);
      };
      total += prim(hi) - prim(lo);
    } else {
      throw std::logic_error("unexpected arc form in hull");
    }
  }
  return total;
}

double AnchoredHull::estimate_square_integral_full() const {
  return estimate_square_integral(0.0, rho_);
}

namespace {

AnchoredHull build_hull(const PiecewiseCurve& curve, double rho, double anchor_value) {
  if (curve.start_u() != 0.0) {
    throw std::invalid_argument("hull construction expects a curve on (0, 1]");
  }
  if (!(rho > 0) || rho > curve.end_u() + kTieTol) {
    throw std::invalid_argument("hull anchor seed outside the curve domain");
  }
  const double at_rho = curve.value(std::min(rho, curve.end_u()));
  if (anchor_value < 0 || anchor_value > at_rho + 1e-9 * (1.0 + at_rho)) {
    throw std::domain_error("hull anchor must satisfy 0 <= M <= curve(rho)");
  }
  const double M = std::min(anchor_value, at_rho);

  Constraints cons = collect_constraints(curve, rho);
  std::vector<HullPiece> pieces;

  if (cons.arcs.empty()) {
    // Pure point constraints: one monotone-chain sweep instead of
    // gift-wrapping (tabulated curves can carry thousands of nodes).
    std::vector<Point> chain;
    const auto add_point = [&chain](const Point& p) {
      while (chain.size() >= 2) {
        const Point& a = chain[chain.size() - 2];
        const Point& b = chain.back();
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cross <= 0) {
          chain.pop_back();
        } else {
          break;
        }
      }
      chain.push_back(p);
    };
    for (const auto& p : cons.points) add_point(p);
    add_point({rho, M});
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      HullPiece piece;
      piece.kind = HullPiece::Kind::kChord;
      piece.lo = chain[i].x;
      piece.hi = chain[i + 1].x;
      piece.slope = std::max(0.0, (chain[i].y - chain[i + 1].y) / (chain[i + 1].x - chain[i].x));
      pieces.push_back(piece);
    }
    return AnchoredHull(rho, M, chain.front().y, std::move(pieces));
  }

  Point cur{rho, M};
  const long guard_limit = 64 + 3 * static_cast<long>(cons.points.size());
  long guard = 0;
  while (cur.x > kTieTol) {
    if (++guard > guard_limit) throw std::logic_error("hull construction did not converge");

    if (const Arc* arc = arc_under(cons, cur)) {
      // Riding the arc is only the hull when the arc's own slope at the
      // entry is the least steep feasible direction; a shallower chord to
      // some left point leaves the arc immediately instead.
      const double entry = std::min(cur.x, arc->hi);
      const double lambda_arc = -arc->seg.derivative(entry);
      const auto chord_cand = best_support(cons, cur);
      if (chord_cand && chord_cand->lambda <= lambda_arc + kTieTol * (1.0 + lambda_arc)) {
        HullPiece chord;
        chord.kind = HullPiece::Kind::kChord;
        chord.lo = chord_cand->support_x;
        chord.hi = cur.x;
        chord.slope = std::max(0.0, chord_cand->lambda);
        pieces.push_back(chord);
        cur = {chord_cand->support_x, chord_cand->support_y};
        cons.arcs.clear();
        continue;
      }
      // Ride leftward; depart where a tangent through a remaining left
      // point touches, or at the arc start.
      double t_dep = arc->lo;
      const Point* dep_point = nullptr;
      for (const auto& p : cons.points) {
        if (!(p.x < arc->lo + kTieTol) || !(p.x < cur.x - kTieTol)) continue;
        const double t = tangent_from_left(arc->seg, arc->lo, entry, p.x, p.y);
        if (t > t_dep + kTieTol || (std::abs(t - t_dep) <= kTieTol && dep_point != nullptr &&
                                    p.x < dep_point->x)) {
          t_dep = t;
          dep_point = &p;
        }
      }
      HullPiece ride;
      ride.kind = HullPiece::Kind::kArc;
      ride.lo = t_dep;
      ride.hi = entry;
      ride.arc = arc->seg;
      if (ride.hi > ride.lo + kTieTol) pieces.push_back(ride);
      if (dep_point != nullptr && t_dep > arc->lo + kTieTol) {
        HullPiece chord;
        chord.kind = HullPiece::Kind::kChord;
        chord.lo = dep_point->x;
        chord.hi = t_dep;
        chord.slope = std::max(
            0.0, (dep_point->y - arc->seg.eval(t_dep)) / (t_dep - dep_point->x));
        pieces.push_back(chord);
        cur = *dep_point;
      } else {
        cur = {arc->lo, arc->seg.eval(arc->lo)};
      }
      cons.arcs.clear();
      continue;
    }

    const auto cand = best_support(cons, cur);
    if (!cand) {
      if (cur.x > kTieTol) throw std::logic_error("hull ran out of support candidates");
      break;
    }
    HullPiece chord;
    chord.kind = HullPiece::Kind::kChord;
    chord.lo = cand->support_x;
    chord.hi = cur.x;
    chord.slope = std::max(0.0, cand->lambda);
    pieces.push_back(chord);
    cur = {cand->support_x, cand->support_y};
    // A tangential landing on the arc makes the next iteration ride it.
  }

  std::reverse(pieces.begin(), pieces.end());
  const double apex = cur.y;
  return AnchoredHull(rho, M, apex, std::move(pieces));
}

}  // namespace

AnchoredHull lower_hull(const PiecewiseCurve& curve, double rho, double anchor_value) {
  return build_hull(curve, rho, anchor_value);
}

AnchoredHull v_optimal(const FunctionSpec& f, const ThresholdScheme& scheme,
                       const DataVector& v) {
  const PiecewiseCurve curve = lower_bound_curve(f, scheme, v);
  const double fv = f.value(v);
  const double limit0 =
      curve.segments().empty() ? curve.start_value() : curve.segments().front().eval(0.0);
  if (std::abs(limit0 - fv) > 1e-9 * (1.0 + fv)) {
    throw std::domain_error("data vector is not estimable under this scheme");
  }
  return lower_hull(curve, 1.0, 0.0);
}

double lambda_value(const PiecewiseCurve& curve, double rho, double anchor_value) {
  if (curve.start_u() != 0.0) {
    throw std::invalid_argument("lambda_value expects a curve on (0, 1]");
  }
  const double at_rho = curve.value(std::min(rho, curve.end_u()));
  if (anchor_value < 0 || anchor_value > at_rho + 1e-9 * (1.0 + at_rho)) {
    throw std::domain_error("lambda anchor must satisfy 0 <= M <= curve(rho)");
  }
  const double M = std::min(anchor_value, at_rho);
  Constraints cons = collect_constraints(curve, rho);
  const Point cur{rho, M};
  const auto cand = best_support(cons, cur);
  if (const Arc* arc = arc_under(cons, cur)) {
    // On the arc the inf is the tangent slope, unless a chord to some
    // support point is shallower still.
    const double lambda_arc = -arc->seg.derivative(std::min(cur.x, arc->hi));
    return cand ? std::max(0.0, std::min(lambda_arc, cand->lambda)) : lambda_arc;
  }
  if (!cand) return 0.0;  // rho at the very start of the domain
  return std::max(0.0, cand->lambda);
}

}  // namespace monoest
