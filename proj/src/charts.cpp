#include "scpoly/charts.hpp"

#include <cmath>

namespace sc {

LocalSlice LocalSlice::from_reference(const GridFunction& psi, double window) {
  PathEvaluator ev(psi);
  LocalSlice s;
  s.reference = psi;
  s.normal = ev.derivative(0.0);
  s.center = ev.value(0.0);
  s.window = window;
  if (s.normal.norm() <= kSliceFloor)
    throw std::invalid_argument("LocalSlice: reference derivative at 0 below slice floor");
  // Scan for the loss of transversality of <psi'(0), psi'(s)> and take half
  // that distance as the chart radius scale.
  double loss = window;
  for (double t = 0.0; t <= window; t += 1e-3) {
    if (std::abs(s.normal.dot(ev.derivative(t))) < kSliceFloor * s.normal.norm() ||
        std::abs(s.normal.dot(ev.derivative(-t))) < kSliceFloor * s.normal.norm()) {
      loss = t;
      break;
    }
  }
  s.radius = 0.5 * loss * s.normal.norm();
  return s;
}

double LocalSlice::condition(const GridFunction& u) const {
  PathEvaluator ev(u);
  return normal.dot(ev.value(0.0));
}

GridFunction LocalSlice::project(const GridFunction& u) const {
  const double c = condition(u) / normal.squaredNorm();
  Matrix vals = u.values();
  for (int i = 0; i < u.size(); ++i) {
    const double bump = std::exp(-u.t(i) * u.t(i));
    vals.row(i) -= (c * bump) * normal.transpose();
  }
  return u.with_values(std::move(vals));
}

double find_shift(const GridFunction& gamma, const LocalSlice& slice, double s_seed) {
  PathEvaluator ev(gamma);
  auto g = [&](double s) { return slice.normal.dot(ev.value(s) - slice.center); };
  auto dg = [&](double s) { return slice.normal.dot(ev.derivative(s)); };

  // bracket the root inside the admissible window
  double lo = s_seed - slice.window, hi = s_seed + slice.window;
  double flo = g(lo), fhi = g(hi);
  if (flo * fhi > 0.0) {
    // refine the scan: the crossing may be interior
    bool found = false;
    const int scan = 64;
    double prev_s = lo, prev_f = flo;
    for (int i = 1; i <= scan; ++i) {
      const double s = lo + (hi - lo) * i / scan;
      const double fs = g(s);
      if (prev_f * fs <= 0.0) {
        lo = prev_s;
        hi = s;
        flo = prev_f;
        fhi = fs;
        found = true;
        break;
      }
      prev_s = s;
      prev_f = fs;
    }
    if (!found) throw FindShiftError("find_shift: no sign change in the window");
  }

  double s = s_seed;
  if (s < lo || s > hi) s = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fs = g(s);
    if (std::abs(fs) < 1e-12 * std::max(1.0, slice.normal.norm())) {
      if (std::abs(dg(s)) < LocalSlice::kSliceFloor * slice.normal.norm())
        throw FindShiftError("find_shift: non-transverse crossing");
      return s;
    }
    if (fs * flo <= 0.0)
      hi = s;
    else
      lo = s;
    const double slope = dg(s);
    double next;
    if (std::abs(slope) < LocalSlice::kSliceFloor * slice.normal.norm()) {
      next = 0.5 * (lo + hi);  // bisection fallback
    } else {
      next = s - fs / slope;
      if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    }
    s = next;
  }
  throw FindShiftError("find_shift: did not converge");
}

ChartPoint to_chart(const GridFunction& gamma, const LocalSlice& slice, double s_seed) {
  const double s = find_shift(gamma, slice, s_seed);
  GridFunction u = shift(s, gamma) - slice.reference;
  ChartPoint p;
  p.slice = &slice;
  p.perturbation = slice.project(u);
  return p;
}

ChartPoint transition(const ChartPoint& u, const LocalSlice& target) {
  return to_chart(u.path(), target);
}

}  // namespace sc
