#pragma once

#include <cmath>
#include <utility>

namespace sft {

struct ScalarMin {
  double arg;
  double value;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than rel_tol * (hi - lo) or after
/// max_iters shrinks. The endpoints are also compared, so a minimum at
/// either end of the interval is returned exactly.
template <class F>
ScalarMin golden_section_min(F&& f, double lo, double hi, double rel_tol = 1e-12,
                             int max_iters = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  const double width0 = hi - lo;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iters && (b - a) > rel_tol * width0; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  ScalarMin best = fc <= fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
  // Ties prefer the lower parameter.
  if (const double flo = f(lo); flo <= best.value) best = {lo, flo};
  if (const double fhi = f(hi); fhi < best.value) best = {hi, fhi};
  return best;
}

template <class F>
ScalarMin golden_section_max(F&& f, double lo, double hi, double rel_tol = 1e-12,
                             int max_iters = 200) {
  auto r = golden_section_min([&](double t) { return -f(t); }, lo, hi, rel_tol, max_iters);
  return {r.arg, -r.value};
}

}  // namespace sft
