#include "qvac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace qvac::quad {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  std::int64_t id;
  bool operator<(const Panel& o) const {
    if (error != o.error) return error < o.error;
    return id > o.id;  // stable ordering for determinism
  }
};

Panel gk15(const Fn1& f, double a, double b, std::int64_t id) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double value = resk * h;
  double err = std::fabs((resk - resg) * h);
  // QUADPACK-style sharpening of the raw difference.
  const double scale = resabs * std::fabs(h);
  if (scale > 0.0 && err > 0.0)
    err = scale * std::min(1.0, std::pow(200.0 * err / scale, 1.5));
  return {a, b, value, err, id};
}

}  // namespace

IntegralResult integrate_1d(const Fn1& f, double a, double b, const QuadratureSpec& spec) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integrate_1d: NaN bound");
  if (a == b) return {0.0, 0.0, 0, true};

  if (std::isinf(b)) {
    // x = a + t/(1-t), dx = dt/(1-t)^2.
    const Fn1 g = [&f, a](double t) {
      const double om = 1.0 - t;
      const double x = a + t / om;
      return f(x) / (om * om);
    };
    QuadratureSpec mapped = spec;
    mapped.oscillation_period.reset();  // the map destroys periodicity
    return integrate_1d(g, 0.0, 1.0, mapped);
  }

  std::priority_queue<Panel> heap;
  double total = 0.0, toterr = 0.0;
  std::int64_t evals = 0, next_id = 0;

  int n0 = 1;
  if (spec.oscillation_period && *spec.oscillation_period > 0.0) {
    const double half = 0.5 * *spec.oscillation_period;
    n0 = static_cast<int>(std::ceil(std::fabs(b - a) / half));
    n0 = std::clamp(n0, 1, 100000);
  }
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = a + (b - a) * (i + 1) / n0;
    Panel p = gk15(f, lo, hi, next_id++);
    evals += 15;
    total += p.value;
    toterr += p.error;
    heap.push(p);
  }

  int splits = 0;
  auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };
  while (toterr > tol() && splits < spec.max_subdivisions) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
      heap.push({worst.a, worst.b, worst.value, 0.0, worst.id});
      continue;
    }
    Panel l = gk15(f, worst.a, mid, next_id++);
    Panel r = gk15(f, mid, worst.b, next_id++);
    evals += 30;
    total += l.value + r.value - worst.value;
    toterr += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++splits;
  }

  // Recompute global sums from the heap for a tighter, roundoff-free total.
  double v = 0.0, e = 0.0;
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : panels) {
    v += p.value;
    e += p.error;
  }
  IntegralResult res{v, e, evals, false};
  res.converged = e <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(v));
  return res;
}

namespace {

IntegralResult nested_impl(const FnN& f, const double* lo, const double* hi, int dim,
                           const QuadratureSpec& spec, double* point, int level,
                           double* inner_err_acc, std::int64_t* evals) {
  if (dim == 1) {
    const Fn1 g = [&](double x) {
      point[level] = x;
      ++*evals;
      return f(point);
    };
    QuadratureSpec s = spec;
    return integrate_1d(g, lo[0], hi[0], s);
  }
  double worst_inner = 0.0;
  const Fn1 g = [&](double x) {
    point[level] = x;
    IntegralResult inner = nested_impl(f, lo + 1, hi + 1, dim - 1,
                                       spec.with_rel_tol(spec.rel_tol * 0.1), point,
                                       level + 1, inner_err_acc, evals);
    worst_inner = std::max(worst_inner, inner.error_estimate);
    return inner.value;
  };
  QuadratureSpec outer = spec;
  outer.oscillation_period.reset();
  // aim below the requested tolerance so the inner-error surcharge added
  // next still lands within it
  outer.rel_tol = 0.5 * spec.rel_tol;
  IntegralResult r = integrate_1d(g, lo[0], hi[0], outer);
  r.error_estimate += worst_inner * std::fabs(hi[0] - lo[0]);
  *inner_err_acc = std::max(*inner_err_acc, r.error_estimate);
  return r;
}

}  // namespace

IntegralResult integrate_nested(const FnN& f, const double* lo, const double* hi, int dim,
                                const QuadratureSpec& spec) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("integrate_nested: dim must be 1..4");
  double point[4] = {0, 0, 0, 0};
  double acc = 0.0;
  std::int64_t evals = 0;
  IntegralResult r = nested_impl(f, lo, hi, dim, spec, point, 0, &acc, &evals);
  r.evaluations = evals;
  r.converged = r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(r.value));
  return r;
}

}  // namespace qvac::quad
