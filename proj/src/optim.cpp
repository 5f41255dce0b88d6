#include "qcohere/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qc {

RealVector project_to_simplex(const RealVector& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / (i + 1);
    if (u[i] - t > 0.0) {
      rho = i;
      css = cum;
    }
  }
  (void)css;
  double cum_rho = 0.0;
  for (int i = 0; i <= rho; ++i) cum_rho += u[i];
  theta = (cum_rho - 1.0) / (rho + 1);
  RealVector out(n);
  for (int i = 0; i < n; ++i) out(i) = std::max(0.0, v(i) - theta);
  return out;
}

namespace {

RealVector apply_floor(RealVector p, double floor) {
  if (floor <= 0.0) return p;
  for (int i = 0; i < p.size(); ++i) p(i) = std::max(p(i), floor);
  p /= p.sum();
  return p;
}

RealVector numeric_grad(const std::function<double(const RealVector&)>& f, const RealVector& p) {
  const double h = 1e-7;
  RealVector g(p.size());
  for (int i = 0; i < p.size(); ++i) {
    RealVector a = p, b = p;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

}  // namespace

SimplexResult minimize_over_simplex(
    const std::function<double(const RealVector&)>& f,
    const std::function<RealVector(const RealVector&)>& grad,
    int dim, const SimplexOptions& opts, Rng& rng,
    const std::vector<RealVector>& warm_starts) {
  std::vector<RealVector> starts = warm_starts;
  for (int r = static_cast<int>(starts.size()); r < opts.restarts; ++r) {
    RealVector p(dim);
    for (int i = 0; i < dim; ++i) p(i) = -std::log(std::max(1e-300, rng.next_double()));
    p /= p.sum();
    starts.push_back(p);
  }

  std::vector<double> running_best;
  SimplexResult best{std::numeric_limits<double>::infinity(), RealVector()};
  for (const RealVector& s0 : starts) {
    RealVector p = apply_floor(project_to_simplex(s0), opts.floor);
    double fp = f(p);
    double step = 0.1;
    for (int it = 0; it < opts.max_iters; ++it) {
      RealVector g = grad ? grad(p) : numeric_grad(f, p);
      bool moved = false;
      while (step > opts.step_tol) {
        RealVector q = apply_floor(project_to_simplex(p - step * g), opts.floor);
        const double fq = f(q);
        if (fq < fp - 1e-15) {
          p = q;
          fp = fq;
          step *= 1.5;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (fp < best.value) {
      best.value = fp;
      best.point = p;
    }
    running_best.push_back(best.value);
  }
  // Nelder-Mead polish through a softmax chart around the incumbent
  if (best.point.size() == dim) {
    RealVector z(dim);
    for (int i = 0; i < dim; ++i) z(i) = std::log(std::max(best.point(i), 1e-12));
    auto softmax_f = [&](const RealVector& zz) {
      RealVector p(dim);
      const double zmax = zz.maxCoeff();
      for (int i = 0; i < dim; ++i) p(i) = std::exp(zz(i) - zmax);
      p /= p.sum();
      return f(apply_floor(std::move(p), opts.floor));
    };
    for (double scale : {5e-2, 5e-3, 5e-4, 5e-5}) {
      NelderMeadResult nm = nelder_mead(softmax_f, z, scale, 400);
      if (nm.value < best.value) {
        best.value = nm.value;
        z = nm.point;
        RealVector p(dim);
        const double zmax = z.maxCoeff();
        for (int i = 0; i < dim; ++i) p(i) = std::exp(z(i) - zmax);
        p /= p.sum();
        best.point = apply_floor(std::move(p), opts.floor);
      }
    }
  }
  // stalled if the incumbent was still moving during the last quarter of restarts
  if (opts.check_stall && running_best.size() >= 8) {
    const size_t tail = running_best.size() - running_best.size() / 4;
    if (running_best[tail - 1] - running_best.back() > opts.stall_tol)
      fail(Err::OptimizerStalled, "multi-start search still improving in the final restarts");
  }
  return best;
}

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f,
                             const RealVector& start, double scale, int max_iters) {
  const int n = static_cast<int>(start.size());
  std::vector<RealVector> pts;
  std::vector<double> vals;
  pts.push_back(start);
  for (int i = 0; i < n; ++i) {
    RealVector p = start;
    p(i) += scale;
    pts.push_back(p);
  }
  for (auto& p : pts) vals.push_back(f(p));

  auto order = [&]() {
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<RealVector> np;
    std::vector<double> nv;
    for (int i : idx) {
      np.push_back(pts[i]);
      nv.push_back(vals[i]);
    }
    pts = np;
    vals = nv;
  };

  for (int it = 0; it < max_iters; ++it) {
    order();
    if (std::abs(vals.back() - vals.front()) < 1e-13) break;
    RealVector centroid = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;
    RealVector refl = centroid + (centroid - pts[n]);
    double fr = f(refl);
    if (fr < vals[0]) {
      RealVector exp_p = centroid + 2.0 * (centroid - pts[n]);
      double fe = f(exp_p);
      if (fe < fr) {
        pts[n] = exp_p;
        vals[n] = fe;
      } else {
        pts[n] = refl;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = fr;
    } else {
      RealVector con = centroid + 0.5 * (pts[n] - centroid);
      double fc = f(con);
      if (fc < vals[n]) {
        pts[n] = con;
        vals[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return {vals[0], pts[0]};
}

}  // namespace qc
