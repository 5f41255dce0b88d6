#pragma once

#include <functional>

#include "qcohere/states.hpp"

namespace qc {

/// Euclidean projection onto the probability simplex.
RealVector project_to_simplex(const RealVector& v);

struct SimplexOptions {
  int restarts = 64;
  int max_iters = 2000;
  double step_tol = 1e-10;
  double floor = 0.0;           // minimum entry (renormalized), for interior problems
  double stall_tol = 1e-6;      // best vs second-best guard across restarts
  bool check_stall = false;
};

struct SimplexResult {
  double value;
  RealVector point;
};

/// Multi-start projected gradient descent over the simplex. Gradient may be
/// empty, in which case central differences are used. Restart seeds are
/// Dirichlet(1) draws plus the supplied warm starts.
SimplexResult minimize_over_simplex(
    const std::function<double(const RealVector&)>& f,
    const std::function<RealVector(const RealVector&)>& grad,
    int dim, const SimplexOptions& opts, Rng& rng,
    const std::vector<RealVector>& warm_starts = {});

/// Nelder-Mead minimization in a low-dimensional box-free parameter space.
struct NelderMeadResult {
  double value;
  RealVector point;
};
NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f,
                             const RealVector& start, double scale, int max_iters);

}  // namespace qc
