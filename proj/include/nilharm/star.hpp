#pragma once

#include "nilharm/grid.hpp"

namespace nilharm {

// C^m step: 0 for u <= 0, 1 for u >= 1
double smoothstep(double u, int m);
// vanishes on |zeta| <= r, equals 1 for |zeta| >= 2r
inline double star_bump(double zeta, double r, int m) { return smoothstep((std::abs(zeta) - r) / r, m); }

// multiplies the discrete central-frequency spectrum (axis 0) by star_bump
SampledFunction project_star(const SampledFunction& phi, double r, int m = 4);

// |h sum phi(t_j) t_j^k| for k = 0..D on a 1-dim grid
Eigen::VectorXd moment_vanish_defect(const SampledFunction& phi, int D);
// worst defect over all fibers along axis 0, relative to the fiber sup
Eigen::VectorXd central_moment_defects(const SampledFunction& phi, int D);

}  // namespace nilharm
