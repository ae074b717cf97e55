#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "nilharm/error.hpp"

namespace nilharm {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

enum class SpaceTag { Group, Dual, CentralDual, LambdaLine };
const char* space_name(SpaceTag t);
SpaceTag parse_space(const std::string& s);

// cell-centred box grid: x_j = -L + (j + 1/2) h, h = 2L/N, flattened row-major (axis 0 slowest)
struct GridSpec {
  std::vector<double> L;
  std::vector<int> N;

  GridSpec() = default;
  GridSpec(std::vector<double> L_, std::vector<int> N_);
  static GridSpec uniform(int dims, double L, int N) { return GridSpec(std::vector<double>(dims, L), std::vector<int>(dims, N)); }

  int dims() const { return int(N.size()); }
  double h(int a) const { return 2 * L[a] / N[a]; }
  double coord(int a, int j) const { return -L[a] + (j + 0.5) * h(a); }
  Eigen::Index size() const;
  double cell_volume() const;
  Eigen::VectorXd axis(int a) const;
  Eigen::VectorXd point(Eigen::Index flat) const;
  std::vector<int> index(Eigen::Index flat) const;
  Eigen::Index flat(const std::vector<int>& idx) const;
  // numpy fftfreq ordering for the axis
  Eigen::VectorXd frequencies(int a) const;
  bool operator==(const GridSpec& o) const { return L == o.L && N == o.N; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
  std::string describe() const;
};

struct SampledFunction {
  GridSpec grid;
  Eigen::VectorXcd values;
  SpaceTag tag = SpaceTag::Group;

  SampledFunction() = default;
  SampledFunction(GridSpec g, Eigen::VectorXcd v, SpaceTag t);
  double sup() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
  double l2_squared() const { return values.squaredNorm() * grid.cell_volume(); }
};

using PointFunction = std::function<cd(const Eigen::VectorXd&)>;

SampledFunction sample(const PointFunction& f, const GridSpec& grid, SpaceTag tag = SpaceTag::Group);

// band-limited (periodic Dirichlet) interpolation of the samples at an arbitrary point
cd interpolate(const SampledFunction& f, const Eigen::VectorXd& p);

// contract one axis of a row-major tensor with e (P x N_axis); shape is updated
Eigen::VectorXcd apply_axis(const Eigen::VectorXcd& values, std::vector<int>& shape, int axis, const Eigen::MatrixXcd& e);

}  // namespace nilharm
