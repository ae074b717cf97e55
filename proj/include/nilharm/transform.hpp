#pragma once

#include <memory>

#include "nilharm/grid.hpp"

namespace nilharm {

// max |phi| over the outermost grid shell relative to sup |phi|
double boundary_ratio(const SampledFunction& phi);
void check_boundary(const SampledFunction& phi, double tail_tol);

// h^d sum_k e^{2 pi i sign xi(x_k)} phi(x_k); rows of `points` are functionals in dual coordinates
Eigen::VectorXcd euclidean_ft_at(const SampledFunction& phi, const Eigen::MatrixXd& points, int sign = +1,
                                 double tail_tol = 1e-4);
// same sum on a tensor product of per-axis frequency lists, result row-major over the lists
Eigen::VectorXcd euclidean_ft_tensor(const SampledFunction& phi, const std::vector<Eigen::VectorXd>& freqs,
                                     int sign = +1, double tail_tol = 1e-4);

// per-axis kernel matrix e^{2 pi i sign f_p x_j} * weight, P x N
Eigen::MatrixXcd fourier_kernel(const Eigen::VectorXd& freqs, const Eigen::VectorXd& xs, int sign, double weight);

// a function on the dual space that can be evaluated anywhere
class FrequencyFunction {
 public:
  virtual ~FrequencyFunction() = default;
  virtual int dims() const = 0;
  virtual Eigen::VectorXcd at(const Eigen::MatrixXd& points) const = 0;
  virtual Eigen::VectorXcd on_tensor(const std::vector<Eigen::VectorXd>& freqs) const;
};

// Riemann-sum transform of samples; sign -1 gives the transform of phi o inverse
class SampledTransform : public FrequencyFunction {
 public:
  SampledTransform(const SampledFunction& phi, int sign, double tail_tol = 1e-4);
  int dims() const override { return phi_.grid.dims(); }
  Eigen::VectorXcd at(const Eigen::MatrixXd& points) const override;
  Eigen::VectorXcd on_tensor(const std::vector<Eigen::VectorXd>& freqs) const override;

 private:
  const SampledFunction& phi_;
  int sign_;
};

class AnalyticFrequency : public FrequencyFunction {
 public:
  AnalyticFrequency(int dims, PointFunction f) : dims_(dims), f_(std::move(f)) {}
  int dims() const override { return dims_; }
  Eigen::VectorXcd at(const Eigen::MatrixXd& points) const override;

 private:
  int dims_;
  PointFunction f_;
};

}  // namespace nilharm
