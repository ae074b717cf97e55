#pragma once

#include "nilharm/config.hpp"

namespace nilharm {

struct Check {
  std::string name;
  std::string anchor;  // the identity being checked
  double residual = 0;
  double tol = 0;
  bool pass = false;
  double runtime = 0;
  std::string note;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool ok() const;
  // timing is kept out of the report body so reports are reproducible
  std::string to_json() const;
  std::string timing_json() const;
};

VerifyReport run_verify(const RunConfig& c);

// panel functions on G: Gaussian, modulated Gaussian, Hermite-type
PointFunction panel_function(int dim, const std::string& kind);

// exact layer: number of failures among random rational triples
int associativity_failures(const NilpotentLieAlgebra& g, int triples, unsigned seed = 5);
int jacobi_failures(const NilpotentLieAlgebra& g);
int antisymmetry_failures(const NilpotentLieAlgebra& g);
int dilation_failures(const NilpotentLieAlgebra& g, int samples, unsigned seed = 9);
int coadjoint_failures(const NilpotentLieAlgebra& g, const VecQ& xi, int samples, unsigned seed = 13);
// max | |Pf(delta_lambda ell)| - |lambda|^{Q-kappa} |Pf(ell)| | over lambda in {2, 3/2, 5}
Rational pfaffian_scaling_defect(const NilpotentLieAlgebra& g, const FlatOrbitData& d);

struct RepResiduals {
  double homomorphism = 0, unitarity = 0;
  bool conjugation_exact = true, dilation_exact = true;
};
RepResiduals rep_residuals(const FlatRepSpec& spec, int samples = 64, unsigned seed = 21);

struct FourierResiduals {
  double oracle = 0, plancherel = 0, inversion = 0;
};
// oracle residual uses the relative floor 1e-6 * max_m ||direct(lambda_m)||
FourierResiduals fourier_residuals(const SampledFunction& phi, const QuantSpec& q, const LambdaGrid& lg,
                                   int inversion_points = 8, unsigned seed = 1);

struct KnResiduals {
  double identity = 0, multiplication = 0, locality = 0, roundtrip = 0;
};
KnResiduals kn_residuals(const SampledFunction& phi, const QuantSpec& q, const LambdaGrid& lg, const GridSpec& x_grid);

// residuals at tapers R = 1, 1.5, 2 for x = 0, central x, generic x (lambda = 1 and -1.2)
std::vector<std::vector<double>> character_residuals(const QuantSpec& q);

}  // namespace nilharm
