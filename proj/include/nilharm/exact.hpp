#pragma once

#include <vector>

#include "nilharm/rational.hpp"

namespace nilharm {

// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(MatQ& a);
int rank(MatQ a);
// columns span the kernel
MatQ nullspace(const MatQ& a);
// rows of the result form a basis of the row space of a
MatQ row_basis(const MatQ& a);
Rational determinant(MatQ a);
// antisymmetric matrix, even size; recursive expansion along the first row
Rational pfaffian(const MatQ& a);

}  // namespace nilharm
