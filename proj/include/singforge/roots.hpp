#ifndef SINGFORGE_ROOTS_HPP
#define SINGFORGE_ROOTS_HPP

#include <complex>
#include <vector>

namespace singforge {

using cplx = std::complex<double>;

// All roots of sum_j coeffs[j] u^j (lowest degree first) by Aberth-Ehrlich
// iteration.  `init`, when given, seeds the iteration (continuation).
// Throws SolverDiverged when residuals fail to reach
// 1e-10 * (1 + sum |coeffs|).
std::vector<cplx> poly_roots(std::vector<cplx> coeffs,
                             const std::vector<cplx>* init = nullptr);

}  // namespace singforge

#endif
