#ifndef SINGFORGE_KERNELS_HPP
#define SINGFORGE_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops for the grid sweeps (coefficient evaluation on
// uniform t-grids, batched polynomial evaluation).  Scalar reference kernels
// plus AVX2 variants, selected once at runtime.  The two paths agree to
// floating-point roundoff; equivalence is tested in tests/test_kernels.cpp.

namespace singforge::kernels {

using cplx = std::complex<double>;

// out[k] += / = sum_f coeffs[f] * exp(i * freqs[f] * (t0 + k*h)), k = 0..n-1.
using FourierGridFn = void (*)(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                               double t0, double h, cplx* out, std::size_t n);

// out[k] = sum_{j=0}^{deg} poly[j] * u[k]^j  (poly stored lowest degree first).
using HornerGridFn = void (*)(const cplx* poly, std::size_t deg_plus_1,
                              const cplx* points, cplx* out, std::size_t n);

void fourier_grid_scalar(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                         double t0, double h, cplx* out, std::size_t n);
void horner_grid_scalar(const cplx* poly, std::size_t deg_plus_1,
                        const cplx* points, cplx* out, std::size_t n);

#ifdef SINGFORGE_HAVE_AVX2
void fourier_grid_avx2(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                       double t0, double h, cplx* out, std::size_t n);
void horner_grid_avx2(const cplx* poly, std::size_t deg_plus_1,
                      const cplx* points, cplx* out, std::size_t n);
#endif

// Dispatched entry points.
void fourier_grid(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                  double t0, double h, cplx* out, std::size_t n);
void horner_grid(const cplx* poly, std::size_t deg_plus_1,
                 const cplx* points, cplx* out, std::size_t n);

// "scalar" or "avx2"; resolved on first use.
const std::string& active_backend();

}  // namespace singforge::kernels

#endif
