#include "singforge/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef SINGFORGE_HAVE_AVX2
#include <immintrin.h>
#endif

namespace singforge::kernels {

namespace {
// Rotation recurrences drift; reseed from sin/cos every RESEED steps.
constexpr std::size_t kReseed = 64;
}  // namespace

void fourier_grid_scalar(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                         double t0, double h, cplx* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) out[k] = cplx(0.0, 0.0);
    for (std::size_t f = 0; f < nfreq; ++f) {
        const double w = static_cast<double>(freqs[f]);
        const cplx c = coeffs[f];
        const cplx step = std::polar(1.0, w * h);
        cplx phase = std::polar(1.0, w * t0);
        for (std::size_t k = 0; k < n; ++k) {
            if (k % kReseed == 0) phase = std::polar(1.0, w * (t0 + h * static_cast<double>(k)));
            out[k] += c * phase;
            phase *= step;
        }
    }
}

void horner_grid_scalar(const cplx* poly, std::size_t deg_plus_1,
                        const cplx* points, cplx* out, std::size_t n) {
    if (deg_plus_1 == 0) {
        for (std::size_t k = 0; k < n; ++k) out[k] = cplx(0.0, 0.0);
        return;
    }
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = poly[deg_plus_1 - 1];
        for (std::size_t j = deg_plus_1 - 1; j-- > 0;) acc = acc * points[k] + poly[j];
        out[k] = acc;
    }
}

#ifdef SINGFORGE_HAVE_AVX2

namespace {
// Two interleaved complex doubles per vector.
__attribute__((target("avx2,fma"), always_inline)) inline __m256d cmul(__m256d a, __m256d b) {
    __m256d bre = _mm256_movedup_pd(b);
    __m256d bim = _mm256_permute_pd(b, 0xF);
    __m256d asw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(asw, bim));
}
}  // namespace

__attribute__((target("avx2,fma")))
void fourier_grid_avx2(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                       double t0, double h, cplx* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) out[k] = cplx(0.0, 0.0);
    double* o = reinterpret_cast<double*>(out);
    for (std::size_t f = 0; f < nfreq; ++f) {
        const double w = static_cast<double>(freqs[f]);
        const cplx c = coeffs[f];
        const cplx step1 = std::polar(1.0, w * h);
        const cplx step2 = step1 * step1;
        const __m256d vstep2 =
            _mm256_setr_pd(step2.real(), step2.imag(), step2.real(), step2.imag());
        const __m256d vc = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
        std::size_t k = 0;
        __m256d vphase = _mm256_setzero_pd();
        for (; k + 2 <= n; k += 2) {
            if (k % kReseed == 0) {
                cplx p0 = std::polar(1.0, w * (t0 + h * static_cast<double>(k)));
                cplx p1 = p0 * step1;
                vphase = _mm256_setr_pd(p0.real(), p0.imag(), p1.real(), p1.imag());
            }
            __m256d acc = _mm256_loadu_pd(o + 2 * k);
            acc = _mm256_add_pd(acc, cmul(vc, vphase));
            _mm256_storeu_pd(o + 2 * k, acc);
            vphase = cmul(vphase, vstep2);
        }
        for (; k < n; ++k)
            out[k] += c * std::polar(1.0, w * (t0 + h * static_cast<double>(k)));
    }
}

__attribute__((target("avx2,fma")))
void horner_grid_avx2(const cplx* poly, std::size_t deg_plus_1,
                      const cplx* points, cplx* out, std::size_t n) {
    if (deg_plus_1 == 0) {
        for (std::size_t k = 0; k < n; ++k) out[k] = cplx(0.0, 0.0);
        return;
    }
    const double* pts = reinterpret_cast<const double*>(points);
    double* o = reinterpret_cast<double*>(out);
    const cplx lead = poly[deg_plus_1 - 1];
    const __m256d vlead = _mm256_setr_pd(lead.real(), lead.imag(), lead.real(), lead.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        __m256d u = _mm256_loadu_pd(pts + 2 * k);
        __m256d acc = vlead;
        for (std::size_t j = deg_plus_1 - 1; j-- > 0;) {
            const cplx cj = poly[j];
            __m256d vcj = _mm256_setr_pd(cj.real(), cj.imag(), cj.real(), cj.imag());
            acc = _mm256_add_pd(cmul(acc, u), vcj);
        }
        _mm256_storeu_pd(o + 2 * k, acc);
    }
    if (k < n) horner_grid_scalar(poly, deg_plus_1, points + k, out + k, n - k);
}

#endif  // SINGFORGE_HAVE_AVX2

namespace {

struct Dispatch {
    FourierGridFn fourier;
    HornerGridFn horner;
    std::string name;
};

const Dispatch& dispatch() {
    static const Dispatch d = [] {
        Dispatch r{fourier_grid_scalar, horner_grid_scalar, "scalar"};
#ifdef SINGFORGE_HAVE_AVX2
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            r = Dispatch{fourier_grid_avx2, horner_grid_avx2, "avx2"};
        }
#endif
        return r;
    }();
    return d;
}

}  // namespace

void fourier_grid(const int* freqs, const cplx* coeffs, std::size_t nfreq,
                  double t0, double h, cplx* out, std::size_t n) {
    dispatch().fourier(freqs, coeffs, nfreq, t0, h, out, n);
}

void horner_grid(const cplx* poly, std::size_t deg_plus_1,
                 const cplx* points, cplx* out, std::size_t n) {
    dispatch().horner(poly, deg_plus_1, points, out, n);
}

const std::string& active_backend() { return dispatch().name; }

}  // namespace singforge::kernels
