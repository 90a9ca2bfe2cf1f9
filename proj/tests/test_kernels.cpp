#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "singforge/kernels.hpp"

using namespace singforge;
using kernels::cplx;

namespace {

std::mt19937_64 rng(20240811);

double urand(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("fourier_grid matches a direct evaluation") {
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t nfreq = 1 + rng() % 12;
        std::vector<int> freqs(nfreq);
        std::vector<cplx> coeffs(nfreq);
        for (std::size_t f = 0; f < nfreq; ++f) {
            freqs[f] = static_cast<int>(rng() % 41) - 20;
            coeffs[f] = cplx(urand(-2, 2), urand(-2, 2));
        }
        const std::size_t n = 1 + rng() % 200;
        const double t0 = urand(0, 6.28), h = urand(1e-4, 0.3);
        std::vector<cplx> out(n);
        kernels::fourier_grid(freqs.data(), coeffs.data(), nfreq, t0, h, out.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            cplx ref = 0.0;
            for (std::size_t f = 0; f < nfreq; ++f)
                ref += coeffs[f] * std::polar(1.0, freqs[f] * (t0 + k * h));
            CHECK(std::abs(out[k] - ref) < 1e-11 * (1.0 + std::abs(ref)));
        }
    }
}

TEST_CASE("horner_grid matches a direct evaluation") {
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t deg1 = 1 + rng() % 10;
        std::vector<cplx> poly(deg1);
        for (auto& c : poly) c = cplx(urand(-2, 2), urand(-2, 2));
        const std::size_t n = 1 + rng() % 150;
        std::vector<cplx> pts(n), out(n);
        for (auto& p : pts) p = cplx(urand(-1.5, 1.5), urand(-1.5, 1.5));
        kernels::horner_grid(poly.data(), deg1, pts.data(), out.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            cplx ref = 0.0;
            for (std::size_t j = deg1; j-- > 0;) ref = ref * pts[k] + poly[j];
            CHECK(std::abs(out[k] - ref) < 1e-11 * (1.0 + std::abs(ref)));
        }
    }
}

#ifdef SINGFORGE_HAVE_AVX2
TEST_CASE("scalar and AVX2 kernels agree") {
    if (!__builtin_cpu_supports("avx2")) return;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t nfreq = 1 + rng() % 16;
        std::vector<int> freqs(nfreq);
        std::vector<cplx> coeffs(nfreq);
        for (std::size_t f = 0; f < nfreq; ++f) {
            freqs[f] = static_cast<int>(rng() % 61) - 30;
            coeffs[f] = cplx(urand(-3, 3), urand(-3, 3));
        }
        const std::size_t n = 1 + rng() % 257;  // cover remainder lanes
        const double t0 = urand(0, 6.28), h = urand(1e-4, 0.3);
        std::vector<cplx> a(n), b(n);
        kernels::fourier_grid_scalar(freqs.data(), coeffs.data(), nfreq, t0, h, a.data(), n);
        kernels::fourier_grid_avx2(freqs.data(), coeffs.data(), nfreq, t0, h, b.data(), n);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(a[k] - b[k]) < 1e-12 * (1.0 + std::abs(a[k])));

        const std::size_t deg1 = 1 + rng() % 12;
        std::vector<cplx> poly(deg1);
        for (auto& c : poly) c = cplx(urand(-3, 3), urand(-3, 3));
        std::vector<cplx> pts(n);
        for (auto& p : pts) p = cplx(urand(-1.5, 1.5), urand(-1.5, 1.5));
        kernels::horner_grid_scalar(poly.data(), deg1, pts.data(), a.data(), n);
        kernels::horner_grid_avx2(poly.data(), deg1, pts.data(), b.data(), n);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(a[k] - b[k]) < 1e-12 * (1.0 + std::abs(a[k])));
    }
}
#endif

TEST_CASE("backend reports a known name") {
    const auto& name = kernels::active_backend();
    CHECK((name == "scalar" || name == "avx2"));
}
