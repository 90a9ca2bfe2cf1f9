#include "singforge/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "singforge/errors.hpp"

namespace singforge {

std::vector<cplx> poly_roots(std::vector<cplx> coeffs, const std::vector<cplx>* init) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) throw SolverDiverged("poly_roots: degree < 1");
    const int deg = static_cast<int>(coeffs.size()) - 1;

    double csum = 0.0;
    for (const auto& c : coeffs) csum += std::abs(c);
    const double tol = 1e-10 * (1.0 + csum);

    // Exact roots at 0 from trailing zero coefficients.
    int zeros = 0;
    while (zeros < deg && std::abs(coeffs[zeros]) == 0.0) ++zeros;
    std::vector<cplx> reduced(coeffs.begin() + zeros, coeffs.end());
    const int d = static_cast<int>(reduced.size()) - 1;

    std::vector<cplx> z(d);
    if (init && static_cast<int>(init->size()) >= d) {
        for (int i = 0; i < d; ++i) z[i] = (*init)[i];
    } else if (d > 0) {
        // Cauchy-bound circle with an asymmetric phase to break symmetry.
        double bound = 0.0;
        for (int j = 0; j < d; ++j) bound = std::max(bound, std::abs(reduced[j] / reduced[d]));
        double r = 1.0 + bound;
        for (int i = 0; i < d; ++i)
            z[i] = std::polar(r * 0.6, 2.0 * std::numbers::pi * i / d + 0.41);
    }

    auto horner = [&](cplx u, cplx& p, cplx& dp) {
        p = reduced[d];
        dp = cplx(0.0, 0.0);
        for (int j = d - 1; j >= 0; --j) {
            dp = dp * u + p;
            p = p * u + reduced[j];
        }
    };

    bool done = false;
    for (int iter = 0; iter < 400 && !done; ++iter) {
        done = true;
        for (int i = 0; i < d; ++i) {
            cplx p, dp;
            horner(z[i], p, dp);
            if (std::abs(p) <= tol) continue;
            done = false;
            cplx newton = (dp != cplx(0.0, 0.0)) ? p / dp : cplx(1e-8, 1e-8);
            cplx sum(0.0, 0.0);
            for (int j = 0; j < d; ++j)
                if (j != i) {
                    cplx diff = z[i] - z[j];
                    if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0.0);
                    sum += 1.0 / diff;
                }
            cplx denom = 1.0 - newton * sum;
            z[i] -= (std::abs(denom) > 1e-300) ? newton / denom : newton;
        }
    }
    for (int i = 0; i < d; ++i) {
        cplx p, dp;
        horner(z[i], p, dp);
        if (std::abs(p) > tol) throw SolverDiverged("poly_roots: residual too large");
    }
    z.insert(z.end(), zeros, cplx(0.0, 0.0));
    return z;
}

}  // namespace singforge
