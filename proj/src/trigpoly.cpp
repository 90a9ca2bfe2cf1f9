#include "singforge/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "singforge/errors.hpp"
#include "singforge/kernels.hpp"

namespace singforge {

TrigPoly::TrigPoly(std::map<int, cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

TrigPoly TrigPoly::constant(cplx c) { return TrigPoly({{0, c}}); }
TrigPoly TrigPoly::harmonic(int freq, cplx c) { return TrigPoly({{freq, c}}); }

void TrigPoly::trim() {
    double mx = 0.0;
    for (const auto& [l, c] : coeffs_) mx = std::max(mx, std::abs(c));
    const double cut = mx * kDropTol;
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= cut) it = coeffs_.erase(it);
        else ++it;
    }
}

cplx TrigPoly::eval(double t) const {
    cplx acc(0.0, 0.0);
    for (const auto& [l, c] : coeffs_) acc += c * std::polar(1.0, l * t);
    return acc;
}

std::vector<cplx> TrigPoly::eval_grid(double t0, double h, std::size_t n) const {
    std::vector<int> freqs;
    std::vector<cplx> cs;
    freqs.reserve(coeffs_.size());
    cs.reserve(coeffs_.size());
    for (const auto& [l, c] : coeffs_) {
        freqs.push_back(l);
        cs.push_back(c);
    }
    std::vector<cplx> out(n);
    kernels::fourier_grid(freqs.data(), cs.data(), freqs.size(), t0, h, out.data(), n);
    return out;
}

TrigPoly TrigPoly::derivative() const {
    std::map<int, cplx> d;
    for (const auto& [l, c] : coeffs_)
        if (l != 0) d[l] = cplx(0.0, static_cast<double>(l)) * c;
    return TrigPoly(std::move(d));
}

TrigPoly TrigPoly::conjugated() const {
    std::map<int, cplx> d;
    for (const auto& [l, c] : coeffs_) d[-l] = std::conj(c);
    return TrigPoly(std::move(d));
}

double TrigPoly::coeff_sum() const {
    double s = 0.0;
    for (const auto& [l, c] : coeffs_) s += std::abs(c);
    return s;
}

double TrigPoly::deriv_sum() const {
    double s = 0.0;
    for (const auto& [l, c] : coeffs_) s += std::abs(c) * std::abs(static_cast<double>(l));
    return s;
}

double TrigPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [l, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Parity TrigPoly::frequency_parity() const {
    if (coeffs_.empty()) return Parity::Zero;
    bool even = true, odd = true;
    for (const auto& [l, c] : coeffs_) {
        if (l % 2 == 0) odd = false;
        else even = false;
    }
    if (even) return Parity::AllEven;
    if (odd) return Parity::AllOdd;
    return Parity::Mixed;
}

TrigPoly TrigPoly::substitute_power(int p) const {
    std::map<int, cplx> d;
    for (const auto& [l, c] : coeffs_) d[p * l] = c;
    return TrigPoly(std::move(d));
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    std::map<int, cplx> d = a.coeffs_;
    for (const auto& [l, c] : b.coeffs_) d[l] += c;
    return TrigPoly(std::move(d));
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
    std::map<int, cplx> d = a.coeffs_;
    for (const auto& [l, c] : b.coeffs_) d[l] -= c;
    return TrigPoly(std::move(d));
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    std::map<int, cplx> d;
    for (const auto& [la, ca] : a.coeffs_)
        for (const auto& [lb, cb] : b.coeffs_) d[la + lb] += ca * cb;
    return TrigPoly(std::move(d));
}

TrigPoly operator*(cplx s, const TrigPoly& a) {
    std::map<int, cplx> d;
    for (const auto& [l, c] : a.coeffs_) d[l] = s * c;
    return TrigPoly(std::move(d));
}

TrigPoly TrigPoly::operator-() const { return cplx(-1.0, 0.0) * *this; }

bool TrigPoly::nearly_equal(const TrigPoly& other, double tol) const {
    std::map<int, cplx> d = coeffs_;
    for (const auto& [l, c] : other.coeffs_) d[l] -= c;
    for (const auto& [l, c] : d)
        if (std::abs(c) > tol) return false;
    return true;
}

TrigPoly approximate(const std::vector<cplx>& samples, ParityConstraint parity,
                     int max_freq, double tol, double* residual_out) {
    const std::size_t n = samples.size();
    if (max_freq < 0) throw Error("approximate: max_freq must be >= 0");
    if (n <= 2 * static_cast<std::size_t>(max_freq) + 1)
        throw Error("approximate: need more than 2*max_freq+1 samples");

    // Discrete Fourier coefficients on the uniform grid t_k = 2*pi*k/n.
    const double two_pi = 2.0 * std::numbers::pi;
    std::map<int, cplx> coeffs;
    for (int l = -max_freq; l <= max_freq; ++l) {
        if (parity == ParityConstraint::Even && (l % 2 != 0)) continue;
        if (parity == ParityConstraint::Odd && (l % 2 == 0)) continue;
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            acc += samples[k] * std::polar(1.0, -l * two_pi * static_cast<double>(k) /
                                                     static_cast<double>(n));
        coeffs[l] = acc / static_cast<double>(n);
    }
    TrigPoly p(std::move(coeffs));

    std::vector<cplx> vals = p.eval_grid(0.0, two_pi / static_cast<double>(n), n);
    double residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) residual = std::max(residual, std::abs(vals[k] - samples[k]));
    if (residual_out) *residual_out = residual;
    if (residual > tol) throw ResidualTooLarge(residual);
    return p;
}

}  // namespace singforge
