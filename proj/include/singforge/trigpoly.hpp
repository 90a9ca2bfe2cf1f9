#ifndef SINGFORGE_TRIGPOLY_HPP
#define SINGFORGE_TRIGPOLY_HPP

#include <complex>
#include <map>
#include <vector>

namespace singforge {

using cplx = std::complex<double>;

enum class Parity { Zero, AllEven, AllOdd, Mixed };

// Which frequencies an approximation may use.
enum class ParityConstraint { Any, Even, Odd };

// Finitely supported Fourier series t |-> sum_l c_l e^{i l t}, t in [0,2pi).
// Immutable in practice: every operation returns a new value.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(std::map<int, cplx> coeffs);

    static TrigPoly constant(cplx c);
    static TrigPoly harmonic(int freq, cplx c = cplx(1.0, 0.0));

    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    cplx eval(double t) const;
    // Values at t0 + k*h, k = 0..n-1 (uniform grid sweep, SIMD-dispatched).
    std::vector<cplx> eval_grid(double t0, double h, std::size_t n) const;

    TrigPoly derivative() const;
    TrigPoly conjugated() const;  // coefficients conjugated, frequencies negated

    // sum_l |c_l| (sup bound), sum_l |c_l||l| (derivative sup bound),
    // sum_l |c_l|(1+|l|).
    double coeff_sum() const;
    double deriv_sum() const;
    double c1_norm() const { return coeff_sum() + deriv_sum(); }
    double max_abs_coeff() const;

    Parity frequency_parity() const;

    // Frequency l becomes p*l.
    TrigPoly substitute_power(int p) const;

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator*(cplx s, const TrigPoly& a);
    TrigPoly operator-() const;

    bool nearly_equal(const TrigPoly& other, double tol) const;
    bool operator==(const TrigPoly& other) const { return coeffs_ == other.coeffs_; }

    // Relative drop tolerance for stored coefficients.
    static constexpr double kDropTol = 1e-13;

private:
    void trim();
    std::map<int, cplx> coeffs_;
};

// Least-squares projection of uniform samples (values at t_k = 2*pi*k/n)
// onto trigonometric polynomials with |frequency| <= max_freq and the given
// parity.  Throws ResidualTooLarge when the sup residual on the sample grid
// exceeds tol.  Requires n > 2*max_freq + 1.
TrigPoly approximate(const std::vector<cplx>& samples, ParityConstraint parity,
                     int max_freq, double tol, double* residual_out = nullptr);

}  // namespace singforge

#endif
