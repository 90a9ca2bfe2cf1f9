#ifndef SINGFORGE_LOOPPOLY_HPP
#define SINGFORGE_LOOPPOLY_HPP

#include <utility>
#include <vector>

#include "singforge/braid.hpp"
#include "singforge/certificate.hpp"
#include "singforge/trigpoly.hpp"

namespace singforge {

// Symmetry class a loop synthesis must respect (as produced by
// detect_symmetry and chosen by the caller).
struct SymmetryTag {
    enum class Kind { None, UEven, Odd, Divisor };
    Kind kind = Kind::None;
    int divisor = 1;  // 2^K for Kind::Divisor

    static SymmetryTag none() { return {Kind::None, 1}; }
    static SymmetryTag u_even() { return {Kind::UEven, 1}; }
    static SymmetryTag odd() { return {Kind::Odd, 1}; }
    static SymmetryTag divisor_sym(int two_pow_k) { return {Kind::Divisor, two_pow_k}; }
};

// Loop of degree-s polynomials u |-> sum_j A_j(t) u^j with trigonometric
// polynomial coefficients.  The leading coefficient must be certifiably
// nonvanishing (checked on construction).
class LoopPoly {
public:
    explicit LoopPoly(std::vector<TrigPoly> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const TrigPoly& coeff(int j) const { return coeffs_[j]; }
    const std::vector<TrigPoly>& coeffs() const { return coeffs_; }
    bool is_monic() const;

    cplx eval(cplx u, double t) const;
    // coefficient values at t (A_0..A_s).
    std::vector<cplx> coeff_values(double t) const;

    LoopPoly substitute_power(int p) const;
    LoopPoly derivative_u() const;

    Certificate leading_nonvanishing(int grid = 4096) const;

    bool nearly_equal(const LoopPoly& other, double tol) const;

private:
    std::vector<TrigPoly> coeffs_;
};

// Monic loop from elementary symmetric functions of the strands, projected
// under the symmetry-mandated parity pattern, with a root re-tracking check.
// max_freq <= 0 selects automatic doubling up to 512.
LoopPoly from_braid(const GeometricBraid& B, SymmetryTag sym, int max_freq = 0);

std::vector<cplx> roots_at(const LoopPoly& g, double t);

// Roots continued over a uniform grid of n intervals; result has n+1 rows of
// degree() entries, row i at t = 2*pi*i/n, columns matched across rows.
// Refines x2 internally while root motion exceeds a quarter of the minimum
// root separation (the returned grid may therefore be larger than n).
std::vector<std::vector<cplx>> root_grid(const LoopPoly& g, int n = 1024);

GeometricBraid track(const LoopPoly& g, int grid = 1024);

std::pair<double, Certificate> simple_root_margin(const LoopPoly& g, int grid = 1024);

}  // namespace singforge

#endif
