#ifndef SINGFORGE_OBSTRUCTION_HPP
#define SINGFORGE_OBSTRUCTION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace singforge {

// Laurent polynomial over Z, normalized so the lowest exponent is 0 and the
// leading coefficient is positive (Alexander polynomials are defined up to
// +-t^k).
class IntLaurentPoly {
public:
    IntLaurentPoly() : coeffs_{1} {}
    explicit IntLaurentPoly(std::vector<long long> coeffs);  // lowest degree first

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    long long at(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0;
    }
    const std::vector<long long>& coeffs() const { return coeffs_; }

    bool is_palindromic() const;
    IntLaurentPoly substitute_square() const;  // Delta(t) -> Delta(t^2)
    IntLaurentPoly mirrored() const;           // t -> -t, renormalized sign
    long long eval_at_one() const;

    friend IntLaurentPoly operator*(const IntLaurentPoly& a, const IntLaurentPoly& b);
    bool operator==(const IntLaurentPoly& o) const { return coeffs_ == o.coeffs_; }

    std::string str() const;

private:
    std::vector<long long> coeffs_;
};

// Dense GF(2) polynomial of degree < 64.
struct GF2Poly {
    std::uint64_t bits = 0;
    int degree() const;
    bool is_zero() const { return bits == 0; }
    // A GF(2) polynomial is a square iff it has only even-degree terms.
    bool is_square() const;
    GF2Poly sqrt() const;  // valid when is_square()
    std::string str() const;
};

GF2Poly gf2_mul(GF2Poly a, GF2Poly b);
// quotient/remainder; b nonzero.
std::pair<GF2Poly, GF2Poly> gf2_divmod(GF2Poly a, GF2Poly b);
GF2Poly gf2_reduce(const IntLaurentPoly& p);  // mod 2, then divide out t^k

struct MurasugiResult {
    bool possible = false;
    GF2Poly f;       // witness: Delta = f^2 (1+t+...+t^{lambda-1}) mod 2, up to t^k
    int lambda = 0;  // odd
};

MurasugiResult murasugi_check(const IntLaurentPoly& delta);

struct HartleyResult {
    bool possible = false;
    IntLaurentPoly f;  // witness: Delta(t^2) = +- f(t) f(-t)
};

// Searches for an integer factorization Delta(t^2) = f(t) f(-t) via a
// certified factorization over Z (big-prime Cantor-Zassenhaus plus divisor
// recombination).  Throws SearchExhausted beyond the degree-30 cap or when
// coefficient bounds overflow the modulus.
HartleyResult hartley_check(const IntLaurentPoly& delta);

// Complete factorization into Z-irreducible primitive factors with
// multiplicities (content and sign reported separately).
struct ZFactorization {
    long long content = 1;  // signed content of the input
    std::vector<std::pair<IntLaurentPoly, int>> factors;
};
ZFactorization z_factor(const IntLaurentPoly& p);

struct SymmetryReport {
    MurasugiResult murasugi;
    HartleyResult hartley;
    bool excluded = false;  // both obstructed
    std::string summary;
};

SymmetryReport symmetry_report(const IntLaurentPoly& delta);

}  // namespace singforge

#endif
