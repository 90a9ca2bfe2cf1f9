#ifndef SINGFORGE_MIXEDPOLY_HPP
#define SINGFORGE_MIXEDPOLY_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "singforge/certificate.hpp"
#include "singforge/looppoly.hpp"
#include "singforge/trigpoly.hpp"

namespace singforge {

// Exponent quadruple (mu1, mu2, nu1, nu2) of u^mu1 ubar^mu2 v^nu1 vbar^nu2.
using ExpQuad = std::array<int, 4>;

class MixedPoly {
public:
    MixedPoly() = default;
    explicit MixedPoly(std::map<ExpQuad, cplx> terms);
    static MixedPoly monomial(int mu1, int mu2, int nu1, int nu2, cplx c);

    const std::map<ExpQuad, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_semiholomorphic() const;  // no ubar
    double max_abs_coeff() const;

    // Total-exponent pairs (mu1+mu2, nu1+nu2).
    std::set<std::pair<int, int>> support() const;

    cplx eval(cplx u, cplx v) const;
    // Wirtinger partials (f_u, f_ubar, f_v, f_vbar).
    std::array<cplx, 4> gradient(cplx u, cplx v) const;

    friend MixedPoly operator+(const MixedPoly& a, const MixedPoly& b);
    friend MixedPoly operator-(const MixedPoly& a, const MixedPoly& b);
    friend MixedPoly operator*(const MixedPoly& a, const MixedPoly& b);
    friend MixedPoly operator*(cplx s, const MixedPoly& a);

    bool nearly_equal(const MixedPoly& other, double tol) const;

    static constexpr double kDropTol = 1e-13;  // relative to max |c|

private:
    void trim();
    std::map<ExpQuad, cplx> terms_;
};

// Primitive positive weight vector; P > Q iff p1/p2 > q1/q2.
struct WeightVector {
    long long p1 = 1, p2 = 1;
    WeightVector() = default;
    WeightVector(long long a, long long b);
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    bool succ(const WeightVector& q) const { return p1 * q.p2 > q.p1 * p2; }
};

struct NewtonFace {
    WeightVector P;
    long long d = 0;  // d(P; f)
    std::vector<std::pair<int, int>> support;  // lattice points on the face
};

struct NewtonData {
    std::vector<std::pair<int, int>> boundary_vertices;  // left (high nu) to right
    std::vector<NewtonFace> faces;                       // P_1 > ... > P_N
    bool u_convenient = false;
    bool v_convenient = false;
    bool semiholomorphic = false;
    bool radially_weighted_homogeneous = false;
};

NewtonData newton(const MixedPoly& f);

long long weight_degree(const MixedPoly& f, WeightVector P);  // d(P; f)
MixedPoly face_function(const MixedPoly& f, WeightVector P);
MixedPoly face_function(const MixedPoly& f, std::pair<int, int> vertex);

// f(u,v,vbar) = r^{k s + nu_offset} g(u/r^k, e^{it}): coefficient c e^{i l t}
// of u^j becomes c u^j v^{(e+l)/2} vbar^{(e-l)/2} with e = k(s-j)/divisor +
// nu_offset.  divisor > 1 encodes the 2^K-symmetric substitution (weight
// vector (k, divisor)); it requires divisor | (s-j) on every nonzero A_j.
// Throws InadmissibleK when a term violates the size/parity admissibility.
MixedPoly from_loop(const LoopPoly& g, int k, int nu_offset = 0, int divisor = 1);

// Smallest admissible k of each parity for from_loop at the given offset
// (0 entries mean no such k exists).
std::pair<int, int> admissible_k(const LoopPoly& g, int nu_offset = 0, int divisor = 1);

// Loop of mixed u-polynomials: map (mu1, mu2) -> TrigPoly in t.
struct GLoop {
    std::map<std::pair<int, int>, TrigPoly> coeffs;
    cplx eval(cplx u, double t) const;
    bool holomorphic() const;
    LoopPoly as_loop() const;  // requires holomorphic()
};

GLoop g_loop(const MixedPoly& face, WeightVector P);
GLoop h_loop(const MixedPoly& face, WeightVector P);  // roles of u and v swapped

// Semiholomorphic shorthands; throw on ubar (resp. vbar) terms.
LoopPoly g_polynomial(const MixedPoly& face, WeightVector P);
LoopPoly h_polynomial(const MixedPoly& face, WeightVector P);

// Aligned sum of radially weighted homogeneous parts, ordered by strictly
// decreasing weight vectors, each consecutive pair sharing its boundary
// vertex terms exactly (which are counted once in the result).
MixedPoly glue(const std::vector<MixedPoly>& parts);

MixedPoly multiply_by_u(const MixedPoly& f);
MixedPoly multiply_by_v(const MixedPoly& f);

enum class MixedSymmetry { TauU, TauV, Tau1 };  // v -> -v, u -> -u, both

MixedPoly apply_symmetry(const MixedPoly& f, MixedSymmetry tau);
std::optional<cplx> symmetry_sign(const MixedPoly& f, MixedSymmetry tau);

Certificate is_nice(const MixedPoly& f);

Certificate check_inner_nondegenerate(const MixedPoly& f);
// Implemented in pfibered.cpp (delegates semiholomorphic faces to the
// arg-fibration certificate).
Certificate check_strongly_inner_nondegenerate(const MixedPoly& f);

// Mixed criticality defect at a point: distance of the Wirtinger gradient
// from the closest rank-dropping configuration f_u = beta conj(f_ubar),
// f_v = beta conj(f_vbar), |beta| = 1.
double criticality_defect(const std::array<cplx, 4>& grad);

// Shared sweep machinery (also used by the strong check in pfibered).
namespace detail {

MixedPoly wirtinger(const MixedPoly& f, int var);  // 0:u 1:ubar 2:v 3:vbar

// Torus |u|=|v|=1 cross-section sweep for critical points of a face
// function; include_value adds |fp| to the merit (restriction to V_fp).
Certificate critical_sweep(const MixedPoly& fp, bool include_value, const std::string& name);

// Circle sweep on the axis u=0 (axis 0) or v=0 (axis 1).
Certificate axis_sweep(const MixedPoly& fp, int axis, bool include_value,
                       const std::string& name);

Certificate combine(const std::string& name, const std::vector<Certificate>& parts);

}  // namespace detail

}  // namespace singforge

#endif
