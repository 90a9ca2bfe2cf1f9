#ifndef SINGFORGE_PFIBERED_HPP
#define SINGFORGE_PFIBERED_HPP

#include <string>
#include <utility>
#include <vector>

#include "singforge/braid.hpp"
#include "singforge/certificate.hpp"
#include "singforge/looppoly.hpp"
#include "singforge/mixedpoly.hpp"
#include "singforge/trigpoly.hpp"

namespace singforge {

// A braid loop together with O-multiplicity m and coefficient a(t), the data
// of a candidate arg(a(t) u^m g) fibration.  The coefficient must be
// certifiably nowhere zero.  Optional per-component multiplicities weight the
// strand factors (u - u_{i,j})^{m_i}.
struct PFiberData {
    LoopPoly braid_loop;
    int o_mult = 0;
    TrigPoly coefficient = TrigPoly::constant(cplx(1.0, 0.0));
    std::vector<int> multiplicities;  // empty = plain
};

struct PFiberCertificate {
    bool pass = false;
    double margin = 0.0;  // min over grid/branch of |d arg(a v_j)/dt|, net of slack
    double slack = 0.0;
    int grid = 0;
    std::vector<double> branch_windings;  // winding of v_j around 0 over one period
    Certificate base;                     // full detail
};

// Nonvanishing certificate for a trigonometric polynomial (grid minimum with
// derivative-sum Lipschitz slack).
Certificate nonvanishing(const TrigPoly& a, int grid = 4096);

// The full loop polynomial a(t) u^m g-tilde(u, e^{it}) used by the
// certification (with weighted strand factors if multiplicities are set).
LoopPoly full_loop(const PFiberData& data);

// Nonzero critical values of u -> a(t) u^m g(u, e^{it}) at a fixed t.  For
// m = 0 a critical point at u = 0 is kept (its value is a(t) g(0, t)).
std::vector<cplx> critical_values(const PFiberData& data, double t);

struct ArgFibResult {
    Certificate cert;
    std::vector<double> windings;
};

// Core check: all critical-value branches V_j(t) of arg(G) keep
// |d arg V_j/dt| certifiably away from 0.  Throws BranchCollision when a
// critical value meets 0.
ArgFibResult arg_fibration(const LoopPoly& G, const std::string& name);

PFiberCertificate certify(const PFiberData& data);

// Smallest |n| such that a(t) = e^{int} makes certify pass, with the
// resulting certificate.
std::pair<int, PFiberCertificate> minimal_coefficient_speed(const LoopPoly& g, int m);

struct MinimalPowerResult {
    int bound = 0;     // conservative q: all p > q certify
    int observed = 0;  // smallest p that actually certifies (scan)
    PFiberCertificate at_bound_plus_1;
};

// Analytic power bound: requires g plain P-fibered (constant coefficient).
MinimalPowerResult minimal_power(const LoopPoly& g, int m, const TrigPoly& a);

struct CompatReport {
    bool ok = false;
    std::string detail;  // first failed condition, or "ok"
    std::vector<PFiberCertificate> certs;
};

// Checks the O-multiplicity ladder m_i = sum_{j<i} s_j, a_N = 1, the
// coefficient recursion a_{i-1} = b_i a_i, and that every member certifies.
CompatReport verify_compatible(const std::vector<PFiberData>& seq);

struct RealizeResult {
    MixedPoly poly;
    std::vector<int> ks;         // chosen weights (k_1 > ... > k_N)
    Certificate strong;          // check_strongly_inner_nondegenerate(poly)
    std::vector<Certificate> face_certs;
};

// Builds the semiholomorphic polynomial with one face per sequence member
// (weights chosen minimal admissible, strictly decreasing) and certifies it.
RealizeResult realize(const std::vector<PFiberData>& seq);

struct PropositionTResult {
    int M = 0;       // all m > M certify
    int used_m = 0;  // = M + 1, the realized instance
    CompatReport report;
    MixedPoly poly;
};

// Torus-cabled square construction: B^2 with coefficient -e^{2imt} against a
// one-strand circle of speed 2m; returns the threshold M and the realized
// two-face polynomial for m = M + 1.
PropositionTResult proposition_T(const BraidWord& B);

}  // namespace singforge

#endif
