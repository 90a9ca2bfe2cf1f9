#include "singforge/mixedpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "singforge/errors.hpp"

namespace singforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx ipow(cplx z, int e) {
    cplx acc(1.0, 0.0);
    for (int i = 0; i < e; ++i) acc *= z;
    return acc;
}
}  // namespace

MixedPoly::MixedPoly(std::map<ExpQuad, cplx> terms) : terms_(std::move(terms)) {
    for (const auto& [e, c] : terms_) {
        (void)c;
        for (int x : e)
            if (x < 0) throw Error("mixed: negative exponent");
    }
    trim();
}

MixedPoly MixedPoly::monomial(int mu1, int mu2, int nu1, int nu2, cplx c) {
    return MixedPoly({{{mu1, mu2, nu1, nu2}, c}});
}

void MixedPoly::trim() {
    double mx = 0.0;
    for (const auto& [e, c] : terms_) {
        (void)e;
        mx = std::max(mx, std::abs(c));
    }
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (std::abs(it->second) <= mx * kDropTol) ? terms_.erase(it) : std::next(it);
}

bool MixedPoly::is_semiholomorphic() const {
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (e[1] != 0) return false;
    }
    return true;
}

double MixedPoly::max_abs_coeff() const {
    double mx = 0.0;
    for (const auto& [e, c] : terms_) {
        (void)e;
        mx = std::max(mx, std::abs(c));
    }
    return mx;
}

std::set<std::pair<int, int>> MixedPoly::support() const {
    std::set<std::pair<int, int>> s;
    for (const auto& [e, c] : terms_) {
        (void)c;
        s.insert({e[0] + e[1], e[2] + e[3]});
    }
    return s;
}

cplx MixedPoly::eval(cplx u, cplx v) const {
    cplx acc(0.0, 0.0);
    const cplx ub = std::conj(u), vb = std::conj(v);
    for (const auto& [e, c] : terms_)
        acc += c * ipow(u, e[0]) * ipow(ub, e[1]) * ipow(v, e[2]) * ipow(vb, e[3]);
    return acc;
}

std::array<cplx, 4> MixedPoly::gradient(cplx u, cplx v) const {
    std::array<cplx, 4> g{};
    const cplx ub = std::conj(u), vb = std::conj(v);
    for (const auto& [e, c] : terms_) {
        const cplx pu = ipow(u, e[0]), pub = ipow(ub, e[1]);
        const cplx pv = ipow(v, e[2]), pvb = ipow(vb, e[3]);
        if (e[0] > 0) g[0] += c * double(e[0]) * ipow(u, e[0] - 1) * pub * pv * pvb;
        if (e[1] > 0) g[1] += c * double(e[1]) * pu * ipow(ub, e[1] - 1) * pv * pvb;
        if (e[2] > 0) g[2] += c * double(e[2]) * pu * pub * ipow(v, e[2] - 1) * pvb;
        if (e[3] > 0) g[3] += c * double(e[3]) * pu * pub * pv * ipow(vb, e[3] - 1);
    }
    return g;
}

MixedPoly operator+(const MixedPoly& a, const MixedPoly& b) {
    auto t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] += c;
    return MixedPoly(std::move(t));
}

MixedPoly operator-(const MixedPoly& a, const MixedPoly& b) {
    auto t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] -= c;
    return MixedPoly(std::move(t));
}

MixedPoly operator*(const MixedPoly& a, const MixedPoly& b) {
    std::map<ExpQuad, cplx> t;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            t[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}] += ca * cb;
    return MixedPoly(std::move(t));
}

MixedPoly operator*(cplx s, const MixedPoly& a) {
    auto t = a.terms_;
    for (auto& [e, c] : t) {
        (void)e;
        c *= s;
    }
    return MixedPoly(std::move(t));
}

bool MixedPoly::nearly_equal(const MixedPoly& other, double tol) const {
    MixedPoly d = *this - other;
    for (const auto& [e, c] : d.terms_) {
        (void)e;
        if (std::abs(c) > tol) return false;
    }
    return true;
}

WeightVector::WeightVector(long long a, long long b) : p1(a), p2(b) {
    if (p1 <= 0 || p2 <= 0) throw Error("weight vector entries must be positive");
    const long long g = std::gcd(p1, p2);
    p1 /= g;
    p2 /= g;
}

NewtonData newton(const MixedPoly& f) {
    if (f.is_zero()) throw Error("newton: zero polynomial");
    NewtonData nd;
    const auto supp = f.support();

    // Minimal nu for each mu, then dominance filter (strictly decreasing b).
    std::map<int, int> minb;
    for (const auto& [a, b] : supp) {
        auto it = minb.find(a);
        if (it == minb.end() || b < it->second) minb[a] = b;
    }
    std::vector<std::pair<int, int>> pts;
    for (const auto& [a, b] : minb) {
        if (!pts.empty() && b >= pts.back().second) continue;
        pts.push_back({a, b});
    }

    // Monotone chain; collinear middle points are not vertices.
    std::vector<std::pair<int, int>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& A = hull[hull.size() - 2];
            const auto& B = hull[hull.size() - 1];
            const long long cross =
                static_cast<long long>(B.first - A.first) * (p.second - B.second) -
                static_cast<long long>(B.second - A.second) * (p.first - B.first);
            if (cross <= 0) hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    nd.boundary_vertices = hull;

    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        const auto& A = hull[i];
        const auto& B = hull[i + 1];
        NewtonFace face;
        face.P = WeightVector(A.second - B.second, B.first - A.first);
        face.d = face.P.p1 * A.first + face.P.p2 * A.second;
        for (const auto& q : supp)
            if (face.P.p1 * q.first + face.P.p2 * q.second == face.d) face.support.push_back(q);
        nd.faces.push_back(std::move(face));
    }

    nd.u_convenient = hull.back().second == 0;
    nd.v_convenient = hull.front().first == 0;
    nd.semiholomorphic = f.is_semiholomorphic();
    if (nd.faces.size() == 1) {
        nd.radially_weighted_homogeneous = true;
        for (const auto& q : supp)
            if (nd.faces[0].P.p1 * q.first + nd.faces[0].P.p2 * q.second != nd.faces[0].d)
                nd.radially_weighted_homogeneous = false;
    } else if (nd.faces.empty()) {
        nd.radially_weighted_homogeneous = supp.size() == 1;
    }
    return nd;
}

long long weight_degree(const MixedPoly& f, WeightVector P) {
    if (f.is_zero()) throw Error("weight_degree: zero polynomial");
    long long d = std::numeric_limits<long long>::max();
    for (const auto& [e, c] : f.terms()) {
        (void)c;
        d = std::min(d, P.p1 * (e[0] + e[1]) + P.p2 * (e[2] + e[3]));
    }
    return d;
}

MixedPoly face_function(const MixedPoly& f, WeightVector P) {
    const long long d = weight_degree(f, P);
    std::map<ExpQuad, cplx> t;
    for (const auto& [e, c] : f.terms())
        if (P.p1 * (e[0] + e[1]) + P.p2 * (e[2] + e[3]) == d) t[e] = c;
    return MixedPoly(std::move(t));
}

MixedPoly face_function(const MixedPoly& f, std::pair<int, int> vertex) {
    std::map<ExpQuad, cplx> t;
    for (const auto& [e, c] : f.terms())
        if (e[0] + e[1] == vertex.first && e[2] + e[3] == vertex.second) t[e] = c;
    return MixedPoly(std::move(t));
}

std::pair<int, int> admissible_k(const LoopPoly& g, int nu_offset, int divisor) {
    const int s = g.degree();
    int result[2] = {0, 0};  // [0]: even k, [1]: odd k
    for (int parity = 0; parity < 2; ++parity) {
        bool feasible = true;
        int lo = 1;
        for (int j = 0; j <= s && feasible; ++j) {
            for (const auto& [l, c] : g.coeff(j).coeffs()) {
                (void)c;
                if ((s - j) % divisor != 0) {
                    feasible = false;
                    break;
                }
                const int d = (s - j) / divisor;
                if (d == 0) {
                    if (nu_offset < std::abs(l) || (nu_offset + l) % 2 != 0) feasible = false;
                    continue;
                }
                // size: k*d + nu_offset >= |l|
                const int need = std::abs(l) - nu_offset;
                if (need > 0) lo = std::max(lo, (need + d - 1) / d);
                // parity of k*d + nu_offset + l
                const int p = ((nu_offset + l) % 2 + 2) % 2;
                if (d % 2 == 0) {
                    if (p != 0) feasible = false;
                } else if (p != parity) {
                    feasible = false;
                }
            }
        }
        if (!feasible) continue;
        int k = lo;
        if (k % 2 != parity) ++k;
        if (parity == 0 && k < 2) k = 2;
        result[parity] = k;
    }
    return {result[0], result[1]};
}

MixedPoly from_loop(const LoopPoly& g, int k, int nu_offset, int divisor) {
    if (k < 1) throw Error("from_loop: k must be positive");
    if (nu_offset < 0) throw Error("from_loop: nu_offset must be nonnegative");
    if (divisor < 1) throw Error("from_loop: divisor must be positive");
    const int s = g.degree();
    std::map<ExpQuad, cplx> t;
    for (int j = 0; j <= s; ++j) {
        for (const auto& [l, c] : g.coeff(j).coeffs()) {
            if ((s - j) % divisor != 0) {
                auto [ke, ko] = admissible_k(g, nu_offset, divisor);
                throw InadmissibleK(j, l, ke, ko);
            }
            const int e = k * ((s - j) / divisor) + nu_offset;
            if (e < std::abs(l) || (e + l) % 2 != 0) {
                auto [ke, ko] = admissible_k(g, nu_offset, divisor);
                throw InadmissibleK(j, l, ke, ko);
            }
            t[{j, 0, (e + l) / 2, (e - l) / 2}] += c;
        }
    }
    return MixedPoly(std::move(t));
}

cplx GLoop::eval(cplx u, double t) const {
    cplx acc(0.0, 0.0);
    const cplx ub = std::conj(u);
    for (const auto& [e, a] : coeffs) acc += a.eval(t) * ipow(u, e.first) * ipow(ub, e.second);
    return acc;
}

bool GLoop::holomorphic() const {
    for (const auto& [e, a] : coeffs) {
        (void)a;
        if (e.second != 0) return false;
    }
    return true;
}

LoopPoly GLoop::as_loop() const {
    if (!holomorphic()) throw Error("g-loop has conjugate terms; not a genuine loop polynomial");
    int deg = 0;
    for (const auto& [e, a] : coeffs) {
        (void)a;
        deg = std::max(deg, e.first);
    }
    std::vector<TrigPoly> c(deg + 1);
    for (const auto& [e, a] : coeffs) c[e.first] = c[e.first] + a;
    return LoopPoly(std::move(c));
}

namespace {
GLoop radial_collapse(const MixedPoly& face, WeightVector P, bool swap_roles) {
    const long long d = weight_degree(face, P);
    GLoop gl;
    for (const auto& [e, c] : face.terms()) {
        const long long alpha = P.p1 * (e[0] + e[1]) + P.p2 * (e[2] + e[3]);
        if (alpha != d)
            throw NonIntegerFrequency("face function contains off-face terms for this weight");
        if (swap_roles)
            gl.coeffs[{e[2], e[3]}] = gl.coeffs[{e[2], e[3]}] + TrigPoly::harmonic(e[0] - e[1], c);
        else
            gl.coeffs[{e[0], e[1]}] = gl.coeffs[{e[0], e[1]}] + TrigPoly::harmonic(e[2] - e[3], c);
    }
    return gl;
}
}  // namespace

GLoop g_loop(const MixedPoly& face, WeightVector P) { return radial_collapse(face, P, false); }

GLoop h_loop(const MixedPoly& face, WeightVector P) { return radial_collapse(face, P, true); }

LoopPoly g_polynomial(const MixedPoly& face, WeightVector P) { return g_loop(face, P).as_loop(); }

LoopPoly h_polynomial(const MixedPoly& face, WeightVector P) { return h_loop(face, P).as_loop(); }

MixedPoly glue(const std::vector<MixedPoly>& parts) {
    if (parts.empty()) throw Error("glue: no parts");
    std::vector<NewtonData> nds;
    for (const auto& p : parts) {
        NewtonData nd = newton(p);
        if (nd.faces.size() != 1 || !nd.radially_weighted_homogeneous)
            throw Error("glue: each part must be radially weighted homogeneous with one face");
        nds.push_back(std::move(nd));
    }
    MixedPoly result = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& prev = nds[i - 1];
        const auto& cur = nds[i];
        if (!prev.faces[0].P.succ(cur.faces[0].P))
            throw WeightOrderViolation("glue: weight vectors must strictly decrease");
        const auto shared = prev.boundary_vertices.back();
        if (cur.boundary_vertices.front() != shared)
            throw VertexMismatch("glue: consecutive parts do not meet at a common vertex");
        const MixedPoly va = face_function(parts[i - 1], shared);
        const MixedPoly vb = face_function(parts[i], shared);
        const double tol =
            1e-9 * (1.0 + std::max(parts[i - 1].max_abs_coeff(), parts[i].max_abs_coeff()));
        if (!va.nearly_equal(vb, tol))
            throw VertexMismatch("glue: shared vertex terms differ");
        result = result + parts[i] - vb;
    }
    return result;
}

MixedPoly multiply_by_u(const MixedPoly& f) {
    std::map<ExpQuad, cplx> t;
    for (const auto& [e, c] : f.terms()) t[{e[0] + 1, e[1], e[2], e[3]}] = c;
    return MixedPoly(std::move(t));
}

MixedPoly multiply_by_v(const MixedPoly& f) {
    std::map<ExpQuad, cplx> t;
    for (const auto& [e, c] : f.terms()) t[{e[0], e[1], e[2] + 1, e[3]}] = c;
    return MixedPoly(std::move(t));
}

namespace {
int term_sign(const ExpQuad& e, MixedSymmetry tau) {
    int exp = 0;
    if (tau == MixedSymmetry::TauU || tau == MixedSymmetry::Tau1) exp += e[2] + e[3];
    if (tau == MixedSymmetry::TauV || tau == MixedSymmetry::Tau1) exp += e[0] + e[1];
    return exp % 2 == 0 ? 1 : -1;
}
}  // namespace

MixedPoly apply_symmetry(const MixedPoly& f, MixedSymmetry tau) {
    auto t = f.terms();
    for (auto& [e, c] : t) c *= term_sign(e, tau);
    return MixedPoly(std::move(t));
}

std::optional<cplx> symmetry_sign(const MixedPoly& f, MixedSymmetry tau) {
    if (f.is_zero()) return cplx(1.0, 0.0);
    int sign = term_sign(f.terms().begin()->first, tau);
    for (const auto& [e, c] : f.terms()) {
        (void)c;
        if (term_sign(e, tau) != sign) return std::nullopt;
    }
    return cplx(static_cast<double>(sign), 0.0);
}

double criticality_defect(const std::array<cplx, 4>& g) {
    const cplx c = g[0] * g[1] + g[2] * g[3];
    const double sq = std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]) + std::norm(g[3]);
    return std::sqrt(std::max(0.0, sq - 2.0 * std::abs(c)));
}

namespace detail {

MixedPoly wirtinger(const MixedPoly& f, int var) {
    std::map<ExpQuad, cplx> t;
    for (const auto& [e, c] : f.terms()) {
        if (e[var] == 0) continue;
        ExpQuad d = e;
        --d[var];
        t[d] += c * static_cast<double>(e[var]);
    }
    return MixedPoly(std::move(t));
}

namespace {

// sum_c |c| (|mu1-mu2| + |nu1-nu2|): Lipschitz bound on the torus in (phi, t).
double angular_lipschitz(const MixedPoly& p) {
    double L = 0.0;
    for (const auto& [e, c] : p.terms())
        L += std::abs(c) * (std::abs(e[0] - e[1]) + std::abs(e[2] - e[3]));
    return L;
}

double coeff_sum(const MixedPoly& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) {
        (void)e;
        s += std::abs(c);
    }
    return s;
}

// Values of p at (e^{i phi_a}, e^{i t_b}) for the uniform n x n grid,
// row-major in a.
std::vector<cplx> torus_values(const MixedPoly& p, int n) {
    std::vector<cplx> vals(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
    std::vector<cplx> E(n);
    for (int k = 0; k < n; ++k) E[k] = std::polar(1.0, kTwoPi * k / n);
    for (const auto& [e, c] : p.terms()) {
        const int wu = ((e[0] - e[1]) % n + n) % n;
        const int wv = ((e[2] - e[3]) % n + n) % n;
        int iu = 0;
        for (int a = 0; a < n; ++a) {
            const cplx row = c * E[iu];
            iu += wu;
            if (iu >= n) iu -= n;
            cplx* dst = vals.data() + static_cast<std::size_t>(a) * n;
            int iv = 0;
            for (int b = 0; b < n; ++b) {
                dst[b] += row * E[iv];
                iv += wv;
                if (iv >= n) iv -= n;
            }
        }
    }
    return vals;
}

// Pattern-search minimization of a smooth nonnegative function on the torus.
std::pair<std::array<double, 2>, double> pattern_min(
    const std::function<double(double, double)>& fn, double phi, double t, double span) {
    double best = fn(phi, t);
    for (int round = 0; round < 220; ++round) {
        bool improved = false;
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                const double val = fn(phi + dx * span, t + dy * span);
                if (val < best) {
                    best = val;
                    phi += dx * span;
                    t += dy * span;
                    improved = true;
                }
            }
        if (!improved) span *= 0.5;
        if (span < 1e-17) break;
    }
    return {{phi, t}, best};
}

}  // namespace

Certificate critical_sweep(const MixedPoly& fp, bool include_value, const std::string& name) {
    if (fp.is_zero()) return Certificate::failed(name, 0.0, 0.0, 0, "zero face function");
    std::array<MixedPoly, 4> grads = {wirtinger(fp, 0), wirtinger(fp, 1), wirtinger(fp, 2),
                                      wirtinger(fp, 3)};
    double L = angular_lipschitz(grads[0]) + angular_lipschitz(grads[1]) +
               angular_lipschitz(grads[2]) + angular_lipschitz(grads[3]);
    if (include_value) L += angular_lipschitz(fp);
    const double scale = coeff_sum(fp);

    double min_merit = 0.0;
    double slack = 0.0;
    int used_grid = 0;
    std::size_t arg_min = 0;
    for (int n : {256, 512, 1024}) {
        std::vector<cplx> fv;
        if (include_value) fv = torus_values(fp, n);
        std::array<std::vector<cplx>, 4> gv;
        for (int i = 0; i < 4; ++i) gv[i] = torus_values(grads[i], n);
        min_merit = std::numeric_limits<double>::infinity();
        const std::size_t total = static_cast<std::size_t>(n) * n;
        for (std::size_t idx = 0; idx < total; ++idx) {
            double m = criticality_defect({gv[0][idx], gv[1][idx], gv[2][idx], gv[3][idx]});
            if (include_value) m = std::max(m, std::abs(fv[idx]));
            if (m < min_merit) {
                min_merit = m;
                arg_min = idx;
            }
        }
        slack = L * (kTwoPi / n) / 2.0;
        used_grid = n;
        if (min_merit - slack > 0.0)
            return Certificate::passed(name, min_merit - slack, slack, n);
    }

    // Could not certify; hunt for a converged witness near the grid minimum.
    auto merit = [&](double phi, double t) {
        const cplx u = std::polar(1.0, phi), v = std::polar(1.0, t);
        double m = criticality_defect(fp.gradient(u, v));
        if (include_value) m = std::max(m, std::abs(fp.eval(u, v)));
        return m;
    };
    const double phi0 = kTwoPi * (arg_min / used_grid) / used_grid;
    const double t0 = kTwoPi * (arg_min % used_grid) / used_grid;
    auto [pt, val] = pattern_min(merit, phi0, t0, kTwoPi / used_grid);
    if (val < 1e-10 * (1.0 + scale)) {
        Certificate c = Certificate::failed(name, min_merit - slack, slack, used_grid,
                                            "converged critical witness");
        c.witnesses = {std::polar(1.0, pt[0]), std::polar(1.0, pt[1])};
        return c;
    }
    return Certificate::inconclusive(name, min_merit - slack, slack, used_grid,
                                     "grid margin not certified; refine the grid");
}

namespace {
// Restriction of p to the circle u=0,|v|=1 (axis 0) or |u|=1,v=0 (axis 1),
// as a trigonometric polynomial in the remaining angle.
TrigPoly restrict_axis(const MixedPoly& p, int axis) {
    TrigPoly out;
    for (const auto& [e, c] : p.terms()) {
        if (axis == 0) {
            if (e[0] + e[1] != 0) continue;
            out = out + TrigPoly::harmonic(e[2] - e[3], c);
        } else {
            if (e[2] + e[3] != 0) continue;
            out = out + TrigPoly::harmonic(e[0] - e[1], c);
        }
    }
    return out;
}
}  // namespace

Certificate axis_sweep(const MixedPoly& fp, int axis, bool include_value,
                       const std::string& name) {
    if (fp.is_zero()) return Certificate::failed(name, 0.0, 0.0, 0, "zero face function");
    std::array<TrigPoly, 4> g;
    for (int i = 0; i < 4; ++i) g[i] = restrict_axis(wirtinger(fp, i), axis);
    const TrigPoly a = restrict_axis(fp, axis);
    double L = g[0].deriv_sum() + g[1].deriv_sum() + g[2].deriv_sum() + g[3].deriv_sum();
    if (include_value) L += a.deriv_sum();
    const double scale = coeff_sum(fp);

    auto merit_at = [&](double th) {
        std::array<cplx, 4> grad = {g[0].eval(th), g[1].eval(th), g[2].eval(th), g[3].eval(th)};
        double m = criticality_defect(grad);
        if (include_value) m = std::max(m, std::abs(a.eval(th)));
        return m;
    };

    double min_merit = 0.0, slack = 0.0, arg = 0.0;
    int used_grid = 0;
    for (int n : {512, 1024, 2048}) {
        const double h = kTwoPi / n;
        min_merit = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            const double m = merit_at(k * h);
            if (m < min_merit) {
                min_merit = m;
                arg = k * h;
            }
        }
        slack = L * h / 2.0;
        used_grid = n;
        if (min_merit - slack > 0.0)
            return Certificate::passed(name, min_merit - slack, slack, n);
    }

    double th = arg, span = kTwoPi / used_grid, best = min_merit;
    for (int round = 0; round < 220; ++round) {
        bool improved = false;
        for (int d = -1; d <= 1; d += 2) {
            const double val = merit_at(th + d * span);
            if (val < best) {
                best = val;
                th += d * span;
                improved = true;
            }
        }
        if (!improved) span *= 0.5;
        if (span < 1e-17) break;
    }
    if (best < 1e-10 * (1.0 + scale)) {
        Certificate c = Certificate::failed(name, min_merit - slack, slack, used_grid,
                                            "converged critical witness on the axis");
        c.witnesses = {axis == 0 ? cplx(0.0, 0.0) : std::polar(1.0, th),
                       axis == 0 ? std::polar(1.0, th) : cplx(0.0, 0.0)};
        return c;
    }
    return Certificate::inconclusive(name, min_merit - slack, slack, used_grid,
                                     "axis margin not certified; refine the grid");
}

Certificate combine(const std::string& name, const std::vector<Certificate>& parts) {
    Certificate out;
    out.check = name;
    out.status = Certificate::Status::Pass;
    out.margin = std::numeric_limits<double>::infinity();
    std::ostringstream detail;
    for (const auto& p : parts) {
        const char* st = p.status == Certificate::Status::Pass ? "PASS"
                         : p.status == Certificate::Status::Fail ? "FAIL"
                                                                 : "INCONCLUSIVE";
        detail << p.check << "=" << st << "(margin=" << p.margin << ",slack=" << p.slack << "); ";
        if (p.margin < out.margin) {
            out.margin = p.margin;
            out.slack = p.slack;
        }
        out.grid = std::max(out.grid, p.grid);
        if (p.status == Certificate::Status::Fail) {
            if (out.status != Certificate::Status::Fail) out.witnesses = p.witnesses;
            out.status = Certificate::Status::Fail;
        } else if (p.status == Certificate::Status::Inconclusive &&
                   out.status == Certificate::Status::Pass) {
            out.status = Certificate::Status::Inconclusive;
        }
    }
    if (parts.empty()) out.margin = 1e30;
    out.detail = detail.str();
    return out;
}

}  // namespace detail

Certificate is_nice(const MixedPoly& f) {
    const NewtonData nd = newton(f);
    if (nd.faces.size() <= 1)
        return Certificate::passed("is_nice", 1e30, 0.0, 0);
    std::vector<Certificate> parts;
    for (std::size_t i = 1; i + 1 < nd.boundary_vertices.size(); ++i) {
        const auto vert = nd.boundary_vertices[i];
        const MixedPoly fd = face_function(f, vert);
        const std::string name = "nice_vertex(" + std::to_string(vert.first) + "," +
                                 std::to_string(vert.second) + ")";
        if (fd.terms().size() == 1) {
            const double c = std::abs(fd.terms().begin()->second);
            parts.push_back(Certificate::passed(name, c, 0.0, 0));
            continue;
        }
        // |f_Delta| = R^a r^b |Phi(phi,t)|: certify min |Phi| > 0 on the torus.
        const double L = [&] {
            double s = 0.0;
            for (const auto& [e, c] : fd.terms())
                s += std::abs(c) * (std::abs(e[0] - e[1]) + std::abs(e[2] - e[3]));
            return s;
        }();
        const int n = 512;
        double mn = std::numeric_limits<double>::infinity();
        std::size_t arg_min = 0;
        {
            std::vector<cplx> E(n);
            for (int k = 0; k < n; ++k) E[k] = std::polar(1.0, kTwoPi * k / n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    cplx acc(0.0, 0.0);
                    for (const auto& [e, c] : fd.terms())
                        acc += c * E[(((e[0] - e[1]) * a + (e[2] - e[3]) * b) % n + n) % n];
                    const double m = std::abs(acc);
                    if (m < mn) {
                        mn = m;
                        arg_min = static_cast<std::size_t>(a) * n + b;
                    }
                }
        }
        const double slack = L * (kTwoPi / n) / 2.0;
        if (mn - slack > 0.0) {
            parts.push_back(Certificate::passed(name, mn - slack, slack, n));
            continue;
        }
        auto phi_fn = [&](double phi, double t) { return std::abs(fd.eval(std::polar(1.0, phi), std::polar(1.0, t))); };
        double phi0 = kTwoPi * (arg_min / n) / n, t0 = kTwoPi * (arg_min % n) / n;
        double best = phi_fn(phi0, t0), span = kTwoPi / n;
        for (int round = 0; round < 220; ++round) {
            bool improved = false;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    if (!dx && !dy) continue;
                    const double val = phi_fn(phi0 + dx * span, t0 + dy * span);
                    if (val < best) {
                        best = val;
                        phi0 += dx * span;
                        t0 += dy * span;
                        improved = true;
                    }
                }
            if (!improved) span *= 0.5;
            if (span < 1e-17) break;
        }
        if (best < 1e-10 * (1.0 + fd.max_abs_coeff())) {
            Certificate c = Certificate::failed(name, mn - slack, slack, n,
                                                "vertex function vanishes on the torus");
            c.witnesses = {std::polar(1.0, phi0), std::polar(1.0, t0)};
            parts.push_back(c);
        } else {
            parts.push_back(Certificate::inconclusive(name, mn - slack, slack, n,
                                                      "torus margin not certified"));
        }
    }
    return detail::combine("is_nice", parts);
}

namespace {

// Reduce a face's loop polynomial by its structural power of u (terms below
// the lowest stored u-degree are identically zero).
LoopPoly strip_zero_roots(const GLoop& gl) {
    int m = std::numeric_limits<int>::max(), deg = 0;
    for (const auto& [e, a] : gl.coeffs) {
        (void)a;
        m = std::min(m, e.first);
        deg = std::max(deg, e.first);
    }
    std::vector<TrigPoly> c(deg - m + 1);
    for (const auto& [e, a] : gl.coeffs) c[e.first - m] = c[e.first - m] + a;
    return LoopPoly(std::move(c));
}

}  // namespace

Certificate check_inner_nondegenerate(const MixedPoly& f) {
    const NewtonData nd = newton(f);
    std::vector<Certificate> parts;
    const std::size_t N = nd.faces.size();

    for (std::size_t i = 0; i < N; ++i) {
        const MixedPoly fp = face_function(f, nd.faces[i].P);
        const std::string tag = "face_P" + std::to_string(i + 1);
        if (fp.is_semiholomorphic()) {
            try {
                const GLoop gl = g_loop(fp, nd.faces[i].P);
                // P_1's domain includes u=0, so keep structural zero roots
                // there; interior faces exclude the u=0 axis.
                const LoopPoly g = (i == 0) ? gl.as_loop() : strip_zero_roots(gl);
                auto [m, cert] = simple_root_margin(g);
                (void)m;
                cert.check = tag + "_simple_roots";
                parts.push_back(std::move(cert));
            } catch (const Error& err) {
                parts.push_back(Certificate::failed(tag + "_simple_roots", 0.0, 0.0, 0,
                                                    err.what()));
            }
        } else {
            parts.push_back(detail::critical_sweep(fp, true, tag + "_torus"));
        }
        if (i == 0) parts.push_back(detail::axis_sweep(fp, 0, true, tag + "_u_axis"));
        if (i + 1 == N) parts.push_back(detail::axis_sweep(fp, 1, true, tag + "_v_axis"));
    }

    if (N == 0) {
        // Single-vertex boundary: the whole polynomial is its own face part.
        parts.push_back(detail::critical_sweep(f, true, "vertex_torus"));
        parts.push_back(detail::axis_sweep(f, 0, true, "vertex_u_axis"));
        parts.push_back(detail::axis_sweep(f, 1, true, "vertex_v_axis"));
    }

    for (std::size_t i = 1; i + 1 < nd.boundary_vertices.size(); ++i) {
        const auto vert = nd.boundary_vertices[i];
        const MixedPoly fd = face_function(f, vert);
        const std::string tag = "vertex(" + std::to_string(vert.first) + "," +
                                std::to_string(vert.second) + ")";
        if (fd.terms().size() == 1) {
            // A single mixed monomial never vanishes on (C*)^2, so the
            // variety-restricted condition is vacuous.
            parts.push_back(Certificate::passed(tag, std::abs(fd.terms().begin()->second), 0.0, 0));
        } else {
            parts.push_back(detail::critical_sweep(fd, true, tag));
        }
    }
    return detail::combine("inner_nondegenerate", parts);
}

}  // namespace singforge
