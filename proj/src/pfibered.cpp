#include "singforge/pfibered.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "singforge/errors.hpp"
#include "singforge/roots.hpp"

namespace singforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double loop_scale(const LoopPoly& g) {
    double s = 0.0;
    for (const auto& a : g.coeffs()) s += a.coeff_sum();
    return s;
}

int structural_low_degree(const LoopPoly& G) {
    for (int j = 0; j <= G.degree(); ++j)
        if (!G.coeff(j).is_zero()) return j;
    return G.degree();
}

// Loop of nonzero critical points of u -> G(u, e^{it}): for structural
// lowest degree m >= 1 the root u=0 of the derivative is split off exactly;
// for m = 0 the plain derivative is used (u=0 may be a genuine critical
// point then).
LoopPoly critical_loop(const LoopPoly& G, int m) {
    std::vector<TrigPoly> d;
    const int base = std::max(m, 1);
    for (int j = base; j <= G.degree(); ++j)
        d.push_back(cplx(static_cast<double>(j), 0.0) * G.coeff(j));
    return LoopPoly(std::move(d));
}

struct DargData {
    int n = 0;                              // grid intervals
    int nb = 0;                             // branches
    std::vector<std::vector<cplx>> roots;   // (n+1) x nb critical points
    std::vector<std::vector<cplx>> V;       // (n+1) x nb critical values
    std::vector<std::vector<double>> darg;  // n x nb
    std::vector<int> perm;                  // V[n][j] continues as V[0][perm[j]]
    std::vector<int> iperm;
    double scale = 0.0;
};

DargData compute_darg(const LoopPoly& G, const LoopPoly& D, int grid) {
    DargData out;
    out.scale = loop_scale(G);
    out.roots = root_grid(D, grid);
    const int n = static_cast<int>(out.roots.size()) - 1;
    const int nb = static_cast<int>(out.roots[0].size());
    out.n = n;
    out.nb = nb;

    double minsep = std::numeric_limits<double>::infinity();
    for (const auto& row : out.roots)
        for (int a = 0; a < nb; ++a)
            for (int b = a + 1; b < nb; ++b)
                minsep = std::min(minsep, std::abs(row[a] - row[b]));
    if (nb > 1 && minsep < 1e-8 * (1.0 + loop_scale(D)))
        throw DegenerateCriticalPoint("critical points collide along the loop");

    out.V.assign(n + 1, std::vector<cplx>(nb));
    for (int i = 0; i <= n; ++i) {
        const double t = kTwoPi * i / n;
        for (int j = 0; j < nb; ++j) {
            out.V[i][j] = G.eval(out.roots[i][j], t);
            if (std::abs(out.V[i][j]) < 1e-9 * (1.0 + out.scale))
                throw BranchCollision("critical value meets 0");
        }
    }

    // Closure permutation of the branches.
    out.perm.assign(nb, 0);
    std::vector<bool> used(nb, false);
    for (int j = 0; j < nb; ++j) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int q = 0; q < nb; ++q) {
            const double d = std::abs(out.roots[n][j] - out.roots[0][q]);
            if (!used[q] && d < bd) {
                bd = d;
                best = q;
            }
        }
        used[best] = true;
        out.perm[j] = best;
    }
    out.iperm.assign(nb, 0);
    for (int j = 0; j < nb; ++j) out.iperm[out.perm[j]] = j;

    auto V_at = [&](int i, int j) {
        while (i < 0) {
            i += n;
            j = out.iperm[j];
        }
        while (i >= n) {
            i -= n;
            j = out.perm[j];
        }
        return out.V[i][j];
    };

    const double h = kTwoPi / n;
    out.darg.assign(n, std::vector<double>(nb));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < nb; ++j) {
            const cplx dv = (-V_at(i + 2, j) + 8.0 * V_at(i + 1, j) - 8.0 * V_at(i - 1, j) +
                             V_at(i - 2, j)) /
                            (12.0 * h);
            out.darg[i][j] = std::imag(std::conj(out.V[i][j]) * dv) / std::norm(out.V[i][j]);
        }
    return out;
}

std::vector<double> branch_windings(const DargData& d) {
    std::vector<double> w(d.nb, 0.0);
    for (int j = 0; j < d.nb; ++j) {
        double acc = 0.0;
        for (int i = 0; i < d.n; ++i) acc += std::arg(d.V[i + 1][j] / d.V[i][j]);
        w[j] = acc / kTwoPi;
    }
    return w;
}

struct DargStats {
    double min_abs = std::numeric_limits<double>::infinity();
    double min_signed = std::numeric_limits<double>::infinity();
    double max_signed = -std::numeric_limits<double>::infinity();
    double max_jump = 0.0;
    bool sign_change = false;
    int arg_i = 0, arg_j = 0;  // location of min |darg|
};

DargStats darg_stats(const DargData& d) {
    DargStats s;
    for (int j = 0; j < d.nb; ++j)
        for (int i = 0; i < d.n; ++i) {
            const double x = d.darg[i][j];
            if (std::abs(x) < s.min_abs) {
                s.min_abs = std::abs(x);
                s.arg_i = i;
                s.arg_j = j;
            }
            s.min_signed = std::min(s.min_signed, x);
            s.max_signed = std::max(s.max_signed, x);
            const double nxt = (i + 1 < d.n) ? d.darg[i + 1][j] : d.darg[0][d.perm[j]];
            s.max_jump = std::max(s.max_jump, std::abs(nxt - x));
            if (x * nxt < 0.0) s.sign_change = true;
        }
    return s;
}

}  // namespace

Certificate nonvanishing(const TrigPoly& a, int grid) {
    const double h = kTwoPi / grid;
    auto vals = a.eval_grid(0.0, h, grid);
    double minv = std::numeric_limits<double>::infinity();
    for (const auto& v : vals) minv = std::min(minv, std::abs(v));
    const double slack = a.deriv_sum() * h / 2.0;
    const double margin = minv - slack;
    return margin > 0.0 ? Certificate::passed("nonvanishing", margin, slack, grid)
                        : Certificate::failed("nonvanishing", margin, slack, grid);
}

LoopPoly full_loop(const PFiberData& data) {
    LoopPoly gt = data.braid_loop;
    if (!data.multiplicities.empty()) {
        const GeometricBraid B = track(gt);
        const auto comps = B.components();
        if (comps.size() != data.multiplicities.size())
            throw Error("full_loop: one multiplicity per closure component required");
        std::vector<int> strand_mult(B.strand_count(), 1);
        int total = 0;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            if (data.multiplicities[c] < 1) throw Error("full_loop: multiplicities must be >= 1");
            for (int j : comps[c]) strand_mult[j] = data.multiplicities[c];
            total += data.multiplicities[c] * static_cast<int>(comps[c].size());
        }
        const int n = B.grid();
        std::vector<std::vector<cplx>> samples(total, std::vector<cplx>(n));
        double scale = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> poly{cplx(1.0, 0.0)};
            for (int j = 0; j < B.strand_count(); ++j)
                for (int rep = 0; rep < strand_mult[j]; ++rep) {
                    std::vector<cplx> next(poly.size() + 1, cplx(0.0, 0.0));
                    for (std::size_t k = 0; k < poly.size(); ++k) {
                        next[k + 1] += poly[k];
                        next[k] -= poly[k] * B.at(j, i);
                    }
                    poly = std::move(next);
                }
            for (int j = 0; j < total; ++j) {
                samples[j][i] = poly[j];
                scale = std::max(scale, std::abs(poly[j]));
            }
        }
        bool done = false;
        for (int mf = 16; mf <= 512 && !done; mf *= 2) {
            try {
                std::vector<TrigPoly> coeffs(total + 1);
                coeffs[total] = TrigPoly::constant(cplx(1.0, 0.0));
                for (int j = 0; j < total; ++j) {
                    double residual = 0.0;
                    coeffs[j] = approximate(samples[j], ParityConstraint::Any,
                                            std::min(mf, n / 2 - 1),
                                            std::numeric_limits<double>::infinity(), &residual);
                    if (residual > 1e-7 * (1.0 + scale)) throw ResidualTooLarge(residual);
                }
                gt = LoopPoly(std::move(coeffs));
                done = true;
            } catch (const ResidualTooLarge&) {
                if (mf * 2 > 512) throw;
            }
        }
    }
    std::vector<TrigPoly> out(data.o_mult + gt.degree() + 1);
    for (int j = 0; j <= gt.degree(); ++j) out[data.o_mult + j] = data.coefficient * gt.coeff(j);
    return LoopPoly(std::move(out));
}

std::vector<cplx> critical_values(const PFiberData& data, double t) {
    const LoopPoly G = full_loop(data);
    const int m = structural_low_degree(G);
    if (m == G.degree()) return {};
    const LoopPoly D = critical_loop(G, m);
    if (D.degree() == 0) return {};
    auto roots = poly_roots(D.coeff_values(t));
    double minsep = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b)
            minsep = std::min(minsep, std::abs(roots[a] - roots[b]));
    if (roots.size() > 1 && minsep < 1e-8 * (1.0 + loop_scale(D)))
        throw DegenerateCriticalPoint("multiple critical point");
    std::vector<cplx> vals;
    vals.reserve(roots.size());
    for (const auto& r : roots) vals.push_back(G.eval(r, t));
    return vals;
}

ArgFibResult arg_fibration(const LoopPoly& G, const std::string& name) {
    const int m = structural_low_degree(G);
    if (m == G.degree()) return {Certificate::passed(name, 1e30, 0.0, 0), {}};
    const LoopPoly D = critical_loop(G, m);
    if (D.degree() == 0) return {Certificate::passed(name, 1e30, 0.0, 0), {}};

    DargData d;
    DargStats s;
    for (int n : {1024, 2048, 4096}) {
        d = compute_darg(G, D, n);
        s = darg_stats(d);
        const double slack = 2.0 * s.max_jump;
        if (!s.sign_change && s.min_abs - slack > 0.0) {
            Certificate c = Certificate::passed(name, s.min_abs - slack, slack, d.n);
            return {std::move(c), branch_windings(d)};
        }
    }
    const double slack = 2.0 * s.max_jump;
    const double scale_darg =
        std::max(std::abs(s.min_signed), std::abs(s.max_signed));
    if (s.sign_change || s.min_abs < 1e-8 * (1.0 + scale_darg)) {
        Certificate c = Certificate::failed(name, s.min_abs - slack, slack, d.n,
                                            "critical-value argument speed reaches 0");
        c.witnesses = {d.roots[s.arg_i][s.arg_j], cplx(kTwoPi * s.arg_i / d.n, 0.0)};
        return {std::move(c), branch_windings(d)};
    }
    Certificate c = Certificate::inconclusive(name, s.min_abs - slack, slack, d.n,
                                              "argument-speed margin not certified");
    return {std::move(c), branch_windings(d)};
}

PFiberCertificate certify(const PFiberData& data) {
    if (!nonvanishing(data.coefficient).pass())
        throw HypothesisFailed("certify: coefficient is not certifiably nonvanishing");
    const LoopPoly G = full_loop(data);
    ArgFibResult r = arg_fibration(G, "pfibered");
    PFiberCertificate out;
    out.pass = r.cert.pass();
    out.margin = r.cert.margin;
    out.slack = r.cert.slack;
    out.grid = r.cert.grid;
    out.branch_windings = std::move(r.windings);
    out.base = std::move(r.cert);
    return out;
}

std::pair<int, PFiberCertificate> minimal_coefficient_speed(const LoopPoly& g, int m) {
    PFiberData plain{g, m, TrigPoly::constant(cplx(1.0, 0.0)), {}};
    const LoopPoly G = full_loop(plain);
    const int mlow = structural_low_degree(G);
    int n_choice = 0;
    if (mlow < G.degree()) {
        const LoopPoly D = critical_loop(G, mlow);
        if (D.degree() > 0) {
            const DargData d = compute_darg(G, D, 1024);
            const DargStats s = darg_stats(d);
            const double eps = 2.0 * s.max_jump + 1e-9;
            // Forbidden coefficient speeds: n in [-max_signed, -min_signed].
            const double lo = -s.max_signed - eps, hi = -s.min_signed + eps;
            for (int a = 0;; ++a) {
                if (a < lo || a > hi) {
                    n_choice = a;
                    break;
                }
                if (-a < lo || -a > hi) {
                    n_choice = -a;
                    break;
                }
            }
        }
    }
    PFiberData chosen{g, m,
                      n_choice == 0 ? TrigPoly::constant(cplx(1.0, 0.0))
                                    : TrigPoly::harmonic(n_choice),
                      {}};
    return {n_choice, certify(chosen)};
}

MinimalPowerResult minimal_power(const LoopPoly& g, int m, const TrigPoly& a) {
    PFiberData plain{g, m, TrigPoly::constant(cplx(1.0, 0.0)), {}};
    PFiberCertificate base = certify(plain);
    if (!base.pass)
        throw HypothesisFailed("minimal_power: loop is not plain P-fibered");
    if (!nonvanishing(a).pass())
        throw HypothesisFailed("minimal_power: coefficient vanishes");

    const LoopPoly G = full_loop(plain);
    const DargData d = compute_darg(G, critical_loop(G, structural_low_degree(G)), 1024);
    const DargStats s = darg_stats(d);
    const double infv = std::max(s.min_abs - 2.0 * s.max_jump, 1e-12);

    // sup |d arg a / dt| on a fine grid with a jump-based allowance.
    double supa = 0.0, prev = 0.0, jump = 0.0;
    const int na = 4096;
    const TrigPoly ad = a.derivative();
    for (int i = 0; i <= na; ++i) {
        const double t = kTwoPi * i / na;
        const cplx av = a.eval(t);
        const double da = std::imag(std::conj(av) * ad.eval(t)) / std::norm(av);
        supa = std::max(supa, std::abs(da));
        if (i > 0) jump = std::max(jump, std::abs(da - prev));
        prev = da;
    }
    supa += 2.0 * jump;

    MinimalPowerResult out;
    // snap near-integer ratios before taking the ceiling so the grid slack
    // cannot push an exact bound up by one
    const double ratio = supa / infv;
    out.bound = (std::abs(ratio - std::round(ratio)) < 1e-5)
                    ? static_cast<int>(std::llround(ratio))
                    : static_cast<int>(std::ceil(ratio));
    out.observed = out.bound + 1;
    for (int p = 1; p <= out.bound + 1; ++p) {
        PFiberData dp{g.substitute_power(p), m, a, {}};
        if (certify(dp).pass) {
            out.observed = p;
            break;
        }
    }
    out.at_bound_plus_1 = certify(PFiberData{g.substitute_power(out.bound + 1), m, a, {}});
    return out;
}

CompatReport verify_compatible(const std::vector<PFiberData>& seq) {
    CompatReport rep;
    if (seq.empty()) {
        rep.detail = "empty sequence";
        return rep;
    }
    const std::size_t N = seq.size();
    int running = 0;
    for (std::size_t i = 0; i < N; ++i) {
        if (seq[i].o_mult != running) {
            rep.detail = "O-multiplicity ladder fails at member " + std::to_string(i + 1) +
                         " (expected " + std::to_string(running) + ")";
            return rep;
        }
        running += seq[i].braid_loop.degree();
    }
    const TrigPoly one = TrigPoly::constant(cplx(1.0, 0.0));
    if (!seq.back().coefficient.nearly_equal(one, 1e-10)) {
        rep.detail = "last coefficient is not identically 1";
        return rep;
    }
    for (std::size_t i = 1; i < N; ++i) {
        const TrigPoly& b = seq[i].braid_loop.coeff(0);
        if (!nonvanishing(b).pass()) {
            rep.detail = "member " + std::to_string(i + 1) +
                         " does not certifiably avoid the braid axis (A_0 vanishes)";
            return rep;
        }
        if (!seq[i - 1].coefficient.nearly_equal(b * seq[i].coefficient, 1e-10)) {
            rep.detail = "coefficient recursion a_" + std::to_string(i) + " = b_" +
                         std::to_string(i + 1) + " a_" + std::to_string(i + 1) + " fails";
            return rep;
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        rep.certs.push_back(certify(seq[i]));
        if (!rep.certs.back().pass) {
            rep.detail = "member " + std::to_string(i + 1) + " is not P-fibered as given";
            return rep;
        }
    }
    rep.ok = true;
    rep.detail = "ok";
    return rep;
}

RealizeResult realize(const std::vector<PFiberData>& seq) {
    CompatReport rep = verify_compatible(seq);
    if (!rep.ok) throw Error("realize: " + rep.detail);
    const std::size_t N = seq.size();

    std::vector<LoopPoly> G;
    G.reserve(N);
    for (const auto& d : seq) G.push_back(full_loop(d));

    std::vector<int> ks(N, 0);
    std::vector<int> tau(N, 0);
    for (std::size_t r = 0; r < N; ++r) {
        const std::size_t i = N - 1 - r;
        if (i + 1 < N) tau[i] = tau[i + 1] + ks[i + 1] * (G[i + 1].degree() - seq[i + 1].o_mult);
        const int lower = (i + 1 < N) ? ks[i + 1] + 1 : 1;
        auto [ke, ko] = admissible_k(G[i], tau[i]);
        int best = 0;
        for (int parity = 0; parity < 2; ++parity) {
            const int base = parity == 0 ? ke : ko;
            if (base == 0) continue;
            int k = std::max(base, lower);
            if (k % 2 != parity) ++k;
            if (best == 0 || k < best) best = k;
        }
        if (best == 0)
            throw WeightSelectionFailed("realize: no admissible weight above " +
                                        std::to_string(lower) + " for face " +
                                        std::to_string(i + 1));
        ks[i] = best;
    }

    std::vector<MixedPoly> parts;
    parts.reserve(N);
    for (std::size_t i = 0; i < N; ++i) parts.push_back(from_loop(G[i], ks[i], tau[i]));

    RealizeResult out{glue(parts), ks, Certificate{}, {}};
    out.strong = check_strongly_inner_nondegenerate(out.poly);
    for (const auto& c : rep.certs) out.face_certs.push_back(c.base);
    return out;
}

PropositionTResult proposition_T(const BraidWord& B) {
    const GeometricBraid Bw = from_word(B);
    const GeometricBraid B2 = power(Bw, 2);
    const LoopPoly g1 = from_braid(B2, SymmetryTag::u_even());
    const int s = g1.degree();

    // Branch argument speeds of the coefficient-free loop are m-independent;
    // a(t) = -e^{2imt} contributes exactly +2m, so the threshold is the
    // largest branch speed deficit.
    double sup_neg = 0.0;
    const int mlow = structural_low_degree(g1);
    if (mlow < g1.degree()) {
        const LoopPoly D = critical_loop(g1, mlow);
        if (D.degree() > 0) {
            const DargData d = compute_darg(g1, D, 1024);
            const DargStats st = darg_stats(d);
            sup_neg = -st.min_signed + 2.0 * st.max_jump;
        }
    }
    PropositionTResult out;
    out.M = std::max(0, static_cast<int>(std::floor(sup_neg / 2.0 + 1e-12)));
    out.used_m = out.M + 1;

    const TrigPoly a1 = TrigPoly::harmonic(2 * out.used_m, cplx(-1.0, 0.0));
    const LoopPoly circle({TrigPoly::harmonic(2 * out.used_m, cplx(-1.0, 0.0)),
                           TrigPoly::constant(cplx(1.0, 0.0))});
    const std::vector<PFiberData> seq = {
        PFiberData{g1, 0, a1, {}},
        PFiberData{circle, s, TrigPoly::constant(cplx(1.0, 0.0)), {}}};
    out.report = verify_compatible(seq);
    out.poly = realize(seq).poly;
    return out;
}

Certificate check_strongly_inner_nondegenerate(const MixedPoly& f) {
    const NewtonData nd = newton(f);
    std::vector<Certificate> parts;
    const std::size_t N = nd.faces.size();

    for (std::size_t i = 0; i < N; ++i) {
        const MixedPoly fp = face_function(f, nd.faces[i].P);
        const std::string tag = "face_P" + std::to_string(i + 1);
        if (fp.is_semiholomorphic()) {
            try {
                const LoopPoly G = g_loop(fp, nd.faces[i].P).as_loop();
                parts.push_back(arg_fibration(G, tag + "_argfib").cert);
            } catch (const Error& err) {
                parts.push_back(Certificate::failed(tag + "_argfib", 0.0, 0.0, 0, err.what()));
            }
        } else {
            parts.push_back(detail::critical_sweep(fp, false, tag + "_torus"));
        }
        if (i == 0) parts.push_back(detail::axis_sweep(fp, 0, false, tag + "_u_axis"));
        if (i + 1 == N) parts.push_back(detail::axis_sweep(fp, 1, false, tag + "_v_axis"));
    }

    if (N == 0) {
        parts.push_back(detail::critical_sweep(f, false, "vertex_torus"));
        parts.push_back(detail::axis_sweep(f, 0, false, "vertex_u_axis"));
        parts.push_back(detail::axis_sweep(f, 1, false, "vertex_v_axis"));
    }

    for (std::size_t i = 1; i + 1 < nd.boundary_vertices.size(); ++i) {
        const auto vert = nd.boundary_vertices[i];
        const MixedPoly fd = face_function(f, vert);
        const std::string tag = "vertex(" + std::to_string(vert.first) + "," +
                                std::to_string(vert.second) + ")";
        if (fd.terms().size() == 1) {
            const auto& [e, c] = *fd.terms().begin();
            if (e[0] == e[1] && e[2] == e[3]) {
                Certificate cert = Certificate::failed(
                    tag, 0.0, 0.0, 0, "self-conjugate monomial is critical everywhere");
                cert.witnesses = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
                parts.push_back(cert);
            } else {
                const double margin =
                    std::abs(c) * std::max(std::abs(e[0] - e[1]), std::abs(e[2] - e[3]));
                parts.push_back(Certificate::passed(tag, margin, 0.0, 0));
            }
        } else {
            parts.push_back(detail::critical_sweep(fd, false, tag));
        }
    }
    return detail::combine("strongly_inner_nondegenerate", parts);
}

}  // namespace singforge
