#include "singforge/looppoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "singforge/errors.hpp"
#include "singforge/roots.hpp"

namespace singforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

LoopPoly::LoopPoly(std::vector<TrigPoly> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("loop: no coefficients");
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    Certificate lead = leading_nonvanishing();
    if (!lead.pass())
        throw MarginViolated("loop: leading coefficient not certifiably nonvanishing");
}

bool LoopPoly::is_monic() const {
    const auto& lead = coeffs_.back();
    return lead.coeffs().size() == 1 && lead.coeffs().count(0) == 1 &&
           std::abs(lead.coeffs().at(0) - cplx(1.0, 0.0)) < 1e-14;
}

cplx LoopPoly::eval(cplx u, double t) const {
    cplx acc(0.0, 0.0);
    for (int j = degree(); j >= 0; --j) acc = acc * u + coeffs_[j].eval(t);
    return acc;
}

std::vector<cplx> LoopPoly::coeff_values(double t) const {
    std::vector<cplx> v(coeffs_.size());
    for (std::size_t j = 0; j < coeffs_.size(); ++j) v[j] = coeffs_[j].eval(t);
    return v;
}

LoopPoly LoopPoly::substitute_power(int p) const {
    if (p == 0) throw Error("substitute_power: p must be nonzero");
    std::vector<TrigPoly> c;
    c.reserve(coeffs_.size());
    for (const auto& a : coeffs_) c.push_back(a.substitute_power(p));
    return LoopPoly(std::move(c));
}

LoopPoly LoopPoly::derivative_u() const {
    if (degree() == 0) throw Error("derivative_u: constant loop");
    std::vector<TrigPoly> c;
    for (int j = 1; j <= degree(); ++j)
        c.push_back(cplx(static_cast<double>(j), 0.0) * coeffs_[j]);
    return LoopPoly(std::move(c));
}

Certificate LoopPoly::leading_nonvanishing(int grid) const {
    const auto& lead = coeffs_.back();
    const double h = kTwoPi / grid;
    auto vals = lead.eval_grid(0.0, h, grid);
    double minv = std::numeric_limits<double>::infinity();
    for (const auto& v : vals) minv = std::min(minv, std::abs(v));
    const double slack = lead.deriv_sum() * h / 2.0;
    const double margin = minv - slack;
    return margin > 0.0 ? Certificate::passed("leading_nonvanishing", margin, slack, grid)
                        : Certificate::failed("leading_nonvanishing", margin, slack, grid);
}

bool LoopPoly::nearly_equal(const LoopPoly& other, double tol) const {
    const int d = std::max(degree(), other.degree());
    for (int j = 0; j <= d; ++j) {
        TrigPoly a = j <= degree() ? coeffs_[j] : TrigPoly();
        TrigPoly b = j <= other.degree() ? other.coeffs_[j] : TrigPoly();
        if (!a.nearly_equal(b, tol)) return false;
    }
    return true;
}

std::vector<cplx> roots_at(const LoopPoly& g, double t) {
    return poly_roots(g.coeff_values(t));
}

namespace {

// Injectively match cur to prev, globally smallest distances first.
std::vector<cplx> match_to(const std::vector<cplx>& prev, std::vector<cplx> cur) {
    const int s = static_cast<int>(prev.size());
    struct Pair {
        double d;
        int i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(s * s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) pairs.push_back({std::abs(prev[i] - cur[j]), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
    std::vector<cplx> out(s);
    std::vector<bool> used_i(s, false), used_j(s, false);
    for (const auto& p : pairs) {
        if (used_i[p.i] || used_j[p.j]) continue;
        used_i[p.i] = used_j[p.j] = true;
        out[p.i] = cur[p.j];
    }
    return out;
}

double min_pairwise(const std::vector<cplx>& v) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) m = std::min(m, std::abs(v[i] - v[j]));
    return m;
}

}  // namespace

std::vector<std::vector<cplx>> root_grid(const LoopPoly& g, int n) {
    constexpr int kMax = 1 << 15;
    double scale = 0.0;
    for (const auto& a : g.coeffs()) scale += a.coeff_sum();
    while (true) {
        std::vector<std::vector<cplx>> rows(n + 1);
        rows[0] = roots_at(g, 0.0);
        double minsep = min_pairwise(rows[0]);
        double maxmove = 0.0;
        for (int i = 1; i <= n; ++i) {
            auto raw = poly_roots(g.coeff_values(kTwoPi * i / n), &rows[i - 1]);
            rows[i] = match_to(rows[i - 1], std::move(raw));
            minsep = std::min(minsep, min_pairwise(rows[i]));
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                maxmove = std::max(maxmove, std::abs(rows[i][j] - rows[i - 1][j]));
        }
        if (minsep < 1e-10 * (1.0 + scale) || maxmove < minsep / 4.0 || n >= kMax) return rows;
        n *= 2;
    }
}

GeometricBraid track(const LoopPoly& g, int grid) {
    auto rows = root_grid(g, grid);
    const int n = static_cast<int>(rows.size()) - 1;
    const int s = static_cast<int>(rows[0].size());
    if (s == 0) throw Error("track: constant loop has no roots");
    double minsep = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) minsep = std::min(minsep, min_pairwise(row));
    double scale = 0.0;
    for (const auto& a : g.coeffs()) scale += a.coeff_sum();
    if (s > 1 && minsep < 1e-8 * (1.0 + scale))
        throw MarginViolated("track: roots collide along the loop");

    // Close up: snap the final row onto the initial root set.
    std::vector<int> closure(s, 0);
    if (s == 1) {
        if (std::abs(rows[n][0] - rows[0][0]) > minsep / 4.0 &&
            std::abs(rows[n][0] - rows[0][0]) > 1e-7 * (1.0 + scale))
            throw MarginViolated("track: loop does not close up");
        rows[n][0] = rows[0][0];
    } else {
        std::vector<bool> used(s, false);
        for (int j = 0; j < s; ++j) {
            int best = -1;
            double bd = std::numeric_limits<double>::infinity();
            for (int q = 0; q < s; ++q) {
                double d = std::abs(rows[n][j] - rows[0][q]);
                if (!used[q] && d < bd) {
                    bd = d;
                    best = q;
                }
            }
            if (bd > minsep / 4.0) throw MarginViolated("track: loop does not close up");
            used[best] = true;
            closure[j] = best;
            rows[n][j] = rows[0][best];
        }
    }
    std::vector<std::vector<cplx>> strands(s, std::vector<cplx>(n + 1));
    std::vector<bool> zero(s, false);
    for (int j = 0; j < s; ++j) {
        double mx = 0.0;
        for (int i = 0; i <= n; ++i) {
            strands[j][i] = rows[i][j];
            mx = std::max(mx, std::abs(rows[i][j]));
        }
        zero[j] = mx < 1e-10 * (1.0 + scale);
    }
    return GeometricBraid(std::move(strands), std::move(closure), std::move(zero));
}

std::pair<double, Certificate> simple_root_margin(const LoopPoly& g, int grid) {
    if (g.degree() < 2) {
        Certificate c = Certificate::passed("simple_root_margin", 1e30, 0.0, grid);
        return {1e30, c};
    }
    auto rows = root_grid(g, grid);
    const int n = static_cast<int>(rows.size()) - 1;
    double dmin = std::numeric_limits<double>::infinity();
    double maxmove = 0.0;
    cplx witness(0.0, 0.0);
    double wt = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (std::size_t a = 0; a < rows[i].size(); ++a)
            for (std::size_t b = a + 1; b < rows[i].size(); ++b) {
                double d = std::abs(rows[i][a] - rows[i][b]);
                if (d < dmin) {
                    dmin = d;
                    witness = rows[i][a];
                    wt = kTwoPi * i / n;
                }
            }
        if (i > 0)
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                maxmove = std::max(maxmove, std::abs(rows[i][j] - rows[i - 1][j]));
    }
    const double slack = 2.0 * maxmove;
    const double margin = dmin - slack;
    Certificate cert;
    if (margin > 0.0) {
        cert = Certificate::passed("simple_root_margin", margin, slack, n);
    } else {
        cert = Certificate::failed("simple_root_margin", margin, slack, n,
                                   "closest root pair at t near reported witness");
        cert.witnesses = {witness, cplx(wt, 0.0)};
    }
    return {std::max(margin, 0.0), cert};
}

namespace {

struct CoeffConstraint {
    bool zero = false;
    ParityConstraint par = ParityConstraint::Any;
};

std::vector<CoeffConstraint> constraints_for(SymmetryTag sym, int s) {
    std::vector<CoeffConstraint> cs(s);
    for (int j = 0; j < s; ++j) {
        switch (sym.kind) {
            case SymmetryTag::Kind::None:
                break;
            case SymmetryTag::Kind::UEven:
                cs[j].par = ParityConstraint::Even;
                break;
            case SymmetryTag::Kind::Odd:
                cs[j].par = ((s - j) % 2 != 0) ? ParityConstraint::Odd : ParityConstraint::Even;
                break;
            case SymmetryTag::Kind::Divisor: {
                const int d = sym.divisor;
                if (d == 1) {
                    cs[j].par = ((s - j) % 2 != 0) ? ParityConstraint::Odd : ParityConstraint::Even;
                } else if (j % d != 0) {
                    cs[j].zero = true;
                } else {
                    cs[j].par = (((s + j) / d) % 2 != 0) ? ParityConstraint::Odd
                                                         : ParityConstraint::Even;
                }
                break;
            }
        }
    }
    return cs;
}

}  // namespace

LoopPoly from_braid(const GeometricBraid& B, SymmetryTag sym, int max_freq) {
    const int s = B.strand_count();
    const int n = B.grid();
    for (int j = 0; j < s; ++j)
        if (B.is_zero_strand(j))
            throw Error("from_braid: split off the exact 0-strand first");
    if (sym.kind == SymmetryTag::Kind::Odd && s % 2 == 0)
        throw Error("from_braid: odd symmetry needs an odd strand count");
    if (sym.kind == SymmetryTag::Kind::Divisor && s % sym.divisor != 0)
        throw Error("from_braid: divisor does not divide the strand count");

    // Coefficient samples of prod_j (u - u_j(t)) at t_i = 2*pi*i/n.
    std::vector<std::vector<cplx>> samples(s, std::vector<cplx>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> poly{cplx(1.0, 0.0)};
        for (int j = 0; j < s; ++j) {
            std::vector<cplx> next(poly.size() + 1, cplx(0.0, 0.0));
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= poly[k] * B.at(j, i);
            }
            poly = std::move(next);
        }
        for (int j = 0; j < s; ++j) samples[j][i] = poly[j];
    }
    double scale = 0.0;
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(samples[j][i]));

    auto cs = constraints_for(sym, s);
    std::vector<int> freqs;
    if (max_freq > 0) freqs.push_back(max_freq);
    else
        for (int f = 8; f <= 512; f *= 2) freqs.push_back(f);

    for (std::size_t attempt = 0; attempt < freqs.size(); ++attempt) {
        const bool last = attempt + 1 == freqs.size();
        const int mf = std::min(freqs[attempt], n / 2 - 1);
        try {
            std::vector<TrigPoly> coeffs(s + 1);
            coeffs[s] = TrigPoly::constant(cplx(1.0, 0.0));
            for (int j = 0; j < s; ++j) {
                if (cs[j].zero) {
                    double sup = 0.0;
                    for (const auto& v : samples[j]) sup = std::max(sup, std::abs(v));
                    if (sup > 0.05 * std::max(scale, 1.0)) throw ResidualTooLarge(sup);
                    coeffs[j] = TrigPoly();
                    continue;
                }
                double sup = 0.0;
                for (const auto& v : samples[j]) sup = std::max(sup, std::abs(v));
                if (sup <= 1e-11 * std::max(scale, 1.0)) {
                    // numerically zero coefficient: keep it exactly zero so
                    // parity bookkeeping and admissibility stay exact
                    coeffs[j] = TrigPoly();
                    continue;
                }
                double residual = 0.0;
                coeffs[j] = approximate(samples[j], cs[j].par, mf,
                                        std::numeric_limits<double>::infinity(), &residual);
                if (residual > 0.1 * std::max(scale, 1.0)) throw ResidualTooLarge(residual);
            }
            LoopPoly g(std::move(coeffs));
            // Re-track: projected roots must stay near the strands.
            double drift = 0.0;
            for (int i = 0; i < n; ++i) {
                std::vector<cplx> init(s);
                for (int j = 0; j < s; ++j) init[j] = B.at(j, i);
                auto roots = poly_roots(g.coeff_values(kTwoPi * i / n), &init);
                for (int j = 0; j < s; ++j) {
                    double best = std::numeric_limits<double>::infinity();
                    for (int q = 0; q < s; ++q)
                        best = std::min(best, std::abs(B.at(j, i) - roots[q]));
                    drift = std::max(drift, best);
                }
            }
            if (drift >= B.min_sep() / 4.0) throw RootDriftTooLarge(drift, B.min_sep() / 4.0);
            return g;
        } catch (const ResidualTooLarge&) {
            if (last) throw;
        } catch (const RootDriftTooLarge&) {
            if (last) throw;
        }
    }
    throw Error("from_braid: unreachable");
}

}  // namespace singforge
