#include "singforge/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "singforge/errors.hpp"

namespace singforge {

namespace {

[[noreturn]] void exhausted(const std::string& why) { throw SearchExhausted(why); }

long long checked_ll(__int128 v, const char* ctx) {
    if (v > static_cast<__int128>(9e17) || v < -static_cast<__int128>(9e17))
        exhausted(std::string("integer overflow in ") + ctx);
    return static_cast<long long>(v);
}

using ZP = std::vector<long long>;  // lowest degree first, trimmed

void zp_trim(ZP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZP zp_mul(const ZP& a, const ZP& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<__int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<__int128>(a[i]) * b[j];
    ZP out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = checked_ll(acc[i], "product");
    zp_trim(out);
    return out;
}

// Exact division test: a = q*b with integer q.
bool zp_divide(const ZP& a, const ZP& b, ZP* q_out = nullptr) {
    if (b.empty()) return false;
    ZP r = a;
    zp_trim(r);
    if (r.empty()) return false;
    if (r.size() < b.size()) return false;
    ZP q(r.size() - b.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        const long long num = r[i + b.size() - 1];
        if (num % b.back() != 0) return false;
        const long long c = num / b.back();
        q[i] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const __int128 next = static_cast<__int128>(r[i + j]) -
                                  static_cast<__int128>(c) * b[j];
            // coefficient blow-up means b is not a factor
            if (next > static_cast<__int128>(9e17) || next < -static_cast<__int128>(9e17))
                return false;
            r[i + j] = static_cast<long long>(next);
        }
    }
    for (long long c : r)
        if (c != 0) return false;
    if (q_out) *q_out = q;
    return true;
}

long long zp_content(const ZP& a) {
    long long g = 0;
    for (long long c : a) g = std::gcd(g, std::llabs(c));
    return g == 0 ? 1 : g;
}

ZP zp_mirror(const ZP& a) {  // t -> -t
    ZP out = a;
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return out;
}

// ---------------------------------------------------------------------------
// GF(P) with P = 2^61 - 1, and dense polynomials over it.
// ---------------------------------------------------------------------------

constexpr std::uint64_t P = 2305843009213693951ull;

std::uint64_t addm(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= P ? s - P : s;
}
std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
std::uint64_t mulm(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % P);
}
std::uint64_t powm(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulm(r, a);
        a = mulm(a, a);
        e >>= 1;
    }
    return r;
}
std::uint64_t invm(std::uint64_t a) { return powm(a, P - 2); }

using MP = std::vector<std::uint64_t>;  // lowest degree first, trimmed

void mp_trim(MP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MP mp_from_z(const ZP& a) {
    MP out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long c = a[i] % static_cast<long long>(P);
        if (c < 0) c += static_cast<long long>(P);
        out[i] = static_cast<std::uint64_t>(c);
    }
    mp_trim(out);
    return out;
}

MP mp_mul(const MP& a, const MP& b) {
    if (a.empty() || b.empty()) return {};
    MP out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = addm(out[i + j], mulm(a[i], b[j]));
    }
    mp_trim(out);
    return out;
}

// remainder of a mod b (b nonzero)
MP mp_mod(MP a, const MP& b) {
    const std::uint64_t li = invm(b.back());
    while (a.size() >= b.size()) {
        const std::uint64_t c = mulm(a.back(), li);
        const std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[off + j] = subm(a[off + j], mulm(c, b[j]));
        mp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

MP mp_div(MP a, const MP& b) {
    const std::uint64_t li = invm(b.back());
    MP q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size()) {
        const std::uint64_t c = mulm(a.back(), li);
        const std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[off + j] = subm(a[off + j], mulm(c, b[j]));
        mp_trim(a);
        if (a.empty()) break;
    }
    mp_trim(q);
    return q;
}

MP mp_monic(MP a) {
    if (a.empty()) return a;
    const std::uint64_t li = invm(a.back());
    for (auto& c : a) c = mulm(c, li);
    return a;
}

MP mp_gcd(MP a, MP b) {
    while (!b.empty()) {
        MP r = mp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(a);
}

MP mp_derivative(const MP& a) {
    MP out;
    for (std::size_t i = 1; i < a.size(); ++i) out.push_back(mulm(a[i], i % P));
    mp_trim(out);
    return out;
}

MP mp_powmod(MP base, std::uint64_t e, const MP& mod) {
    MP r{1};
    base = mp_mod(std::move(base), mod);
    while (e) {
        if (e & 1) r = mp_mod(mp_mul(r, base), mod);
        base = mp_mod(mp_mul(base, base), mod);
        e >>= 1;
    }
    return r;
}

struct Rng {
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

// Equal-degree splitting of a product of irreducibles of degree d.
void mp_eds(const MP& g, int d, std::vector<MP>& out, Rng& rng) {
    const int deg = static_cast<int>(g.size()) - 1;
    if (deg == d) {
        out.push_back(mp_monic(g));
        return;
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        MP r(deg);
        for (auto& c : r) c = rng.next() % P;
        mp_trim(r);
        if (r.empty()) continue;
        // r^{(P^d-1)/2} = (prod_{i<d} r^{P^i})^{(P-1)/2}
        MP w = mp_mod(r, g);
        MP frob = w;
        for (int i = 1; i < d; ++i) {
            frob = mp_powmod(frob, P, g);
            w = mp_mod(mp_mul(w, frob), g);
        }
        MP t = mp_powmod(w, (P - 1) / 2, g);
        if (t.empty()) continue;
        t[0] = subm(t[0], 1);
        mp_trim(t);
        MP c = mp_gcd(t, g);
        const int cd = static_cast<int>(c.size()) - 1;
        if (cd > 0 && cd < deg) {
            mp_eds(c, d, out, rng);
            mp_eds(mp_div(g, c), d, out, rng);
            return;
        }
    }
    exhausted("equal-degree splitting did not converge");
}

// Factor a squarefree monic polynomial over GF(P).
std::vector<MP> mp_factor_squarefree(MP f) {
    std::vector<MP> out;
    Rng rng;
    MP x{0, 1};
    MP h = x;
    int d = 0;
    while (2 * (d + 1) <= static_cast<int>(f.size()) - 1) {
        ++d;
        h = mp_powmod(h, P, f);
        MP hx = h;
        // h - x
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = subm(hx[1], 1);
        mp_trim(hx);
        MP g = mp_gcd(hx, f);
        if (g.size() > 1) {
            mp_eds(g, d, out, rng);
            f = mp_div(f, g);
            h = mp_mod(h, f);
        }
        if (f.size() <= 1) break;
    }
    if (f.size() > 1) out.push_back(mp_monic(f));
    return out;
}

ZP symmetric_lift(const MP& a) {
    ZP out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = (a[i] > P / 2) ? static_cast<long long>(a[i]) - static_cast<long long>(P)
                                : static_cast<long long>(a[i]);
    }
    zp_trim(out);
    return out;
}

ZP zp_primitive(ZP a) {
    const long long c = zp_content(a);
    for (auto& x : a) x /= c;
    if (!a.empty() && a.back() < 0)
        for (auto& x : a) x = -x;
    return a;
}

// Complete factorization of a primitive polynomial into Z-irreducible
// primitive factors with multiplicities.
std::vector<std::pair<ZP, int>> zp_factor_primitive(ZP R) {
    std::vector<std::pair<ZP, int>> out;
    if (R.size() <= 1) return out;
    if (static_cast<int>(R.size()) - 1 > 30)
        exhausted("degree above the factorization cap (30)");

    // Coefficient growth sanity: Mignotte-style bound must stay below P/2.
    long double norm = 0;
    for (long long c : R) norm += static_cast<long double>(c) * c;
    norm = std::sqrt(norm);
    const long double bound =
        std::pow(2.0L, static_cast<long double>(R.size())) * norm *
        std::llabs(R.back());
    if (bound > static_cast<long double>(P) / 2) exhausted("coefficient bound exceeds modulus");

    MP Rp = mp_from_z(R);
    if (Rp.size() != R.size()) exhausted("leading coefficient vanishes mod the modulus");
    MP g = mp_gcd(Rp, mp_derivative(Rp));
    MP W = g.size() > 1 ? mp_div(Rp, g) : mp_monic(Rp);
    std::vector<MP> pool = mp_factor_squarefree(W);
    if (pool.size() > 20) exhausted("too many modular factors to recombine");

    std::vector<bool> used(pool.size(), false);
    std::size_t remaining = pool.size();
    while (remaining > 0) {
        bool found = false;
        for (std::size_t size = 1; size <= remaining && !found; ++size) {
            // Enumerate subsets of the unused pool entries of this size.
            std::vector<std::size_t> avail;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (!used[i]) avail.push_back(i);
            std::vector<std::size_t> idx(size);
            std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                                    std::size_t start) -> bool {
                if (pos == size) {
                    MP prod{static_cast<std::uint64_t>(
                        (std::llabs(R.back())) % static_cast<long long>(P))};
                    for (std::size_t q = 0; q < size; ++q)
                        prod = mp_mul(prod, pool[avail[idx[q]]]);
                    ZP cand = zp_primitive(symmetric_lift(prod));
                    if (cand.size() > 1 && zp_divide(R, cand)) {
                        int mult = 0;
                        ZP quo;
                        while (zp_divide(R, cand, &quo)) {
                            ++mult;
                            R = quo;
                        }
                        out.push_back({cand, mult});
                        for (std::size_t q = 0; q < size; ++q) used[avail[idx[q]]] = true;
                        remaining -= size;
                        return true;
                    }
                    return false;
                }
                for (std::size_t i = start; i < avail.size(); ++i) {
                    idx[pos] = i;
                    if (rec(pos + 1, i + 1)) return true;
                }
                return false;
            };
            found = rec(0, 0);
        }
        if (!found) exhausted("modular factor recombination failed");
    }
    if (R.size() > 1) exhausted("leftover cofactor after recombination");
    return out;
}

}  // namespace

IntLaurentPoly::IntLaurentPoly(std::vector<long long> coeffs) : coeffs_(std::move(coeffs)) {
    std::size_t lo = 0;
    while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lo);
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) throw Error("laurent: zero polynomial");
    if (coeffs_.back() < 0)
        for (auto& c : coeffs_) c = -c;
}

bool IntLaurentPoly::is_palindromic() const {
    const int d = degree();
    for (int i = 0; i <= d; ++i)
        if (coeffs_[i] != coeffs_[d - i] && coeffs_[i] != -coeffs_[d - i]) return false;
    return true;
}

IntLaurentPoly IntLaurentPoly::substitute_square() const {
    std::vector<long long> out(2 * degree() + 1, 0);
    for (int i = 0; i <= degree(); ++i) out[2 * i] = coeffs_[i];
    return IntLaurentPoly(std::move(out));
}

IntLaurentPoly IntLaurentPoly::mirrored() const {
    return IntLaurentPoly(zp_mirror(coeffs_));
}

long long IntLaurentPoly::eval_at_one() const {
    long long s = 0;
    for (long long c : coeffs_) s += c;
    return s;
}

IntLaurentPoly operator*(const IntLaurentPoly& a, const IntLaurentPoly& b) {
    return IntLaurentPoly(zp_mul(a.coeffs_, b.coeffs_));
}

std::string IntLaurentPoly::str() const {
    std::ostringstream os;
    for (int i = 0; i <= degree(); ++i) {
        if (i) os << ' ';
        os << coeffs_[i];
    }
    return os.str();
}

int GF2Poly::degree() const { return bits ? 63 - __builtin_clzll(bits) : -1; }

bool GF2Poly::is_square() const { return (bits & 0xAAAAAAAAAAAAAAAAull) == 0; }

GF2Poly GF2Poly::sqrt() const {
    GF2Poly out;
    for (int i = 0; 2 * i < 64; ++i)
        if (bits & (1ull << (2 * i))) out.bits |= 1ull << i;
    return out;
}

std::string GF2Poly::str() const {
    if (!bits) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        if (!(bits & (1ull << i))) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) os << "1";
        else if (i == 1) os << "t";
        else
            os << "t^" << i;
    }
    return os.str();
}

GF2Poly gf2_mul(GF2Poly a, GF2Poly b) {
    std::uint64_t r = 0;
    while (a.bits) {
        if (a.bits & 1) r ^= b.bits;
        a.bits >>= 1;
        if (b.bits & (1ull << 63)) throw Error("gf2: degree overflow");
        b.bits <<= 1;
    }
    return {r};
}

std::pair<GF2Poly, GF2Poly> gf2_divmod(GF2Poly a, GF2Poly b) {
    if (b.is_zero()) throw Error("gf2: division by zero");
    GF2Poly q{0};
    const int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        q.bits |= 1ull << shift;
        a.bits ^= b.bits << shift;
    }
    return {q, a};
}

GF2Poly gf2_reduce(const IntLaurentPoly& p) {
    if (p.degree() >= 63) throw Error("gf2: degree too large");
    GF2Poly out;
    for (int i = 0; i <= p.degree(); ++i)
        if (p.at(i) % 2 != 0) out.bits |= 1ull << i;
    while (out.bits && !(out.bits & 1)) out.bits >>= 1;  // up to powers of t
    return out;
}

MurasugiResult murasugi_check(const IntLaurentPoly& delta) {
    const GF2Poly b = gf2_reduce(delta);
    MurasugiResult out;
    if (b.is_zero()) return out;
    for (int lambda = 1; lambda - 1 <= b.degree(); lambda += 2) {
        const GF2Poly phi{(lambda >= 64) ? ~0ull : ((1ull << lambda) - 1)};
        auto [q, r] = gf2_divmod(b, phi);
        if (r.is_zero() && q.is_square()) {
            out.possible = true;
            out.f = q.sqrt();
            out.lambda = lambda;
            return out;
        }
    }
    return out;
}

ZFactorization z_factor(const IntLaurentPoly& p) {
    ZFactorization out;
    ZP a = p.coeffs();
    out.content = zp_content(a);
    for (auto& c : a) c /= out.content;
    auto fs = zp_factor_primitive(a);
    for (auto& [f, m] : fs) out.factors.push_back({IntLaurentPoly(f), m});
    return out;
}

HartleyResult hartley_check(const IntLaurentPoly& delta) {
    HartleyResult out;
    if (delta.degree() == 0) {
        out.possible = true;
        out.f = IntLaurentPoly({1});
        return out;
    }
    const IntLaurentPoly D = delta.substitute_square();
    const ZP d = D.coeffs();
    const ZFactorization F = z_factor(D);
    const int half = D.degree() / 2;

    // Enumerate divisors g = prod factors^{e_i} of total degree half.
    const std::size_t nf = F.factors.size();
    std::vector<int> e(nf, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int deg) -> bool {
        if (deg > half) return false;
        if (i == nf) {
            if (deg != half) return false;
            ZP g{1};
            for (std::size_t q = 0; q < nf; ++q)
                for (int rep = 0; rep < e[q]; ++rep) g = zp_mul(g, F.factors[q].first.coeffs());
            const ZP h = zp_mul(g, zp_mirror(g));
            // Need lambda^2 * h = +-d with integer lambda.
            if (h.size() != d.size()) return false;
            // ratio from leading coefficients
            if (d.back() % h.back() != 0 && h.back() % d.back() != 0) return false;
            // check proportionality
            long long num = 0, den = 0;
            for (std::size_t q = 0; q < d.size(); ++q) {
                if ((d[q] == 0) != (h[q] == 0)) return false;
                if (d[q] != 0 && num == 0) {
                    num = d[q];
                    den = h[q];
                }
            }
            if (den == 0) return false;
            for (std::size_t q = 0; q < d.size(); ++q)
                if (static_cast<__int128>(d[q]) * den != static_cast<__int128>(h[q]) * num)
                    return false;
            if (num % den != 0) return false;
            const long long r = std::llabs(num / den);
            const long long lam = std::llround(std::sqrt(static_cast<double>(r)));
            for (long long l : {lam - 1, lam, lam + 1}) {
                if (l > 0 && l * l == r) {
                    ZP f = g;
                    for (auto& c : f) c *= l;
                    out.possible = true;
                    out.f = IntLaurentPoly(f);
                    return true;
                }
            }
            return false;
        }
        for (e[i] = 0; e[i] <= F.factors[i].second; ++e[i]) {
            if (rec(i + 1, deg + e[i] * F.factors[i].first.degree())) return true;
            if (deg + (e[i] + 1) * F.factors[i].first.degree() > half) break;
        }
        e[i] = 0;
        return false;
    };
    rec(0, 0);
    return out;
}

SymmetryReport symmetry_report(const IntLaurentPoly& delta) {
    SymmetryReport rep;
    rep.murasugi = murasugi_check(delta);
    rep.hartley = hartley_check(delta);
    rep.excluded = !rep.murasugi.possible && !rep.hartley.possible;
    std::ostringstream os;
    os << "murasugi: " << (rep.murasugi.possible ? "possible" : "obstructed");
    if (rep.murasugi.possible)
        os << " (lambda=" << rep.murasugi.lambda << ", f=" << rep.murasugi.f.str() << ")";
    os << "; hartley: " << (rep.hartley.possible ? "possible" : "obstructed");
    if (rep.hartley.possible) os << " (f=" << rep.hartley.f.str() << ")";
    os << "; verdict: ";
    if (rep.excluded)
        os << "cannot be the link of a weakly isolated singularity of a radially weighted "
              "homogeneous inner non-degenerate mixed function";
    else
        os << "no obstruction found (necessary conditions only)";
    rep.summary = os.str();
    return rep;
}

}  // namespace singforge
