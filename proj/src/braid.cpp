#include "singforge/braid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "singforge/errors.hpp"

namespace singforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// ---------------------------------------------------------------- BraidWord

std::vector<int> BraidWord::closure_permutation() const {
    std::vector<int> slot(strands);  // strand -> slot
    for (int j = 0; j < strands; ++j) slot[j] = j;
    for (const auto& [i, sg] : word) {
        for (int j = 0; j < strands; ++j) {
            if (slot[j] == i - 1) slot[j] = i;
            else if (slot[j] == i) slot[j] = i - 1;
        }
    }
    return slot;
}

BraidWord BraidWord::parse(const std::string& text) {
    BraidWord w;
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("braid word: missing ':' in \"" + text + "\"");
    std::string head = text.substr(0, colon);
    auto eq = head.find('=');
    if (eq == std::string::npos || head.substr(0, eq).find('s') == std::string::npos)
        throw Error("braid word: header must be 's=<n>'");
    w.strands = std::stoi(head.substr(eq + 1));
    if (w.strands < 1) throw Error("braid word: strand count must be positive");
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            if (tok.substr(caret) != "^-1") throw Error("braid word: bad token " + tok);
            sign = -1;
            tok = tok.substr(0, caret);
        }
        if (tok.size() < 2 || tok[0] != 's') throw Error("braid word: bad token " + tok);
        int idx = std::stoi(tok.substr(1));
        if (idx < 1 || idx > w.strands - 1) throw Error("braid word: generator out of range: " + tok);
        w.word.emplace_back(idx, sign);
    }
    return w;
}

std::string BraidWord::format() const {
    std::ostringstream out;
    out << "s=" << strands << ":";
    for (const auto& [i, sg] : word) {
        out << " s" << i;
        if (sg < 0) out << "^-1";
    }
    return out.str();
}

// ----------------------------------------------------------- GeometricBraid

GeometricBraid::GeometricBraid(std::vector<std::vector<cplx>> strands,
                               std::vector<int> closure, std::vector<bool> zero_strand)
    : strands_(std::move(strands)), zero_strand_(std::move(zero_strand)),
      closure_(std::move(closure)) {
    if (strands_.empty()) throw Error("braid: no strands");
    if (zero_strand_.empty()) zero_strand_.assign(strands_.size(), false);
    if (zero_strand_.size() != strands_.size() || closure_.size() != strands_.size())
        throw Error("braid: inconsistent strand metadata");
    grid_n_ = static_cast<int>(strands_[0].size()) - 1;
    if (grid_n_ < 1 || grid_n_ % 2 != 0) throw Error("braid: grid must be even and positive");
    finalize();
}

void GeometricBraid::finalize() {
    const int s = strand_count();
    for (int j = 0; j < s; ++j) {
        if (static_cast<int>(strands_[j].size()) != grid_n_ + 1)
            throw Error("braid: ragged strand sampling");
        if (zero_strand_[j])
            for (auto& u : strands_[j]) u = cplx(0.0, 0.0);
    }
    // Endpoint matching through the closure permutation.
    std::vector<bool> hit(s, false);
    for (int j = 0; j < s; ++j) {
        int q = closure_[j];
        if (q < 0 || q >= s || hit[q]) throw Error("braid: closure is not a permutation");
        hit[q] = true;
        if (std::abs(strands_[j][grid_n_] - strands_[q][0]) > 1e-9)
            throw Error("braid: strand endpoints do not match the closure permutation");
        if (zero_strand_[j] != zero_strand_[q]) throw Error("braid: zero strand closure mismatch");
    }
    min_sep_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n_; ++i)
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b)
                min_sep_ = std::min(min_sep_, std::abs(strands_[a][i] - strands_[b][i]));
    if (s == 1) min_sep_ = 1.0;
    if (!(min_sep_ > 0.0)) throw Overlap("braid: strands intersect at a sample point");
}

double GeometricBraid::t_at(int i) const { return kTwoPi * i / grid_n_; }

int GeometricBraid::nonzero_strand_count() const {
    int c = 0;
    for (bool z : zero_strand_)
        if (!z) ++c;
    return c;
}

double GeometricBraid::max_modulus() const {
    double m = 0.0;
    for (const auto& path : strands_)
        for (const auto& u : path) m = std::max(m, std::abs(u));
    return m;
}

double GeometricBraid::min_modulus() const {
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < strand_count(); ++j) {
        if (zero_strand_[j]) continue;
        for (const auto& u : strands_[j]) m = std::min(m, std::abs(u));
    }
    return m;
}

GeometricBraid GeometricBraid::sample(int s, const std::function<cplx(int, double)>& path,
                                      std::vector<int> closure, int initial_grid) {
    int n = initial_grid;
    while (true) {
        std::vector<std::vector<cplx>> strands(s);
        for (int j = 0; j < s; ++j) {
            strands[j].resize(n + 1);
            for (int i = 0; i <= n; ++i) strands[j][i] = path(j, kTwoPi * i / n);
        }
        GeometricBraid B(std::move(strands), closure);
        double maxmove = 0.0;
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < n; ++i)
                maxmove = std::max(maxmove, std::abs(B.strands_[j][i + 1] - B.strands_[j][i]));
        if (maxmove < B.min_sep_ / 4.0 || n >= kMaxGrid) return B;
        n *= 2;
    }
}

std::vector<std::vector<int>> GeometricBraid::components() const {
    const int s = strand_count();
    std::vector<bool> seen(s, false);
    std::vector<std::vector<int>> comps;
    for (int j = 0; j < s; ++j) {
        if (seen[j]) continue;
        std::vector<int> cyc;
        int cur = j;
        while (!seen[cur]) {
            seen[cur] = true;
            cyc.push_back(cur);
            cur = closure_[cur];
        }
        comps.push_back(std::move(cyc));
    }
    return comps;
}

double GeometricBraid::pair_winding(int i, int j) const {
    double total = 0.0;
    for (int k = 0; k < grid_n_; ++k) {
        cplx a = strands_[i][k] - strands_[j][k];
        cplx b = strands_[i][k + 1] - strands_[j][k + 1];
        total += std::arg(b / a);
    }
    return total / kTwoPi;
}

std::vector<std::vector<double>> GeometricBraid::linking_table() const {
    auto comps = components();
    const int nc = static_cast<int>(comps.size());
    std::vector<std::vector<double>> table(nc, std::vector<double>(nc, 0.0));
    for (int a = 0; a < nc; ++a)
        for (int b = a; b < nc; ++b) {
            double sum = 0.0;
            for (int i : comps[a])
                for (int j : comps[b])
                    if (a != b || i < j) sum += pair_winding(i, j);
            table[a][b] = table[b][a] = sum;
        }
    return table;
}

GeometricBraid GeometricBraid::rotated(double theta) const {
    auto strands = strands_;
    const cplx rot = std::polar(1.0, theta);
    for (int j = 0; j < strand_count(); ++j)
        if (!zero_strand_[j])
            for (auto& u : strands[j]) u *= rot;
    return GeometricBraid(std::move(strands), closure_, zero_strand_);
}

GeometricBraid GeometricBraid::scaled(double factor) const {
    auto strands = strands_;
    for (auto& path : strands)
        for (auto& u : path) u *= factor;
    return GeometricBraid(std::move(strands), closure_, zero_strand_);
}

// -------------------------------------------------------------- from_word

GeometricBraid from_word(const BraidWord& w, int grid) {
    const int s = w.strands;
    const int L = std::max<std::size_t>(w.word.size(), 1);
    const double dt = kTwoPi / L;
    // Slot positions: s-th roots of unity.
    std::vector<cplx> slots(s);
    for (int j = 0; j < s; ++j) slots[j] = std::polar(1.0, kTwoPi * j / s);
    // Strand -> slot before each interval.
    std::vector<std::vector<int>> slot_of(L + 1, std::vector<int>(s));
    for (int j = 0; j < s; ++j) slot_of[0][j] = j;
    for (std::size_t m = 0; m < w.word.size(); ++m) {
        slot_of[m + 1] = slot_of[m];
        const int i = w.word[m].first;
        for (int j = 0; j < s; ++j) {
            if (slot_of[m][j] == i - 1) slot_of[m + 1][j] = i;
            else if (slot_of[m][j] == i) slot_of[m + 1][j] = i - 1;
        }
    }
    for (std::size_t m = w.word.size(); m < static_cast<std::size_t>(L); ++m)
        slot_of[m + 1] = slot_of[m];

    auto path = [&](int j, double t) -> cplx {
        int m = std::min(static_cast<int>(t / dt), L - 1);
        double tau = t / dt - m;
        int a = slot_of[m][j];
        if (m < static_cast<int>(w.word.size())) {
            const auto& [i, sg] = w.word[m];
            if (a == i - 1 || a == i) {
                cplx c = 0.5 * (slots[i - 1] + slots[i]);
                return c + (slots[a] - c) * std::polar(1.0, sg * std::numbers::pi * tau);
            }
        }
        return slots[a];
    };
    std::vector<int> closure(s);
    for (int j = 0; j < s; ++j) closure[j] = slot_of[L][j];
    return GeometricBraid::sample(s, path, closure,
                                  grid > 0 ? grid : GeometricBraid::kDefaultGrid);
}

// ---------------------------------------------------------------- to_word

namespace {

struct Crossing {
    double time;  // global t
    int a, b;     // strand indices
    int gen;      // 1-based generator index
    int sign;
};

}  // namespace

BraidWord to_word(const GeometricBraid& B) {
    const int s = B.strand_count();
    const int n = B.grid();
    const double sep = B.min_sep();
    std::vector<Crossing> crossings;
    for (int k = 0; k < n; ++k) {
        std::vector<Crossing> local;
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b) {
                cplx da = B.at(a, k) - B.at(b, k);
                cplx db = B.at(a, k + 1) - B.at(b, k + 1);
                double ra = da.real(), rb = db.real();
                if (std::abs(ra) < sep * 1e-12 || std::abs(rb) < sep * 1e-12)
                    throw NonGenericPosition("strand pair vertically aligned at a sample");
                if ((ra < 0) == (rb < 0)) continue;
                double x = ra / (ra - rb);
                double im = da.imag() + x * (db.imag() - da.imag());
                if (std::abs(im) < sep * 1e-6)
                    throw NonGenericPosition("strands nearly collide at a crossing");
                Crossing c;
                c.time = (k + x) * kTwoPi / n;
                c.a = a;
                c.b = b;
                c.sign = (ra < 0) ? (im < 0 ? 1 : -1) : (im > 0 ? 1 : -1);
                // Generator index: rank of the crossing abscissa among the
                // other strands' interpolated real parts.
                double re_cross = B.at(a, k).real() +
                                  x * (B.at(a, k + 1).real() - B.at(a, k).real());
                int below = 0;
                for (int e = 0; e < s; ++e) {
                    if (e == a || e == b) continue;
                    double re_e = B.at(e, k).real() + x * (B.at(e, k + 1).real() - B.at(e, k).real());
                    if (std::abs(re_e - re_cross) < sep * 0.25)
                        throw NonGenericPosition("simultaneous crossings");
                    if (re_e < re_cross) ++below;
                }
                c.gen = below + 1;
                local.push_back(c);
            }
        std::sort(local.begin(), local.end(),
                  [](const Crossing& x, const Crossing& y) { return x.time < y.time; });
        crossings.insert(crossings.end(), local.begin(), local.end());
    }

    // Validate against the evolving real-part order.
    auto order_at = [&](int i) {
        std::vector<int> ord(s);
        for (int j = 0; j < s; ++j) ord[j] = j;
        std::sort(ord.begin(), ord.end(), [&](int x, int y) {
            return B.at(x, i).real() < B.at(y, i).real();
        });
        for (int p = 0; p + 1 < s; ++p)
            if (B.at(ord[p + 1], i).real() - B.at(ord[p], i).real() < sep * 1e-9)
                throw NonGenericPosition("real-part tie at a sample");
        return ord;
    };
    std::vector<int> order = order_at(0);
    BraidWord w;
    w.strands = s;
    for (const auto& c : crossings) {
        int p = c.gen - 1;
        if (p < 0 || p + 1 >= s ||
            std::min(order[p], order[p + 1]) != std::min(c.a, c.b) ||
            std::max(order[p], order[p + 1]) != std::max(c.a, c.b))
            throw NonGenericPosition("crossing order inconsistent");
        std::swap(order[p], order[p + 1]);
        w.word.emplace_back(c.gen, c.sign);
    }
    if (order != order_at(n)) throw NonGenericPosition("crossing sequence does not close up");
    return w;
}

BraidWord word_of(const GeometricBraid& B) {
    double theta = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        try {
            return attempt == 0 ? to_word(B) : to_word(B.rotated(theta));
        } catch (const NonGenericPosition&) {
            theta += 0.7453982123469986;  // deterministic irrational-ish step
        }
    }
    return to_word(B.rotated(theta));  // let the final failure propagate
}

// -------------------------------------------------------------- symmetries

GeometricBraid symmetry_transform(const GeometricBraid& B, BraidSymmetry tau) {
    const int s = B.strand_count();
    const int n = B.grid();
    const int half = n / 2;
    const cplx rho = tau.kind == BraidSymmetry::Kind::TauU
                         ? cplx(1.0, 0.0)
                         : std::polar(1.0, std::numbers::pi / tau.k);
    std::vector<std::vector<cplx>> strands(s, std::vector<cplx>(n + 1));
    std::vector<bool> zero(s);
    for (int j = 0; j < s; ++j) {
        zero[j] = B.is_zero_strand(j);
        for (int i = 0; i <= n; ++i)
            strands[j][i] = (i <= half ? B.at(j, i + half) : B.at(B.closure()[j], i - half)) * rho;
    }
    return GeometricBraid(std::move(strands), B.closure(), std::move(zero));
}

namespace {

// Is the braid invariant (as a sample set) under (u,t) -> (u*rho, t+pi)?
bool set_invariant(const GeometricBraid& B, cplx rho) {
    const int s = B.strand_count();
    const int n = B.grid();
    const int half = n / 2;
    const double tol = B.min_sep() / 4.0;
    for (int i = 0; i < n; ++i) {
        int ish = (i + half) % n;
        for (int j = 0; j < s; ++j) {
            cplx target = B.at(j, i) * rho;
            double best = std::numeric_limits<double>::infinity();
            for (int q = 0; q < s; ++q) best = std::min(best, std::abs(target - B.at(q, ish)));
            if (best >= tol) return false;
        }
    }
    return true;
}

}  // namespace

SymmetryInfo detect_symmetry(const GeometricBraid& B) {
    SymmetryInfo info;
    info.u_even = set_invariant(B, cplx(1.0, 0.0));
    const int st = B.nonzero_strand_count();
    for (int k = 1; k <= std::max(st, 1); k *= 2) {
        if (set_invariant(B, std::polar(1.0, std::numbers::pi / k))) {
            info.k_symmetric.insert(k);
            if (k == 1) info.odd = true;
            if (st > 0 && st % k == 0) {
                info.divisor_symmetric = true;
                info.best_divisor = std::max(info.best_divisor, k);
            }
        }
    }
    return info;
}

// ------------------------------------------------------------------ power

namespace {

GeometricBraid reversed(const GeometricBraid& B) {
    const int s = B.strand_count();
    const int n = B.grid();
    std::vector<std::vector<cplx>> strands(s, std::vector<cplx>(n + 1));
    std::vector<bool> zero(s);
    std::vector<int> inv(s);
    for (int j = 0; j < s; ++j) inv[B.closure()[j]] = j;
    for (int j = 0; j < s; ++j) {
        zero[j] = B.is_zero_strand(j);
        for (int i = 0; i <= n; ++i) strands[j][i] = B.at(j, n - i);
    }
    return GeometricBraid(std::move(strands), inv, std::move(zero));
}

}  // namespace

GeometricBraid power(const GeometricBraid& B, int p) {
    if (p == 0) throw Error("power: exponent must be nonzero");
    if (p < 0) return power(reversed(B), -p);
    if (p == 1) return B;
    const int s = B.strand_count();
    const int n = B.grid();
    std::vector<std::vector<cplx>> strands(s);
    std::vector<bool> zero(s);
    std::vector<int> closure(s);
    for (int j = 0; j < s; ++j) {
        zero[j] = B.is_zero_strand(j);
        strands[j].reserve(n * p + 1);
        int cur = j;
        for (int w = 0; w < p; ++w) {
            for (int i = 0; i < n; ++i) strands[j].push_back(B.at(cur, i));
            cur = B.closure()[cur];
        }
        int last = j;
        for (int w = 0; w < p - 1; ++w) last = B.closure()[last];
        strands[j].push_back(B.at(last, n));
        closure[j] = cur;
    }
    return GeometricBraid(std::move(strands), std::move(closure), std::move(zero));
}

// ------------------------------------------------------------------- nest

namespace {

GeometricBraid resampled(const GeometricBraid& B, int n_new) {
    const int s = B.strand_count();
    const int n = B.grid();
    if (n_new == n) return B;
    std::vector<std::vector<cplx>> strands(s, std::vector<cplx>(n_new + 1));
    std::vector<bool> zero(s);
    for (int j = 0; j < s; ++j) {
        zero[j] = B.is_zero_strand(j);
        for (int i = 0; i <= n_new; ++i) {
            double pos = static_cast<double>(i) * n / n_new;
            int k = std::min(static_cast<int>(pos), n - 1);
            double x = pos - k;
            strands[j][i] = B.at(j, k) * (1.0 - x) + B.at(j, k + 1) * x;
        }
    }
    return GeometricBraid(std::move(strands), B.closure(), std::move(zero));
}

}  // namespace

GeometricBraid nest(const GeometricBraid& inner, const GeometricBraid& outer, double eps) {
    const double inner_max = inner.max_modulus();
    const double outer_min = outer.min_modulus();
    if (!(outer_min > 0.0) || !std::isfinite(outer_min))
        throw Overlap("nest: outer braid meets the 0-axis");
    if (eps <= 0.0) eps = inner_max > 0.0 ? outer_min / (4.0 * inner_max) : 1.0;
    if (inner_max > 0.0 && outer_min <= 2.0 * eps * inner_max)
        throw Overlap("nest: outer strand enters the eps-tube");

    int n = std::max(inner.grid(), outer.grid());
    GeometricBraid in = resampled(inner.scaled(eps), n);
    GeometricBraid out = resampled(outer, n);
    while (true) {
        const int si = in.strand_count(), so = out.strand_count();
        std::vector<std::vector<cplx>> strands;
        std::vector<bool> zero;
        std::vector<int> closure;
        for (int j = 0; j < si; ++j) {
            strands.push_back(in.strands()[j]);
            zero.push_back(in.is_zero_strand(j));
            closure.push_back(in.closure()[j]);
        }
        for (int j = 0; j < so; ++j) {
            strands.push_back(out.strands()[j]);
            zero.push_back(out.is_zero_strand(j));
            closure.push_back(out.closure()[j] + si);
        }
        GeometricBraid B(std::move(strands), std::move(closure), std::move(zero));
        double maxmove = 0.0;
        for (int j = 0; j < B.strand_count(); ++j)
            for (int i = 0; i < B.grid(); ++i)
                maxmove = std::max(maxmove, std::abs(B.at(j, i + 1) - B.at(j, i)));
        if (maxmove < B.min_sep() / 4.0 || n >= GeometricBraid::kMaxGrid) return B;
        n *= 2;
        in = resampled(in, n);
        out = resampled(out, n);
    }
}

BraidWord torus_word(int s, int m) {
    if (s < 1 || m < 1) throw Error("torus_word: need s >= 1, m >= 1");
    BraidWord w;
    w.strands = s + 1;
    for (int rep = 0; rep < 2 * m; ++rep) {
        for (int i = s; i >= 1; --i) w.word.emplace_back(i, 1);
        for (int i = 1; i <= s; ++i) w.word.emplace_back(i, 1);
    }
    return w;
}

}  // namespace singforge
