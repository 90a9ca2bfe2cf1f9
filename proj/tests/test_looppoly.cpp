#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "singforge/errors.hpp"
#include "singforge/looppoly.hpp"

using namespace singforge;

namespace {

LoopPoly monomial_loop(std::vector<TrigPoly> coeffs) { return LoopPoly(std::move(coeffs)); }

}  // namespace

TEST_CASE("from_braid recovers u^2 - e^{2it} from the full twist") {
    const GeometricBraid B = from_word(BraidWord::parse("s=2: s1 s1"));
    const LoopPoly g = from_braid(B, SymmetryTag::u_even());
    REQUIRE(g.degree() == 2);
    CHECK(g.coeff(1).is_zero());
    CHECK(g.coeff(2).nearly_equal(TrigPoly::constant(cplx(1, 0)), 1e-9));
    CHECK(g.coeff(0).nearly_equal(-TrigPoly::harmonic(2), 1e-6));
}

TEST_CASE("from_braid divisor route recovers u^2 - e^{it} from the half twist") {
    const GeometricBraid B = from_word(BraidWord::parse("s=2: s1"));
    const LoopPoly g = from_braid(B, SymmetryTag::divisor_sym(2));
    REQUIRE(g.degree() == 2);
    CHECK(g.coeff(1).is_zero());
    CHECK(g.coeff(0).nearly_equal(-TrigPoly::harmonic(1), 1e-6));
}

TEST_CASE("roots_at solves the loop pointwise") {
    const LoopPoly g = monomial_loop({-TrigPoly::harmonic(2), TrigPoly(),
                                      TrigPoly::constant(cplx(1, 0))});
    for (int i = 0; i < 7; ++i) {
        const double t = 0.9 * i;
        auto roots = roots_at(g, t);
        REQUIRE(roots.size() == 2);
        for (const auto& r : roots) CHECK(std::abs(g.eval(r, t)) < 1e-9);
    }
}

TEST_CASE("root_grid columns are continuous branches") {
    const LoopPoly g = monomial_loop({-TrigPoly::harmonic(2), TrigPoly(),
                                      TrigPoly::constant(cplx(1, 0))});
    const auto rows = root_grid(g, 256);
    const int n = static_cast<int>(rows.size()) - 1;
    for (int i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            CHECK(std::abs(rows[i + 1][j] - rows[i][j]) < 0.2);
    // e^{it} branches close up under the transposition-free permutation
    std::vector<cplx> start = rows[0], end = rows[n];
    std::sort(start.begin(), start.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    std::sort(end.begin(), end.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    for (std::size_t j = 0; j < start.size(); ++j) CHECK(std::abs(start[j] - end[j]) < 1e-7);
}

TEST_CASE("track/from_braid round trip") {
    const GeometricBraid B = from_word(BraidWord::parse("s=3: s1 s2 s1"));
    const LoopPoly g = from_braid(B, SymmetryTag::none());
    const GeometricBraid T = track(g);
    CHECK(T.strand_count() == 3);
    const auto w1 = word_of(B), w2 = word_of(T);
    int e1 = 0, e2 = 0;
    for (auto& [i, s] : w1.word) e1 += s;
    for (auto& [i, s] : w2.word) e2 += s;
    CHECK(e1 == e2);
}

TEST_CASE("simple_root_margin certifies the full twist loop") {
    const LoopPoly g = monomial_loop({-TrigPoly::harmonic(2), TrigPoly(),
                                      TrigPoly::constant(cplx(1, 0))});
    const auto [margin, cert] = simple_root_margin(g);
    CHECK(cert.pass());
    // roots +-e^{it}: separation 2 minus the grid-motion slack
    CHECK(margin == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("simple_root_margin rejects a double root") {
    const LoopPoly g = monomial_loop({TrigPoly(), TrigPoly(),
                                      TrigPoly::constant(cplx(1, 0))});  // u^2
    bool rejected = false;
    try {
        const auto [margin, cert] = simple_root_margin(g);
        rejected = !cert.pass();
        CHECK(margin <= 0.0);
    } catch (const Error&) {
        rejected = true;
    }
    CHECK(rejected);
}

TEST_CASE("substitute_power composes the loop with t -> pt") {
    const LoopPoly g = monomial_loop({-TrigPoly::harmonic(2), TrigPoly(),
                                      TrigPoly::constant(cplx(1, 0))});
    const LoopPoly g3 = g.substitute_power(3);
    for (int i = 0; i < 9; ++i) {
        const double t = 0.63 * i;
        CHECK(std::abs(g3.eval(cplx(0.3, 0.4), t) - g.eval(cplx(0.3, 0.4), 3.0 * t)) < 1e-11);
    }
}

TEST_CASE("leading coefficient must be nonvanishing") {
    CHECK_THROWS(monomial_loop({TrigPoly::constant(cplx(1, 0)),
                                TrigPoly::constant(cplx(1, 0)) - TrigPoly::harmonic(1)}));
    const LoopPoly ok = monomial_loop({TrigPoly::harmonic(1),
                                       TrigPoly::constant(cplx(2, 0)) - TrigPoly::harmonic(1)});
    CHECK(ok.leading_nonvanishing().pass());
}
