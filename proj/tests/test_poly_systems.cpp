#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latgal/mixed_volume.hpp"
#include "latgal/poly_systems.hpp"

using namespace latgal;

namespace {

LatticeSet set2(std::initializer_list<std::initializer_list<long long>> pts) {
    std::vector<Point> v;
    for (const auto& p : pts) v.emplace_back(p);
    return LatticeSet(static_cast<int>(pts.begin()->size()), std::move(v));
}

LatticeTuple range_1d(long long d) {
    std::vector<Point> pts;
    for (long long i = 0; i <= d; ++i) pts.push_back({i});
    return LatticeTuple(1, {LatticeSet(1, std::move(pts))});
}

const LatticeSet kTriangle = set2({{0, 0}, {1, 0}, {0, 1}});
const LatticeSet kSquare = set2({{0, 0}, {1, 0}, {0, 1}, {1, 1}});

double root_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool same_root_set(const std::vector<std::vector<Complex>>& a,
                   const std::vector<std::vector<Complex>>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ra : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (root_distance(ra, b[j]) < tol) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sampling is deterministic per seed") {
    LatticeTuple t(2, {kSquare, kTriangle});
    PolySystem a = sample_generic(t, 42);
    PolySystem b = sample_generic(t, 42);
    PolySystem c = sample_generic(t, 43);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs != c.coeffs);
    REQUIRE(a.coeffs.size() == 2);
    CHECK(a.coeffs[0].size() == 4);
    CHECK(a.coeffs[1].size() == 3);
}

TEST_CASE("evaluation and jacobian of x^2 - 1") {
    PolySystem s;
    s.tuple = LatticeTuple(1, {LatticeSet(1, {{0}, {2}})});
    s.coeffs = {{Complex(-1.0), Complex(1.0)}};
    std::vector<Complex> v, j;
    evaluate_and_jacobian(s, {Complex(1.0)}, v, j);
    CHECK(std::abs(v[0]) < 1e-15);
    CHECK(std::abs(j[0] - Complex(2.0)) < 1e-15);
}

TEST_CASE("jacobian matches central finite differences") {
    std::mt19937_64 rng(5);
    LatticeTuple t(2, {set2({{0, 0}, {2, 1}, {-1, 3}}), set2({{0, 0}, {1, -2}, {2, 2}})});
    PolySystem s = sample_generic(t, 77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> x = {Complex(1.0 + 0.3 * u(rng), 0.3 * u(rng)),
                                  Complex(1.0 + 0.3 * u(rng), 0.3 * u(rng))};
        std::vector<Complex> v, j;
        evaluate_and_jacobian(s, x, v, j);
        const double h = 1e-6;
        for (int col = 0; col < 2; ++col) {
            auto xp = x, xm = x;
            xp[col] += h;
            xm[col] -= h;
            std::vector<Complex> vp, vm, dummy;
            evaluate_and_jacobian(s, xp, vp, dummy);
            evaluate_and_jacobian(s, xm, vm, dummy);
            for (int row = 0; row < 2; ++row) {
                Complex fd = (vp[row] - vm[row]) / (2.0 * h);
                CHECK(std::abs(fd - j[row * 2 + col]) < 1e-6 * (1.0 + std::abs(j[row * 2 + col])));
            }
        }
    }
}

TEST_CASE("aberth solves factored cubics") {
    // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
    auto roots = polynomial_roots({Complex(-6.0), Complex(11.0), Complex(-6.0), Complex(1.0)});
    REQUIRE(roots.size() == 3);
    std::sort(roots.begin(), roots.end(),
              [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] - Complex(1.0)) < 1e-10);
    CHECK(std::abs(roots[1] - Complex(2.0)) < 1e-10);
    CHECK(std::abs(roots[2] - Complex(3.0)) < 1e-10);
}

TEST_CASE("univariate solving") {
    PolySystem s;
    s.tuple = LatticeTuple(1, {LatticeSet(1, {{0}, {2}})});
    s.coeffs = {{Complex(-1.0), Complex(1.0)}};
    RootSet r = solve_system(s);
    REQUIRE(r.roots.size() == 2);
    CHECK(std::abs(r.roots[0][0] - Complex(-1.0)) < 1e-12);
    CHECK(std::abs(r.roots[1][0] - Complex(1.0)) < 1e-12);

    // Generic system on {0,5}: roots are the fifth roots of -c0/c5.
    LatticeTuple seg(1, {LatticeSet(1, {{0}, {5}})});
    PolySystem g = sample_generic(seg, 11);
    RootSet rs = solve_system(g);
    REQUIRE(rs.roots.size() == 5);
    Complex target = -g.coeffs[0][0] / g.coeffs[0][1];
    for (const auto& root : rs.roots) {
        Complex z = root[0];
        CHECK(std::abs(z * z * z * z * z - target) < 1e-9);
    }
}

TEST_CASE("root counts match mixed volumes across seeds") {
    struct Case {
        LatticeTuple t;
        long long mv;
    };
    std::vector<Case> cases = {
        {range_1d(4), 4},
        {LatticeTuple(2, {kSquare, kSquare}), 2},
        {LatticeTuple(2, {kSquare, kTriangle}), 2},
        {LatticeTuple(2, {set2({{0, 0}, {2, 0}}), set2({{0, 0}, {0, 1}, {0, 2}, {1, 1}})}), 4},
        {LatticeTuple(2, {set2({{0, 0}, {2, 0}, {0, 2}}), set2({{0, 0}, {2, 0}, {0, 2}})}), 4},
    };
    for (const auto& c : cases) {
        REQUIRE(mixed_volume(c.t) == c.mv);
        int good = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            try {
                RootSet r = solve_system(sample_generic(c.t, seed));
                REQUIRE(static_cast<long long>(r.roots.size()) == c.mv);
                for (double res : r.residuals) CHECK(res < 1e-9);
                ++good;
            } catch (const DegenerateSystem&) {
                // counted against the success rate below
            }
        }
        CHECK(good >= 19);
    }
}

TEST_CASE("resultant and homotopy agree in the plane") {
    LatticeTuple t(2, {kSquare, kTriangle});
    for (std::uint64_t seed : {3u, 14u, 15u}) {
        PolySystem s = sample_generic(t, seed);
        RootSet a = solve_system(s);
        SolveOptions h;
        h.strategy = SolveOptions::Strategy::Homotopy;
        RootSet b = solve_system(s, h);
        CHECK(same_root_set(a.roots, b.roots, 1e-7));
    }
}

TEST_CASE("three-dimensional homotopy solving") {
    LatticeSet simplex = set2({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    LatticeTuple lin(3, {simplex, simplex, simplex});
    RootSet r1 = solve_system(sample_generic(lin, 5));
    CHECK(r1.roots.size() == 1);

    LatticeSet spat = set2({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    LatticeTuple cubic(3, {spat, spat, spat});
    REQUIRE(mixed_volume(cubic) == 3);
    RootSet r3 = solve_system(sample_generic(cubic, 5));
    CHECK(r3.roots.size() == 3);
    for (double res : r3.residuals) CHECK(res < 1e-9);
}

TEST_CASE("tracking a constant segment is a fixed point") {
    LatticeTuple t(2, {kSquare, kSquare});
    PolySystem s = sample_generic(t, 9);
    RootSet r = solve_system(s);
    REQUIRE(!r.roots.empty());
    auto moved = track_linear_segment(s.tuple, s.coeffs, s.coeffs, r.roots[0]);
    CHECK(root_distance(moved, r.roots[0]) < 1e-9);
}

TEST_CASE("tracking to another system and back returns home") {
    LatticeTuple t(2, {kSquare, kTriangle});
    PolySystem s0 = sample_generic(t, 21);
    PolySystem s1 = sample_generic(t, 22);
    RootSet r = solve_system(s0);
    REQUIRE(r.roots.size() == 2);
    for (const auto& root : r.roots) {
        auto there = track_linear_segment(t, s0.coeffs, s1.coeffs, root);
        auto back = track_linear_segment(t, s1.coeffs, s0.coeffs, there);
        CHECK(root_distance(back, root) < 1e-7);
    }
}

TEST_CASE("error paths") {
    PolySystem notsquare;
    notsquare.tuple = LatticeTuple(2, {kSquare});
    notsquare.coeffs = {{1.0, 1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(solve_system(notsquare), DimensionMismatch);

    PolySystem s = sample_generic(LatticeTuple(2, {kSquare, kSquare}), 1);
    SolveOptions capped;
    capped.max_dim = 1;
    CHECK_THROWS_AS(solve_system(s, capped), Unsupported);

    // Dependent tuple: no torus roots, and solve reports exactly that.
    LatticeSet seg = set2({{0, 0}, {1, 1}});
    PolySystem dep = sample_generic(LatticeTuple(2, {seg, seg}), 1);
    CHECK(solve_system(dep).roots.empty());
}
