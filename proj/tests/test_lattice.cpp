#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latgal/lattice.hpp"
#include "oracles.hpp"

using namespace latgal;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
    IntMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long long v : r) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

LatticeSet set2(std::initializer_list<std::initializer_list<long long>> pts) {
    std::vector<Point> v;
    for (const auto& p : pts) v.emplace_back(p);
    return LatticeSet(static_cast<int>(pts.begin()->size()), std::move(v));
}

bool snf_consistent(const IntMatrix& m) {
    auto d = snf(m);
    IntMatrix prod = d.left * m * d.right;
    for (std::size_t i = 0; i < prod.rows; ++i)
        for (std::size_t j = 0; j < prod.cols; ++j) {
            BigInt want = (i == j && i < d.divisors.size()) ? d.divisors[i] : 0;
            if (prod.at(i, j) != want) return false;
        }
    // d1 | d2 | ... and transforms unimodular.
    for (std::size_t i = 0; i + 1 < d.divisors.size(); ++i)
        if (d.divisors[i] != 0 && d.divisors[i + 1] % d.divisors[i] != 0) return false;
    if (boost::multiprecision::abs(oracles::det_cofactor(d.left)) != 1) return false;
    if (boost::multiprecision::abs(oracles::det_cofactor(d.right)) != 1) return false;
    // Product of first k divisors equals gcd of k x k minors.
    BigInt acc = 1;
    for (std::size_t k = 1; k <= d.divisors.size(); ++k) {
        acc *= d.divisors[k - 1];
        if (boost::multiprecision::abs(acc) != oracles::minor_gcd(m, k)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("smith normal form on fixed matrices") {
    auto d = snf(mat({{2, 1}, {0, 3}}));
    REQUIRE(d.divisors.size() == 2);
    CHECK(d.divisors[0] == 1);
    CHECK(d.divisors[1] == 6);
    CHECK(d.rank == 2);

    auto z = snf(mat({{0, 0}, {0, 0}}));
    CHECK(z.rank == 0);
    CHECK(z.divisors == std::vector<BigInt>{0, 0});

    auto r = snf(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    REQUIRE(r.rank == 3);
    CHECK(r.divisors[0] == 2);
    CHECK(r.divisors[1] == 6);
    CHECK(r.divisors[2] == 12);
}

TEST_CASE("smith normal form against minor-gcd oracle on random matrices") {
    std::mt19937_64 rng(20260824);
    std::uniform_int_distribution<long long> entry(-9, 9);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (auto& e : m.data) e = entry(rng);
        CHECK(snf_consistent(m));
    }
}

TEST_CASE("hermite normal form basics") {
    auto h = hnf(mat({{2, 4}, {3, 5}}));
    CHECK(h.rank == 2);
    // H = U*M with U unimodular.
    CHECK(boost::multiprecision::abs(oracles::det_cofactor(h.transform)) == 1);
    // Echelon with positive pivots.
    CHECK(h.h.at(0, 0) > 0);
    CHECK(h.h.at(1, 0) == 0);
    CHECK(h.h.at(1, 1) > 0);

    auto low = hnf(mat({{1, 2, 3}, {2, 4, 6}}));
    CHECK(low.rank == 1);
    CHECK(low.h.at(0, 0) == 1);
    CHECK(low.h.at(0, 1) == 2);
    CHECK(low.h.at(0, 2) == 3);
}

TEST_CASE("hnf is invariant under left-unimodular multiplication") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> entry(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3;
        IntMatrix m(n, n);
        for (auto& e : m.data) e = entry(rng);
        IntMatrix u = oracles::random_unimodular(n, rng);
        auto a = hnf(m), b = hnf(u * m);
        CHECK(a.h == b.h);
    }
}

TEST_CASE("generated lattice rank and saturation index") {
    SublatticeInfo g = generated_lattice({{2, 0}, {0, 2}, {2, -2}}, 2);
    CHECK(g.rank == 2);
    CHECK(g.saturation_index == 4);

    SublatticeInfo one = generated_lattice({{3, 6}}, 2);
    CHECK(one.rank == 1);
    CHECK(one.saturation_index == 3);

    SublatticeInfo full = generated_lattice({{1, 0}, {0, 1}}, 2);
    CHECK(full.saturation_index == 1);

    SublatticeInfo empty = generated_lattice({}, 2);
    CHECK(empty.rank == 0);
    CHECK(empty.saturation_index == 1);
}

TEST_CASE("lattice coordinates round-trip") {
    SublatticeInfo g = generated_lattice({{2, 0}, {0, 3}}, 2);
    auto c = lattice_coordinates(g.basis, 2, {4, 9});
    REQUIRE(c.has_value());
    // Reconstruct.
    Point back(2, 0);
    for (std::size_t i = 0; i < g.basis.size(); ++i)
        for (int j = 0; j < 2; ++j) back[j] += static_cast<long long>((*c)[i]) * g.basis[i][j];
    CHECK(back == Point{4, 9});
    CHECK(!lattice_coordinates(g.basis, 2, {1, 0}).has_value());
    CHECK(!lattice_coordinates(g.basis, 2, {2, 1}).has_value());
}

TEST_CASE("normal form separates inequivalent tuples") {
    // Unit segment vs doubled segment.
    LatticeTuple seg1(1, {set2({{0}, {1}})});
    LatticeTuple seg2(1, {set2({{0}, {2}})});
    CHECK(unimodular_normal_form(seg1) != unimodular_normal_form(seg2));

    // Triangle vs square.
    LatticeTuple tri(2, {set2({{0, 0}, {1, 0}, {0, 1}}), set2({{0, 0}, {1, 0}, {0, 1}})});
    LatticeTuple sq(2, {set2({{0, 0}, {1, 0}, {0, 1}, {1, 1}}),
                        set2({{0, 0}, {1, 0}, {0, 1}, {1, 1}})});
    CHECK(unimodular_normal_form(tri) != unimodular_normal_form(sq));

    // Reordering the sets does not change the class: tuples are compared as
    // unordered collections, matching how inequivalent pairs are counted.
    LatticeTuple mixed(2, {set2({{0, 0}, {1, 0}, {0, 1}}),
                           set2({{0, 0}, {1, 0}, {0, 1}, {1, 1}})});
    LatticeTuple swapped(2, {set2({{0, 0}, {1, 0}, {0, 1}, {1, 1}}),
                             set2({{0, 0}, {1, 0}, {0, 1}})});
    CHECK(unimodular_normal_form(mixed) == unimodular_normal_form(swapped));
    CHECK(unimodular_normal_form(mixed) != unimodular_normal_form(tri));
    CHECK(unimodular_normal_form(mixed) != unimodular_normal_form(sq));
}

TEST_CASE("normal form is invariant under automorphisms and shifts") {
    std::mt19937_64 rng(42);
    std::vector<LatticeTuple> samples = {
        LatticeTuple(2, {set2({{0, 0}, {1, 0}, {0, 1}}), set2({{0, 0}, {2, 1}, {1, 3}})}),
        LatticeTuple(2, {set2({{0, 0}, {2, 0}}), set2({{0, 0}, {0, 1}, {0, 2}, {1, 1}})}),
        LatticeTuple(3, {set2({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
                         set2({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                         set2({{0, 0, 0}, {1, 1, 0}, {0, 1, 1}})}),
        LatticeTuple(1, {set2({{0}, {3}, {5}})}),
    };
    for (const auto& t : samples) {
        std::string base = unimodular_normal_form(t);
        for (int trial = 0; trial < 25; ++trial) {
            IntMatrix u = oracles::random_unimodular(t.ambient_dim, rng);
            LatticeTuple moved = oracles::transformed_copy(t, u, rng);
            CHECK(unimodular_normal_form(moved) == base);
        }
    }
}

TEST_CASE("normal form representative lies in the same class") {
    LatticeTuple t(2, {set2({{1, 2}, {3, 2}, {2, 5}}), set2({{0, 0}, {4, 1}})});
    auto full = unimodular_normal_form_full(t);
    CHECK(unimodular_normal_form(full.representative) == full.encoding);
}

TEST_CASE("set and tuple validation") {
    CHECK_THROWS_AS(LatticeSet(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSet(2, {{1, 2, 3}}), DimensionMismatch);
    LatticeSet dedup(1, {{3}, {1}, {3}});
    CHECK(dedup.points == std::vector<Point>{{1}, {3}});
}
