#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latgal/mixed_volume.hpp"
#include "latgal/tuple_analysis.hpp"
#include "oracles.hpp"

using namespace latgal;

namespace {

LatticeSet set2(std::initializer_list<std::initializer_list<long long>> pts) {
    std::vector<Point> v;
    for (const auto& p : pts) v.emplace_back(p);
    return LatticeSet(static_cast<int>(pts.begin()->size()), std::move(v));
}

LatticeTuple segment(long long d) { return LatticeTuple(1, {LatticeSet(1, {{0}, {d}})}); }

LatticeTuple range_1d(long long d) {
    std::vector<Point> pts;
    for (long long i = 0; i <= d; ++i) pts.push_back({i});
    return LatticeTuple(1, {LatticeSet(1, std::move(pts))});
}

const LatticeSet kTriangle = set2({{0, 0}, {1, 0}, {0, 1}});
const LatticeSet kSquare = set2({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
const LatticeSet kDoubledTriangle = set2({{0, 0}, {2, 0}, {0, 2}});

const LatticeTuple kSplitTuple(2, {set2({{0, 0}, {2, 0}}),
                                   set2({{0, 0}, {0, 1}, {0, 2}, {1, 1}})});

}  // namespace

TEST_CASE("flags of the univariate dense tuples") {
    StructureFlags f = structure_flags(range_1d(4));
    CHECK(f.reduced);
    CHECK(f.irreducible);
    CHECK(f.linearly_independent);
    CHECK(f.numerically_reduced);
    CHECK(f.numerically_irreducible);
    CHECK(!f.prime.has_value());
}

TEST_CASE("flags of the stretched segment tuples") {
    StructureFlags f5 = structure_flags(segment(5));
    CHECK(!f5.reduced);
    REQUIRE(f5.non_reduced_witness.has_value());
    CHECK(f5.non_reduced_witness->lattice_basis == std::vector<Point>{{5}});
    CHECK(f5.non_reduced_witness->index == 5);
    REQUIRE(f5.prime.has_value());
    CHECK(f5.prime->p == 5);
    CHECK(mixed_volume(f5.prime->base) == 1);
    // Prime tuples stay numerically reduced and irreducible.
    CHECK(f5.numerically_reduced);
    CHECK(f5.numerically_irreducible);

    StructureFlags f6 = structure_flags(segment(6));
    CHECK(!f6.reduced);
    CHECK(!f6.numerically_reduced);
    REQUIRE(f6.numerically_non_reduced_witness.has_value());
    CHECK(f6.numerically_non_reduced_witness->inner_mv > 1);
    CHECK(!f6.prime.has_value());

    StructureFlags f4 = structure_flags(segment(4));
    CHECK(!f4.numerically_reduced);  // 2Z refinement carries mixed volume 2
    CHECK(!f4.prime.has_value());    // 4 is not prime
}

TEST_CASE("doubled triangle pair is numerically non-reduced") {
    LatticeTuple t(2, {kDoubledTriangle, kDoubledTriangle});
    StructureFlags f = structure_flags(t);
    CHECK(!f.reduced);
    CHECK(f.irreducible);
    CHECK(!f.numerically_reduced);
    REQUIRE(f.numerically_non_reduced_witness.has_value());
    const SubsetWitness& w = *f.numerically_non_reduced_witness;
    CHECK(w.subset == std::vector<int>{0, 1});
    CHECK(w.index == 2);
    CHECK(w.inner_mv == 2);
    // The witness verifies: the pair really has MV 2 inside the lattice.
    CHECK(mixed_volume_in_lattice({kDoubledTriangle, kDoubledTriangle}, w.lattice_basis, 2) ==
          w.inner_mv);
    CHECK(!f.prime.has_value());
}

TEST_CASE("segment-split tuple is numerically reducible") {
    StructureFlags f = structure_flags(kSplitTuple);
    CHECK(f.reduced);
    CHECK(!f.irreducible);
    CHECK(f.linearly_independent);
    CHECK(!f.numerically_irreducible);
    REQUIRE(f.numerically_reducible_witness.has_value());
    CHECK(f.numerically_reducible_witness->subset == std::vector<int>{0});
    CHECK(f.numerically_reducible_witness->inner_mv == 2);
    CHECK(f.numerically_reducible_witness->outer_mv == 2);
    CHECK(f.numerically_reduced);
}

TEST_CASE("flags are invariant under automorphisms and shifts") {
    std::mt19937_64 rng(99);
    std::vector<LatticeTuple> samples = {
        range_1d(4), segment(6), LatticeTuple(2, {kDoubledTriangle, kDoubledTriangle}),
        kSplitTuple, LatticeTuple(2, {kSquare, kTriangle})};
    for (const auto& t : samples) {
        StructureFlags base = structure_flags(t);
        for (int trial = 0; trial < 20; ++trial) {
            IntMatrix u = oracles::random_unimodular(t.ambient_dim, rng);
            StructureFlags f = structure_flags(oracles::transformed_copy(t, u, rng));
            CHECK(f.reduced == base.reduced);
            CHECK(f.irreducible == base.irreducible);
            CHECK(f.linearly_independent == base.linearly_independent);
            CHECK(f.numerically_reduced == base.numerically_reduced);
            CHECK(f.numerically_irreducible == base.numerically_irreducible);
            CHECK(f.prime.has_value() == base.prime.has_value());
        }
    }
}

TEST_CASE("linear independence matches positive mixed volume") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> coord(0, 2);
    std::uniform_int_distribution<int> npts(1, 3);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<LatticeSet> sets;
        for (int i = 0; i < 2; ++i) {
            std::vector<Point> pts;
            for (int j = 0, n = npts(rng); j < n; ++j) pts.push_back({coord(rng), coord(rng)});
            sets.emplace_back(2, std::move(pts));
        }
        LatticeTuple t(2, std::move(sets));
        CHECK(structure_flags(t).linearly_independent == (mixed_volume(t) > 0));
    }
}

TEST_CASE("irreducible implies linearly independent") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<long long> coord(-2, 2);
    std::uniform_int_distribution<int> npts(1, 4);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<LatticeSet> sets;
        for (int i = 0; i < 2; ++i) {
            std::vector<Point> pts;
            for (int j = 0, n = npts(rng); j < n; ++j) pts.push_back({coord(rng), coord(rng)});
            sets.emplace_back(2, std::move(pts));
        }
        StructureFlags f = structure_flags(LatticeTuple(2, std::move(sets)));
        if (f.irreducible) CHECK(f.linearly_independent);
    }
}

TEST_CASE("lattice reduction rewrites a stretched tuple") {
    auto red = lattice_reduction(segment(6));
    REQUIRE(red.has_value());
    CHECK(red->index == 6);
    CHECK(red->basis == std::vector<Point>{{6}});
    CHECK(red->reduced == LatticeTuple(1, {LatticeSet(1, {{0}, {1}})}));
    CHECK(red->coker_divisors == std::vector<BigInt>{6});

    CHECK(!lattice_reduction(range_1d(3)).has_value());
    // Mixed volume is index times the reduced mixed volume.
    LatticeTuple dt(2, {kDoubledTriangle, kDoubledTriangle});
    auto red2 = lattice_reduction(dt);
    REQUIRE(red2.has_value());
    CHECK(red2->index * mixed_volume(red2->reduced) == mixed_volume(dt));
    CHECK(red2->coker_divisors == std::vector<BigInt>{2, 2});
}

TEST_CASE("splitting the segment-split tuple") {
    auto sp = find_split(kSplitTuple);
    REQUIRE(sp.has_value());
    CHECK(sp->subset == std::vector<int>{0});
    CHECK(sp->inner == LatticeTuple(1, {LatticeSet(1, {{0}, {2}})}));
    CHECK(sp->quotient == LatticeTuple(1, {LatticeSet(1, {{0}, {1}, {2}})}));
    // Mixed volumes multiply across the split.
    CHECK(mixed_volume(sp->inner) * mixed_volume(sp->quotient) == mixed_volume(kSplitTuple));

    CHECK(!find_split(LatticeTuple(2, {kSquare, kSquare})).has_value());
}

TEST_CASE("split mixed volumes multiply on random reducible tuples") {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<long long> coord(0, 3);
    std::uniform_int_distribution<int> npts(2, 4);
    int found = 0;
    for (int trial = 0; trial < 200 && found < 30; ++trial) {
        // Force reducibility: first set lives on the x-axis.
        std::vector<Point> a, b;
        for (int j = 0, n = npts(rng); j < n; ++j) a.push_back({coord(rng), 0});
        for (int j = 0, n = npts(rng); j < n; ++j) b.push_back({coord(rng), coord(rng)});
        LatticeTuple t(2, {LatticeSet(2, a), LatticeSet(2, b)});
        if (mixed_volume(t) == 0) continue;
        auto sp = find_split(t);
        REQUIRE(sp.has_value());
        CHECK(mixed_volume(sp->inner) * mixed_volume(sp->quotient) == mixed_volume(t));
        ++found;
    }
    CHECK(found >= 30);
}

TEST_CASE("prime certificates") {
    for (long long p : {3, 5, 7}) {
        auto cert = prime_certificate(segment(p));
        REQUIRE(cert.has_value());
        CHECK(cert->p == p);
    }
    CHECK(!prime_certificate(range_1d(3)).has_value());  // MV 3 but fully symmetric
    CHECK(!prime_certificate(segment(6)).has_value());
    CHECK(!prime_certificate(segment(9)).has_value());  // index 9 is not prime

    // A split tuple whose nontrivial factor is prime: ({(0,0),(3,0)}, axis triangle).
    LatticeTuple t(2, {set2({{0, 0}, {3, 0}}), set2({{0, 0}, {0, 1}})});
    auto cert = prime_certificate(t);
    REQUIRE(cert.has_value());
    CHECK(cert->p == 3);
}

TEST_CASE("dual effectiveness") {
    // n copies of the standard simplex: essentially linear.
    LatticeTuple lin(2, {kTriangle, kTriangle});
    DualEffectiveResult r = dual_effective(lin);
    CHECK(!r.effective);
    REQUIRE(r.shift_witness.size() == 2);
    // The witness shifts really leave at most n basis-part vectors.
    {
        std::set<Point> w;
        for (int i = 0; i < 2; ++i)
            for (const auto& p : lin.sets[i].points) {
                Point d = sub(p, r.shift_witness[i]);
                if (d != Point{0, 0}) w.insert(d);
            }
        CHECK(w.size() <= 2);
    }

    CHECK(dual_effective(range_1d(2)).effective);
    CHECK(dual_effective(LatticeTuple(2, {kSquare, kSquare})).effective);
    CHECK(dual_effective(LatticeTuple(2, {kSquare, kTriangle})).effective);

    CHECK_THROWS_AS(dual_effective(segment(6)), PreconditionViolated);
    CHECK_THROWS_AS(dual_effective(kSplitTuple), PreconditionViolated);
}

TEST_CASE("cayley configurations") {
    LatticeTuple t1(1, {set2({{0}, {1}})});
    CayleyConfig c1 = cayley_config(t1, {0});
    CHECK(c1.points == LatticeSet(2, {{1, 0}, {1, 1}}));

    LatticeTuple t2(1, {set2({{0}}), set2({{0}})});
    CayleyConfig c2 = cayley_config(t2, {0, 1});
    CHECK(c2.points == LatticeSet(3, {{1, 0, 0}, {0, 1, 0}}));

    LatticeTuple dd(2, {kTriangle, kTriangle});
    CHECK(cayley_config(dd, {0, 1}).points.size() == 6);
    CHECK(cayley_config(dd, {0, 1}).points.ambient_dim == 4);

    CHECK_THROWS(cayley_config(dd, {}));
    CHECK_THROWS(cayley_config(dd, {5}));
}

TEST_CASE("intermediate lattice enumeration") {
    // 2Z^2 inside Z^2: five subgroups of (Z/2)^2.
    auto ms = intermediate_lattices({{2, 0}, {0, 2}}, {{1, 0}, {0, 1}}, 2);
    CHECK(ms.size() == 5);
    // 6Z inside Z: divisors of 6.
    auto ds = intermediate_lattices({{6}}, {{1}}, 1);
    CHECK(ds.size() == 4);
    for (const auto& m : ds) REQUIRE(m.size() == 1);
}

TEST_CASE("saturation basis") {
    CHECK(saturation_basis({{2, 0}, {0, 2}}, 2) == std::vector<Point>{{1, 0}, {0, 1}});
    CHECK(saturation_basis({{2, 4}}, 2) == std::vector<Point>{{1, 2}});
    CHECK(saturation_basis({{3, 3, 0}, {0, 0, 5}}, 3) ==
          std::vector<Point>{{1, 1, 0}, {0, 0, 1}});
}
