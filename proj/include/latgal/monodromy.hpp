#ifndef LATGAL_MONODROMY_HPP
#define LATGAL_MONODROMY_HPP

#include "latgal/classifier.hpp"

// Numerical monodromy: permutations of the root set of a generic system
// induced by loops in coefficient space, the group they generate, and
// comparison against the structural prediction.
namespace latgal {

// perm[i] is the index of the base root that root i flows to.
using Permutation = std::vector<int>;

// A closed path in coefficient space, stored as straight segments between
// waypoint coefficient matrices. Start and end systems must have equal root
// sets (equal matrices, or per-equation rescalings of one another).
struct Loop {
    enum class Kind { SegmentPair, DiscriminantCircle } kind = Kind::SegmentPair;
    std::uint64_t seed = 0;
    std::vector<CoeffMatrix> waypoints;
};

// Out to a random target system along one random per-equation rescaling of
// the base and back along another; the composite is one monodromy element.
Loop make_segment_pair_loop(const PolySystem& base, std::uint64_t seed);

// Tracks every base root around the loop and matches the ends back to the
// base roots. Ambiguous or failed matches throw PathFailure.
Permutation track_loop(const PolySystem& s, const RootSet& base_roots, const Loop& loop,
                       const SolveOptions& opts = {});

struct PermutationGroup {
    int degree = 0;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;  // materialized closure (may be capped)
    std::size_t order = 0;
    bool closure_capped = false;
    bool transitive = false;
    bool doubly_transitive = false;
    bool primitive = false;
    bool contains_transposition = false;
    bool is_symmetric = false;
    bool is_alternating = false;
    bool is_cyclic = false;
    std::vector<std::vector<int>> orbits;
    // Minimal nontrivial block systems (each a partition of {0..degree-1}).
    std::vector<std::vector<std::vector<int>>> block_systems;
};

PermutationGroup analyze_group(const std::vector<Permutation>& perms, int degree);

struct MonodromyOptions {
    int budget = 400;               // loop attempts
    int stabilization_window = 25;  // consecutive no-growth loops to stop
    int max_base_resamples = 10;
    long long mv_cap = 8;
    std::size_t closure_cap = 80640;  // 2 * |S_8|
    std::uint64_t seed = 2026;
    SolveOptions solve;
};

struct LoopRecord {
    std::uint64_t seed = 0;
    bool failed = false;
    bool grew_group = false;
    std::size_t order_after = 0;
};

struct MonodromyResult {
    PermutationGroup group;
    bool stabilized = false;  // false = inconclusive within budget
    int loops_run = 0;
    int path_failures = 0;
    PolySystem base;
    RootSet base_roots;
    std::vector<LoopRecord> trace;
};

MonodromyResult monodromy_group(const LatticeTuple& t, const MonodromyOptions& opts = {});

enum class VerifyVerdict { Match, Mismatch, Inconclusive };

struct VerificationReport {
    MonodromyPrediction prediction;
    MonodromyResult sampled;
    VerifyVerdict verdict = VerifyVerdict::Inconclusive;
    std::string detail;
};

// predict_monodromy versus the sampled group: symmetric predictions must
// realize the full symmetric group, prime predictions a cyclic group of that
// order, imprimitive predictions a matching block system.
VerificationReport verify_prediction(const LatticeTuple& t, const MonodromyOptions& opts = {});

// Small circles around a known simple discriminant point; the resulting
// permutation is a single transposition for almost all seeds.
// Quadratic family x^2 + bx + c around c = b^2/4.
Permutation discriminant_probe_quadratic(std::uint64_t seed, const SolveOptions& opts = {});
// Depressed cubic x^3 + px + q around a root of 4p^3 + 27q^2 = 0.
Permutation discriminant_probe_cubic(std::uint64_t seed, const SolveOptions& opts = {});

// True for the dihedral group of order 8 in its degree-4 action.
bool is_dihedral_of_order_8(const PermutationGroup& g);

}  // namespace latgal

#endif
