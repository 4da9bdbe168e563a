#ifndef LATGAL_TUPLE_ANALYSIS_HPP
#define LATGAL_TUPLE_ANALYSIS_HPP

#include "latgal/lattice.hpp"

// Structural predicates of square lattice tuples: reducedness, irreducibility,
// linear independence, their numerical refinements, prime tuples, the
// dual-effectiveness test, and Cayley configurations.
namespace latgal {

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Certificate attached to a failed predicate: the offending subset of set
// indices together with the sublattice that witnesses the failure.
struct SubsetWitness {
    std::vector<int> subset;           // 0-based indices into t.sets
    std::vector<Point> lattice_basis;  // HNF rows spanning the witness lattice
    BigInt index = 1;                  // [saturation : lattice]
    BigInt inner_mv = 0;               // MV of the subset measured in the lattice
    BigInt outer_mv = 0;               // MV of the projected complement, if any
};

struct PrimeWitness {
    long long p = 0;            // odd prime; the tuple behaves like x^p = c
    LatticeTuple base;          // the mixed-volume-1 tuple at the bottom
};

struct StructureFlags {
    bool reduced = false;
    bool irreducible = false;
    bool linearly_independent = false;
    bool numerically_reduced = false;
    bool numerically_irreducible = false;
    std::optional<SubsetWitness> non_reduced_witness;
    std::optional<SubsetWitness> dependent_witness;             // rank(S) < |S|
    std::optional<SubsetWitness> reducible_witness;             // rank(S) <= |S|, S proper
    std::optional<SubsetWitness> numerically_non_reduced_witness;
    std::optional<SubsetWitness> numerically_reducible_witness;
    std::optional<PrimeWitness> prime;
};

// All predicates at once. Requires a square tuple.
StructureFlags structure_flags(const LatticeTuple& t);

// Rewrites a non-reduced square tuple in a basis of its difference lattice.
struct LatticeReduceData {
    std::vector<Point> basis;           // rank-n basis of the difference lattice
    std::vector<BigInt> coker_divisors; // nontrivial invariant factors of Z^n / basis
    BigInt index = 1;                   // their product = lattice index
    LatticeTuple reduced;               // the same sets in basis coordinates
};

// nullopt when the tuple is already reduced; throws DimensionMismatch when the
// difference lattice has rank < n (the tuple is then linearly dependent).
std::optional<LatticeReduceData> lattice_reduction(const LatticeTuple& t);

// Splits a square tuple along the lexicographically least minimal subset S
// whose difference lattice has rank |S|: the S-sets rewritten inside the
// saturation L, and the complement projected to Z^n / L.
struct SplitData {
    std::vector<int> subset;         // S
    std::vector<Point> sat_basis;    // basis of L, the saturated split lattice
    LatticeTuple inner;              // S-sets in L coordinates (Z^|S|)
    LatticeTuple quotient;           // complement sets in Z^(n-|S|)
};

std::optional<SplitData> find_split(const LatticeTuple& t);

// Recursive prime-tuple test: peel mixed-volume-1 split factors until a
// non-reduced tuple of index p with mixed-volume-1 reduction appears.
// Non-empty only when mixed_volume(t) is an odd prime.
std::optional<PrimeWitness> prime_certificate(const LatticeTuple& t);

// Whether the coefficient-discriminant of a generic system on t is a
// hypersurface. False exactly when the sets shift into n vectors extendable
// to a lattice basis (an essentially linear system); the witnessing per-set
// shifts are returned in that case. Requires reduced and irreducible input.
struct DualEffectiveResult {
    bool effective = true;
    std::vector<Point> shift_witness;  // one shift per set when not effective
};

DualEffectiveResult dual_effective(const LatticeTuple& t);

// The lift of the sets indexed by I into Z^k x Z^n: points (e_i, a), a in A_i.
struct CayleyConfig {
    LatticeSet points;           // in Z^(k+n)
    std::vector<int> index_set;  // I, 0-based
};

CayleyConfig cayley_config(const LatticeTuple& t, const std::vector<int>& index_set);

// All lattices M with gen_basis-lattice <= M <= sat_basis-lattice, as HNF
// bases in Z^dim, via subgroups of the finite quotient. Includes both ends.
std::vector<std::vector<Point>> intermediate_lattices(const std::vector<Point>& gen_basis,
                                                      const std::vector<Point>& sat_basis, int dim);

}  // namespace latgal

#endif
