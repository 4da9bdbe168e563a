#ifndef LATGAL_ENUMERATION_HPP
#define LATGAL_ENUMERATION_HPP

#include "latgal/lattice.hpp"

// Exhaustive search for plane tuples of small mixed volume up to lattice
// automorphism and per-set shifts, with the maximal ones marked.
namespace latgal {

struct BoundsTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationBounds {
    int n = 2;             // 2, or 1 for the degenerate segment mode
    long long v_max = 1;   // mixed-volume ceiling, at most 4
    long long box_radius = 0;  // 0 = derived from v_max
    int max_points = 0;        // per set; 0 = derived from v_max
    // Every emitted pair obeys lattice_volume(A1 + A2) <= sum_volume_cap().
    long long sum_volume_cap() const { return 4 * v_max * v_max * v_max * v_max; }
};

struct EnumeratedTuple {
    LatticeTuple tuple;        // canonical representative
    std::string normal_form;   // its encoding; unique across the output
    BigInt mv = 0;
    bool maximal = false;      // no one-point extension stays within v_max
};

// All irreducible tuples with mixed volume between 1 and v_max whose sets
// are lattice-convex (each set carries every lattice point of its hull),
// one canonical representative per equivalence class, sorted by encoding.
// Sets are grown point by point inside the coordinate box; supersets whose
// mixed volume would necessarily overshoot are pruned via monotonicity.
std::vector<EnumeratedTuple> enumerate_irreducible(const EnumerationBounds& bounds);

}  // namespace latgal

#endif
