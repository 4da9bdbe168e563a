#ifndef LATGAL_CLASSIFIER_HPP
#define LATGAL_CLASSIFIER_HPP

#include "latgal/poly_systems.hpp"
#include "latgal/tuple_analysis.hpp"

// Solvability-by-radicals classification of square tuples via a reduction
// tree, the matching monodromy-group prediction, and cone constructions.
namespace latgal {

enum class NodeKind { Shift, LatticeReduce, Split, Leaf };

struct ReductionNode {
    NodeKind kind = NodeKind::Leaf;
    LatticeTuple tuple;  // the tuple entering this node
    BigInt mv = 0;
    std::vector<ReductionNode> children;
    std::optional<LatticeReduceData> reduce_data;  // LatticeReduce nodes
    std::optional<SplitData> split_data;           // Split nodes
    bool solvable = false;   // leaves: mv <= k; inner nodes: all children
    bool degenerate = false; // leaf with mv 0 (linearly dependent tuple)
};

struct ClassificationReport {
    ReductionNode root;  // a Shift node wrapping the reduction
    bool solvable = false;
    BigInt mixed_volume = 0;
    long long k_radical = 4;
};

// Peels shifts, lattice reductions and splits off the tuple until only
// reduced irreducible leaves remain; a generic system on the tuple is
// solvable by k-radicals exactly when every leaf has mixed volume <= k.
ClassificationReport classify_solvability(const LatticeTuple& t, long long k = 4);

struct MonodromyPrediction {
    enum class Kind { Symmetric, Imprimitive, PrimeCyclic };
    Kind kind = Kind::Symmetric;
    BigInt degree = 0;  // number of roots the group permutes
    long long p = 0;    // PrimeCyclic only
    BigInt block_count = 0, block_size = 0;  // Imprimitive only
    std::optional<SubsetWitness> witness;
    bool conjectural = false;
    // Refinement of Imprimitive predictions for non-reduced tuples: the
    // group should embed into (coker wreath S_d); empirical, not asserted.
    bool has_wreath_refinement = false;
    std::vector<BigInt> wreath_coker;
    BigInt wreath_d = 0;
};

// What the monodromy group of a generic system on t must be: the full
// symmetric group when the tuple is numerically reduced and irreducible, an
// imprimitive group with computable blocks otherwise, cyclic for primes.
MonodromyPrediction predict_monodromy(const LatticeTuple& t);

// {0} union B x {h} in one dimension higher.
LatticeSet cone_over(const LatticeSet& b, long long h = 1);

// Given f_0..f_m supported on cone_over(B, h) with nonzero constant terms,
// returns g_1..g_m supported on B with g_i = f_i/f_{i,0} - f_0/f_{0,0};
// base coordinates of roots of f coincide with roots of g.
PolySystem cone_reduce(const PolySystem& f);

}  // namespace latgal

#endif
