#ifndef LATGAL_MIXED_VOLUME_HPP
#define LATGAL_MIXED_VOLUME_HPP

#include "latgal/lattice.hpp"

// Exact lattice volumes and mixed volumes, Minkowski sums and convex hulls,
// all in exact integer/rational arithmetic.
namespace latgal {

// Convex-position subset of a lattice set together with its dimensions.
struct Polytope {
    int ambient_dim = 0;
    int intrinsic_dim = 0;
    std::vector<Point> vertices;
};

// {p + q : p in a, q in b}, deduplicated.
LatticeSet minkowski_sum(const LatticeSet& a, const LatticeSet& b);

// Exact Euclidean volume of the convex hull, 0 if the points do not span
// the ambient dimension.
Rational euclidean_volume(const std::vector<Point>& points, int dim);

Polytope convex_hull(const LatticeSet& s);

// Extreme points only; shares coordinates with the input set.
std::vector<Point> hull_vertices(const std::vector<Point>& points, int dim);

// n! * (Euclidean volume of conv(s)); 0 when conv(s) is lower-dimensional.
BigInt lattice_volume(const LatticeSet& s);

// Lattice-normalized mixed volume of a square tuple via inclusion-exclusion
// over Euclidean volumes of Minkowski sums. Throws DimensionMismatch when
// the tuple is not square. Always a nonnegative integer.
BigInt mixed_volume(const LatticeTuple& t);

// Mixed volume of sets contained (after per-set shifts) in the lattice
// spanned by `basis` (echelon rows in Z^dim), measured in basis coordinates.
// Throws if some shifted set does not lie in the lattice.
BigInt mixed_volume_in_lattice(const std::vector<LatticeSet>& sets,
                               const std::vector<Point>& basis, int dim);

// Both sides of the product formula: B-sets live in Z^N (embedded into the
// first N coordinates of Z^N + Z^M), A-sets in Z^(N+M), p the projection to
// the last M coordinates. Returns (MV of the combined tuple, MV(pA) * MV(B)).
struct ProductFormulaSides {
    BigInt lhs;
    BigInt rhs;
};
ProductFormulaSides product_formula_check(const LatticeTuple& b_tuple, const LatticeTuple& a_tuple);

}  // namespace latgal

#endif
