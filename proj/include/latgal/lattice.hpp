#ifndef LATGAL_LATTICE_HPP
#define LATGAL_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact integer-lattice primitives: points, sets, tuples, Smith/Hermite
// normal forms, generated sublattices and saturation, and a canonical
// encoding of tuples up to lattice automorphisms and per-set shifts.
namespace latgal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exponent vector a in Z^n.
using Point = std::vector<long long>;

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite set of lattice points, deduplicated and kept sorted.
struct LatticeSet {
    int ambient_dim = 0;
    std::vector<Point> points;

    LatticeSet() = default;
    LatticeSet(int dim, std::vector<Point> pts);

    std::size_t size() const { return points.size(); }
    bool operator==(const LatticeSet&) const = default;
};

// Ordered tuple (A_1, ..., A_k) of finite sets in a common Z^n.
struct LatticeTuple {
    int ambient_dim = 0;
    std::vector<LatticeSet> sets;

    LatticeTuple() = default;
    LatticeTuple(int dim, std::vector<LatticeSet> s);

    std::size_t size() const { return sets.size(); }
    bool square() const { return static_cast<int>(sets.size()) == ambient_dim; }
    bool operator==(const LatticeTuple&) const = default;
};

// Dense integer matrix over arbitrary-precision entries. Matrices here are
// tiny (difference lattices of desk-scale tuples), so correctness wins over
// any packing cleverness.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<BigInt> data;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    BigInt& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<Point>& rows, std::size_t dim);

    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix&) const = default;
};

// left * M * right = diag(divisors), both transforms unimodular, and the
// divisors satisfy d1 | d2 | ... with exactly `rank` of them nonzero.
struct SnfDecomposition {
    IntMatrix left;
    IntMatrix right;
    std::vector<BigInt> divisors;
    int rank = 0;
};

SnfDecomposition snf(const IntMatrix& m);

// Row-style Hermite normal form: returns H with H = U * M for unimodular U,
// H in row echelon form with positive pivots and reduced entries above them.
// Zero rows are dropped from H.
struct HnfResult {
    IntMatrix h;          // rank x cols, canonical
    IntMatrix transform;  // rows x rows unimodular, transform * M has h on top
    int rank = 0;
};

HnfResult hnf(const IntMatrix& m);

// The lattice generated by a list of integer vectors.
struct SublatticeInfo {
    std::vector<Point> basis;  // rank vectors, rows of the HNF basis
    int rank = 0;
    BigInt saturation_index = 1;  // product of nonzero elementary divisors
};

SublatticeInfo generated_lattice(const std::vector<Point>& vectors, int dim);

// Exact determinant (Bareiss fraction-free elimination).
BigInt det(IntMatrix m);

// Inverse of a matrix with determinant +-1; throws std::invalid_argument otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

// HNF basis of the saturation of the lattice generated by `vectors`:
// the largest sublattice of Z^dim with the same rational span.
std::vector<Point> saturation_basis(const std::vector<Point>& vectors, int dim);

// Membership and coordinates of v in the row lattice spanned by `basis`.
std::optional<std::vector<BigInt>> lattice_coordinates(const std::vector<Point>& basis,
                                                       int dim, const Point& v);

// Canonical byte encoding of a tuple, identical for tuples related by a
// lattice automorphism composed with independent per-set shifts. Canonicity
// is exact for tuples whose difference lattice has full rank; lower-rank
// tuples are first flattened to a basis of their generated lattice, which
// identifies some embeddings that differ by how the sublattice sits in Z^n.
std::string unimodular_normal_form(const LatticeTuple& t);

// Same minimization, but also returns the transformed representative tuple.
struct NormalFormResult {
    std::string encoding;
    LatticeTuple representative;  // in Z^rank of the difference lattice
};
NormalFormResult unimodular_normal_form_full(const LatticeTuple& t);

// Small conveniences shared across modules.
Point sub(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);
std::vector<Point> within_set_differences(const LatticeSet& s);
std::vector<Point> all_within_set_differences(const LatticeTuple& t);
LatticeSet shift_to_contain_zero(const LatticeSet& s);
LatticeTuple shift_to_contain_zero(const LatticeTuple& t);

}  // namespace latgal

#endif
