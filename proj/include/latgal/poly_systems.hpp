#ifndef LATGAL_POLY_SYSTEMS_HPP
#define LATGAL_POLY_SYSTEMS_HPP

#include <complex>
#include <cstdint>

#include "latgal/lattice.hpp"

// Sparse Laurent polynomial systems on a lattice tuple: generic sampling,
// evaluation, and numerical solving of all torus roots at desk scale.
namespace latgal {

using Complex = std::complex<double>;

// coeffs[i][j] belongs to tuple.sets[i].points[j].
using CoeffMatrix = std::vector<std::vector<Complex>>;

struct PolySystem {
    LatticeTuple tuple;
    CoeffMatrix coeffs;
};

struct DegenerateSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PathFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroConstantTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Independent standard complex Gaussian coefficients, deterministic per seed.
PolySystem sample_generic(const LatticeTuple& t, std::uint64_t seed);

struct RootSet {
    std::vector<std::vector<Complex>> roots;  // sorted lexicographically by (Re, Im)
    std::vector<double> residuals;            // per root, max_i |f_i(root)|
    int off_torus_discarded = 0;
    int retries_used = 0;
};

struct SolveOptions {
    double dedup_tol = 1e-8;     // relative root-matching tolerance
    double residual_tol = 1e-9;  // certification tolerance
    double torus_min = 1e-8;     // coordinates outside [torus_min, torus_max]
    double torus_max = 1e8;      //   in absolute value count as off-torus
    double min_step = 1e-12;     // path tracking step underflow bound
    int max_retries = 4;         // internal re-randomizations before giving up
    int max_dim = 6;             // Unsupported beyond this many variables
    std::uint64_t seed = 12001;  // internal randomization stream
    enum class Strategy { Auto, Resultant, Homotopy } strategy = Strategy::Auto;
};

// All torus roots of a generic square system; |roots| = mixed_volume(tuple)
// or DegenerateSystem after the retry budget. Strategy: n = 1 simultaneous
// iteration, n = 2 hidden-variable resultant, n >= 3 total-degree homotopy.
RootSet solve_system(const PolySystem& s, const SolveOptions& opts = {});

// values[i] = f_i(x); jac[i*n + j] = df_i/dx_j. Requires all x_j nonzero.
void evaluate_and_jacobian(const PolySystem& s, const std::vector<Complex>& x,
                           std::vector<Complex>& values, std::vector<Complex>& jac);

// Continues a root of the system with coefficients c0 on `t` along the
// straight coefficient segment to c1; throws PathFailure on step underflow,
// near-singular correction, or drift off the torus.
std::vector<Complex> track_linear_segment(const LatticeTuple& t, const CoeffMatrix& c0,
                                          const CoeffMatrix& c1, std::vector<Complex> x,
                                          const SolveOptions& opts = {});

// All roots of sum_k coeffs[k] z^k (ascending degree) by Aberth-Ehrlich
// simultaneous iteration with Newton polish.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

}  // namespace latgal

#endif
