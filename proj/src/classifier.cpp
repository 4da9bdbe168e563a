#include "latgal/classifier.hpp"

#include <algorithm>

#include "latgal/mixed_volume.hpp"

namespace latgal {

namespace {

ReductionNode build_tree(const LatticeTuple& input, long long k) {
    ReductionNode node;
    node.tuple = shift_to_contain_zero(input);
    node.mv = mixed_volume(node.tuple);

    if (node.mv == 0) {
        // Linearly dependent tuple: no torus roots at all, so nothing to
        // solve; flagged rather than silently treated as a regular leaf.
        node.kind = NodeKind::Leaf;
        node.degenerate = true;
        node.solvable = true;
        return node;
    }
    if (auto red = lattice_reduction(node.tuple)) {
        node.kind = NodeKind::LatticeReduce;
        node.children.push_back(build_tree(red->reduced, k));
        node.reduce_data = std::move(red);
        node.solvable = node.children[0].solvable;
        return node;
    }
    if (auto sp = find_split(node.tuple)) {
        node.kind = NodeKind::Split;
        node.children.push_back(build_tree(sp->inner, k));
        node.children.push_back(build_tree(sp->quotient, k));
        node.split_data = std::move(sp);
        node.solvable = node.children[0].solvable && node.children[1].solvable;
        return node;
    }
    node.kind = NodeKind::Leaf;
    node.solvable = node.mv <= k;
    return node;
}

}  // namespace

ClassificationReport classify_solvability(const LatticeTuple& t, long long k) {
    if (!t.square()) throw DimensionMismatch("classify_solvability requires a square tuple");
    if (k < 1) throw std::invalid_argument("k must be positive");
    ClassificationReport report;
    report.k_radical = k;
    report.root.kind = NodeKind::Shift;
    report.root.tuple = t;
    report.root.children.push_back(build_tree(t, k));
    report.root.mv = report.root.children[0].mv;
    report.root.solvable = report.root.children[0].solvable;
    report.solvable = report.root.solvable;
    report.mixed_volume = report.root.mv;
    return report;
}

MonodromyPrediction predict_monodromy(const LatticeTuple& t) {
    if (!t.square()) throw DimensionMismatch("predict_monodromy requires a square tuple");
    BigInt mv = mixed_volume(t);
    if (mv < 1) throw DimensionMismatch("predict_monodromy requires positive mixed volume");

    MonodromyPrediction out;
    out.degree = mv;
    if (mv == 1) {
        out.kind = MonodromyPrediction::Kind::Symmetric;
        return out;
    }

    StructureFlags flags = structure_flags(t);
    if (flags.prime) {
        out.kind = MonodromyPrediction::Kind::PrimeCyclic;
        out.p = flags.prime->p;
        return out;
    }
    if (!flags.numerically_reduced) {
        out.kind = MonodromyPrediction::Kind::Imprimitive;
        out.witness = flags.numerically_non_reduced_witness;
        out.block_size = out.witness->index;
        out.block_count = mv / out.block_size;
        if (auto red = lattice_reduction(shift_to_contain_zero(t))) {
            out.has_wreath_refinement = true;
            out.wreath_coker = red->coker_divisors;
            out.wreath_d = mixed_volume(red->reduced);
        }
        return out;
    }
    if (!flags.numerically_irreducible) {
        out.kind = MonodromyPrediction::Kind::Imprimitive;
        out.witness = flags.numerically_reducible_witness;
        out.block_count = out.witness->outer_mv;
        out.block_size = mv / out.block_count;
        return out;
    }
    if (flags.reduced && flags.irreducible) {
        out.kind = MonodromyPrediction::Kind::Symmetric;
        return out;
    }

    // Numerically reduced and irreducible, yet not reduced or not
    // irreducible: the obstruction carries mixed volume 1 and the group
    // equals that of the nontrivial part.
    LatticeTuple shifted = shift_to_contain_zero(t);
    if (lattice_reduction(shifted)) {
        // All proper refinements have mixed volume <= 1, which forces a
        // prime index; odd primes were caught above, so the index is 2 and
        // the two roots in each coset are swapped freely.
        out.kind = MonodromyPrediction::Kind::Symmetric;
        out.degree = mv;
        return out;
    }
    if (auto sp = find_split(shifted)) {
        BigInt inner_mv = mixed_volume(sp->inner);
        MonodromyPrediction rec =
            predict_monodromy(inner_mv == mv ? sp->inner : sp->quotient);
        return rec;
    }
    throw std::logic_error("unreachable: tuple is neither reduced-irreducible nor reducible");
}

LatticeSet cone_over(const LatticeSet& b, long long h) {
    if (h < 1) throw std::invalid_argument("cone height must be positive");
    const int m = b.ambient_dim;
    std::vector<Point> pts;
    pts.push_back(Point(m + 1, 0));
    for (const auto& p : b.points) {
        Point q(m + 1);
        std::copy(p.begin(), p.end(), q.begin());
        q[m] = h;
        pts.push_back(std::move(q));
    }
    return LatticeSet(m + 1, std::move(pts));
}

PolySystem cone_reduce(const PolySystem& f) {
    const int m = static_cast<int>(f.tuple.sets.size()) - 1;
    if (m < 1) throw std::invalid_argument("cone_reduce needs at least two equations");
    const int dim = f.tuple.ambient_dim;
    if (dim != m + 1) throw DimensionMismatch("cone_reduce expects m+1 equations in m+1 variables");

    // All sets must share the cone support: the origin plus base x {h}.
    const LatticeSet& support = f.tuple.sets[0];
    for (const auto& s : f.tuple.sets)
        if (!(s == support))
            throw std::invalid_argument("cone_reduce expects a common cone support");
    const Point origin(dim, 0);
    long long h = 0;
    std::vector<Point> base_pts;
    std::size_t origin_idx = support.size();
    for (std::size_t j = 0; j < support.size(); ++j) {
        const Point& p = support.points[j];
        if (p == origin) {
            origin_idx = j;
            continue;
        }
        if (h == 0) h = p[dim - 1];
        if (p[dim - 1] != h || h <= 0)
            throw std::invalid_argument("support is not a cone over a common height");
        base_pts.emplace_back(p.begin(), p.end() - 1);
    }
    if (origin_idx == support.size())
        throw std::invalid_argument("cone support is missing the apex at the origin");

    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        if (f.coeffs[i][origin_idx] == Complex(0.0))
            throw ZeroConstantTerm("equation has zero constant term");

    PolySystem g;
    std::vector<LatticeSet> sets;
    for (int i = 1; i <= m; ++i) {
        std::vector<Complex> row;
        for (std::size_t j = 0; j < support.size(); ++j) {
            if (j == origin_idx) continue;
            row.push_back(f.coeffs[i][j] / f.coeffs[i][origin_idx] -
                          f.coeffs[0][j] / f.coeffs[0][origin_idx]);
        }
        sets.emplace_back(m, base_pts);
        g.coeffs.push_back(std::move(row));
    }
    g.tuple = LatticeTuple(m, std::move(sets));
    return g;
}

}  // namespace latgal
