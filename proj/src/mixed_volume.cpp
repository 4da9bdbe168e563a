#include "latgal/mixed_volume.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace latgal {

namespace {

// det of the d x d matrix whose rows are face diffs and p - face[0].
BigInt orient(const std::vector<Point>& pts, const std::vector<int>& face, const Point& p) {
    const std::size_t d = face.size();
    IntMatrix m(d, d);
    const Point& base = pts[face[0]];
    for (std::size_t i = 1; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i - 1, j) = pts[face[i]][j] - base[j];
    for (std::size_t j = 0; j < d; ++j) m.at(d - 1, j) = p[j] - base[j];
    return det(std::move(m));
}

// Same orientation with a rational query point; only the sign is needed.
int orient_sign_rational(const std::vector<Point>& pts, const std::vector<int>& face,
                         const std::vector<Rational>& q) {
    const std::size_t d = face.size();
    BigInt lcm = 1;
    for (const auto& c : q) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    IntMatrix m(d, d);
    const Point& base = pts[face[0]];
    for (std::size_t i = 1; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i - 1, j) = BigInt(pts[face[i]][j] - base[j]) * lcm;
    for (std::size_t j = 0; j < d; ++j)
        m.at(d - 1, j) = numerator(q[j]) * (lcm / denominator(q[j])) - BigInt(base[j]) * lcm;
    BigInt d_val = det(std::move(m));
    return d_val == 0 ? 0 : (d_val > 0 ? 1 : -1);
}

struct Facet {
    std::vector<int> verts;  // d point indices, sorted
    int sign;                // sign * orient(verts, x) > 0  <=>  x strictly beyond
};

struct HullResult {
    Rational volume;            // Euclidean volume, 0 for lower-dimensional input
    std::vector<Facet> facets;  // simplicial boundary (full-dimensional case only)
    std::vector<Point> points;  // deduplicated input points
    bool full_dim = false;
};

// Incremental beneath-beyond hull in dimension d with exact arithmetic.
// Facets weakly visible from the new point are discarded, which keeps the
// boundary a valid simplicial complex under coplanar degeneracies.
HullResult hull_nd(std::vector<Point> pts, int d) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    HullResult out;
    out.points = pts;
    if (d == 0 || pts.empty()) return out;

    // Greedy affinely independent start simplex.
    std::vector<int> simplex{0};
    std::vector<Point> diffs;
    for (std::size_t i = 1; i < pts.size() && static_cast<int>(simplex.size()) <= d; ++i) {
        diffs.push_back(sub(pts[i], pts[0]));
        if (hnf(IntMatrix::from_rows(diffs, d)).rank == static_cast<int>(diffs.size()))
            simplex.push_back(static_cast<int>(i));
        else
            diffs.pop_back();
    }
    if (static_cast<int>(simplex.size()) != d + 1) return out;  // volume 0
    out.full_dim = true;

    std::vector<Rational> interior(d, 0);
    for (int v : simplex)
        for (int j = 0; j < d; ++j) interior[j] += Rational(pts[v][j], d + 1);

    BigInt dfact = 1;
    for (int i = 2; i <= d; ++i) dfact *= i;

    {
        IntMatrix m(d, d);
        for (int i = 1; i <= d; ++i)
            for (int j = 0; j < d; ++j) m.at(i - 1, j) = pts[simplex[i]][j] - pts[simplex[0]][j];
        out.volume = Rational(abs(det(std::move(m))), dfact);
    }

    std::vector<Facet> facets;
    for (int omit = 0; omit <= d; ++omit) {
        Facet f;
        for (int i = 0; i <= d; ++i)
            if (i != omit) f.verts.push_back(simplex[i]);
        BigInt o = orient(pts, f.verts, pts[simplex[omit]]);
        f.sign = o > 0 ? -1 : 1;  // the omitted vertex is inside
        facets.push_back(std::move(f));
    }

    std::set<int> in_simplex(simplex.begin(), simplex.end());
    for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
        if (in_simplex.count(p)) continue;
        std::vector<char> visible(facets.size(), 0);
        bool any_strict = false;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            BigInt o = orient(pts, facets[f].verts, pts[p]) * facets[f].sign;
            if (o >= 0) {
                visible[f] = 1;
                if (o > 0) {
                    any_strict = true;
                    out.volume += Rational(o, dfact);
                }
            }
        }
        if (!any_strict) continue;

        // Horizon ridges: (d-1)-subsets incident to exactly one visible facet.
        std::map<std::vector<int>, int> ridge_count;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!visible[f]) continue;
            for (int omit = 0; omit < d; ++omit) {
                std::vector<int> ridge;
                for (int i = 0; i < d; ++i)
                    if (i != omit) ridge.push_back(facets[f].verts[i]);
                ++ridge_count[ridge];
            }
        }
        std::vector<Facet> next;
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (!visible[f]) next.push_back(std::move(facets[f]));
        for (const auto& [ridge, count] : ridge_count) {
            if (count != 1) continue;
            Facet f;
            f.verts = ridge;
            f.verts.push_back(p);
            std::sort(f.verts.begin(), f.verts.end());
            int s = orient_sign_rational(pts, f.verts, interior);
            f.sign = -s;
            next.push_back(std::move(f));
        }
        facets = std::move(next);
    }
    out.facets = std::move(facets);
    return out;
}

// Outward-agnostic facet normal via cofactor expansion.
std::vector<BigInt> facet_normal(const std::vector<Point>& pts, const std::vector<int>& verts, int d) {
    std::vector<BigInt> normal(d);
    const Point& base = pts[verts[0]];
    for (int drop = 0; drop < d; ++drop) {
        IntMatrix m(d - 1, d - 1);
        for (int i = 1; i < d; ++i) {
            int c = 0;
            for (int j = 0; j < d; ++j) {
                if (j == drop) continue;
                m.at(i - 1, c++) = pts[verts[i]][j] - base[j];
            }
        }
        BigInt minor = det(std::move(m));
        normal[drop] = (drop % 2 == 0) ? minor : -minor;
    }
    return normal;
}

std::vector<int> hull_vertex_indices(const HullResult& hull, int d) {
    std::map<int, std::vector<std::size_t>> incident;
    for (std::size_t f = 0; f < hull.facets.size(); ++f)
        for (int v : hull.facets[f].verts) incident[v].push_back(f);
    std::vector<int> verts;
    std::map<std::vector<int>, std::vector<BigInt>> normal_cache;  // keyed by facet verts
    for (const auto& [v, fs] : incident) {
        std::vector<Point> normals;
        for (std::size_t f : fs) {
            auto it = normal_cache.find(hull.facets[f].verts);
            if (it == normal_cache.end())
                it = normal_cache.emplace(hull.facets[f].verts,
                                          facet_normal(hull.points, hull.facets[f].verts, d))
                         .first;
            Point n(d);
            bool fits = true;
            for (int j = 0; j < d; ++j) {
                const BigInt& c = it->second[j];
                if (c > std::numeric_limits<long long>::max() || c < std::numeric_limits<long long>::min()) {
                    fits = false;
                    break;
                }
                n[j] = static_cast<long long>(c);
            }
            if (!fits) throw std::overflow_error("facet normal exceeds 64-bit range");
            normals.push_back(std::move(n));
        }
        if (hnf(IntMatrix::from_rows(normals, d)).rank == d) verts.push_back(v);
    }
    return verts;
}

// Fast exact path for the plane: monotone chain + shoelace (doubled area).
std::vector<Point> hull_2d(std::vector<Point> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() <= 2) return p;
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (__int128)(a[0] - o[0]) * (b[1] - o[1]) - (__int128)(a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull;
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t start = hull.size() + 2;
        for (const auto& q : p) {
            while (hull.size() >= start && cross(hull[hull.size() - 2], hull.back(), q) <= 0)
                hull.pop_back();
            hull.push_back(q);
        }
        hull.pop_back();
        std::reverse(p.begin(), p.end());
    }
    return hull;
}

BigInt doubled_area_2d(const std::vector<Point>& pts) {
    auto hull = hull_2d(pts);
    if (hull.size() < 3) return 0;
    __int128 acc = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        acc += (__int128)a[0] * b[1] - (__int128)b[0] * a[1];
    }
    if (acc < 0) acc = -acc;
    return BigInt(static_cast<long long>(acc >> 64)) * (BigInt(1) << 64) +
           BigInt(static_cast<unsigned long long>(acc & ~0ULL));
}

std::vector<Point> sum_of_vertex_sets(const std::vector<std::vector<Point>>& vertex_sets, int dim) {
    std::vector<Point> acc{Point(dim, 0)};
    for (const auto& vs : vertex_sets) {
        std::vector<Point> next;
        next.reserve(acc.size() * vs.size());
        for (const auto& a : acc)
            for (const auto& b : vs) next.push_back(add(a, b));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        // Prune to extreme points to keep intermediate sums small.
        if (dim == 2)
            next = hull_2d(std::move(next));
        else if (next.size() > 2 * static_cast<std::size_t>(dim) + 2)
            next = hull_vertices(next, dim);
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

LatticeSet minkowski_sum(const LatticeSet& a, const LatticeSet& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw DimensionMismatch("minkowski_sum requires equal ambient dimensions");
    std::vector<Point> pts;
    pts.reserve(a.size() * b.size());
    for (const auto& p : a.points)
        for (const auto& q : b.points) pts.push_back(add(p, q));
    return LatticeSet(a.ambient_dim, std::move(pts));
}

Rational euclidean_volume(const std::vector<Point>& points, int dim) {
    if (dim == 2) return Rational(doubled_area_2d(points), 2);
    return hull_nd(points, dim).volume;
}

std::vector<Point> hull_vertices(const std::vector<Point>& points, int dim) {
    if (dim == 2) {
        auto h = hull_2d(points);
        std::sort(h.begin(), h.end());
        return h;
    }
    HullResult h = hull_nd(points, dim);
    if (!h.full_dim) {
        // Flatten into the difference lattice and recurse.
        if (h.points.size() <= 1) return h.points;
        std::vector<Point> diffs;
        for (std::size_t i = 1; i < h.points.size(); ++i) diffs.push_back(sub(h.points[i], h.points[0]));
        SublatticeInfo lat = generated_lattice(diffs, dim);
        if (lat.rank == 0) return {h.points[0]};
        std::vector<Point> flat;
        for (const auto& p : h.points) {
            auto c = lattice_coordinates(lat.basis, dim, sub(p, h.points[0]));
            Point q(lat.rank);
            for (int j = 0; j < lat.rank; ++j) q[j] = static_cast<long long>((*c)[j]);
            flat.push_back(std::move(q));
        }
        std::vector<Point> flat_verts = hull_vertices(flat, lat.rank);
        std::set<Point> keep(flat_verts.begin(), flat_verts.end());
        std::vector<Point> out;
        for (std::size_t i = 0; i < h.points.size(); ++i)
            if (keep.count(flat[i])) out.push_back(h.points[i]);
        return out;
    }
    std::vector<int> idx = hull_vertex_indices(h, dim);
    std::vector<Point> out;
    for (int i : idx) out.push_back(h.points[i]);
    std::sort(out.begin(), out.end());
    return out;
}

Polytope convex_hull(const LatticeSet& s) {
    Polytope p;
    p.ambient_dim = s.ambient_dim;
    p.vertices = hull_vertices(s.points, s.ambient_dim);
    std::vector<Point> diffs;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) diffs.push_back(sub(p.vertices[i], p.vertices[0]));
    p.intrinsic_dim = diffs.empty() ? 0 : generated_lattice(diffs, s.ambient_dim).rank;
    return p;
}

BigInt lattice_volume(const LatticeSet& s) {
    const int n = s.ambient_dim;
    if (n == 0) return 0;
    Rational vol = euclidean_volume(s.points, n);
    BigInt nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;
    Rational scaled = vol * nfact;
    if (denominator(scaled) != 1)
        throw std::logic_error("lattice volume of a lattice polytope must be integral");
    return numerator(scaled);
}

BigInt mixed_volume(const LatticeTuple& t) {
    const int n = t.ambient_dim;
    if (!t.square())
        throw DimensionMismatch("mixed_volume requires a square tuple (k = n)");
    if (n == 0) return 0;

    // Early out for rank-deficient tuples (Minkowski: dependent => MV 0).
    {
        auto diffs = all_within_set_differences(t);
        if (generated_lattice(diffs, n).rank < n) return 0;
    }

    std::vector<std::vector<Point>> vertex_sets;
    for (const auto& s : t.sets) vertex_sets.push_back(hull_vertices(s.points, n));

    Rational acc = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::vector<Point>> chosen;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) chosen.push_back(vertex_sets[i]);
        auto sum_pts = sum_of_vertex_sets(chosen, n);
        Rational vol = euclidean_volume(sum_pts, n);
        int sign = ((n - static_cast<int>(chosen.size())) % 2 == 0) ? 1 : -1;
        acc += sign * vol;
    }
    if (denominator(acc) != 1) throw std::logic_error("mixed volume must be integral");
    BigInt v = numerator(acc);
    if (v < 0) throw std::logic_error("mixed volume must be nonnegative");
    return v;
}

BigInt mixed_volume_in_lattice(const std::vector<LatticeSet>& sets, const std::vector<Point>& basis,
                               int dim) {
    const int r = static_cast<int>(basis.size());
    std::vector<LatticeSet> flat;
    for (const auto& s : sets) {
        LatticeSet shifted = shift_to_contain_zero(s);
        std::vector<Point> pts;
        for (const auto& p : shifted.points) {
            auto c = lattice_coordinates(basis, dim, p);
            if (!c) throw std::invalid_argument("set does not lie in the given lattice after shifting");
            Point q(r);
            for (int j = 0; j < r; ++j) q[j] = static_cast<long long>((*c)[j]);
            pts.push_back(std::move(q));
        }
        flat.emplace_back(r, std::move(pts));
    }
    return mixed_volume(LatticeTuple(r, std::move(flat)));
}

ProductFormulaSides product_formula_check(const LatticeTuple& b_tuple, const LatticeTuple& a_tuple) {
    const int n_b = b_tuple.ambient_dim;
    const int n_total = a_tuple.ambient_dim;
    const int m = n_total - n_b;
    if (m < 0 || static_cast<int>(b_tuple.sets.size()) != n_b ||
        static_cast<int>(a_tuple.sets.size()) != m)
        throw DimensionMismatch("product formula requires N B-sets in Z^N and M A-sets in Z^(N+M)");

    std::vector<LatticeSet> combined = a_tuple.sets;
    for (const auto& s : b_tuple.sets) {
        std::vector<Point> pts;
        for (const auto& p : s.points) {
            Point q(n_total, 0);
            std::copy(p.begin(), p.end(), q.begin());
            pts.push_back(std::move(q));
        }
        combined.emplace_back(n_total, std::move(pts));
    }
    ProductFormulaSides out;
    out.lhs = mixed_volume(LatticeTuple(n_total, std::move(combined)));

    BigInt mv_b = (n_b == 0) ? BigInt(1) : mixed_volume(b_tuple);
    BigInt mv_pa = 1;
    if (m > 0) {
        std::vector<LatticeSet> projected;
        for (const auto& s : a_tuple.sets) {
            std::vector<Point> pts;
            for (const auto& p : s.points) pts.emplace_back(p.begin() + n_b, p.end());
            projected.emplace_back(m, std::move(pts));
        }
        mv_pa = mixed_volume(LatticeTuple(m, std::move(projected)));
    }
    out.rhs = mv_pa * mv_b;
    return out;
}

}  // namespace latgal
