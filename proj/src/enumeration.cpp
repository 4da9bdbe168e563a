#include "latgal/enumeration.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "latgal/mixed_volume.hpp"
#include "latgal/tuple_analysis.hpp"

namespace latgal {

namespace {

long long cross3(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<Point> hull_chain(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> hull;
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t start = hull.size() + 2;
        for (const auto& p : pts) {
            while (hull.size() >= start &&
                   cross3(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    return hull;
}

long long doubled_area(const std::vector<Point>& hull) {
    long long a = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& p = hull[i];
        const Point& q = hull[(i + 1) % hull.size()];
        a += p[0] * q[1] - p[1] * q[0];
    }
    return std::abs(a);
}

long long boundary_points(const std::vector<Point>& hull) {
    long long b = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& p = hull[i];
        const Point& q = hull[(i + 1) % hull.size()];
        b += std::gcd(std::abs(q[0] - p[0]), std::abs(q[1] - p[1]));
    }
    return b;
}

// lattice length of a collinear point set (number of unit lattice steps
// between its endpoints along the common line)
long long collinear_length(const std::vector<Point>& pts) {
    Point lo = *std::min_element(pts.begin(), pts.end());
    Point hi = *std::max_element(pts.begin(), pts.end());
    return std::gcd(std::abs(hi[0] - lo[0]), std::abs(hi[1] - lo[1]));
}

int dim_of(const std::vector<Point>& pts) {
    if (pts.size() <= 1) return 0;
    for (std::size_t i = 2; i < pts.size(); ++i)
        if (cross3(pts[0], pts[1], pts[i]) != 0) return 2;
    return pts.size() >= 2 && pts[0] != pts[1] ? 1 : 0;
}

// set carries every lattice point of its own convex hull
bool lattice_convex(const std::vector<Point>& pts) {
    const long long n = static_cast<long long>(pts.size());
    int d = dim_of(pts);
    if (d == 0) return true;
    if (d == 1) return n == collinear_length(pts) + 1;
    auto hull = hull_chain(pts);
    // Pick: #points = area + boundary/2 + 1, doubled to stay integral
    return 2 * n == doubled_area(hull) + boundary_points(hull) + 2;
}

struct Candidate {
    std::vector<Point> pts;  // sorted, lex-min at the origin
    std::vector<Point> hull;
    long long vol = 0;  // lattice volume = doubled euclidean area
    Point longest_diff;
};

struct PairClass {
    LatticeTuple representative;
    BigInt mv = 0;
    std::vector<Point> witness_a, witness_b;  // one concrete in-box instance
    bool maximal = true;
};

LatticeTuple pair_tuple(const std::vector<Point>& a, const std::vector<Point>& b) {
    return LatticeTuple(2, {LatticeSet(2, a), LatticeSet(2, b)});
}

// plane mixed volume through 2 MV(A,B) = vol(A+B) - vol(A) - vol(B), all in
// machine integers; coordinates here are far from overflow
long long mv2(const std::vector<Point>& hull_a, const std::vector<Point>& hull_b) {
    std::vector<Point> sum;
    sum.reserve(hull_a.size() * hull_b.size());
    for (const auto& p : hull_a)
        for (const auto& q : hull_b) sum.push_back({p[0] + q[0], p[1] + q[1]});
    long long total = doubled_area(hull_chain(std::move(sum)));
    return (total - doubled_area(hull_a) - doubled_area(hull_b)) / 2;
}

// any point whose addition keeps the set lattice-convex and the pair within
// the volume ceiling disqualifies the pair from maximality
bool has_valid_extension(const std::vector<Point>& grow, const std::vector<Point>& other,
                         long long v_max) {
    long long xlo = grow[0][0], xhi = grow[0][0], ylo = grow[0][1], yhi = grow[0][1];
    for (const auto& p : grow) {
        xlo = std::min(xlo, p[0]);
        xhi = std::max(xhi, p[0]);
        ylo = std::min(ylo, p[1]);
        yhi = std::max(yhi, p[1]);
    }
    const long long margin = 2 * v_max;
    for (long long x = xlo - margin; x <= xhi + margin; ++x)
        for (long long y = ylo - margin; y <= yhi + margin; ++y) {
            Point q = {x, y};
            if (std::binary_search(grow.begin(), grow.end(), q)) continue;
            std::vector<Point> ext = grow;
            ext.insert(std::lower_bound(ext.begin(), ext.end(), q), q);
            if (!lattice_convex(ext)) continue;
            if (mv2(hull_chain(ext), hull_chain(other)) <= v_max) return true;
        }
    return false;
}

std::vector<EnumeratedTuple> enumerate_segments(long long v_max) {
    std::vector<EnumeratedTuple> out;
    for (long long d = 1; d <= v_max; ++d) {
        std::vector<Point> pts;
        for (long long i = 0; i <= d; ++i) pts.push_back({i});
        LatticeTuple t(1, {LatticeSet(1, std::move(pts))});
        EnumeratedTuple e;
        e.normal_form = unimodular_normal_form(t);
        e.tuple = std::move(t);
        e.mv = d;
        e.maximal = d == v_max;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::vector<EnumeratedTuple> enumerate_irreducible(const EnumerationBounds& bounds) {
    if (bounds.v_max < 1 || bounds.v_max > 4)
        throw BoundsTooLarge("v_max must be between 1 and 4");
    if (bounds.n == 1) return enumerate_segments(bounds.v_max);
    if (bounds.n != 2) throw BoundsTooLarge("only n = 1 and n = 2 are supported");
    const long long r = bounds.box_radius > 0 ? bounds.box_radius : bounds.v_max + 1;
    if (r > 12) throw BoundsTooLarge("box radius beyond desk scale");
    const int max_points =
        bounds.max_points > 0 ? bounds.max_points
                              : static_cast<int>(bounds.v_max * bounds.v_max + 6);
    const long long vol_cap = bounds.v_max * bounds.v_max;  // MV^2 >= vol(A)*vol(B)

    // every set is translated so its lexicographic minimum sits at the
    // origin; the domain holds all lex-larger points of a radius-r box
    std::vector<Point> domain;
    for (long long x = 0; x <= 2 * r; ++x)
        for (long long y = (x == 0 ? 0 : -2 * r); y <= 2 * r; ++y) domain.push_back({x, y});
    std::sort(domain.begin(), domain.end());

    // grow lattice-convex sets point by point in lexicographic order; each
    // set has exactly one growth history (peel its lex-max point)
    std::vector<Candidate> candidates;
    std::vector<Point> current = {{0, 0}};
    auto grow = [&](auto&& self, std::size_t next_idx) -> void {
        int d = dim_of(current);
        if (d == 2) {
            Candidate c;
            c.pts = current;
            c.hull = hull_chain(current);
            c.vol = doubled_area(c.hull);
            if (c.vol <= vol_cap) candidates.push_back(std::move(c));
        }
        if (static_cast<int>(current.size()) >= max_points) return;
        for (std::size_t i = next_idx; i < domain.size(); ++i) {
            current.push_back(domain[i]);
            bool keep = lattice_convex(current);
            if (keep) {
                int nd = dim_of(current);
                if (nd == 1 && collinear_length(current) > vol_cap) keep = false;
                if (nd == 2 && doubled_area(hull_chain(current)) > vol_cap) keep = false;
            }
            if (keep) self(self, i + 1);
            current.pop_back();
        }
    };
    grow(grow, 1);

    for (auto& c : candidates) {
        long long best = -1;
        for (std::size_t i = 0; i < c.hull.size(); ++i)
            for (std::size_t j = i + 1; j < c.hull.size(); ++j) {
                Point d = sub(c.hull[j], c.hull[i]);
                if (d[0] * d[0] + d[1] * d[1] > best) {
                    best = d[0] * d[0] + d[1] * d[1];
                    c.longest_diff = d;
                }
            }
    }

    std::map<std::string, PairClass> classes;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i; j < candidates.size(); ++j) {
            const Candidate& a = candidates[i];
            const Candidate& b = candidates[j];
            if (a.vol * b.vol > vol_cap * vol_cap) continue;
            // a mixed volume dominates the cross product of any two
            // difference vectors, one from each set
            long long cr = a.longest_diff[0] * b.longest_diff[1] -
                           a.longest_diff[1] * b.longest_diff[0];
            if (std::abs(cr) > bounds.v_max) continue;
            long long mv = mv2(a.hull, b.hull);
            if (mv < 1 || mv > bounds.v_max) continue;
            LatticeTuple t = pair_tuple(a.pts, b.pts);
            auto nf = unimodular_normal_form_full(t);
            auto [it, fresh] = classes.try_emplace(nf.encoding);
            if (fresh) {
                it->second.representative = std::move(nf.representative);
                it->second.mv = mv;
                it->second.witness_a = a.pts;
                it->second.witness_b = b.pts;
            }
        }

    std::vector<EnumeratedTuple> out;
    for (auto& [encoding, cls] : classes) {
        EnumeratedTuple e;
        e.tuple = std::move(cls.representative);
        e.normal_form = encoding;
        e.mv = cls.mv;
        e.maximal = !has_valid_extension(cls.witness_a, cls.witness_b, bounds.v_max) &&
                    !has_valid_extension(cls.witness_b, cls.witness_a, bounds.v_max);
        out.push_back(std::move(e));
    }
    return out;  // map iteration already sorted by encoding
}

}  // namespace latgal
