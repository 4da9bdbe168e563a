#ifndef LATGAL_TESTS_ORACLES_HPP
#define LATGAL_TESTS_ORACLES_HPP

// Slow, independent reference implementations used to cross-check the
// library. Everything here favors obviousness over speed: cofactor
// determinants, gift-wrapping hulls, Pick's theorem by brute point counting.

#include <algorithm>
#include <random>
#include <vector>

#include "latgal/lattice.hpp"

namespace oracles {

using latgal::BigInt;
using latgal::IntMatrix;
using latgal::Point;

// Cofactor expansion; exponential, fine for the tiny matrices in tests.
inline BigInt det_cofactor(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::logic_error("square only");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    BigInt acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t c = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) minor.at(i - 1, c++) = m.at(i, k);
        }
        BigInt term = m.at(0, j) * det_cofactor(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// gcd of all k x k minors of m (0 when every minor vanishes).
inline BigInt minor_gcd(const IntMatrix& m, std::size_t k) {
    std::vector<std::size_t> rows(k), cols(k);
    BigInt g = 0;
    std::vector<std::size_t> ridx, cidx;
    // Enumerate k-subsets of rows and columns.
    auto subsets = [](std::size_t n, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, std::size_t start) -> void {
            if (cur.size() == k) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    };
    for (const auto& rs : subsets(m.rows, k))
        for (const auto& cs : subsets(m.cols, k)) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            g = boost::multiprecision::gcd(g, det_cofactor(sub));
        }
    return boost::multiprecision::abs(g);
}

// Gift-wrapping convex hull in the plane, counterclockwise.
inline std::vector<Point> jarvis_hull_2d(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return BigInt(a[0] - o[0]) * (b[1] - o[1]) - BigInt(a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull;
    std::size_t start = 0;  // pts sorted, so pts[0] is lex-min and extreme
    std::size_t cur = start;
    do {
        hull.push_back(pts[cur]);
        std::size_t next = (cur + 1) % pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == cur) continue;
            BigInt c = cross(pts[cur], pts[next], pts[i]);
            if (c < 0) next = i;
            else if (c == 0) {
                // Collinear: take the farther point.
                BigInt d1 = BigInt(pts[next][0] - pts[cur][0]) * (pts[next][0] - pts[cur][0]) +
                            BigInt(pts[next][1] - pts[cur][1]) * (pts[next][1] - pts[cur][1]);
                BigInt d2 = BigInt(pts[i][0] - pts[cur][0]) * (pts[i][0] - pts[cur][0]) +
                            BigInt(pts[i][1] - pts[cur][1]) * (pts[i][1] - pts[cur][1]);
                if (d2 > d1) next = i;
            }
        }
        cur = next;
    } while (cur != start && hull.size() <= pts.size());
    return hull;
}

// Doubled lattice area of conv(pts) by Pick's theorem: 2A = 2I + B - 2,
// with interior/boundary classification done point by point over the
// bounding box against the gift-wrapped hull.
inline BigInt pick_doubled_area_2d(const std::vector<Point>& pts) {
    auto hull = jarvis_hull_2d(pts);
    if (hull.size() < 3) return 0;
    long long xlo = hull[0][0], xhi = xlo, ylo = hull[0][1], yhi = ylo;
    for (const auto& p : hull) {
        xlo = std::min(xlo, p[0]);
        xhi = std::max(xhi, p[0]);
        ylo = std::min(ylo, p[1]);
        yhi = std::max(yhi, p[1]);
    }
    long long interior = 0, boundary = 0;
    for (long long x = xlo; x <= xhi; ++x)
        for (long long y = ylo; y <= yhi; ++y) {
            bool on_edge = false, inside = true;
            for (std::size_t i = 0; i < hull.size(); ++i) {
                const Point& a = hull[i];
                const Point& b = hull[(i + 1) % hull.size()];
                BigInt c = BigInt(b[0] - a[0]) * (y - a[1]) - BigInt(b[1] - a[1]) * (x - a[0]);
                if (c < 0) {
                    inside = false;
                    break;
                }
                if (c == 0 && std::min(a[0], b[0]) <= x && x <= std::max(a[0], b[0]) &&
                    std::min(a[1], b[1]) <= y && y <= std::max(a[1], b[1]))
                    on_edge = true;
            }
            if (!inside) continue;
            if (on_edge) ++boundary;
            else ++interior;
        }
    return 2 * BigInt(interior) + BigInt(boundary) - 2;
}

// Random unimodular matrix as a short product of elementary operations.
inline IntMatrix random_unimodular(int n, std::mt19937_64& rng, int ops = 12) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> row(0, n - 1), coef(-3, 3), kind(0, 2);
    for (int t = 0; t < ops; ++t) {
        int i = row(rng), j = row(rng);
        if (i == j) continue;
        switch (kind(rng)) {
            case 0: {  // row_i += c * row_j
                BigInt c = coef(rng);
                for (int k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
                break;
            }
            case 1:
                for (int k = 0; k < n; ++k) std::swap(u.at(i, k), u.at(j, k));
                break;
            default:
                for (int k = 0; k < n; ++k) u.at(i, k) = -u.at(i, k);
        }
    }
    return u;
}

inline Point apply_matrix(const IntMatrix& u, const Point& p) {
    Point q(u.rows, 0);
    for (std::size_t i = 0; i < u.rows; ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < u.cols; ++j) acc += u.at(i, j) * p[j];
        q[i] = static_cast<long long>(acc);
    }
    return q;
}

inline latgal::LatticeTuple transformed_copy(const latgal::LatticeTuple& t, const IntMatrix& u,
                                             std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> shift(-5, 5);
    std::vector<latgal::LatticeSet> sets;
    for (const auto& s : t.sets) {
        Point off(t.ambient_dim);
        for (auto& c : off) c = shift(rng);
        std::vector<Point> pts;
        for (const auto& p : s.points) pts.push_back(latgal::add(apply_matrix(u, p), off));
        sets.emplace_back(t.ambient_dim, std::move(pts));
    }
    return latgal::LatticeTuple(t.ambient_dim, std::move(sets));
}

}  // namespace oracles

#endif
