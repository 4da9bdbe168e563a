#include "latgal/lattice.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace latgal {

namespace {

void check_dim(const Point& p, int dim) {
    if (static_cast<int>(p.size()) != dim)
        throw DimensionMismatch("point dimension does not match ambient dimension");
}

long long to_longlong(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("lattice basis entry exceeds 64-bit range");
    return static_cast<long long>(v);
}

}  // namespace

LatticeSet::LatticeSet(int dim, std::vector<Point> pts) : ambient_dim(dim), points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("LatticeSet must be nonempty");
    for (const auto& p : points) check_dim(p, dim);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

LatticeTuple::LatticeTuple(int dim, std::vector<LatticeSet> s) : ambient_dim(dim), sets(std::move(s)) {
    if (sets.empty()) throw std::invalid_argument("LatticeTuple must contain at least one set");
    for (const auto& set : sets)
        if (set.ambient_dim != dim)
            throw DimensionMismatch("all sets of a tuple must share the ambient dimension");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Point>& rows, std::size_t dim) {
    IntMatrix m(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols != other.rows) throw DimensionMismatch("matrix product shape mismatch");
    IntMatrix out(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < other.cols; ++j) out.at(i, j) += at(i, k) * other.at(k, j);
        }
    return out;
}

namespace {

struct SnfWork {
    IntMatrix a, left, right;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < left.cols; ++c) std::swap(left.at(i, c), left.at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < right.rows; ++r) std::swap(right.at(r, i), right.at(r, j));
    }
    // row_i -= q * row_j
    void addmul_row(std::size_t i, std::size_t j, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) -= q * a.at(j, c);
        for (std::size_t c = 0; c < left.cols; ++c) left.at(i, c) -= q * left.at(j, c);
    }
    void addmul_col(std::size_t i, std::size_t j, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows; ++r) a.at(r, i) -= q * a.at(r, j);
        for (std::size_t r = 0; r < right.rows; ++r) right.at(r, i) -= q * right.at(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
        for (std::size_t c = 0; c < left.cols; ++c) left.at(i, c) = -left.at(i, c);
    }
};

}  // namespace

SnfDecomposition snf(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols)};
    const std::size_t steps = std::min(m.rows, m.cols);

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Pivot: minimal nonzero absolute value in the remaining block.
            std::size_t pi = t, pj = t;
            BigInt best = 0;
            for (std::size_t i = t; i < m.rows; ++i)
                for (std::size_t j = t; j < m.cols; ++j) {
                    BigInt v = abs(w.a.at(i, j));
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) goto done;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m.rows; ++i)
                if (w.a.at(i, t) != 0) {
                    w.addmul_row(i, t, w.a.at(i, t) / w.a.at(t, t));
                    if (w.a.at(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < m.cols; ++j)
                if (w.a.at(t, j) != 0) {
                    w.addmul_col(j, t, w.a.at(t, j) / w.a.at(t, t));
                    if (w.a.at(t, j) != 0) clean = false;
                }
            if (!clean) continue;

            // Pivot must divide every remaining entry for the divisor chain.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < m.rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < m.cols && divides_all; ++j)
                    if (w.a.at(i, j) % w.a.at(t, t) != 0) {
                        w.addmul_row(t, i, BigInt(-1));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (w.a.at(t, t) < 0) w.negate_row(t);
    }
done:
    SnfDecomposition out;
    out.left = std::move(w.left);
    out.right = std::move(w.right);
    out.divisors.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        out.divisors[t] = w.a.at(t, t);
        if (out.divisors[t] != 0) ++out.rank;
    }
    return out;
}

HnfResult hnf(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    std::size_t r0 = 0;

    auto addmul = [&](std::size_t i, std::size_t j, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) -= q * a.at(j, c);
        for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(j, c);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
        for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    };

    for (std::size_t col = 0; col < m.cols && r0 < m.rows; ++col) {
        for (;;) {
            std::size_t best_row = r0;
            BigInt best = 0;
            for (std::size_t i = r0; i < m.rows; ++i) {
                BigInt v = abs(a.at(i, col));
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    best_row = i;
                }
            }
            if (best == 0) goto next_col;
            swap_rows(r0, best_row);
            bool clean = true;
            for (std::size_t i = r0 + 1; i < m.rows; ++i)
                if (a.at(i, col) != 0) {
                    addmul(i, r0, a.at(i, col) / a.at(r0, col));
                    if (a.at(i, col) != 0) clean = false;
                }
            if (clean) break;
        }
        if (a.at(r0, col) < 0) negate_row(r0);
        // Entries above the pivot reduced into [0, pivot).
        for (std::size_t i = 0; i < r0; ++i) {
            BigInt q = a.at(i, col) / a.at(r0, col);
            if (a.at(i, col) - q * a.at(r0, col) < 0) q -= 1;
            addmul(i, r0, q);
        }
        ++r0;
    next_col:;
    }

    HnfResult out;
    out.rank = static_cast<int>(r0);
    out.h = IntMatrix(r0, m.cols);
    for (std::size_t i = 0; i < r0; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.h.at(i, j) = a.at(i, j);
    out.transform = std::move(u);
    return out;
}

SublatticeInfo generated_lattice(const std::vector<Point>& vectors, int dim) {
    for (const auto& v : vectors) check_dim(v, dim);
    SublatticeInfo info;
    if (vectors.empty()) return info;

    IntMatrix m = IntMatrix::from_rows(vectors, dim);
    HnfResult h = hnf(m);
    info.rank = h.rank;
    for (int i = 0; i < h.rank; ++i) {
        Point row(dim);
        for (int j = 0; j < dim; ++j) row[j] = to_longlong(h.h.at(i, j));
        info.basis.push_back(std::move(row));
    }
    SnfDecomposition d = snf(m);
    for (const auto& div : d.divisors)
        if (div != 0) info.saturation_index *= div;
    return info;
}

BigInt det(IntMatrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("det requires a square matrix");
    const std::size_t n = a.rows;
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t swap_row = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == k) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    BigInt d = det(m);
    if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular");
    const std::size_t n = m.rows;
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;  // adjugate: transpose of cofactors
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc++) = m.at(r, c);
                }
                ++mr;
            }
            BigInt cof = det(std::move(minor));
            inv.at(i, j) = (((i + j) % 2 == 0) ? cof : -cof) * d;
        }
    return inv;
}

std::vector<Point> saturation_basis(const std::vector<Point>& vectors, int dim) {
    if (vectors.empty()) return {};
    // left * M * right = D, so the row span of M equals the row span of
    // D * right^{-1}; dropping the divisor scaling saturates it.
    SnfDecomposition d = snf(IntMatrix::from_rows(vectors, dim));
    IntMatrix rinv = inverse_unimodular(d.right);
    std::vector<Point> rows;
    for (int i = 0; i < d.rank; ++i) {
        Point p(dim);
        for (int j = 0; j < dim; ++j) p[j] = to_longlong(rinv.at(i, j));
        rows.push_back(std::move(p));
    }
    HnfResult h = hnf(IntMatrix::from_rows(rows, dim));
    std::vector<Point> basis;
    for (int i = 0; i < h.rank; ++i) {
        Point p(dim);
        for (int j = 0; j < dim; ++j) p[j] = to_longlong(h.h.at(i, j));
        basis.push_back(std::move(p));
    }
    return basis;
}

std::optional<std::vector<BigInt>> lattice_coordinates(const std::vector<Point>& basis, int dim,
                                                       const Point& v) {
    check_dim(v, dim);
    std::vector<BigInt> residual(v.begin(), v.end());
    std::vector<BigInt> coords;
    coords.reserve(basis.size());
    // Basis rows are assumed echelon (as produced by generated_lattice).
    for (const auto& row : basis) {
        int pivot = -1;
        for (int j = 0; j < dim; ++j)
            if (row[j] != 0) {
                pivot = j;
                break;
            }
        if (pivot < 0) return std::nullopt;
        BigInt c = residual[pivot] / row[pivot];
        if (c * row[pivot] != residual[pivot]) return std::nullopt;
        for (int j = 0; j < dim; ++j) residual[j] -= c * row[j];
        coords.push_back(c);
    }
    for (const auto& r : residual)
        if (r != 0) return std::nullopt;
    return coords;
}

Point sub(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Point add(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

std::vector<Point> within_set_differences(const LatticeSet& s) {
    std::vector<Point> out;
    const Point& base = s.points.front();  // points sorted, front is lex-min
    for (std::size_t i = 1; i < s.points.size(); ++i) out.push_back(sub(s.points[i], base));
    return out;
}

std::vector<Point> all_within_set_differences(const LatticeTuple& t) {
    std::vector<Point> out;
    for (const auto& s : t.sets) {
        auto d = within_set_differences(s);
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

LatticeSet shift_to_contain_zero(const LatticeSet& s) {
    std::vector<Point> pts;
    pts.reserve(s.points.size());
    const Point& base = s.points.front();
    for (const auto& p : s.points) pts.push_back(sub(p, base));
    return LatticeSet(s.ambient_dim, std::move(pts));
}

LatticeTuple shift_to_contain_zero(const LatticeTuple& t) {
    std::vector<LatticeSet> sets;
    sets.reserve(t.sets.size());
    for (const auto& s : t.sets) sets.push_back(shift_to_contain_zero(s));
    return LatticeTuple(t.ambient_dim, std::move(sets));
}

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

Point primitive(const Point& v) {
    long long g = 0;
    for (long long c : v) g = gcd_ll(g, std::abs(c));
    Point out = v;
    if (g > 1)
        for (auto& c : out) c /= g;
    return out;
}

// Hull edge directions of a planar point set (primitive, both signs).
// Used to shrink the candidate basis pool for 2-dimensional tuples.
std::vector<Point> hull_edge_directions_2d(const std::vector<Point>& pts) {
    std::vector<Point> p = pts;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 2) return {};
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
    std::vector<Point> dirs;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        Point d = primitive(sub(hull[(i + 1) % hull.size()], hull[i]));
        dirs.push_back(d);
        Point neg(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) neg[j] = -d[j];
        dirs.push_back(neg);
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return dirs;
}

std::string serialize_tuple(const LatticeTuple& t, int ambient_of_origin,
                            const std::vector<BigInt>& embedding_divisors) {
    // Per-set shift to lex-min, points sorted, then sets sorted, so the
    // encoding is blind to shifts and to the ordering of the tuple.
    std::vector<std::vector<Point>> sets;
    for (const auto& s : t.sets) {
        LatticeSet shifted = shift_to_contain_zero(s);
        sets.push_back(shifted.points);
    }
    std::sort(sets.begin(), sets.end());
    std::ostringstream os;
    os << "nf1 n=" << ambient_of_origin << " r=" << t.ambient_dim << " e=";
    for (const auto& d : embedding_divisors) os << d << ",";
    os << " k=" << sets.size();
    for (const auto& pts : sets) {
        os << " S";
        for (const auto& p : pts) {
            os << "(";
            for (std::size_t j = 0; j < p.size(); ++j) os << p[j] << (j + 1 < p.size() ? "," : "");
            os << ")";
        }
    }
    return os.str();
}

LatticeTuple apply_row_transform(const IntMatrix& u, const LatticeTuple& t) {
    // p -> u * p, points treated as column vectors.
    const int r = t.ambient_dim;
    std::vector<LatticeSet> sets;
    for (const auto& s : t.sets) {
        std::vector<Point> pts;
        for (const auto& p : s.points) {
            Point q(r, 0);
            for (int i = 0; i < r; ++i) {
                BigInt acc = 0;
                for (int j = 0; j < r; ++j) acc += u.at(i, j) * p[j];
                q[i] = to_longlong(acc);
            }
            pts.push_back(std::move(q));
        }
        sets.emplace_back(r, std::move(pts));
    }
    return LatticeTuple(r, std::move(sets));
}

}  // namespace

NormalFormResult unimodular_normal_form_full(const LatticeTuple& t) {
    LatticeTuple shifted = shift_to_contain_zero(t);
    auto diffs = all_within_set_differences(shifted);
    SublatticeInfo lat = generated_lattice(diffs, t.ambient_dim);
    const int r = lat.rank;

    std::vector<BigInt> embedding_divisors;
    {
        auto d = snf(IntMatrix::from_rows(diffs, t.ambient_dim));
        for (const auto& v : d.divisors)
            if (v != 0) embedding_divisors.push_back(v);
    }

    if (r == 0) {
        // Every set is a singleton; the shift-normalized tuple is all zeros.
        std::vector<LatticeSet> sets;
        for (std::size_t i = 0; i < t.sets.size(); ++i) sets.emplace_back(0, std::vector<Point>{Point{}});
        LatticeTuple rep(0, std::move(sets));
        return {serialize_tuple(rep, t.ambient_dim, embedding_divisors), rep};
    }

    // Flatten into Z^r coordinates of the generated lattice; the residual
    // symmetry group is then GL(r, Z).
    std::vector<LatticeSet> flat_sets;
    for (const auto& s : shifted.sets) {
        std::vector<Point> pts;
        for (const auto& p : s.points) {
            auto c = lattice_coordinates(lat.basis, t.ambient_dim, p);
            if (!c) throw std::logic_error("shifted point escapes its difference lattice");
            Point q(r);
            for (int j = 0; j < r; ++j) q[j] = to_longlong((*c)[j]);
            pts.push_back(std::move(q));
        }
        flat_sets.emplace_back(r, std::move(pts));
    }
    LatticeTuple flat(r, std::move(flat_sets));

    // Equivariant candidate pool: primitive within-set difference directions
    // (hull edges only in the planar case, which is the hot path for
    // enumeration dedup).
    std::vector<Point> pool;
    if (r == 2) {
        for (const auto& s : flat.sets) {
            auto dirs = hull_edge_directions_2d(s.points);
            pool.insert(pool.end(), dirs.begin(), dirs.end());
        }
    } else {
        for (const auto& s : flat.sets)
            for (std::size_t i = 0; i < s.points.size(); ++i)
                for (std::size_t j = 0; j < s.points.size(); ++j)
                    if (i != j) pool.push_back(primitive(sub(s.points[i], s.points[j])));
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    // Minimize the serialization over HNF-normalized transforms of every
    // independent r-subset of the pool. The HNF transform is a complete
    // invariant of the left GL(r,Z)-coset, which makes the minimum exact.
    std::optional<std::string> best;
    LatticeTuple best_rep = flat;
    std::vector<Point> basis(r);
    const std::size_t m = pool.size();

    auto consider = [&](const std::vector<Point>& cols) {
        IntMatrix b(r, r);
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) b.at(i, j) = cols[j][i];
        HnfResult h = hnf(b);
        if (h.rank < r) return;
        LatticeTuple cand = apply_row_transform(h.transform, flat);
        std::string enc = serialize_tuple(cand, t.ambient_dim, embedding_divisors);
        if (!best || enc < *best) {
            best = enc;
            best_rep = std::move(cand);
        }
    };

    // Ordered selection without repetition.
    std::vector<std::size_t> sel(r);
    std::vector<bool> used(m, false);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == r) {
            for (int j = 0; j < r; ++j) basis[j] = pool[sel[j]];
            consider(basis);
            return;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (used[i]) continue;
            used[i] = true;
            sel[depth] = i;
            rec(depth + 1);
            used[i] = false;
        }
    };
    rec(0);

    if (!best) throw std::logic_error("no independent basis found despite positive rank");
    NormalFormResult out;
    out.encoding = std::move(*best);
    // Normalize representative to the serialized shape (shift + sorted sets).
    {
        std::vector<LatticeSet> sets;
        for (const auto& s : best_rep.sets) sets.push_back(shift_to_contain_zero(s));
        std::sort(sets.begin(), sets.end(), [](const LatticeSet& a, const LatticeSet& b) {
            return a.points < b.points;
        });
        out.representative = LatticeTuple(r, std::move(sets));
    }
    return out;
}

std::string unimodular_normal_form(const LatticeTuple& t) {
    return unimodular_normal_form_full(t).encoding;
}

}  // namespace latgal
