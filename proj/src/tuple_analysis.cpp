#include "latgal/tuple_analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "latgal/mixed_volume.hpp"

namespace latgal {

namespace {

constexpr std::size_t kQuotientCap = 4096;  // intermediate-lattice search bound

long long to_ll(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("value exceeds 64-bit range");
    return static_cast<long long>(v);
}

// Nonempty subsets of {0..n-1} ordered by size, then lexicographically.
std::vector<std::vector<int>> subsets_by_size(int n, bool proper_only) {
    std::vector<std::vector<int>> out;
    for (int size = 1; size <= (proper_only ? n - 1 : n); ++size) {
        std::vector<int> cur;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(cur.size()) == size) {
                out.push_back(cur);
                return;
            }
            for (int i = start; i < n; ++i) {
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

std::vector<Point> subset_differences(const LatticeTuple& t, const std::vector<int>& subset) {
    std::vector<Point> diffs;
    for (int i : subset)
        for (auto& d : within_set_differences(t.sets[i])) diffs.push_back(std::move(d));
    return diffs;
}

std::vector<LatticeSet> subset_sets(const LatticeTuple& t, const std::vector<int>& subset) {
    std::vector<LatticeSet> out;
    for (int i : subset) out.push_back(t.sets[i]);
    return out;
}

Point row_times_basis(const std::vector<BigInt>& coeffs, const std::vector<Point>& basis, int dim) {
    Point p(dim, 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < dim; ++j) p[j] += to_ll(coeffs[i] * basis[i][j]);
    return p;
}

// Projection of Z^dim onto Z^(dim-r) killing the saturated lattice spanned
// by sat_basis: columns r.. of the SNF right transform.
IntMatrix quotient_map(const std::vector<Point>& sat_basis, int dim) {
    SnfDecomposition d = snf(IntMatrix::from_rows(sat_basis, dim));
    const int r = static_cast<int>(sat_basis.size());
    IntMatrix proj(dim, dim - r);
    for (int i = 0; i < dim; ++i)
        for (int j = r; j < dim; ++j) proj.at(i, j - r) = d.right.at(i, j);
    return proj;
}

Point apply_quotient(const IntMatrix& proj, const Point& p) {
    Point q(proj.cols, 0);
    for (std::size_t j = 0; j < proj.cols; ++j) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < proj.rows; ++i) acc += proj.at(i, j) * p[i];
        q[j] = to_ll(acc);
    }
    return q;
}

LatticeTuple project_complement(const LatticeTuple& t, const std::vector<int>& subset,
                                const std::vector<Point>& sat_basis) {
    const int n = t.ambient_dim;
    const int r = static_cast<int>(sat_basis.size());
    IntMatrix proj = quotient_map(sat_basis, n);
    std::set<int> in_subset(subset.begin(), subset.end());
    std::vector<LatticeSet> sets;
    for (int i = 0; i < static_cast<int>(t.sets.size()); ++i) {
        if (in_subset.count(i)) continue;
        std::vector<Point> pts;
        for (const auto& p : t.sets[i].points) pts.push_back(apply_quotient(proj, p));
        sets.emplace_back(n - r, std::move(pts));
    }
    return LatticeTuple(n - r, std::move(sets));
}

LatticeTuple reexpress_in_lattice(const std::vector<LatticeSet>& sets,
                                  const std::vector<Point>& basis, int dim) {
    const int r = static_cast<int>(basis.size());
    std::vector<LatticeSet> out;
    for (const auto& s : sets) {
        LatticeSet shifted = shift_to_contain_zero(s);
        std::vector<Point> pts;
        for (const auto& p : shifted.points) {
            auto c = lattice_coordinates(basis, dim, p);
            if (!c) throw std::logic_error("set escapes its difference lattice");
            Point q(r);
            for (int j = 0; j < r; ++j) q[j] = to_ll((*c)[j]);
            pts.push_back(std::move(q));
        }
        out.emplace_back(r, std::move(pts));
    }
    return LatticeTuple(r, std::move(out));
}

BigInt index_in_saturation(const std::vector<Point>& lattice_basis,
                           const std::vector<Point>& sat_basis, int dim) {
    IntMatrix coords(lattice_basis.size(), sat_basis.size());
    for (std::size_t i = 0; i < lattice_basis.size(); ++i) {
        auto c = lattice_coordinates(sat_basis, dim, lattice_basis[i]);
        if (!c) throw std::logic_error("lattice not contained in its saturation");
        for (std::size_t j = 0; j < sat_basis.size(); ++j) coords.at(i, j) = (*c)[j];
    }
    return boost::multiprecision::abs(det(std::move(coords)));
}

}  // namespace

std::vector<std::vector<Point>> intermediate_lattices(const std::vector<Point>& gen_basis,
                                                      const std::vector<Point>& sat_basis, int dim) {
    const int r = static_cast<int>(sat_basis.size());
    if (static_cast<int>(gen_basis.size()) != r)
        throw std::invalid_argument("bases must have equal rank");
    // Generator lattice in saturation coordinates.
    IntMatrix g(r, r);
    for (int i = 0; i < r; ++i) {
        auto c = lattice_coordinates(sat_basis, dim, gen_basis[i]);
        if (!c) throw std::invalid_argument("gen lattice not inside sat lattice");
        for (int j = 0; j < r; ++j) g.at(i, j) = (*c)[j];
    }
    SnfDecomposition d = snf(g);
    std::vector<long long> mods(r);
    std::size_t total = 1;
    for (int i = 0; i < r; ++i) {
        mods[i] = to_ll(d.divisors[i]);
        if (mods[i] == 0) throw std::invalid_argument("gen lattice has lower rank");
        total *= static_cast<std::size_t>(mods[i]);
        if (total > kQuotientCap) throw std::runtime_error("quotient too large to enumerate");
    }

    using Elem = std::vector<long long>;  // representative mod mods[]
    std::vector<Elem> elems;
    Elem cur(r, 0);
    auto gen_elems = [&](auto&& self, int pos) -> void {
        if (pos == r) {
            elems.push_back(cur);
            return;
        }
        for (long long v = 0; v < mods[pos]; ++v) {
            cur[pos] = v;
            self(self, pos + 1);
        }
        cur[pos] = 0;
    };
    gen_elems(gen_elems, 0);

    auto closure = [&](std::set<Elem> base, const Elem& extra) {
        base.insert(extra);
        std::vector<Elem> work(base.begin(), base.end());
        while (!work.empty()) {
            Elem e = work.back();
            work.pop_back();
            for (const Elem& f : std::vector<Elem>(base.begin(), base.end())) {
                Elem s(r);
                for (int i = 0; i < r; ++i) s[i] = (e[i] + f[i]) % mods[i];
                if (base.insert(s).second) work.push_back(s);
            }
        }
        return base;
    };

    // All subgroups of the quotient, grown one generator at a time.
    std::set<std::set<Elem>> subgroups;
    subgroups.insert({Elem(r, 0)});
    std::vector<std::set<Elem>> work(subgroups.begin(), subgroups.end());
    while (!work.empty()) {
        std::set<Elem> h = work.back();
        work.pop_back();
        for (const Elem& e : elems) {
            if (h.count(e)) continue;
            std::set<Elem> bigger = closure(h, e);
            if (subgroups.insert(bigger).second) work.push_back(bigger);
        }
    }

    // Each subgroup lifts to the lattice spanned by its representatives (in
    // the SNF diagonal coordinates) together with the diagonal itself.
    IntMatrix rinv = inverse_unimodular(d.right);
    std::vector<std::vector<Point>> out;
    for (const auto& h : subgroups) {
        std::vector<Point> rows_in_sat;
        auto push_diag_coords = [&](const std::vector<BigInt>& y) {
            // y is in diagonal coordinates; map back through right^{-1},
            // then through the saturation basis into Z^dim.
            std::vector<BigInt> x(r, 0);
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < r; ++i) x[j] += y[i] * rinv.at(i, j);
            rows_in_sat.push_back(row_times_basis(x, sat_basis, dim));
        };
        for (int i = 0; i < r; ++i) {
            std::vector<BigInt> y(r, 0);
            y[i] = mods[i];
            push_diag_coords(y);
        }
        for (const Elem& e : h) {
            std::vector<BigInt> y(e.begin(), e.end());
            push_diag_coords(y);
        }
        out.push_back(generated_lattice(rows_in_sat, dim).basis);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<LatticeReduceData> lattice_reduction(const LatticeTuple& t) {
    if (!t.square()) throw DimensionMismatch("lattice_reduction requires a square tuple");
    const int n = t.ambient_dim;
    LatticeTuple shifted = shift_to_contain_zero(t);
    SublatticeInfo gl = generated_lattice(all_within_set_differences(shifted), n);
    if (gl.rank < n)
        throw DimensionMismatch("difference lattice has deficient rank (dependent tuple)");
    if (gl.saturation_index == 1) return std::nullopt;

    LatticeReduceData out;
    out.basis = gl.basis;
    out.index = gl.saturation_index;
    SnfDecomposition d = snf(IntMatrix::from_rows(gl.basis, n));
    for (const auto& div : d.divisors)
        if (div != 1) out.coker_divisors.push_back(div);
    out.reduced = reexpress_in_lattice(shifted.sets, gl.basis, n);
    return out;
}

std::optional<SplitData> find_split(const LatticeTuple& t) {
    if (!t.square()) throw DimensionMismatch("find_split requires a square tuple");
    const int n = t.ambient_dim;
    LatticeTuple shifted = shift_to_contain_zero(t);
    for (const auto& s : subsets_by_size(n, /*proper_only=*/true)) {
        std::vector<Point> diffs = subset_differences(shifted, s);
        SublatticeInfo gl = generated_lattice(diffs, n);
        if (gl.rank != static_cast<int>(s.size())) continue;
        SplitData out;
        out.subset = s;
        out.sat_basis = saturation_basis(diffs, n);
        out.inner = reexpress_in_lattice(subset_sets(shifted, s), out.sat_basis, n);
        out.quotient = project_complement(shifted, s, out.sat_basis);
        return out;
    }
    return std::nullopt;
}

namespace {

bool is_odd_prime(const BigInt& v) {
    if (v < 3 || v % 2 == 0) return false;
    for (BigInt f = 3; f * f <= v; f += 2)
        if (v % f == 0) return false;
    return true;
}

}  // namespace

std::optional<PrimeWitness> prime_certificate(const LatticeTuple& t) {
    if (!t.square()) throw DimensionMismatch("prime_certificate requires a square tuple");
    BigInt mv = mixed_volume(t);
    if (!is_odd_prime(mv)) return std::nullopt;
    LatticeTuple cur = shift_to_contain_zero(t);
    while (true) {
        SublatticeInfo gl = generated_lattice(all_within_set_differences(cur), cur.ambient_dim);
        if (gl.rank < cur.ambient_dim) return std::nullopt;  // cannot happen while MV > 0
        if (auto red = lattice_reduction(cur)) {
            // MV = index * MV(reduced) and MV is prime, so a nontrivial index
            // forces index = p and a mixed-volume-1 reduction; the order-p
            // cokernel is automatically cyclic.
            if (red->index == mv && mixed_volume(red->reduced) == 1)
                return PrimeWitness{to_ll(mv), red->reduced};
            return std::nullopt;
        }
        if (auto sp = find_split(cur)) {
            BigInt inner_mv = mixed_volume(sp->inner);
            BigInt quot_mv = mixed_volume(sp->quotient);
            if (inner_mv == 1 && quot_mv == mv) {
                cur = sp->quotient;
                continue;
            }
            if (quot_mv == 1 && inner_mv == mv) {
                cur = sp->inner;
                continue;
            }
            return std::nullopt;
        }
        return std::nullopt;  // reduced irreducible leaf: full symmetric monodromy
    }
}

StructureFlags structure_flags(const LatticeTuple& t) {
    if (!t.square()) throw DimensionMismatch("structure_flags requires a square tuple");
    const int n = t.ambient_dim;
    LatticeTuple shifted = shift_to_contain_zero(t);
    StructureFlags out;

    struct SubsetInfo {
        std::vector<int> subset;
        SublatticeInfo lattice;
        std::vector<Point> diffs;
    };
    std::vector<SubsetInfo> infos;
    for (const auto& s : subsets_by_size(n, /*proper_only=*/false)) {
        SubsetInfo info;
        info.subset = s;
        info.diffs = subset_differences(shifted, s);
        info.lattice = generated_lattice(info.diffs, n);
        infos.push_back(std::move(info));
    }
    const SubsetInfo& full = infos.back();

    out.reduced = full.lattice.rank == n && full.lattice.saturation_index == 1;
    if (!out.reduced) {
        SubsetWitness w;
        w.subset = full.subset;
        w.lattice_basis = full.lattice.basis;
        w.index = full.lattice.saturation_index;
        out.non_reduced_witness = std::move(w);
    }

    out.linearly_independent = true;
    out.irreducible = true;
    for (const auto& info : infos) {
        const int size = static_cast<int>(info.subset.size());
        if (out.linearly_independent && info.lattice.rank < size) {
            out.linearly_independent = false;
            SubsetWitness w;
            w.subset = info.subset;
            w.lattice_basis = info.lattice.basis;
            out.dependent_witness = std::move(w);
        }
        if (out.irreducible && size < n && info.lattice.rank <= size) {
            out.irreducible = false;
            SubsetWitness w;
            w.subset = info.subset;
            w.lattice_basis = info.lattice.basis;
            w.index = info.lattice.saturation_index;
            out.reducible_witness = std::move(w);
        }
    }

    // Numerically non-reduced: some subset fits a rank-|S| lattice M, proper
    // in its saturation, in which the subset still has mixed volume > 1. All
    // lattices between the generated one and its saturation are candidates.
    out.numerically_reduced = true;
    for (const auto& info : infos) {
        if (!out.numerically_reduced) break;
        const int size = static_cast<int>(info.subset.size());
        if (info.lattice.rank != size || info.lattice.saturation_index == 1) continue;
        std::vector<Point> sat = saturation_basis(info.diffs, n);
        for (const auto& m : intermediate_lattices(info.lattice.basis, sat, n)) {
            BigInt idx = index_in_saturation(m, sat, n);
            if (idx == 1) continue;  // the saturation itself
            BigInt mv_m = mixed_volume_in_lattice(subset_sets(shifted, info.subset), m, n);
            if (mv_m > 1) {
                SubsetWitness w;
                w.subset = info.subset;
                w.lattice_basis = m;
                w.index = idx;
                w.inner_mv = mv_m;
                out.numerically_non_reduced_witness = std::move(w);
                out.numerically_reduced = false;
                break;
            }
        }
    }

    // Numerically reducible: a proper subset spans a rank-|S| lattice with
    // mixed volume > 1 inside the saturation, while the complement also has
    // mixed volume > 1 in the free quotient.
    out.numerically_irreducible = true;
    for (const auto& info : infos) {
        const int size = static_cast<int>(info.subset.size());
        if (size >= n || info.lattice.rank != size) continue;
        std::vector<Point> sat = saturation_basis(info.diffs, n);
        BigInt inner = mixed_volume_in_lattice(subset_sets(shifted, info.subset), sat, n);
        if (inner <= 1) continue;
        BigInt outer = mixed_volume(project_complement(shifted, info.subset, sat));
        if (outer <= 1) continue;
        SubsetWitness w;
        w.subset = info.subset;
        w.lattice_basis = sat;
        w.inner_mv = inner;
        w.outer_mv = outer;
        out.numerically_reducible_witness = std::move(w);
        out.numerically_irreducible = false;
        break;
    }

    out.prime = prime_certificate(t);
    return out;
}

DualEffectiveResult dual_effective(const LatticeTuple& t) {
    StructureFlags flags = structure_flags(t);
    if (!flags.reduced || !flags.irreducible)
        throw PreconditionViolated("dual_effective requires a reduced irreducible tuple");
    const int n = t.ambient_dim;

    // Odometer over one chosen shift per set.
    std::vector<std::size_t> pick(t.sets.size(), 0);
    while (true) {
        std::set<Point> w;
        for (std::size_t i = 0; i < t.sets.size(); ++i) {
            const Point& base = t.sets[i].points[pick[i]];
            for (const auto& p : t.sets[i].points) {
                Point d = sub(p, base);
                if (std::any_of(d.begin(), d.end(), [](long long c) { return c != 0; }))
                    w.insert(std::move(d));
            }
        }
        if (static_cast<int>(w.size()) <= n) {
            std::vector<Point> rows(w.begin(), w.end());
            SnfDecomposition d = snf(IntMatrix::from_rows(rows, n));
            bool basis_part = d.rank == static_cast<int>(rows.size());
            for (int i = 0; basis_part && i < d.rank; ++i)
                if (d.divisors[i] != 1) basis_part = false;
            if (basis_part) {
                DualEffectiveResult out;
                out.effective = false;
                for (std::size_t i = 0; i < t.sets.size(); ++i)
                    out.shift_witness.push_back(t.sets[i].points[pick[i]]);
                return out;
            }
        }
        // Advance the odometer.
        std::size_t pos = 0;
        while (pos < pick.size()) {
            if (++pick[pos] < t.sets[pos].size()) break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == pick.size()) break;
    }
    return DualEffectiveResult{};
}

CayleyConfig cayley_config(const LatticeTuple& t, const std::vector<int>& index_set) {
    if (index_set.empty()) throw std::invalid_argument("index set must be nonempty");
    std::vector<int> idx = index_set;
    std::sort(idx.begin(), idx.end());
    if (std::unique(idx.begin(), idx.end()) != idx.end())
        throw std::invalid_argument("index set has repeats");
    const int k = static_cast<int>(idx.size());
    const int n = t.ambient_dim;
    std::vector<Point> pts;
    for (int pos = 0; pos < k; ++pos) {
        int i = idx[pos];
        if (i < 0 || i >= static_cast<int>(t.sets.size()))
            throw std::out_of_range("set index out of range");
        for (const auto& a : t.sets[i].points) {
            Point p(k + n, 0);
            p[pos] = 1;
            std::copy(a.begin(), a.end(), p.begin() + k);
            pts.push_back(std::move(p));
        }
    }
    return CayleyConfig{LatticeSet(k + n, std::move(pts)), std::move(idx)};
}

}  // namespace latgal
