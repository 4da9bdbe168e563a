#include "latgal/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "latgal/mixed_volume.hpp"

namespace latgal {

namespace {

Permutation identity_perm(int degree) {
    Permutation p(degree);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation& after, const Permutation& before) {
    Permutation out(before.size());
    for (std::size_t i = 0; i < before.size(); ++i) out[i] = after[before[i]];
    return out;
}

int perm_order(const Permutation& p) {
    Permutation cur = p;
    const Permutation id = identity_perm(static_cast<int>(p.size()));
    int k = 1;
    while (cur != id) {
        cur = compose(p, cur);
        ++k;
    }
    return k;
}

bool is_even(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    int transpositions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

bool is_transposition(const Permutation& p) {
    int moved = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) ++moved;
    return moved == 2;
}

// Finest partition stable under the generators in which all seed points lie
// in one class; classes of such a partition have equal size when the group
// is transitive.
std::vector<int> finest_congruence(const std::vector<Permutation>& gens, int degree,
                                   const std::vector<int>& seed) {
    std::vector<int> parent(degree);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    };
    for (std::size_t i = 1; i < seed.size(); ++i) unite(seed[0], seed[i]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& g : gens)
            for (int v = 0; v < degree; ++v) {
                int r = find(v);
                if (r != v && unite(g[v], g[r])) changed = true;
            }
    }
    std::vector<int> cls(degree);
    for (int v = 0; v < degree; ++v) cls[v] = find(v);
    return cls;
}

std::vector<std::vector<int>> classes_of(const std::vector<int>& cls, int degree) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> where(degree, -1);
    for (int v = 0; v < degree; ++v) {
        int r = cls[v];
        if (where[r] < 0) {
            where[r] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[where[r]].push_back(v);
    }
    return blocks;
}

// A stable partition whose class containing 0 has exactly `block_size`
// points, if one exists. Complete for transitive groups: the class of 0 in
// any such partition regenerates the whole partition as a congruence.
std::optional<std::vector<std::vector<int>>> block_system_of_size(
    const std::vector<Permutation>& gens, int degree, int block_size) {
    if (block_size < 1 || degree % block_size != 0) return std::nullopt;
    if (block_size == 1 || block_size == degree) {
        std::vector<std::vector<int>> trivial;
        if (block_size == degree) {
            trivial.emplace_back(degree);
            std::iota(trivial[0].begin(), trivial[0].end(), 0);
        } else {
            for (int v = 0; v < degree; ++v) trivial.push_back({v});
        }
        return trivial;
    }
    std::vector<int> members;
    for (int v = 1; v < degree; ++v) members.push_back(v);
    std::vector<bool> pick(members.size(), false);
    std::fill(pick.begin(), pick.begin() + (block_size - 1), true);
    // iterate over subsets of {1..degree-1} of size block_size-1
    std::sort(pick.rbegin(), pick.rend());
    do {
        std::vector<int> seed = {0};
        for (std::size_t i = 0; i < members.size(); ++i)
            if (pick[i]) seed.push_back(members[i]);
        auto cls = finest_congruence(gens, degree, seed);
        auto blocks = classes_of(cls, degree);
        bool uniform = true;
        for (const auto& b : blocks)
            if (static_cast<int>(b.size()) != block_size) uniform = false;
        if (uniform) return blocks;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return std::nullopt;
}

std::vector<int> orbit_classes(const std::vector<Permutation>& gens, int degree) {
    std::vector<int> parent(degree);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& g : gens)
        for (int v = 0; v < degree; ++v) {
            int a = find(v), b = find(g[v]);
            if (a != b) parent[b] = a;
        }
    std::vector<int> cls(degree);
    for (int v = 0; v < degree; ++v) cls[v] = find(v);
    return cls;
}

double root_gap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Nearest base root, required to be unambiguous: the best match must be
// close and the runner-up clearly worse. Anything less is a PathFailure, not
// a guess.
int match_root(const std::vector<Complex>& x, const std::vector<std::vector<Complex>>& base) {
    double best = 1e300, second = 1e300;
    int best_idx = -1;
    for (std::size_t j = 0; j < base.size(); ++j) {
        double d = root_gap(x, base[j]);
        if (d < best) {
            second = best;
            best = d;
            best_idx = static_cast<int>(j);
        } else if (d < second) {
            second = d;
        }
    }
    double scale = 1.0;
    for (const auto& c : x) scale = std::max(scale, std::abs(c));
    if (best_idx < 0 || best > 1e-5 * scale) throw PathFailure("loop endpoint far from every base root");
    if (second < 10.0 * best) throw PathFailure("ambiguous loop endpoint match");
    return best_idx;
}

CoeffMatrix rescaled(const CoeffMatrix& c, const std::vector<Complex>& gamma) {
    CoeffMatrix out = c;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (auto& v : out[i]) v *= gamma[i];
    return out;
}

Permutation probe_circle(const LatticeTuple& t, const std::vector<Complex>& fixed_tail,
                         std::size_t moving_idx, Complex center, double radius, double angle0,
                         const SolveOptions& opts) {
    // Univariate family: all coefficients fixed except coeffs[0][moving_idx],
    // which walks a circle. Base roots from direct factorization.
    const int segments = 24;
    auto coeffs_at = [&](double theta) {
        CoeffMatrix c = {fixed_tail};
        c[0][moving_idx] = center + radius * Complex(std::cos(theta), std::sin(theta));
        return c;
    };
    CoeffMatrix base = coeffs_at(angle0);
    long long deg = 0;
    for (const auto& p : t.sets[0].points) deg = std::max(deg, p[0]);
    std::vector<Complex> dense(deg + 1, Complex(0.0));
    for (std::size_t j = 0; j < t.sets[0].points.size(); ++j)
        dense[t.sets[0].points[j][0]] = base[0][j];
    auto raw = polynomial_roots(dense);
    std::vector<std::vector<Complex>> base_roots;
    for (const auto& z : raw)
        if (std::abs(z) > opts.torus_min) base_roots.push_back({z});
    std::sort(base_roots.begin(), base_roots.end(), [](const auto& a, const auto& b) {
        return a[0].real() != b[0].real() ? a[0].real() < b[0].real() : a[0].imag() < b[0].imag();
    });

    Permutation perm(base_roots.size());
    for (std::size_t i = 0; i < base_roots.size(); ++i) {
        std::vector<Complex> x = base_roots[i];
        for (int s = 0; s < segments; ++s) {
            double a = angle0 + 2.0 * M_PI * s / segments;
            double b = angle0 + 2.0 * M_PI * (s + 1) / segments;
            x = track_linear_segment(t, coeffs_at(a), coeffs_at(b), x, opts);
        }
        perm[i] = match_root(x, base_roots);
    }
    std::vector<bool> hit(perm.size(), false);
    for (int v : perm) {
        if (hit[v]) throw PathFailure("two roots matched the same endpoint");
        hit[v] = true;
    }
    return perm;
}

}  // namespace

Loop make_segment_pair_loop(const PolySystem& base, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const std::size_t k = base.coeffs.size();
    PolySystem target = sample_generic(base.tuple, rng());
    std::vector<Complex> ga(k), gb(k);
    for (std::size_t i = 0; i < k; ++i) ga[i] = std::polar(1.0, angle(rng));
    for (std::size_t i = 0; i < k; ++i) gb[i] = std::polar(1.0, angle(rng));
    Loop loop;
    loop.kind = Loop::Kind::SegmentPair;
    loop.seed = seed;
    // Rescaling an equation moves the coefficients without moving the roots,
    // so both endpoints carry exactly the base root set.
    loop.waypoints = {rescaled(base.coeffs, ga), target.coeffs, rescaled(base.coeffs, gb)};
    return loop;
}

Permutation track_loop(const PolySystem& s, const RootSet& base_roots, const Loop& loop,
                       const SolveOptions& opts) {
    if (loop.waypoints.size() < 2) throw std::invalid_argument("loop needs at least two waypoints");
    Permutation perm(base_roots.roots.size());
    for (std::size_t i = 0; i < base_roots.roots.size(); ++i) {
        std::vector<Complex> x = base_roots.roots[i];
        for (std::size_t w = 0; w + 1 < loop.waypoints.size(); ++w)
            x = track_linear_segment(s.tuple, loop.waypoints[w], loop.waypoints[w + 1], x, opts);
        perm[i] = match_root(x, base_roots.roots);
    }
    std::vector<bool> hit(perm.size(), false);
    for (int v : perm) {
        if (hit[v]) throw PathFailure("two roots matched the same endpoint");
        hit[v] = true;
    }
    return perm;
}

PermutationGroup analyze_group(const std::vector<Permutation>& perms, int degree) {
    PermutationGroup g;
    g.degree = degree;
    const Permutation id = identity_perm(degree);
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != degree)
            throw DimensionMismatch("permutation degree mismatch");
        if (p != id &&
            std::find(g.generators.begin(), g.generators.end(), p) == g.generators.end())
            g.generators.push_back(p);
    }

    const std::size_t cap = 80640;
    std::set<Permutation> closed = {id};
    std::vector<Permutation> queue = {id};
    while (!queue.empty() && closed.size() <= cap) {
        Permutation x = std::move(queue.back());
        queue.pop_back();
        for (const auto& gen : g.generators) {
            Permutation y = compose(gen, x);
            if (closed.insert(y).second) {
                if (closed.size() > cap) {
                    g.closure_capped = true;
                    break;
                }
                queue.push_back(std::move(y));
            }
        }
        if (g.closure_capped) break;
    }
    g.elements.assign(closed.begin(), closed.end());
    g.order = g.elements.size();

    g.orbits = classes_of(orbit_classes(g.generators, degree), degree);
    g.transitive = g.orbits.size() == 1;

    if (degree <= 1) {
        g.doubly_transitive = true;
    } else {
        // orbit count on ordered pairs of distinct points
        std::vector<int> pair_cls(degree * degree, -1);
        int orbit_count = 0;
        for (int a = 0; a < degree; ++a)
            for (int b = 0; b < degree; ++b) {
                if (a == b || pair_cls[a * degree + b] >= 0) continue;
                std::vector<std::pair<int, int>> stack = {{a, b}};
                pair_cls[a * degree + b] = orbit_count;
                while (!stack.empty()) {
                    auto [u, v] = stack.back();
                    stack.pop_back();
                    for (const auto& gen : g.generators) {
                        int nu = gen[u], nv = gen[v];
                        if (pair_cls[nu * degree + nv] < 0) {
                            pair_cls[nu * degree + nv] = orbit_count;
                            stack.emplace_back(nu, nv);
                        }
                    }
                }
                ++orbit_count;
            }
        g.doubly_transitive = g.transitive && orbit_count == 1;
    }

    for (int beta = 1; beta < degree; ++beta) {
        auto bc = finest_congruence(g.generators, degree, {0, beta});
        auto blocks = classes_of(bc, degree);
        std::size_t sz = 0;
        for (const auto& b : blocks)
            for (int v : b)
                if (v == 0) sz = b.size();
        if (blocks.size() > 1 && sz > 1) {
            std::for_each(blocks.begin(), blocks.end(),
                          [](std::vector<int>& b) { std::sort(b.begin(), b.end()); });
            std::sort(blocks.begin(), blocks.end());
            if (std::find(g.block_systems.begin(), g.block_systems.end(), blocks) ==
                g.block_systems.end())
                g.block_systems.push_back(blocks);
        }
    }
    g.primitive = g.transitive && degree > 1 && g.block_systems.empty();

    for (const auto& e : g.elements)
        if (is_transposition(e)) {
            g.contains_transposition = true;
            break;
        }

    if (degree <= 12) {
        std::size_t fact = 1;
        for (int i = 2; i <= degree; ++i) fact *= i;
        if (!g.closure_capped) {
            g.is_symmetric = g.order == fact;
            bool all_even = true;
            for (const auto& e : g.elements)
                if (!is_even(e)) all_even = false;
            g.is_alternating = degree >= 3 && all_even && 2 * g.order == fact;
            for (const auto& e : g.elements)
                if (static_cast<std::size_t>(perm_order(e)) == g.order) {
                    g.is_cyclic = true;
                    break;
                }
        } else {
            // Certificate that survives a truncated closure: a primitive
            // group containing a transposition is the full symmetric group.
            g.is_symmetric = g.primitive && g.contains_transposition;
        }
    }
    return g;
}

MonodromyResult monodromy_group(const LatticeTuple& t, const MonodromyOptions& opts) {
    if (!t.square()) throw DimensionMismatch("monodromy_group requires a square tuple");
    BigInt mv = mixed_volume(t);
    if (mv == 0) throw DegenerateSystem("tuple has mixed volume zero");
    if (mv > opts.mv_cap) throw Unsupported("mixed volume exceeds the monodromy cap");

    std::mt19937_64 rng(opts.seed);
    MonodromyResult res;
    bool have_base = false;
    for (int attempt = 0; attempt <= opts.max_base_resamples && !have_base; ++attempt) {
        PolySystem cand = sample_generic(t, rng());
        try {
            RootSet roots = solve_system(cand, opts.solve);
            if (BigInt(static_cast<long long>(roots.roots.size())) != mv) continue;
            res.base = std::move(cand);
            res.base_roots = std::move(roots);
            have_base = true;
        } catch (const DegenerateSystem&) {
        }
    }
    if (!have_base) throw DegenerateSystem("no certified base system found");

    const int degree = static_cast<int>(res.base_roots.roots.size());
    std::set<Permutation> elements = {identity_perm(degree)};
    std::vector<Permutation> generators;
    auto grow = [&](const Permutation& p) {
        if (elements.count(p)) return false;
        generators.push_back(p);
        // rebuild the closure from scratch; only happens when the group grows
        std::vector<Permutation> queue(elements.begin(), elements.end());
        while (!queue.empty()) {
            Permutation x = std::move(queue.back());
            queue.pop_back();
            for (const auto& gen : generators) {
                Permutation y = compose(gen, x);
                if (elements.size() >= opts.closure_cap) return true;
                if (elements.insert(y).second) queue.push_back(std::move(y));
            }
        }
        return true;
    };

    int quiet = 0;
    while (res.loops_run < opts.budget && quiet < opts.stabilization_window) {
        LoopRecord rec;
        rec.seed = rng();
        ++res.loops_run;
        try {
            Loop loop = make_segment_pair_loop(res.base, rec.seed);
            Permutation p = track_loop(res.base, res.base_roots, loop, opts.solve);
            rec.grew_group = grow(p);
            if (rec.grew_group)
                quiet = 0;
            else
                ++quiet;
        } catch (const PathFailure&) {
            rec.failed = true;
            ++res.path_failures;
        }
        rec.order_after = elements.size();
        res.trace.push_back(rec);
    }
    res.stabilized = quiet >= opts.stabilization_window;
    res.group = analyze_group(generators, degree);
    return res;
}

VerificationReport verify_prediction(const LatticeTuple& t, const MonodromyOptions& opts) {
    VerificationReport rep;
    rep.prediction = predict_monodromy(t);
    rep.sampled = monodromy_group(t, opts);
    const PermutationGroup& g = rep.sampled.group;

    if (!rep.sampled.stabilized) {
        rep.verdict = VerifyVerdict::Inconclusive;
        rep.detail = "group did not stabilize within the loop budget";
        return rep;
    }
    if (BigInt(g.degree) != rep.prediction.degree) {
        rep.verdict = VerifyVerdict::Mismatch;
        rep.detail = "sampled degree differs from predicted degree";
        return rep;
    }
    switch (rep.prediction.kind) {
        case MonodromyPrediction::Kind::Symmetric:
            if (g.is_symmetric) {
                rep.verdict = VerifyVerdict::Match;
                rep.detail = "full symmetric group realized";
            } else {
                rep.verdict = VerifyVerdict::Mismatch;
                rep.detail = "sampled group is a proper subgroup of the symmetric group";
            }
            return rep;
        case MonodromyPrediction::Kind::PrimeCyclic:
            if (g.is_cyclic && g.transitive &&
                g.order == static_cast<std::size_t>(rep.prediction.p)) {
                rep.verdict = VerifyVerdict::Match;
                rep.detail = "cyclic of the predicted prime order";
            } else {
                rep.verdict = VerifyVerdict::Mismatch;
                rep.detail = "sampled group is not cyclic of the predicted order";
            }
            return rep;
        case MonodromyPrediction::Kind::Imprimitive: {
            long long bs = static_cast<long long>(rep.prediction.block_size);
            long long bc = static_cast<long long>(rep.prediction.block_count);
            auto sys = block_system_of_size(g.generators, g.degree, static_cast<int>(bs));
            if (sys && static_cast<long long>(sys->size()) == bc) {
                rep.verdict = VerifyVerdict::Match;
                rep.detail = "invariant block system of the predicted shape found";
            } else {
                rep.verdict = VerifyVerdict::Mismatch;
                rep.detail = "no invariant block system of the predicted shape";
            }
            return rep;
        }
    }
    return rep;
}

Permutation discriminant_probe_quadratic(std::uint64_t seed, const SolveOptions& opts) {
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    Complex b(gauss(rng), gauss(rng));
    Complex disc = b * b / 4.0;  // x^2 + bx + c has a double root at c = b^2/4
    LatticeTuple t(1, {LatticeSet(1, {{0}, {1}, {2}})});
    return probe_circle(t, {disc, b, Complex(1.0)}, 0, disc, 0.1, angle(rng), opts);
}

Permutation discriminant_probe_cubic(std::uint64_t seed, const SolveOptions& opts) {
    std::mt19937_64 rng(seed ^ 0xda942042e4dd58b5ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    Complex p, qstar;
    do {
        p = Complex(gauss(rng), gauss(rng));
        // 4p^3 + 27q^2 = 0 at q = +-sqrt(-4p^3/27); keep the two branch
        // points well separated so a radius-0.1 circle encloses only one.
        qstar = std::sqrt(-4.0 * p * p * p / 27.0);
    } while (std::abs(qstar) < 0.25);
    LatticeTuple t(1, {LatticeSet(1, {{0}, {1}, {3}})});
    return probe_circle(t, {qstar, p, Complex(1.0)}, 0, qstar, 0.1, angle(rng), opts);
}

bool is_dihedral_of_order_8(const PermutationGroup& g) {
    return g.degree == 4 && g.order == 8 && g.transitive;
}

}  // namespace latgal
