#include "latgal/poly_systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "latgal/mixed_volume.hpp"

namespace latgal {

namespace {

Complex cpow(const Complex& x, long long e) {
    if (e < 0) return 1.0 / cpow(x, -e);
    Complex r = 1.0, b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// values[i] = sum_a c[i][a] x^a; jac optional, row-major k x n.
void eval_core(const LatticeTuple& t, const CoeffMatrix& c, const std::vector<Complex>& x,
               std::vector<Complex>* values, std::vector<Complex>* jac) {
    const int n = static_cast<int>(x.size());
    const int k = static_cast<int>(t.sets.size());
    if (values) values->assign(k, 0.0);
    if (jac) jac->assign(static_cast<std::size_t>(k) * n, 0.0);
    for (int i = 0; i < k; ++i) {
        const auto& pts = t.sets[i].points;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            Complex m = c[i][j];
            if (m == Complex(0.0)) continue;
            for (int l = 0; l < n; ++l) m *= cpow(x[l], pts[j][l]);
            if (values) (*values)[i] += m;
            if (jac)
                for (int l = 0; l < n; ++l)
                    (*jac)[static_cast<std::size_t>(i) * n + l] +=
                        static_cast<double>(pts[j][l]) * m / x[l];
        }
    }
}

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

// Solves a (row-major) in place; returns false near singularity.
bool lu_solve(std::vector<Complex> a, std::vector<Complex>& b, int n) {
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) best = r;
        if (std::abs(a[best * n + col]) < 1e-300) return false;
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[best * n + j]);
            std::swap(b[col], b[best]);
        }
        for (int r = col + 1; r < n; ++r) {
            Complex f = a[r * n + col] / a[col * n + col];
            a[r * n + col] = 0.0;
            for (int j = col + 1; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        Complex s = b[r];
        for (int j = r + 1; j < n; ++j) s -= a[r * n + j] * b[j];
        b[r] = s / a[r * n + r];
    }
    return true;
}

Complex lu_det(std::vector<Complex> a, int n) {
    Complex d = 1.0;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) best = r;
        if (std::abs(a[best * n + col]) < 1e-300) return 0.0;
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[best * n + j]);
            d = -d;
        }
        d *= a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            Complex f = a[r * n + col] / a[col * n + col];
            for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
        }
    }
    return d;
}

// Newton iteration on the full system; returns the final max residual.
double newton_refine(const LatticeTuple& t, const CoeffMatrix& c, std::vector<Complex>& x,
                     int max_iters) {
    const int n = static_cast<int>(x.size());
    std::vector<Complex> values, jac;
    for (int iter = 0; iter < max_iters; ++iter) {
        eval_core(t, c, x, &values, &jac);
        std::vector<Complex> rhs(values);
        for (auto& v : rhs) v = -v;
        if (!lu_solve(jac, rhs, n)) break;
        double step = max_abs(rhs);
        for (int i = 0; i < n; ++i) x[i] += rhs[i];
        if (step < 1e-14 * (1.0 + max_abs(x))) break;
    }
    eval_core(t, c, x, &values, nullptr);
    return max_abs(values);
}

bool on_torus(const std::vector<Complex>& x, const SolveOptions& opts) {
    for (const auto& c : x) {
        double a = std::abs(c);
        if (a < opts.torus_min || a > opts.torus_max) return false;
    }
    return true;
}

bool roots_close(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
    double scale = 1.0 + std::max(max_abs(a), max_abs(b));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol * scale) return false;
    return true;
}

bool root_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

// Supports shifted by their coordinatewise minima: nonnegative exponents,
// identical torus roots, coefficient order preserved.
PolySystem normalize_supports(const PolySystem& s) {
    PolySystem out;
    out.coeffs = s.coeffs;
    std::vector<LatticeSet> sets;
    for (const auto& set : s.tuple.sets) {
        Point mins = set.points[0];
        for (const auto& p : set.points)
            for (std::size_t j = 0; j < p.size(); ++j) mins[j] = std::min(mins[j], p[j]);
        std::vector<Point> pts;
        for (const auto& p : set.points) pts.push_back(sub(p, mins));
        sets.emplace_back(s.tuple.ambient_dim, std::move(pts));
    }
    out.tuple = LatticeTuple(s.tuple.ambient_dim, std::move(sets));
    return out;
}

}  // namespace

PolySystem sample_generic(const LatticeTuple& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PolySystem s;
    s.tuple = t;
    for (const auto& set : t.sets) {
        std::vector<Complex> row;
        for (std::size_t j = 0; j < set.size(); ++j) {
            double re = gauss(rng);
            double im = gauss(rng);
            row.emplace_back(re, im);
        }
        s.coeffs.push_back(std::move(row));
    }
    return s;
}

void evaluate_and_jacobian(const PolySystem& s, const std::vector<Complex>& x,
                           std::vector<Complex>& values, std::vector<Complex>& jac) {
    if (static_cast<int>(x.size()) != s.tuple.ambient_dim)
        throw DimensionMismatch("evaluation point has wrong dimension");
    eval_core(s.tuple, s.coeffs, x, &values, &jac);
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
    // Strip negligible leading coefficients.
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-12 * scale) --deg;
    std::vector<Complex> a(coeffs.begin(), coeffs.begin() + deg + 1);

    std::vector<Complex> roots;
    // Exact zeros at the origin.
    int low = 0;
    while (low < deg && std::abs(a[low]) < 1e-300) {
        roots.push_back(0.0);
        ++low;
    }
    a.erase(a.begin(), a.begin() + low);
    deg -= low;
    if (deg == 0) return roots;

    double bound = 0.0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(a[i] / a[deg]));
    double radius = 1.0 + bound;

    std::vector<Complex> z(deg);
    for (int k = 0; k < deg; ++k) {
        double angle = 2.0 * std::numbers::pi * k / deg + 0.4;
        z[k] = std::pow(radius, static_cast<double>(k + 1) / deg) * Complex(std::cos(angle), std::sin(angle));
    }

    auto horner = [&](const Complex& v, Complex& p, Complex& dp) {
        p = a[deg];
        dp = 0.0;
        for (int i = deg - 1; i >= 0; --i) {
            dp = dp * v + p;
            p = p * v + a[i];
        }
    };

    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < deg; ++k) {
            Complex p, dp;
            horner(z[k], p, dp);
            if (std::abs(p) < 1e-300) continue;
            if (std::abs(dp) < 1e-300) {
                z[k] += 1e-6 * Complex(1.0, 1.0);
                worst = 1.0;
                continue;
            }
            Complex newton = p / dp;
            Complex sum = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            Complex w = newton / (1.0 - newton * sum);
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (worst < 1e-14) break;
    }
    for (int k = 0; k < deg; ++k) {
        for (int polish = 0; polish < 4; ++polish) {
            Complex p, dp;
            horner(z[k], p, dp);
            if (std::abs(dp) < 1e-300) break;
            z[k] -= p / dp;
        }
        roots.push_back(z[k]);
    }
    return roots;
}

std::vector<Complex> track_linear_segment(const LatticeTuple& t, const CoeffMatrix& c0,
                                          const CoeffMatrix& c1, std::vector<Complex> x,
                                          const SolveOptions& opts) {
    const int n = static_cast<int>(x.size());
    CoeffMatrix dc(c0.size());
    for (std::size_t i = 0; i < c0.size(); ++i) {
        dc[i].resize(c0[i].size());
        for (std::size_t j = 0; j < c0[i].size(); ++j) dc[i][j] = c1[i][j] - c0[i][j];
    }
    auto coeffs_at = [&](double tau) {
        CoeffMatrix c(c0.size());
        for (std::size_t i = 0; i < c0.size(); ++i) {
            c[i].resize(c0[i].size());
            for (std::size_t j = 0; j < c0[i].size(); ++j) c[i][j] = c0[i][j] + tau * dc[i][j];
        }
        return c;
    };

    double tau = 0.0;
    double h = 0.05;
    std::vector<Complex> values, jac, dtau_values;
    while (tau < 1.0 - 1e-15) {
        h = std::min(h, 1.0 - tau);
        CoeffMatrix ct = coeffs_at(tau);
        eval_core(t, ct, x, &values, &jac);
        eval_core(t, dc, x, &dtau_values, nullptr);
        std::vector<Complex> dx(dtau_values);
        for (auto& v : dx) v = -v;
        bool predicted = lu_solve(jac, dx, n);

        bool accepted = false;
        while (!accepted) {
            std::vector<Complex> trial = x;
            if (predicted)
                for (int i = 0; i < n; ++i) trial[i] += h * dx[i];
            CoeffMatrix cnext = coeffs_at(tau + h);
            bool converged = false;
            for (int iter = 0; iter < 8; ++iter) {
                std::vector<Complex> v2, j2;
                eval_core(t, cnext, trial, &v2, &j2);
                std::vector<Complex> delta(v2);
                for (auto& d : delta) d = -d;
                if (!lu_solve(j2, delta, n)) break;
                for (int i = 0; i < n; ++i) trial[i] += delta[i];
                if (max_abs(delta) < 1e-11 * (1.0 + max_abs(trial))) {
                    converged = true;
                    break;
                }
            }
            bool sane = converged;
            for (const auto& c : trial)
                if (!(std::abs(c) > 1e-14 && std::abs(c) < 1e14) || !std::isfinite(c.real()) ||
                    !std::isfinite(c.imag()))
                    sane = false;
            if (sane) {
                x = std::move(trial);
                tau += h;
                h = std::min(h * 2.0, 0.1);
                accepted = true;
            } else {
                h *= 0.5;
                if (h < opts.min_step) throw PathFailure("step underflow while tracking");
            }
        }
    }
    newton_refine(t, c1, x, 3);
    return x;
}

namespace {

// ---- n = 1 ----------------------------------------------------------------

std::vector<std::vector<Complex>> solve_1d(const PolySystem& s) {
    const auto& pts = s.tuple.sets[0].points;
    long long deg = 0;
    for (const auto& p : pts) deg = std::max(deg, p[0]);
    std::vector<Complex> dense(deg + 1, 0.0);
    for (std::size_t j = 0; j < pts.size(); ++j) dense[pts[j][0]] += s.coeffs[0][j];
    std::vector<std::vector<Complex>> out;
    for (const Complex& z : polynomial_roots(dense))
        if (std::abs(z) > 0.0) out.push_back({z});
    return out;
}

// ---- n = 2: hidden-variable Sylvester resultant ----------------------------

struct DenseBivariate {
    int dx = 0, dy = 0;
    std::vector<Complex> c;  // c[ax * (dy+1) + ay]
    const Complex& at(int ax, int ay) const { return c[ax * (dy + 1) + ay]; }
};

DenseBivariate densify(const LatticeSet& set, const std::vector<Complex>& coeffs, bool swap_xy) {
    DenseBivariate f;
    for (const auto& p : set.points) {
        f.dx = std::max(f.dx, static_cast<int>(swap_xy ? p[1] : p[0]));
        f.dy = std::max(f.dy, static_cast<int>(swap_xy ? p[0] : p[1]));
    }
    f.c.assign((f.dx + 1) * (f.dy + 1), 0.0);
    for (std::size_t j = 0; j < set.points.size(); ++j) {
        const Point& p = set.points[j];
        int ax = static_cast<int>(swap_xy ? p[1] : p[0]);
        int ay = static_cast<int>(swap_xy ? p[0] : p[1]);
        f.c[ax * (f.dy + 1) + ay] += coeffs[j];
    }
    return f;
}

// Coefficient of y^ay as a polynomial in x, evaluated at x0.
Complex y_coeff_at(const DenseBivariate& f, int ay, const Complex& x0) {
    Complex acc = 0.0;
    for (int ax = f.dx; ax >= 0; --ax) acc = acc * x0 + f.at(ax, ay);
    return acc;
}

std::vector<Complex> univariate_in_y(const DenseBivariate& f, const Complex& x0) {
    std::vector<Complex> dense(f.dy + 1);
    for (int ay = 0; ay <= f.dy; ++ay) dense[ay] = y_coeff_at(f, ay, x0);
    return polynomial_roots(dense);
}

std::vector<std::vector<Complex>> solve_2d_resultant(const PolySystem& s, const SolveOptions& opts,
                                                     std::mt19937_64& rng) {
    for (int orientation = 0; orientation < 2; ++orientation) {
        bool swap_xy = orientation == 1;
        DenseBivariate f1 = densify(s.tuple.sets[0], s.coeffs[0], swap_xy);
        DenseBivariate f2 = densify(s.tuple.sets[1], s.coeffs[1], swap_xy);
        std::vector<std::vector<Complex>> found;
        auto emit = [&](Complex x0, Complex y0) {
            if (swap_xy) std::swap(x0, y0);
            found.push_back({x0, y0});
        };

        if (f1.dy == 0 && f2.dy == 0) continue;  // try the other orientation
        if (f1.dy == 0 || f2.dy == 0) {
            // One equation is univariate in x: solve it, then back-substitute.
            const DenseBivariate& uni = f1.dy == 0 ? f1 : f2;
            const DenseBivariate& other = f1.dy == 0 ? f2 : f1;
            std::vector<Complex> dense(uni.dx + 1);
            for (int ax = 0; ax <= uni.dx; ++ax) dense[ax] = uni.at(ax, 0);
            for (const Complex& x0 : polynomial_roots(dense)) {
                if (std::abs(x0) == 0.0) continue;
                for (const Complex& y0 : univariate_in_y(other, x0)) emit(x0, y0);
            }
            return found;
        }

        // Sylvester determinant of f1, f2 as polynomials in y, by
        // evaluation at scaled roots of unity and inverse DFT.
        const int m = f1.dy + f2.dy;
        const int bound = f1.dx * f2.dy + f2.dx * f1.dy;
        const int K = bound + 1;
        std::uniform_real_distribution<double> unit(0.0, 2.0 * std::numbers::pi);
        const double rho = 1.1 + 0.13 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const Complex rot = std::polar(rho, unit(rng));
        std::vector<Complex> samples(K);
        for (int tix = 0; tix < K; ++tix) {
            Complex x0 = rot * std::polar(1.0, 2.0 * std::numbers::pi * tix / K);
            std::vector<Complex> syl(static_cast<std::size_t>(m) * m, 0.0);
            for (int i = 0; i < f2.dy; ++i)
                for (int k = 0; k <= f1.dy; ++k)
                    syl[i * m + i + k] = y_coeff_at(f1, f1.dy - k, x0);
            for (int i = 0; i < f1.dy; ++i)
                for (int k = 0; k <= f2.dy; ++k)
                    syl[(f2.dy + i) * m + i + k] = y_coeff_at(f2, f2.dy - k, x0);
            samples[tix] = lu_det(std::move(syl), m);
        }
        std::vector<Complex> res(K);
        for (int k = 0; k < K; ++k) {
            Complex acc = 0.0;
            for (int tix = 0; tix < K; ++tix)
                acc += samples[tix] * std::polar(1.0, -2.0 * std::numbers::pi * k * tix / K);
            res[k] = acc / (static_cast<double>(K) * cpow(rot, k));
        }

        for (const Complex& x0 : polynomial_roots(res)) {
            if (std::abs(x0) < opts.torus_min / 10 || std::abs(x0) > opts.torus_max * 10) continue;
            for (const Complex& y0 : univariate_in_y(f1, x0)) {
                Complex f2_val = 0.0;
                for (int ay = f2.dy; ay >= 0; --ay) f2_val = f2_val * y0 + y_coeff_at(f2, ay, x0);
                if (std::abs(f2_val) < 1e-4 * (1.0 + std::abs(x0)) * (1.0 + std::abs(y0)))
                    emit(x0, y0);
            }
        }
        return found;
    }
    throw DegenerateSystem("both equations independent of both variables");
}

// ---- n >= 3 (and fallback): total-degree homotopy ---------------------------

std::vector<std::vector<Complex>> solve_homotopy(const PolySystem& s, const SolveOptions& opts,
                                                 std::mt19937_64& rng) {
    const int n = s.tuple.ambient_dim;
    std::vector<long long> degs(n);
    for (int i = 0; i < n; ++i) {
        long long d = 0;
        for (const auto& p : s.tuple.sets[i].points) {
            long long total = 0;
            for (long long c : p) total += c;
            d = std::max(d, total);
        }
        if (d == 0) throw DegenerateSystem("constant equation in the system");
        degs[i] = d;
    }
    long long paths = 1;
    for (long long d : degs) {
        paths *= d;
        if (paths > 20000) throw Unsupported("total-degree start system too large");
    }

    // Union support: A_i plus the start monomials 0 and d_i * e_i.
    std::vector<LatticeSet> union_sets;
    CoeffMatrix c0, c1;
    std::uniform_real_distribution<double> unit(0.0, 2.0 * std::numbers::pi);
    const Complex gamma = std::polar(1.0, unit(rng));
    std::vector<Complex> rconst(n);
    for (int i = 0; i < n; ++i) rconst[i] = std::polar(1.0, unit(rng));

    for (int i = 0; i < n; ++i) {
        std::vector<Point> pts = s.tuple.sets[i].points;
        Point zero(n, 0), top(n, 0);
        top[i] = degs[i];
        pts.push_back(zero);
        pts.push_back(top);
        LatticeSet uset(n, std::move(pts));
        std::vector<Complex> start_row(uset.size(), 0.0), target_row(uset.size(), 0.0);
        for (std::size_t j = 0; j < uset.size(); ++j) {
            if (uset.points[j] == zero) start_row[j] += -gamma * rconst[i];
            if (uset.points[j] == top) start_row[j] += gamma;
            auto it = std::lower_bound(s.tuple.sets[i].points.begin(),
                                       s.tuple.sets[i].points.end(), uset.points[j]);
            if (it != s.tuple.sets[i].points.end() && *it == uset.points[j])
                target_row[j] = s.coeffs[i][it - s.tuple.sets[i].points.begin()];
        }
        union_sets.push_back(std::move(uset));
        c0.push_back(std::move(start_row));
        c1.push_back(std::move(target_row));
    }
    LatticeTuple union_tuple(n, std::move(union_sets));

    std::vector<std::vector<Complex>> found;
    std::vector<long long> idx(n, 0);
    while (true) {
        std::vector<Complex> x0(n);
        for (int i = 0; i < n; ++i) {
            double angle = (std::arg(rconst[i]) + 2.0 * std::numbers::pi * idx[i]) / degs[i];
            x0[i] = std::polar(1.0, angle);
        }
        try {
            found.push_back(track_linear_segment(union_tuple, c0, c1, std::move(x0), opts));
        } catch (const PathFailure&) {
            // Divergent path: the start root flows to infinity or off the
            // torus; expected whenever the Bezout count exceeds the
            // mixed volume.
        }
        int pos = 0;
        while (pos < n) {
            if (++idx[pos] < degs[pos]) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return found;
}

}  // namespace

RootSet solve_system(const PolySystem& input, const SolveOptions& opts) {
    if (!input.tuple.square()) throw DimensionMismatch("solve_system requires a square system");
    const int n = input.tuple.ambient_dim;
    if (n > opts.max_dim) throw Unsupported("system dimension exceeds the configured cap");
    for (std::size_t i = 0; i < input.tuple.sets.size(); ++i)
        if (input.coeffs.size() <= i || input.coeffs[i].size() != input.tuple.sets[i].size())
            throw std::invalid_argument("coefficient shape does not match the tuple");

    BigInt mv_big = mixed_volume(input.tuple);
    const long long mv = static_cast<long long>(mv_big);
    RootSet out;
    if (mv == 0) return out;

    PolySystem s = normalize_supports(input);
    std::mt19937_64 rng(opts.seed);

    for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
        out.roots.clear();
        out.residuals.clear();
        out.off_torus_discarded = 0;
        out.retries_used = attempt;

        std::vector<std::vector<Complex>> candidates;
        try {
            if (n == 1)
                candidates = solve_1d(s);
            else if (n == 2 && opts.strategy != SolveOptions::Strategy::Homotopy)
                candidates = solve_2d_resultant(s, opts, rng);
            else
                candidates = solve_homotopy(s, opts, rng);
        } catch (const DegenerateSystem&) {
            if (attempt == opts.max_retries) throw;
            continue;
        }

        for (auto& x : candidates) {
            double residual = newton_refine(s.tuple, s.coeffs, x, 20);
            if (!on_torus(x, opts)) {
                ++out.off_torus_discarded;
                continue;
            }
            if (residual > opts.residual_tol) continue;
            bool dup = false;
            for (const auto& seen : out.roots)
                if (roots_close(seen, x, opts.dedup_tol)) {
                    dup = true;
                    break;
                }
            if (!dup) {
                out.roots.push_back(x);
                out.residuals.push_back(residual);
            }
        }

        if (static_cast<long long>(out.roots.size()) == mv) {
            std::vector<std::size_t> order(out.roots.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return root_less(out.roots[a], out.roots[b]); });
            RootSet sorted;
            sorted.off_torus_discarded = out.off_torus_discarded;
            sorted.retries_used = out.retries_used;
            for (std::size_t i : order) {
                sorted.roots.push_back(std::move(out.roots[i]));
                sorted.residuals.push_back(out.residuals[i]);
            }
            return sorted;
        }
        // n = 1 is deterministic; retrying cannot change the answer.
        if (n == 1) break;
    }
    throw DegenerateSystem("root count does not match the mixed volume");
}

}  // namespace latgal
