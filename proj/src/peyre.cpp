#include "dpc/peyre.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "dpc/rng.hpp"

namespace dpc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- exact LA

using Row = std::vector<Rational>;
using Mat = std::vector<Row>;

// Solve the square system M x = b; empty result if singular.
std::vector<Rational> solve_square(Mat M, std::vector<Rational> b) {
    int n = (int)M.size();
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int r = col; r < n; r++)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return {};
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; r++) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (int c = col; c < n; c++) M[r][c] -= f * M[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; i++) x[i] = b[i] / M[i][i];
    return x;
}

int rank_of(Mat M) {
    int rows = (int)M.size();
    if (rows == 0) return 0;
    int cols = (int)M[0].size(), rank = 0;
    for (int col = 0; col < cols && rank < rows; col++) {
        int piv = -1;
        for (int r = rank; r < rows; r++)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        for (int r = rank + 1; r < rows; r++) {
            if (M[r][col] == 0) continue;
            Rational f = M[r][col] / M[rank][col];
            for (int c = col; c < cols; c++) M[r][c] -= f * M[rank][c];
        }
        rank++;
    }
    return rank;
}

Rational det_of(Mat M) {
    int n = (int)M.size();
    Rational d = 1;
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int r = col; r < n; r++)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(M[piv], M[col]);
            d = -d;
        }
        d *= M[col][col];
        for (int r = col + 1; r < n; r++) {
            if (M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (int c = col; c < n; c++) M[r][c] -= f * M[col][c];
        }
    }
    return d;
}

// Full constraint list: rows (a, A) meaning a.t <= A, including t_j >= 0 as
// -t_j <= 0.
struct HRep {
    int dim;
    std::vector<Row> a;
    std::vector<Rational> A;
};

HRep build_hrep(const PolytopeSpec& p) {
    HRep h;
    h.dim = p.dim;
    for (int j = 0; j < p.dim; j++) {
        Row r(p.dim, 0);
        r[j] = -1;
        h.a.push_back(r);
        h.A.push_back(0);
    }
    for (const Inequality& q : p.inequalities) {
        if ((int)q.a.size() != p.dim)
            throw std::invalid_argument("polytope_volume: inequality arity");
        h.a.push_back(q.a);
        h.A.push_back(q.A);
    }
    return h;
}

std::vector<std::vector<Rational>> enumerate_vertices(const HRep& h) {
    int m = (int)h.a.size(), d = h.dim;
    std::vector<std::vector<Rational>> verts;
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == d) {
            Mat M(d);
            std::vector<Rational> b(d);
            for (int i = 0; i < d; i++) {
                M[i] = h.a[idx[i]];
                b[i] = h.A[idx[i]];
            }
            std::vector<Rational> x = solve_square(M, b);
            if (x.empty()) return;
            for (int c = 0; c < m; c++) {
                Rational dot = 0;
                for (int j = 0; j < d; j++) dot += h.a[c][j] * x[j];
                if (dot > h.A[c]) return;
            }
            if (std::find(verts.begin(), verts.end(), x) == verts.end())
                verts.push_back(x);
            return;
        }
        for (int i = start; i <= m - (d - k); i++) {
            idx[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    return verts;
}

// Recursively triangulate the face spanned by the given vertex indices
// (affine dimension k) into k-simplices, listed as index vectors of size k+1.
void triangulate_face(const HRep& h, const std::vector<std::vector<Rational>>& verts,
                      const std::vector<std::vector<bool>>& tight,
                      const std::vector<int>& face, const std::set<int>& tight_cons,
                      int k, std::vector<std::vector<int>>& out) {
    if ((int)face.size() == k + 1) {
        out.push_back(face);
        return;
    }
    int apex = face[0];
    std::set<std::vector<int>> subfaces;
    for (int c = 0; c < (int)h.a.size(); c++) {
        if (tight_cons.count(c) || tight[apex][c]) continue;
        std::vector<int> g;
        for (int v : face)
            if (tight[v][c]) g.push_back(v);
        if ((int)g.size() < k) continue;
        Mat diffs;
        for (size_t i = 1; i < g.size(); i++) {
            Row r(h.dim);
            for (int j = 0; j < h.dim; j++) r[j] = verts[g[i]][j] - verts[g[0]][j];
            diffs.push_back(r);
        }
        if (rank_of(diffs) != k - 1) continue;
        std::sort(g.begin(), g.end());
        if (!subfaces.insert(g).second) continue;
        std::set<int> tc = tight_cons;
        tc.insert(c);
        std::vector<std::vector<int>> sub;
        triangulate_face(h, verts, tight, g, tc, k - 1, sub);
        for (auto& s : sub) {
            s.push_back(apex);
            out.push_back(s);
        }
    }
}

void check_bounded(const PolytopeSpec& p) {
    // recession cone {t >= 0, a_i.t <= 0} is {0} iff the auxiliary polytope
    // obtained by adding sum(t) <= 1 has no vertex with positive sum
    PolytopeSpec q = p;
    for (Inequality& in : q.inequalities) in.A = 0;
    Inequality cap;
    cap.a.assign(p.dim, 1);
    cap.A = 1;
    q.inequalities.push_back(cap);
    auto verts = enumerate_vertices(build_hrep(q));
    for (const auto& v : verts) {
        Rational s = 0;
        for (const Rational& x : v) s += x;
        if (s > 0) throw std::domain_error("polytope_volume: unbounded region");
    }
}

// ------------------------------------------------------------- MC plumbing

constexpr i64 kBlock = 65536;

// Fixed-block Monte Carlo: sample i is always drawn from CounterRng(seed,
// stream, i), blocks are assigned round-robin to shards, and block sums are
// reduced in index order, so the result is bit-identical for any shard count.
McResult run_mc(u64 seed, u64 stream, i64 samples, int nshards,
                const std::function<double(CounterRng&)>& f) {
    if (samples < 1) throw std::invalid_argument("run_mc: nonpositive sample count");
    if (nshards < 1) nshards = 1;
    i64 nblocks = (samples + kBlock - 1) / kBlock;
    i64 total = nblocks * kBlock;
    std::vector<double> bsum(nblocks), bsum2(nblocks);
    auto shard_fn = [&](int sh) {
        for (i64 b = sh; b < nblocks; b += nshards) {
            double s = 0, s2 = 0;
            for (i64 j = 0; j < kBlock; j++) {
                CounterRng rng(seed, stream, (u64)(b * kBlock + j));
                double v = f(rng);
                s += v;
                s2 += v * v;
            }
            bsum[b] = s;
            bsum2[b] = s2;
        }
    };
    if (nshards == 1) {
        shard_fn(0);
    } else {
        std::vector<std::thread> th;
        for (int sh = 0; sh < nshards; sh++) th.emplace_back(shard_fn, sh);
        for (auto& t : th) t.join();
    }
    double S = 0, S2 = 0;
    for (i64 b = 0; b < nblocks; b++) {
        S += bsum[b];
        S2 += bsum2[b];
    }
    double n = (double)total;
    double mean = S / n;
    double var = std::max(0.0, S2 / n - mean * mean);
    McResult r;
    r.estimate = mean;
    r.stderr_ = std::sqrt(var / n);
    r.samples = total;
    r.seed = seed;
    return r;
}

// -------------------------------------------------------------- 1-D fibers

// Disjoint sorted closed intervals; endpoints may be infinite.
struct IntervalSet {
    std::vector<std::pair<double, double>> iv = {{-kInf, kInf}};

    void clip(double lo, double hi) {  // intersect with [lo, hi]
        if (!(lo <= hi)) { iv.clear(); return; }
        std::vector<std::pair<double, double>> out;
        for (auto [a, b] : iv) {
            double x = std::max(a, lo), y = std::min(b, hi);
            if (x <= y) out.push_back({x, y});
        }
        iv = std::move(out);
    }
    void subtract(double lo, double hi) {  // remove the open interval (lo, hi)
        if (!(lo < hi)) return;
        std::vector<std::pair<double, double>> out;
        for (auto [a, b] : iv) {
            if (b <= lo || a >= hi) { out.push_back({a, b}); continue; }
            if (a < lo) out.push_back({a, lo});
            if (b > hi) out.push_back({hi, b});
        }
        iv = std::move(out);
    }
    // {x : |coef*x + c| <= C}, C >= 0
    void band_linear(double coef, double c, double C) {
        if (coef == 0) {
            if (std::fabs(c) > C) iv.clear();
            return;
        }
        double x1 = (-C - c) / coef, x2 = (C - c) / coef;
        clip(std::min(x1, x2), std::max(x1, x2));
    }
    // {x : -C <= a x^2 + b x + c <= C}, C >= 0
    void band_quadratic(double a, double b, double c, double C) {
        if (a == 0) { band_linear(b, c, C); return; }
        if (a < 0) { a = -a; b = -b; c = -c; }
        // a x^2 + b x + (c - C) <= 0 : between the roots
        double d1 = b * b - 4 * a * (c - C);
        if (d1 < 0) { iv.clear(); return; }
        double s1 = std::sqrt(d1);
        clip((-b - s1) / (2 * a), (-b + s1) / (2 * a));
        // a x^2 + b x + (c + C) >= 0 : outside the open root interval
        double d2 = b * b - 4 * a * (c + C);
        if (d2 > 0) {
            double s2 = std::sqrt(d2);
            subtract((-b - s2) / (2 * a), (-b + s2) / (2 * a));
        }
    }
    double length() const {
        double L = 0;
        for (auto [a, b] : iv) {
            if (std::isinf(a) || std::isinf(b)) return kInf;
            L += b - a;
        }
        return L;
    }
};

double finite_or_zero(double x) { return std::isfinite(x) ? x : 0.0; }

// ------------------------------------------------------- omega_inf kernels

// max{|z0^3|, |z0^2 z1|, |z1 z2 (z1+z2)|, |z0 z1 (z1+z2)|, |z0^2 z2|,
//     |z0 z2 (z1+z2)|} <= 1, prefactor 3; sampled in (z1, w = z1+z2).
double kernel_omega_s1(CounterRng& rng) {
    double z1 = rng.heavy_tail();
    double w = rng.heavy_tail();
    double z2 = w - z1;
    if (std::fabs(z1 * z2 * w) > 1.0) return 0.0;
    double m = 1.0;
    if (z1 != 0) m = std::min(m, 1.0 / std::sqrt(std::fabs(z1)));
    if (z2 != 0) m = std::min(m, 1.0 / std::sqrt(std::fabs(z2)));
    if (z1 * w != 0) m = std::min(m, 1.0 / std::fabs(z1 * w));
    if (z2 * w != 0) m = std::min(m, 1.0 / std::fabs(z2 * w));
    double w1 = CounterRng::heavy_tail_pdf(z1) * CounterRng::heavy_tail_pdf(w);
    return finite_or_zero(3.0 * 2.0 * m / w1);
}

// max{|z0^3|, |z0 z1 z2|, |z0^2 z1|, |z0^2 z2|, |z2 (z1^2 + z0 z2)|} <= 1,
// prefactor 3; the last condition is a linear band in z0.
double kernel_omega_s3(CounterRng& rng) {
    double z1 = rng.heavy_tail();
    double z2 = rng.heavy_tail();
    double m = 1.0;
    if (z1 != 0) m = std::min(m, 1.0 / std::sqrt(std::fabs(z1)));
    if (z2 != 0) m = std::min(m, 1.0 / std::sqrt(std::fabs(z2)));
    if (z1 * z2 != 0) m = std::min(m, 1.0 / std::fabs(z1 * z2));
    IntervalSet fib;
    fib.clip(-m, m);
    fib.band_linear(z2 * z2, z1 * z1 * z2, 1.0);
    double len = fib.length();
    if (!std::isfinite(len)) return 0.0;
    double w1 = CounterRng::heavy_tail_pdf(z1) * CounterRng::heavy_tail_pdf(z2);
    return finite_or_zero(3.0 * len / w1);
}

// Region {|x0| <= 1, |x2| <= 1, x2^2 <= x1 <= 1,
//         |x0 (x0 x1 + x2^2)| <= x1 |x2|}, integrand 1/(x1 |x2|).
// x2 drawn sqrt-shaped on [-1,1], x1 log-uniform on [x2^2, 1].
double kernel_omega_s2(CounterRng& rng) {
    double x2 = rng.sqrt_shaped(1.0);
    double ax2 = std::fabs(x2);
    if (ax2 < 1e-300 || ax2 >= 1.0) return 0.0;
    double L = -std::log(ax2);  // > 0
    if (L < 1e-15) return 0.0;
    double v = rng.uniform01();
    double x1 = std::exp(-2.0 * v * L);  // in [x2^2, 1]
    double c = x1 * ax2;
    IntervalSet fib;  // |x1 x0^2 + x2^2 x0| <= c, |x0| <= 1
    fib.clip(-1.0, 1.0);
    fib.band_quadratic(x1, x2 * x2, 0.0, c);
    double len = fib.length();
    double pdf = CounterRng::sqrt_shaped_pdf(x2, 1.0) * (1.0 / (2.0 * L * x1));
    return finite_or_zero(len / (x1 * ax2) / pdf);
}

double kernel_cube(CounterRng& rng) {
    double z0 = rng.uniform_sym(1.5);
    double z1 = rng.uniform_sym(1.5);
    double z2 = rng.uniform_sym(1.5);
    bool in = std::fabs(z0) <= 1 && std::fabs(z1) <= 1 && std::fabs(z2) <= 1;
    return in ? 27.0 : 0.0;
}

// ------------------------------------------------------- V0'(B) estimators

// 7-dim integral of 1/eta4 over eta2..eta5 in [1,B] with
//   eta2^2 eta3^2 eta4^2 eta5 <= B,  eta2^2 eta5^4 <= B eta3 eta4,
// |eta1|^3 eta2^2 eta3^2 eta4^2 eta5 <= B, eta6, eta7 real subject to the
// five height bands; the eta7 fiber is computed exactly.
double kernel_v0_s1(CounterRng& rng, double B) {
    double lnB = std::log(B);
    double e2 = std::exp(rng.uniform01() * lnB);
    double e3 = std::exp(rng.uniform01() * lnB);
    double e4 = std::exp(rng.uniform01() * lnB);
    double e5 = std::exp(rng.uniform01() * lnB);
    double wt = (e2 * lnB) * (e3 * lnB) * (e4 * lnB) * (e5 * lnB);
    if (e2 * e2 * e3 * e3 * e4 * e4 * e5 > B) return 0.0;
    if (e2 * e2 * e5 * e5 * e5 * e5 > B * e3 * e4) return 0.0;

    double R1 = std::cbrt(B / (e2 * e2 * e3 * e3 * e4 * e4 * e5));
    double e1 = rng.sqrt_shaped(R1);
    double w1 = 1.0 / CounterRng::sqrt_shaped_pdf(e1, R1);

    // proposal scale for eta6 from the derived bounds
    // |eta1^2 eta2^2 eta3 eta4 eta5^2 eta6| <= 2B, |eta1 eta2^2 eta5^3 eta6^2| <= 2B
    double c155 = e1 * e1 * e2 * e2 * e3 * e4 * e5 * e5;
    double c166 = std::fabs(e1) * e2 * e2 * e5 * e5 * e5;
    double s6 = std::min(2.0 * B / std::max(c155, 1e-9),
                         std::sqrt(2.0 * B / std::max(c166, 1e-9)));
    s6 = std::clamp(s6, 1e-6, 2.0 * B);
    double z6 = rng.heavy_tail();
    double e6 = s6 * z6;
    double w6 = s6 / CounterRng::heavy_tail_pdf(z6);

    IntervalSet fib;  // eta7
    fib.band_linear(e1 * e1 * e2 * e3 * e3 * e4, 0.0, B);                    // H12
    fib.band_quadratic(e3 * e6, e2 * e5 * e5 * e6 * e6, 0.0, B * e4);        // H13
    fib.band_linear(e1 * e2 * e3 * e5 * e6, 0.0, B);                         // H14
    fib.band_linear(e1 * e1 * e2 * e3 * e3 * e4,
                    e1 * e1 * e2 * e2 * e3 * e4 * e5 * e5 * e6, B);          // H15
    fib.band_linear(e1 * e2 * e3 * e5 * e6,
                    e1 * e2 * e2 * e5 * e5 * e5 * e6 * e6, B);               // H16
    double len = fib.length();
    if (!std::isfinite(len)) return 0.0;
    return finite_or_zero(len * (1.0 / e4) * wt * w1 * w6);
}

// 8-dim integral of 1/eta5 over eta1,eta2,eta4,eta5,eta6 in [1,B] with
//   eta1^2 eta2^4 eta4^2 eta5^3 eta6 <= B,  eta4^2 eta6^4 <= B eta1 eta2^2 eta5^3,
// |eta3|^3 eta1^2 eta2^4 eta4^2 eta5^3 eta6 <= B, eta7 bounded by its height
// band, eta8 fiber exact.
double kernel_v0_s3(CounterRng& rng, double B) {
    double lnB = std::log(B);
    double e1 = std::exp(rng.uniform01() * lnB);
    double e2 = std::exp(rng.uniform01() * lnB);
    double e4 = std::exp(rng.uniform01() * lnB);
    double e5 = std::exp(rng.uniform01() * lnB);
    double e6 = std::exp(rng.uniform01() * lnB);
    double wt = (e1 * lnB) * (e2 * lnB) * (e4 * lnB) * (e5 * lnB) * (e6 * lnB);
    double m1 = e1 * e1 * e2 * e2 * e2 * e2 * e4 * e4 * e5 * e5 * e5 * e6;
    if (m1 > B) return 0.0;
    if (e4 * e4 * e6 * e6 * e6 * e6 > B * e1 * e2 * e2 * e5 * e5 * e5) return 0.0;

    double a3 = std::cbrt(B / m1);
    double e3 = rng.sqrt_shaped(a3);
    double w3 = 1.0 / CounterRng::sqrt_shaped_pdf(e3, a3);

    // |eta1 eta2^2 eta3^2 eta4^2 eta5 eta6^2 eta7| <= B
    double c7 = e1 * e2 * e2 * e4 * e4 * e5 * e6 * e6;
    double s7 = std::min(B / (c7 * std::max(e3 * e3, 1e-12)), 1e12);
    s7 = std::max(s7, 1e-6);
    double z7 = rng.heavy_tail();
    double e7 = s7 * z7;
    double w7 = s7 / CounterRng::heavy_tail_pdf(z7);
    if (c7 * e3 * e3 * std::fabs(e7) > B) return 0.0;  // H314

    IntervalSet fib;  // eta8
    fib.band_linear(e1 * e2 * e3 * e4 * e6 * e7, 0.0, B);                        // H312
    fib.band_linear(e1 * e1 * e2 * e2 * e2 * e3 * e3 * e4 * e5 * e5, 0.0, B);    // H313
    fib.band_quadratic(e1 * e7, 0.0,
                       e3 * e4 * e4 * e6 * e6 * e6 * e7 * e7, B * e5);           // H315
    double len = fib.length();
    if (!std::isfinite(len)) return 0.0;
    return finite_or_zero(len * (1.0 / e5) * wt * w3 * w7);
}

}  // namespace

// ------------------------------------------------------------- public API

Rational polytope_volume(const PolytopeSpec& p) {
    if (p.dim < 1) throw std::invalid_argument("polytope_volume: dim < 1");
    check_bounded(p);
    HRep h = build_hrep(p);
    auto verts = enumerate_vertices(h);
    if (verts.empty()) return 0;
    Mat diffs;
    for (size_t i = 1; i < verts.size(); i++) {
        Row r(p.dim);
        for (int j = 0; j < p.dim; j++) r[j] = verts[i][j] - verts[0][j];
        diffs.push_back(r);
    }
    if (rank_of(diffs) < p.dim) return 0;

    std::vector<std::vector<bool>> tight(verts.size(),
                                         std::vector<bool>(h.a.size(), false));
    for (size_t v = 0; v < verts.size(); v++)
        for (size_t c = 0; c < h.a.size(); c++) {
            Rational dot = 0;
            for (int j = 0; j < p.dim; j++) dot += h.a[c][j] * verts[v][j];
            tight[v][c] = (dot == h.A[c]);
        }

    std::vector<int> all(verts.size());
    for (size_t i = 0; i < verts.size(); i++) all[i] = (int)i;
    std::vector<std::vector<int>> simplices;
    triangulate_face(h, verts, tight, all, {}, p.dim, simplices);

    Rational vol = 0;
    for (const auto& s : simplices) {
        Mat M(p.dim, Row(p.dim));
        for (int i = 0; i < p.dim; i++)
            for (int j = 0; j < p.dim; j++)
                M[i][j] = verts[s[i + 1]][j] - verts[s[0]][j];
        Rational d = det_of(M);
        if (d < 0) d = -d;
        vol += d;
    }
    Rational fact = 1;
    for (int i = 2; i <= p.dim; i++) fact *= i;
    return p.prefactor * vol / fact;
}

PolytopeSpec alpha_polytope(SurfaceId s) {
    PolytopeSpec p;
    p.prefactor = Rational(1, 3);
    if (s == SurfaceId::S1) {
        p.dim = 4;
        p.inequalities = {{{2, 2, 2, 1}, 1}, {{2, -1, -1, 4}, 1}};
    } else if (s == SurfaceId::S3) {
        p.dim = 5;
        p.inequalities = {{{2, 4, 2, 3, 1}, 1}, {{-1, -2, 2, -3, 4}, 1}};
    } else {
        throw std::invalid_argument("alpha_polytope: no inequality data for s2");
    }
    return p;
}

Rational alpha_value(SurfaceId s) {
    if (s == SurfaceId::S2) return Rational(1, 8640);
    return polytope_volume(alpha_polytope(s));
}

EulerProduct euler_product(SurfaceId s, i64 P) {
    int e = s == SurfaceId::S1 ? 5 : 6;
    long double prod = 1.0L;
    for (i64 p : primes_up_to(P)) {
        long double u = 1.0L / (long double)p;
        long double f = 1.0L - u;
        long double pw = f;
        for (int i = 1; i < e; i++) pw *= f;
        prod *= pw * (1.0L + e * u + u * u);
    }
    EulerProduct r;
    r.value = (double)prod;
    r.tail_bound = std::expm1((e * (e + 1) / 2.0 + 2.0) / (double)P);
    r.truncation = P;
    return r;
}

McResult omega_infty(SurfaceId s, i64 samples, u64 seed, int nshards) {
    if (samples < 10000) throw std::invalid_argument("omega_infty: samples < 1e4");
    switch (s) {
        case SurfaceId::S1:
            return run_mc(seed, 0x01, samples, nshards, kernel_omega_s1);
        case SurfaceId::S2:
            return run_mc(seed, 0x02, samples, nshards, kernel_omega_s2);
        default:
            return run_mc(seed, 0x03, samples, nshards, kernel_omega_s3);
    }
}

McResult omega_infty_cube(i64 samples, u64 seed, int nshards) {
    return run_mc(seed, 0x0c, samples, nshards, kernel_cube);
}

PeyreBreakdown assemble_c(SurfaceId s, i64 samples, u64 seed, i64 truncation,
                          int nshards) {
    PeyreBreakdown b;
    b.surf = s;
    b.alpha = alpha_value(s);
    b.ep = euler_product(s, truncation);
    b.omega_inf = omega_infty(s, samples, seed, nshards);
    b.rho = surface(s).rho;
    double a = (double)b.alpha;
    b.c_total = a * b.ep.value * b.omega_inf.estimate;
    b.c_stderr = a * b.ep.value * b.omega_inf.stderr_;
    return b;
}

VolumeIdentityReport check_volume_identity(SurfaceId s, i64 B, i64 samples,
                                           u64 seed, int nshards) {
    if (s == SurfaceId::S2)
        throw std::invalid_argument("check_volume_identity: defined for s1 and s3");
    if (B < 2) throw std::invalid_argument("check_volume_identity: bound too small");
    VolumeIdentityReport rep;
    rep.surf = s;
    rep.bound = B;
    rep.alpha = (double)alpha_value(s);
    rep.r = surface(s).rho - 1;
    double Bd = (double)B;
    if (s == SurfaceId::S1) {
        rep.v0 = run_mc(seed, 0x11, samples, nshards,
                        [Bd](CounterRng& rng) { return kernel_v0_s1(rng, Bd); });
    } else {
        rep.v0 = run_mc(seed, 0x13, samples, nshards,
                        [Bd](CounterRng& rng) { return kernel_v0_s3(rng, Bd); });
    }
    rep.omega = omega_infty(s, samples, seed, nshards);
    double scale = Bd * std::pow(std::log(Bd), rep.r);
    rep.predicted = rep.alpha * rep.omega.estimate * scale;
    double pred_err = rep.alpha * rep.omega.stderr_ * scale;
    rep.combined_sigma = std::sqrt(rep.v0.stderr_ * rep.v0.stderr_ + pred_err * pred_err);
    rep.discrepancy_sigma =
        rep.combined_sigma > 0
            ? std::fabs(rep.v0.estimate - rep.predicted) / rep.combined_sigma
            : 0.0;
    rep.pass = rep.discrepancy_sigma <= 3.0;
    return rep;
}

}  // namespace dpc
