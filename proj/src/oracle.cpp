#include "dpc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>

namespace dpc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Depth-first scan of integer vectors in [-B, B]^{d+1}.  Each equation is
// tested as soon as all of its variables are assigned, which prunes most of
// the tree.  Only canonical vectors (first nonzero coordinate positive) are
// visited; primitivity and the line filter are applied at the leaves.
struct ExhaustiveScan {
    const SurfaceSpec& s;
    i64 B;
    int n;
    std::vector<std::vector<int>> ready;  // equations testable at each depth
    std::vector<i64> x;
    std::function<void(const std::vector<i64>&, i64)> sink;  // (coords, height)

    ExhaustiveScan(const SurfaceSpec& s_, i64 B_) : s(s_), B(B_), n(s_.ambient_dim + 1) {
        ready.assign(n + 1, {});
        for (size_t e = 0; e < s.equations.size(); e++) {
            int deepest = 0;
            for (const PolyTerm& t : s.equations[e])
                for (int i = 0; i < n; i++)
                    if (t.exps[i] > 0) deepest = std::max(deepest, i + 1);
            ready[deepest].push_back((int)e);
        }
        x.assign(n, 0);
    }

    bool eq_zero(int e) const {
        i128 acc = 0;
        for (const PolyTerm& t : s.equations[e]) {
            i128 v = t.coeff;
            for (int i = 0; i < n; i++)
                for (int k = 0; k < t.exps[i]; k++) v *= (i128)x[i];
            acc += v;
        }
        return acc == 0;
    }

    void descend(int depth, bool all_zero) {
        if (depth == n) {
            if (all_zero) return;
            i64 g = 0, h = 0;
            for (i64 v : x) {
                g = gcd64(g, v);
                h = std::max(h, v < 0 ? -v : v);
            }
            if (g != 1) return;
            ProjectivePoint p{x};
            if (is_on_line(s, p)) return;
            sink(x, h);
            return;
        }
        i64 lo = all_zero ? 0 : -B;  // canonical sign: leading coordinate >= 0
        for (i64 v = lo; v <= B; v++) {
            x[depth] = v;
            bool ok = true;
            for (int e : ready[depth + 1])
                if (!eq_zero(e)) { ok = false; break; }
            if (ok) descend(depth + 1, all_zero && v == 0);
        }
        x[depth] = 0;
    }
};

void sort_unique(std::vector<ProjectivePoint>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Candidate produced by a projection solver: verify the full equation set,
// normalize, and keep it when the canonical representative has height <= B
// and avoids the lines.
void accept_candidate(const SurfaceSpec& s, const std::vector<i64>& raw, i64 B,
                      std::vector<ProjectivePoint>& out) {
    if (!on_surface(s, raw)) return;
    bool nonzero = false;
    for (i64 v : raw) nonzero |= (v != 0);
    if (!nonzero) return;
    ProjectivePoint p = normalize(raw);
    if (height(p) > B) return;
    if (is_on_line(s, p)) return;
    out.push_back(std::move(p));
}

// S1: a point of the quintic model is determined by (x0, x1, x4) with
// x0 >= 1; the remaining coordinates follow from
//   x3 = -(x1^2 + x1 x4)/x0,  x5 = -(x1 x4 + x4^2)/x0,  x2 = x1 x5 / x0.
// The first divisibility makes x4 run through an arithmetic progression.
void project_s1(i64 B, int nthreads, std::vector<ProjectivePoint>& out) {
    const SurfaceSpec& s = surface(SurfaceId::S1);
    auto work = [&](i64 x0, std::vector<ProjectivePoint>& loc) {
        for (i64 x1 = -B; x1 <= B; x1++) {
            i64 step, start;
            if (x1 == 0) {
                step = 1;
                start = -B;
            } else {
                i64 g = gcd64(x1, x0);
                i64 m = x0 / g;
                if (m == 1) {
                    step = 1;
                    start = -B;
                } else {
                    // x1*x4 = -x1^2 (mod x0)
                    i64 a = pmod64(x1 / g, m);
                    i64 rhs = pmod64(-(i64)(((i128)x1 * x1 / g) % m), m);
                    i64 r = (i64)(((i128)rhs * modinv64(a, m)) % m);
                    step = m;
                    start = r - ((r + B) / m) * m;
                    while (start < -B) start += m;
                }
            }
            for (i64 x4 = start; x4 <= B; x4 += step) {
                i128 n3 = (i128)x1 * (x1 + x4);
                if (n3 % x0 != 0) continue;
                i128 n5 = (i128)x4 * (x1 + x4);
                if (n5 % x0 != 0) continue;
                i64 x3 = (i64)(-(n3 / x0));
                i64 x5 = (i64)(-(n5 / x0));
                i128 n2 = (i128)x1 * x5;
                if (n2 % x0 != 0) continue;
                i64 x2 = (i64)(n2 / x0);
                accept_candidate(s, {x0, x1, x2, x3, x4, x5}, B, loc);
            }
        }
    };
    std::vector<std::vector<ProjectivePoint>> parts(nthreads);
    std::vector<std::thread> th;
    for (int t = 0; t < nthreads; t++)
        th.emplace_back([&, t] {
            for (i64 x0 = 1 + t; x0 <= B; x0 += nthreads) work(x0, parts[t]);
        });
    for (auto& h : th) h.join();
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
}

// S2: points off the lines have x2 != 0 and x3 | x2^2, so x1 = x2^2/x3;
// then x2 | x0(x0 + x3) puts x0 in a union of progressions and
// x4 = -(x0^2 + x0 x3)/x2.
void project_s2(i64 B, int nthreads, std::vector<ProjectivePoint>& out) {
    const SurfaceSpec& s = surface(SurfaceId::S2);
    auto work = [&](i64 a2, std::vector<ProjectivePoint>& loc) {
        // divisors of a2^2 up to B
        std::vector<i64> divs;
        i128 sq = (i128)a2 * a2;
        for (i64 d = 1; (i128)d * d <= sq; d++) {
            if (sq % d != 0) continue;
            divs.push_back(d);
            i64 q = (i64)(sq / d);
            if (q != d) divs.push_back(q);
        }
        for (i64 sx2 : {1, -1}) {
            i64 x2 = sx2 * a2;
            for (i64 ad : divs) {
                if (ad > B) continue;
                for (i64 x3 : {ad, -ad}) {
                    i64 x1 = (i64)(sq / x3);  // x1 * x3 = x2^2
                    for (i64 r = 0; r < a2; r++) {
                        if ((i64)(((i128)r * (r + pmod64(x3, a2))) % a2) != 0) continue;
                        for (i64 x0 = r; x0 <= B; x0 += a2) {
                            i128 n4 = (i128)x0 * (x0 + x3);
                            if (n4 % x2 != 0) continue;
                            i64 x4 = (i64)(-(n4 / x2));
                            accept_candidate(s, {x0, x1, x2, x3, x4}, B, loc);
                        }
                    }
                }
            }
        }
    };
    std::vector<std::vector<ProjectivePoint>> parts(nthreads);
    std::vector<std::thread> th;
    for (int t = 0; t < nthreads; t++)
        th.emplace_back([&, t] {
            for (i64 a2 = 1 + t; a2 <= B; a2 += nthreads) work(a2, parts[t]);
        });
    for (auto& h : th) h.join();
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
}

// S3: points off the lines have x0 >= 1; x0 | x2 x3 restricts x3 to
// multiples of x0/gcd(x2, x0), then x1 = x2 x3 / x0 and
// x4 = -(x1 x2 + x3^2)/x0.
void project_s3(i64 B, int nthreads, std::vector<ProjectivePoint>& out) {
    const SurfaceSpec& s = surface(SurfaceId::S3);
    auto work = [&](i64 x0, std::vector<ProjectivePoint>& loc) {
        for (i64 x2 = -B; x2 <= B; x2++) {
            i64 g = gcd64(x2, x0);
            i64 m = x0 / g;
            i64 start = -(B / m) * m;
            for (i64 x3 = start; x3 <= B; x3 += m) {
                i64 x1 = (i64)((i128)x2 * x3 / x0);
                i128 n4 = (i128)x1 * x2 + (i128)x3 * x3;
                if (n4 % x0 != 0) continue;
                i64 x4 = (i64)(-(n4 / x0));
                accept_candidate(s, {x0, x1, x2, x3, x4}, B, loc);
            }
        }
    };
    std::vector<std::vector<ProjectivePoint>> parts(nthreads);
    std::vector<std::thread> th;
    for (int t = 0; t < nthreads; t++)
        th.emplace_back([&, t] {
            for (i64 x0 = 1 + t; x0 <= B; x0 += nthreads) work(x0, parts[t]);
        });
    for (auto& h : th) h.join();
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
}

}  // namespace

std::string method_name(CountMethod m) {
    switch (m) {
        case CountMethod::Exhaustive: return "exhaustive";
        case CountMethod::Projection: return "projection";
        default: return "torsor";
    }
}

CountRecord count_exhaustive(const SurfaceSpec& s, i64 B, std::vector<ProjectivePoint>* out) {
    auto t0 = std::chrono::steady_clock::now();
    ExhaustiveScan scan(s, B);
    i64 count = 0;
    scan.sink = [&](const std::vector<i64>& x, i64) {
        count++;
        if (out) out->push_back(ProjectivePoint{x});
    };
    scan.descend(0, true);
    if (out) sort_unique(*out);
    return CountRecord{s.name, CountMethod::Exhaustive, B, count, seconds_since(t0), {}};
}

std::vector<i64> exhaustive_counts_by_height(const SurfaceSpec& s, i64 Bmax) {
    ExhaustiveScan scan(s, Bmax);
    std::vector<i64> hist(Bmax + 1, 0);
    scan.sink = [&](const std::vector<i64>&, i64 h) { hist[h]++; };
    scan.descend(0, true);
    std::vector<i64> counts(Bmax + 1, 0);
    for (i64 b = 1; b <= Bmax; b++) counts[b] = counts[b - 1] + hist[b];
    return counts;
}

CountRecord count_projection(const SurfaceSpec& s, i64 B, std::vector<ProjectivePoint>* out,
                             int nthreads) {
    auto t0 = std::chrono::steady_clock::now();
    if (nthreads <= 0) nthreads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ProjectivePoint> pts;
    switch (s.id) {
        case SurfaceId::S1: project_s1(B, nthreads, pts); break;
        case SurfaceId::S2: project_s2(B, nthreads, pts); break;
        case SurfaceId::S3: project_s3(B, nthreads, pts); break;
    }
    sort_unique(pts);
    i64 count = (i64)pts.size();
    if (out) *out = std::move(pts);
    CountRecord rec{s.name, CountMethod::Projection, B, count, seconds_since(t0), {}};
    rec.params["threads"] = std::to_string(nthreads);
    return rec;
}

}  // namespace dpc
