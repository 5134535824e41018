#include "dpc/torsor.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "dpc/oracle.hpp"
#include "dpc/rng.hpp"

namespace dpc {

namespace {

TorsorTerm term(std::vector<int> e) { return TorsorTerm{std::move(e)}; }

// eta2*eta5^2*eta6 + eta3*eta7 + eta4*eta8 = 0
TorsorSpec make_t1() {
    TorsorSpec t;
    t.surf = SurfaceId::S1;
    t.n_vars = 8;
    t.terms[0] = term({0, 1, 0, 0, 2, 1, 0, 0});
    t.terms[1] = term({0, 0, 1, 0, 0, 0, 1, 0});
    t.terms[2] = term({0, 0, 0, 1, 0, 0, 0, 1});
    t.dependent_var = 7;
    t.domains = {SignDomain::Positive, SignDomain::Positive, SignDomain::Positive,
                 SignDomain::Positive, SignDomain::Positive, SignDomain::NonZero,
                 SignDomain::Any,      SignDomain::Any};
    t.coprime_edges = {{6, 2}, {6, 5}, {6, 7}, {7, 3}, {7, 5},
                       {2, 0}, {3, 0}, {5, 4}, {4, 1}, {1, 0}};
    t.psi = {
        {3, 2, 2, 2, 1, 0, 0, 0},
        {2, 1, 2, 1, 0, 0, 1, 0},
        {0, 0, 0, 0, 0, 1, 1, 1},
        {1, 1, 1, 0, 1, 1, 1, 0},
        {2, 1, 1, 2, 0, 0, 0, 1},
        {1, 1, 0, 1, 1, 1, 0, 1},
    };
    return t;
}

// eta1*eta9 + eta2*eta8 + eta4*eta5^3*eta6^2*eta7 = 0
TorsorSpec make_t2() {
    TorsorSpec t;
    t.surf = SurfaceId::S2;
    t.n_vars = 9;
    t.terms[0] = term({1, 0, 0, 0, 0, 0, 0, 0, 1});
    t.terms[1] = term({0, 1, 0, 0, 0, 0, 0, 1, 0});
    t.terms[2] = term({0, 0, 0, 1, 3, 2, 1, 0, 0});
    t.dependent_var = 8;
    t.domains = {SignDomain::Positive, SignDomain::Positive, SignDomain::Positive,
                 SignDomain::Positive, SignDomain::Positive, SignDomain::Positive,
                 SignDomain::NonZero,  SignDomain::Any,      SignDomain::Any};
    t.coprime_edges = {{8, 0}, {8, 6}, {8, 7}, {0, 2}, {6, 4}, {4, 5},
                       {5, 3}, {3, 2}, {7, 1}, {7, 6}, {1, 2}};
    t.psi = {
        {0, 1, 1, 1, 1, 1, 1, 1, 0},
        {2, 2, 3, 2, 0, 1, 0, 0, 0},
        {1, 1, 2, 2, 2, 2, 1, 0, 0},
        {0, 0, 1, 2, 4, 3, 2, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 1, 1},
    };
    return t;
}

// eta5*eta9 + eta1*eta8^2 + eta3*eta4^2*eta6^3*eta7 = 0
TorsorSpec make_t3() {
    TorsorSpec t;
    t.surf = SurfaceId::S3;
    t.n_vars = 9;
    t.terms[0] = term({0, 0, 0, 0, 1, 0, 0, 0, 1});
    t.terms[1] = term({1, 0, 0, 0, 0, 0, 0, 2, 0});
    t.terms[2] = term({0, 0, 1, 2, 0, 3, 1, 0, 0});
    t.dependent_var = 8;
    t.domains = {SignDomain::Positive, SignDomain::Positive, SignDomain::Positive,
                 SignDomain::Positive, SignDomain::Positive, SignDomain::Positive,
                 SignDomain::NonZero,  SignDomain::Any,      SignDomain::Any};
    t.coprime_edges = {{8, 4}, {8, 6}, {8, 7}, {7, 0}, {7, 6}, {4, 1},
                       {0, 1}, {6, 5}, {5, 3}, {3, 2}, {2, 1}};
    t.psi = {
        {2, 4, 3, 2, 3, 1, 0, 0, 0},
        {1, 1, 1, 1, 0, 1, 1, 1, 0},
        {2, 3, 2, 1, 2, 0, 0, 1, 0},
        {1, 2, 2, 2, 1, 2, 1, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 0, 1},
    };
    return t;
}

i128 eval_term(const TorsorTerm& tm, const std::vector<i64>& eta) {
    i128 v = 1;
    for (size_t i = 0; i < tm.exps.size(); i++)
        for (int k = 0; k < tm.exps[i]; k++) v *= (i128)eta[i];
    return v;
}

// All non-adjacent pairs for the coprimality test, cached per surface.
const std::vector<std::pair<int, int>>& required_pairs(const TorsorSpec& t) {
    static std::vector<std::pair<int, int>> cache[3];
    auto& req = cache[(int)t.surf];
    if (req.empty()) {
        std::vector<std::vector<bool>> adj(t.n_vars, std::vector<bool>(t.n_vars, false));
        for (auto [a, b] : t.coprime_edges) adj[a][b] = adj[b][a] = true;
        for (int i = 0; i < t.n_vars; i++)
            for (int j = i + 1; j < t.n_vars; j++)
                if (!adj[i][j]) req.push_back({i, j});
    }
    return req;
}

// Integer bound helpers.  div_bound returns floor(B / prod) with prod
// accumulated in 128 bits; 0 when the product already exceeds B.
i64 div_bound(i64 B, std::initializer_list<i64> factors) {
    i128 p = 1;
    for (i64 f : factors) {
        p *= (i128)f;
        if (p > B) return 0;
    }
    return (i64)(B / (i64)p);
}

i64 root_bound(i64 B, std::initializer_list<i64> factors, int k) {
    i64 q = div_bound(B, factors);
    return ifloor_root(q, k);
}

// Per-shard accumulator shared by the three enumerators.
struct Acc {
    i64 count = 0;
    std::vector<i64> hist;  // bucketed by thresholds
    std::vector<std::vector<i64>> tuples;
    const std::vector<i64>* thresholds = nullptr;
    bool collect = false;

    void init(const std::vector<i64>& thr, bool coll) {
        thresholds = &thr;
        collect = coll;
        hist.assign(thr.size() + 1, 0);
    }
    void accept(const std::vector<i64>& eta, i64 h) {
        count++;
        if (!thresholds->empty()) {
            size_t idx = std::lower_bound(thresholds->begin(), thresholds->end(), h) -
                         thresholds->begin();
            hist[idx]++;
        }
        if (collect) tuples.push_back(eta);
    }
};

// Smallest member of the progression r (mod m) that is >= lo.
i64 prog_start(i64 r, i64 m, i64 lo) {
    i64 d = r - lo;
    return lo + pmod64(d, m);
}

// ---------------------------------------------------------------------------
// S1.  Loop order eta1..eta6, eta7 on an arithmetic progression mod eta4
// (forced by eta4 | eta2 eta5^2 eta6 + eta3 eta7), eta8 dependent.
// Loop bounds come from the height monomials that only involve already
// fixed variables; |x4|,|x1| <= B and |x5|,|x3| <= B give the auxiliary
// bounds |eta1^2 eta2^2 eta3 eta4 eta5^2 eta6| <= 2B and
// |eta1 eta2^2 eta5^3 eta6^2| <= 2B used for eta6.
// ---------------------------------------------------------------------------
void enum_s1(i64 B, int shard, int nshards, Acc& acc) {
    std::vector<i64> eta(8);
    i64 work = 0;
    i64 b1 = ifloor_root(B, 3);
    for (i64 e1 = 1; e1 <= b1; e1++)
        for (i64 e2 = 1, b2 = root_bound(B, {e1, e1, e1}, 2); e2 <= b2; e2++) {
            if ((work++) % nshards != shard) continue;
            for (i64 e3 = 1, b3 = root_bound(B, {e1, e1, e1, e2, e2}, 2); e3 <= b3; e3++) {
                if (gcd64(e3, e2) != 1) continue;
                for (i64 e4 = 1, b4 = root_bound(B, {e1, e1, e1, e2, e2, e3, e3}, 2);
                     e4 <= b4; e4++) {
                    if (gcd64(e4, e2) != 1 || gcd64(e4, e3) != 1) continue;
                    i64 inv34 = e4 == 1 ? 0 : modinv64(e3, e4);
                    i64 b5 = div_bound(B, {e1, e1, e1, e2, e2, e3, e3, e4, e4});
                    for (i64 e5 = 1; e5 <= b5; e5++) {
                        if (gcd64(e5, e1) != 1 || gcd64(e5, e3) != 1 || gcd64(e5, e4) != 1)
                            continue;
                        i64 b6 = std::min(div_bound(2 * B, {e1, e1, e2, e2, e3, e4, e5, e5}),
                                          root_bound(2 * B, {e1, e2, e2, e5, e5, e5}, 2));
                        i64 b7base = div_bound(B, {e1, e1, e2, e3, e3, e4});
                        i64 h14 = div_bound(B, {e1, e2, e3, e5});
                        for (i64 a6 = 1; a6 <= b6; a6++) {
                            if (gcd64(a6, e1) != 1 || gcd64(a6, e2) != 1 ||
                                gcd64(a6, e3) != 1 || gcd64(a6, e4) != 1)
                                continue;
                            i64 b7 = std::min(b7base, h14 / a6);
                            if (b7 < 0) continue;
                            for (i64 s6 = 1; s6 >= -1; s6 -= 2) {
                                i64 e6 = s6 * a6;
                                // eta3*eta7 = -eta2*eta5^2*eta6  (mod eta4)
                                i64 r = 0;
                                if (e4 > 1) {
                                    i64 t0 = (i64)(((i128)e2 * e5 % e4) * e5 % e4 *
                                                   pmod64(e6, e4) % e4);
                                    r = (i64)((i128)pmod64(-t0, e4) * inv34 % e4);
                                }
                                i128 t0full = (i128)e2 * e5 * e5 * e6;
                                for (i64 e7 = prog_start(r, e4, -b7); e7 <= b7; e7 += e4) {
                                    i128 num = t0full + (i128)e3 * e7;
                                    i64 e8 = (i64)(-(num / e4));
                                    // heights not yet enforced: x2, x4, x5
                                    i64 a8 = e8 < 0 ? -e8 : e8;
                                    i64 a7 = e7 < 0 ? -e7 : e7;
                                    if ((i128)a6 * a7 * a8 > B) continue;
                                    if ((i128)e1 * e1 * e2 * e3 * e4 * e4 * a8 > B) continue;
                                    if ((i128)e1 * e2 * e4 * e5 * a6 * a8 > B) continue;
                                    if (gcd64(e7, e1) != 1 || gcd64(e7, e2) != 1 ||
                                        gcd64(e7, e4) != 1 || gcd64(e7, e5) != 1)
                                        continue;
                                    if (gcd64(e8, e1) != 1 || gcd64(e8, e2) != 1 ||
                                        gcd64(e8, e3) != 1 || gcd64(e8, e5) != 1)
                                        continue;
                                    i64 h = (i64)std::max({
                                        (i128)e1 * e1 * e1 * e2 * e2 * e3 * e3 * e4 * e4 * e5,
                                        (i128)e1 * e1 * e2 * e3 * e3 * e4 * a7,
                                        (i128)a6 * a7 * a8,
                                        (i128)e1 * e2 * e3 * e5 * a6 * a7,
                                        (i128)e1 * e1 * e2 * e3 * e4 * e4 * a8,
                                        (i128)e1 * e2 * e4 * e5 * a6 * a8});
                                    eta = {e1, e2, e3, e4, e5, e6, e7, e8};
                                    acc.accept(eta, h);
                                }
                            }
                        }
                    }
                }
            }
        }
}

// ---------------------------------------------------------------------------
// S2.  Loop order eta1..eta7, eta8 on a progression mod eta1
// (eta1 | eta2 eta8 + eta4 eta5^3 eta6^2 eta7), eta9 dependent.
// ---------------------------------------------------------------------------
void enum_s2(i64 B, int shard, int nshards, Acc& acc) {
    std::vector<i64> eta(9);
    i64 work = 0;
    i64 b1 = ifloor_root(B, 2);
    for (i64 e1 = 1; e1 <= b1; e1++)
        for (i64 e2 = 1, b2 = root_bound(B, {e1, e1}, 2); e2 <= b2; e2++) {
            if ((work++) % nshards != shard) continue;
            if (gcd64(e2, e1) != 1) continue;
            i64 inv21 = e1 == 1 ? 0 : modinv64(e2, e1);
            for (i64 e3 = 1, b3 = root_bound(B, {e1, e1, e2, e2}, 3); e3 <= b3; e3++)
                for (i64 e4 = 1, b4 = root_bound(B, {e1, e1, e2, e2, e3, e3, e3}, 2);
                     e4 <= b4; e4++) {
                    if (gcd64(e4, e1) != 1 || gcd64(e4, e2) != 1) continue;
                    for (i64 e5 = 1, b5 = root_bound(B, {e3, e4, e4}, 4); e5 <= b5; e5++) {
                        if (gcd64(e5, e1) != 1 || gcd64(e5, e2) != 1 ||
                            gcd64(e5, e3) != 1 || gcd64(e5, e4) != 1)
                            continue;
                        i64 b6 = std::min(
                            div_bound(B, {e1, e1, e2, e2, e3, e3, e3, e4, e4}),
                            root_bound(B, {e3, e4, e4, e5, e5, e5, e5}, 3));
                        for (i64 e6 = 1; e6 <= b6; e6++) {
                            if (gcd64(e6, e1) != 1 || gcd64(e6, e2) != 1 ||
                                gcd64(e6, e3) != 1)
                                continue;
                            i64 b7 = std::min(
                                div_bound(B, {e1, e2, e3, e3, e4, e4, e5, e5, e6, e6}),
                                root_bound(B, {e3, e4, e4, e5, e5, e5, e5, e6, e6, e6}, 2));
                            i64 b8base = div_bound(B, {e2, e3, e4, e5, e6});
                            i128 t2base = (i128)e4 * e5 * e5 * e5 * e6 * e6;
                            for (i64 a7 = 1; a7 <= b7; a7++) {
                                if (gcd64(a7, e1) != 1 || gcd64(a7, e2) != 1 ||
                                    gcd64(a7, e3) != 1 || gcd64(a7, e4) != 1 ||
                                    gcd64(a7, e6) != 1)
                                    continue;
                                i64 b8 = b8base / a7;
                                for (i64 s7 = 1; s7 >= -1; s7 -= 2) {
                                    i64 e7 = s7 * a7;
                                    // eta2*eta8 = -eta4*eta5^3*eta6^2*eta7 (mod eta1)
                                    i64 r = 0;
                                    if (e1 > 1) {
                                        i64 t2m = (i64)(t2base % e1 * pmod64(e7, e1) % e1);
                                        r = (i64)((i128)pmod64(-t2m, e1) * inv21 % e1);
                                    }
                                    i128 t2full = t2base * e7;
                                    for (i64 e8 = prog_start(r, e1, -b8); e8 <= b8; e8 += e1) {
                                        i128 num = (i128)e2 * e8 + t2full;
                                        i64 e9 = (i64)(-(num / e1));
                                        i64 a8 = e8 < 0 ? -e8 : e8;
                                        i64 a9 = e9 < 0 ? -e9 : e9;
                                        if ((i128)a7 * a8 * a9 > B) continue;
                                        if (gcd64(e8, e1) != 1 || gcd64(e8, e3) != 1 ||
                                            gcd64(e8, e4) != 1 || gcd64(e8, e5) != 1 ||
                                            gcd64(e8, e6) != 1)
                                            continue;
                                        if (gcd64(e9, e2) != 1 || gcd64(e9, e3) != 1 ||
                                            gcd64(e9, e4) != 1 || gcd64(e9, e5) != 1 ||
                                            gcd64(e9, e6) != 1)
                                            continue;
                                        i64 h = (i64)std::max({
                                            (i128)e2 * e3 * e4 * e5 * e6 * a7 * a8,
                                            (i128)e1 * e1 * e2 * e2 * e3 * e3 * e3 * e4 *
                                                e4 * e6,
                                            (i128)e1 * e2 * e3 * e3 * e4 * e4 * e5 * e5 *
                                                e6 * e6 * a7,
                                            (i128)e3 * e4 * e4 * e5 * e5 * e5 * e5 * e6 *
                                                e6 * e6 * a7 * a7,
                                            (i128)a7 * a8 * a9});
                                        eta = {e1, e2, e3, e4, e5, e6, e7, e8, e9};
                                        acc.accept(eta, h);
                                    }
                                }
                            }
                        }
                    }
                }
        }
}

// Square roots mod m, cached: sqrt_table(m)[a] lists all r in [0, m) with
// r^2 = a (mod m).
const std::vector<std::vector<int>>& sqrt_table(i64 m) {
    static std::vector<std::vector<std::vector<int>>> cache(1);
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if ((i64)cache.size() <= m) cache.resize(m + 1);
    if (cache[m].empty()) {
        cache[m].assign(m, {});
        for (int r = 0; r < m; r++) cache[m][(i64)r * r % m].push_back(r);
    }
    return cache[m];
}

// ---------------------------------------------------------------------------
// S3.  Loop order eta1..eta7, eta8 solving the quadratic congruence
// eta1 eta8^2 = -eta3 eta4^2 eta6^3 eta7 (mod eta5), eta9 dependent.
// ---------------------------------------------------------------------------
void enum_s3(i64 B, int shard, int nshards, Acc& acc) {
    std::vector<i64> eta(9);
    i64 work = 0;
    i64 b1 = ifloor_root(B, 2);
    for (i64 e1 = 1; e1 <= b1; e1++)
        for (i64 e2 = 1, b2 = root_bound(B, {e1, e1}, 4); e2 <= b2; e2++) {
            if ((work++) % nshards != shard) continue;
            for (i64 e3 = 1, b3 = root_bound(B, {e1, e1, e2, e2, e2, e2}, 3); e3 <= b3;
                 e3++) {
                if (gcd64(e3, e1) != 1) continue;
                for (i64 e4 = 1,
                         b4 = root_bound(B, {e1, e1, e2, e2, e2, e2, e3, e3, e3}, 2);
                     e4 <= b4; e4++) {
                    if (gcd64(e4, e1) != 1 || gcd64(e4, e2) != 1) continue;
                    i64 b5 = root_bound(
                        B, {e1, e1, e2, e2, e2, e2, e3, e3, e3, e4, e4}, 3);
                    for (i64 e5 = 1; e5 <= b5; e5++) {
                        if (gcd64(e5, e1) != 1 || gcd64(e5, e3) != 1 || gcd64(e5, e4) != 1)
                            continue;
                        const auto& roots = sqrt_table(e5);
                        i64 inv15 = e5 == 1 ? 0 : modinv64(e1, e5);
                        i64 b6 = std::min(
                            div_bound(B, {e1, e1, e2, e2, e2, e2, e3, e3, e3, e4, e4, e5,
                                          e5, e5}),
                            root_bound(B, {e1, e2, e2, e3, e3, e4, e4, e5}, 2));
                        for (i64 e6 = 1; e6 <= b6; e6++) {
                            if (gcd64(e6, e1) != 1 || gcd64(e6, e2) != 1 ||
                                gcd64(e6, e3) != 1 || gcd64(e6, e5) != 1)
                                continue;
                            i64 b7 = div_bound(
                                B, {e1, e2, e2, e3, e3, e4, e4, e5, e6, e6});
                            i64 b8m2 = div_bound(B, {e1, e1, e2, e2, e2, e3, e3, e4, e5,
                                                     e5});
                            i64 b8m1base = div_bound(B, {e1, e2, e3, e4, e6});
                            i128 t2base = (i128)e3 * e4 * e4 * e6 * e6 * e6;
                            i64 t2mod = e5 == 1 ? 0 : (i64)(t2base % e5);
                            for (i64 a7 = 1; a7 <= b7; a7++) {
                                if (gcd64(a7, e1) != 1 || gcd64(a7, e2) != 1 ||
                                    gcd64(a7, e3) != 1 || gcd64(a7, e4) != 1 ||
                                    gcd64(a7, e5) != 1)
                                    continue;
                                i64 b8 = std::min(b8m2, b8m1base / a7);
                                for (i64 s7 = 1; s7 >= -1; s7 -= 2) {
                                    i64 e7 = s7 * a7;
                                    i128 t2full = t2base * e7;
                                    // eta8^2 = -t2 * eta1^{-1} (mod eta5)
                                    i64 amod = 0;
                                    if (e5 > 1) {
                                        i64 c = (i64)((i128)t2mod * pmod64(e7, e5) % e5);
                                        amod = (i64)((i128)pmod64(-c, e5) * inv15 % e5);
                                    }
                                    const std::vector<int> one_root = {0};
                                    const std::vector<int>& rs =
                                        e5 == 1 ? one_root : roots[amod];
                                    for (int r : rs) {
                                        for (i64 e8 = prog_start(r, e5, -b8); e8 <= b8;
                                             e8 += e5) {
                                            i128 num = (i128)e1 * e8 * e8 + t2full;
                                            i64 e9 = (i64)(-(num / e5));
                                            i64 a8 = e8 < 0 ? -e8 : e8;
                                            i64 a9 = e9 < 0 ? -e9 : e9;
                                            if ((i128)a7 * a9 > B) continue;
                                            if (gcd64(e8, e2) != 1 || gcd64(e8, e3) != 1 ||
                                                gcd64(e8, e4) != 1 || gcd64(e8, e5) != 1 ||
                                                gcd64(e8, e6) != 1)
                                                continue;
                                            if (gcd64(e9, e1) != 1 || gcd64(e9, e2) != 1 ||
                                                gcd64(e9, e3) != 1 || gcd64(e9, e4) != 1 ||
                                                gcd64(e9, e6) != 1)
                                                continue;
                                            i64 h = (i64)std::max({
                                                (i128)e1 * e1 * e2 * e2 * e2 * e2 * e3 *
                                                    e3 * e3 * e4 * e4 * e5 * e5 * e5 * e6,
                                                (i128)e1 * e2 * e3 * e4 * e6 * a7 * a8,
                                                (i128)e1 * e1 * e2 * e2 * e2 * e3 * e3 *
                                                    e4 * e5 * e5 * a8,
                                                (i128)e1 * e2 * e2 * e3 * e3 * e4 * e4 *
                                                    e5 * e6 * e6 * a7,
                                                (i128)a7 * a9});
                                            eta = {e1, e2, e3, e4, e5, e6, e7, e8, e9};
                                            acc.accept(eta, h);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
}

}  // namespace

const TorsorSpec& torsor(SurfaceId id) {
    static const TorsorSpec t1 = make_t1();
    static const TorsorSpec t2 = make_t2();
    static const TorsorSpec t3 = make_t3();
    switch (id) {
        case SurfaceId::S1: return t1;
        case SurfaceId::S2: return t2;
        default: return t3;
    }
}

std::optional<i64> solve_dependent(const TorsorSpec& t, const std::vector<i64>& eta) {
    int dep = t.dependent_var;
    i128 rest = 0;
    i128 coef = 0;
    for (const TorsorTerm& tm : t.terms) {
        if (tm.exps[dep] == 0) {
            rest += eval_term(tm, eta);
        } else {
            // dependent variable must occur linearly
            i128 c = 1;
            for (int i = 0; i < t.n_vars; i++) {
                if (i == dep) continue;
                for (int k = 0; k < tm.exps[i]; k++) c *= (i128)eta[i];
            }
            coef = c;
        }
    }
    if (coef == 0) return std::nullopt;
    if (rest % coef != 0) return std::nullopt;
    i128 v = -(rest / coef);
    if (v > (i128)9e18 || v < -(i128)9e18) return std::nullopt;
    return (i64)v;
}

i64 torsor_residual_check(const TorsorSpec& t, const std::vector<i64>& eta) {
    i128 acc = 0;
    for (const TorsorTerm& tm : t.terms) acc += eval_term(tm, eta);
    if (acc > (i128)9e18 || acc < -(i128)9e18)
        throw std::overflow_error("torsor residual overflows 64 bits");
    return (i64)acc;
}

bool coprimality_ok(const TorsorSpec& t, const std::vector<i64>& eta) {
    for (auto [i, j] : required_pairs(t))
        if (gcd64(eta[i], eta[j]) != 1) return false;
    return true;
}

bool sign_domains_ok(const TorsorSpec& t, const std::vector<i64>& eta) {
    for (int i = 0; i < t.n_vars; i++) {
        if (t.domains[i] == SignDomain::Positive && eta[i] <= 0) return false;
        if (t.domains[i] == SignDomain::NonZero && eta[i] == 0) return false;
    }
    return true;
}

std::vector<i64> psi_raw(const TorsorSpec& t, const std::vector<i64>& eta) {
    std::vector<i64> x;
    x.reserve(t.psi.size());
    for (const auto& mono : t.psi) {
        i128 v = 1;
        for (int i = 0; i < t.n_vars; i++)
            for (int k = 0; k < mono[i]; k++) v *= (i128)eta[i];
        if (v > (i128)9e18 || v < -(i128)9e18)
            throw std::overflow_error("psi coordinate overflows 64 bits");
        x.push_back((i64)v);
    }
    return x;
}

ProjectivePoint psi_map(const TorsorSpec& t, const std::vector<i64>& eta) {
    return normalize(psi_raw(t, eta));
}

TorsorEnumResult enumerate_torsor(const TorsorSpec& t, i64 B,
                                  const std::vector<i64>& thresholds, bool collect,
                                  int nthreads) {
    if (nthreads <= 0) nthreads = std::max(1u, std::thread::hardware_concurrency());
    if (t.surf == SurfaceId::S3) sqrt_table(ifloor_root(B, 3) + 1);  // warm mutex path
    std::vector<Acc> accs(nthreads);
    for (auto& a : accs) a.init(thresholds, collect);
    std::vector<std::thread> th;
    for (int s = 0; s < nthreads; s++)
        th.emplace_back([&, s] {
            switch (t.surf) {
                case SurfaceId::S1: enum_s1(B, s, nthreads, accs[s]); break;
                case SurfaceId::S2: enum_s2(B, s, nthreads, accs[s]); break;
                case SurfaceId::S3: enum_s3(B, s, nthreads, accs[s]); break;
            }
        });
    for (auto& h : th) h.join();
    TorsorEnumResult res;
    std::vector<i64> hist(thresholds.size() + 1, 0);
    for (auto& a : accs) {
        res.count += a.count;
        for (size_t i = 0; i < hist.size(); i++) hist[i] += a.hist[i];
        if (collect)
            res.tuples.insert(res.tuples.end(), a.tuples.begin(), a.tuples.end());
    }
    res.threshold_counts.resize(thresholds.size());
    i64 run = 0;
    for (size_t i = 0; i < thresholds.size(); i++) {
        run += hist[i];
        res.threshold_counts[i] = run;
    }
    if (collect) std::sort(res.tuples.begin(), res.tuples.end());
    return res;
}

BijectionReport verify_bijection(SurfaceId id, i64 B, int nthreads) {
    const TorsorSpec& t = torsor(id);
    TorsorEnumResult te = enumerate_torsor(t, B, {}, true, nthreads);
    std::vector<ProjectivePoint> tpts;
    tpts.reserve(te.tuples.size());
    for (const auto& eta : te.tuples) tpts.push_back(psi_map(t, eta));
    std::sort(tpts.begin(), tpts.end());
    bool injective =
        std::adjacent_find(tpts.begin(), tpts.end()) == tpts.end();

    std::vector<ProjectivePoint> opts;
    count_projection(surface(id), B, &opts, nthreads);

    BijectionReport rep;
    rep.bound = B;
    rep.torsor_count = te.count;
    rep.oracle_count = (i64)opts.size();
    rep.injective = injective;
    std::set_difference(tpts.begin(), tpts.end(), opts.begin(), opts.end(),
                        std::back_inserter(rep.only_torsor));
    std::set_difference(opts.begin(), opts.end(), tpts.begin(), tpts.end(),
                        std::back_inserter(rep.only_oracle));
    rep.sets_equal = rep.only_torsor.empty() && rep.only_oracle.empty() &&
                     rep.torsor_count == rep.oracle_count;
    if (rep.only_torsor.size() > 10) rep.only_torsor.resize(10);
    if (rep.only_oracle.size() > 10) rep.only_oracle.resize(10);
    return rep;
}

std::vector<std::vector<i64>> random_torsor_solutions(const TorsorSpec& t, int count,
                                                      u64 seed, i64 range) {
    std::vector<std::vector<i64>> out;
    out.reserve(count);
    u64 idx = 0;
    while ((int)out.size() < count) {
        CounterRng rng(seed, 0x7062, idx++);
        std::vector<i64> eta(t.n_vars, 0);
        for (int i = 0; i < t.n_vars; i++) {
            if (i == t.dependent_var) continue;
            u64 u = rng.next_u64();
            switch (t.domains[i]) {
                case SignDomain::Positive: eta[i] = 1 + (i64)(u % range); break;
                case SignDomain::NonZero: {
                    i64 v = 1 + (i64)(u % range);
                    eta[i] = (rng.next_u64() & 1) ? v : -v;
                    break;
                }
                case SignDomain::Any: eta[i] = (i64)(u % (2 * range + 1)) - range; break;
            }
        }
        auto dep = solve_dependent(t, eta);
        if (!dep) continue;
        eta[t.dependent_var] = *dep;
        if (!sign_domains_ok(t, eta)) continue;
        out.push_back(std::move(eta));
    }
    return out;
}

}  // namespace dpc
