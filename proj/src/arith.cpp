#include "dpc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "dpc/torsor.hpp"

namespace dpc {

namespace {

i64 powmod(i64 base, i64 e, i64 m) {
    i64 r = 1 % m;
    base = pmod64(base, m);
    while (e) {
        if (e & 1) r = (i64)((i128)r * base % m);
        base = (i64)((i128)base * base % m);
        e >>= 1;
    }
    return r;
}

// Squarefree divisors of n together with their Moebius sign.
std::vector<std::pair<i64, int>> squarefree_divisors(const Factorization& f) {
    std::vector<std::pair<i64, int>> out = {{1, 1}};
    for (auto [p, e] : f.pe) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; i++) out.push_back({out[i].first * p, -out[i].second});
    }
    return out;
}

Rational one_minus(i64 p, int k) {  // 1 - k/p
    return Rational(p - k, p);
}

// Table rows: variable index sets (1-based) mapped to the kind of local
// value: 0 -> 1, 1 -> 1-1/p, 2 -> 1-2/p.  Sets absent from the table have
// value 0.
struct TableRow {
    std::vector<int> set;
    int kind;
};

const std::vector<TableRow>& theta_rows(SurfaceId s) {
    static const std::vector<TableRow> s1 = {
        {{}, 0},     {{3}, 0},    {{4}, 0},    {{6}, 0},
        {{2}, 1},    {{5}, 1},    {{1}, 2},
        {{1, 2}, 1}, {{1, 3}, 1}, {{1, 4}, 1}, {{2, 5}, 1}, {{5, 6}, 1},
    };
    static const std::vector<TableRow> s2 = {
        {{}, 0},     {{1}, 0},    {{2}, 0},    {{7}, 0},
        {{4}, 1},    {{5}, 1},    {{6}, 1},    {{3}, 2},
        {{1, 3}, 1}, {{2, 3}, 1}, {{3, 4}, 1}, {{4, 6}, 1}, {{5, 6}, 1}, {{5, 7}, 1},
    };
    static const std::vector<TableRow> s3 = {
        {{}, 0},     {{1}, 0},    {{5}, 0},    {{7}, 0},
        {{3}, 1},    {{4}, 1},    {{6}, 1},    {{2}, 2},
        {{1, 2}, 1}, {{2, 3}, 1}, {{2, 5}, 1}, {{3, 4}, 1}, {{4, 6}, 1}, {{6, 7}, 1},
    };
    switch (s) {
        case SurfaceId::S1: return s1;
        case SurfaceId::S2: return s2;
        default: return s3;
    }
}

Rational kind_value(int kind, i64 p) {
    switch (kind) {
        case 0: return 1;
        case 1: return one_minus(p, 1);
        default: return one_minus(p, 2);
    }
}

i64 mod_product(std::initializer_list<i64> factors, i64 m) {
    i64 r = 1 % m;
    for (i64 f : factors) r = (i64)((i128)r * pmod64(f, m) % m);
    return r;
}

}  // namespace

Factorization factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    for (i64 p : {(i64)2, (i64)3, (i64)5}) {
        int e = 0;
        while (n % p == 0) { n /= p; e++; }
        if (e) f.pe.push_back({p, e});
    }
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    i64 p = 7;
    int w = 0;
    while ((i128)p * p <= n) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; e++; }
            f.pe.push_back({p, e});
        }
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) f.pe.push_back({n, 1});
    return f;
}

int mobius(i64 n) {
    Factorization f = factorize(n);
    for (auto [p, e] : f.pe)
        if (e > 1) return 0;
    return f.pe.size() % 2 == 0 ? 1 : -1;
}

i64 tau(i64 n) {
    i64 t = 1;
    for (auto [p, e] : factorize(n).pe) t *= e + 1;
    return t;
}

int little_omega(i64 n) { return (int)factorize(n).pe.size(); }

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n).pe) r = r / p * (p - 1);
    return r;
}

Rational phi_star(i64 n) {
    Rational r = 1;
    for (auto [p, e] : factorize(n).pe) r *= one_minus(p, 1);
    return r;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<i64> ps;
    for (i64 i = 2; i <= n; i++) {
        if (comp[i]) continue;
        ps.push_back(i);
        for (i64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return ps;
}

i64 count_congruence_solutions(const CongruenceSpec& spec, i64 n) {
    i64 q = spec.q;
    if (q == 1) return 1;
    if (gcd64(spec.A2, q) != 1)
        throw std::invalid_argument("count_congruence_solutions: gcd(A2, q) != 1");
    i64 rhs = (i64)((i128)pmod64(spec.A1, q) * modinv64(spec.A2, q) % q *
                    pmod64(n, q) % q);
    i64 cnt = 0;
    for (i64 rho = 1; rho <= q; rho++) {
        if (gcd64(rho, q) != 1) continue;
        if (powmod(rho, spec.m, q) == rhs) cnt++;
    }
    return cnt;
}

i64 count_linear_congruence(i64 a, i64 b, i64 m) {
    if (m <= 0) throw std::invalid_argument("count_linear_congruence: m <= 0");
    if (m == 1) return 1;
    a = pmod64(a, m);
    b = pmod64(b, m);
    i64 g = gcd64(a, m);
    if (g == 0) g = m;  // a = 0 (mod m)
    if (b % g != 0) return 0;
    i64 mp = m / g;  // solutions form rho = rho0 (mod mp), g of them in [1, m]
    i64 rho0 = 0;
    if (mp > 1) rho0 = (i64)((i128)((b / g) % mp) * modinv64(a / g, mp) % mp);
    // count members of the progression coprime to m by inclusion-exclusion
    // over the prime divisors of m
    Factorization fm = factorize(m);
    i64 total = 0;
    for (auto [d, sign] : squarefree_divisors(fm)) {
        // #{j in [0, g): rho0 + j*mp = 0 (mod d)}
        i64 gd = gcd64(mp % d == 0 ? 0 : mp, d);
        if (gd == 0) gd = d;  // d | mp
        i64 cnt;
        if (rho0 % gd != 0) {
            cnt = 0;
        } else {
            i64 dd = d / gd;
            i64 j0 = dd == 1 ? 0
                             : (i64)((i128)pmod64(-(rho0 / gd), dd) *
                                     modinv64((mp / gd) % dd, dd) % dd);
            cnt = j0 < g ? (g - 1 - j0) / dd + 1 : 0;
        }
        total += sign * cnt;
    }
    return total;
}

i64 count_quadratic_congruence(i64 a, i64 m) {
    if (m <= 0) throw std::invalid_argument("count_quadratic_congruence: m <= 0");
    if (m == 1) return 1;
    a = pmod64(a, m);
    i64 total = 1;
    for (auto [p, e] : factorize(m).pe) {
        i64 ap = a % p;
        i64 cnt;
        if (p == 2) {
            if (ap == 0) {
                cnt = 0;
            } else if (e == 1) {
                cnt = 1;
            } else if (e == 2) {
                cnt = (a % 4 == 1) ? 2 : 0;
            } else {
                cnt = (a % 8 == 1) ? 4 : 0;
            }
        } else {
            if (ap == 0) {
                cnt = 0;
            } else {
                cnt = powmod(ap, (p - 1) / 2, p) == 1 ? 2 : 0;
            }
        }
        if (cnt == 0) return 0;
        total *= cnt;
    }
    return total;
}

Rational MultFnSpec::eval(i64 n) const {
    Rational v = c;
    Factorization f = factorize(n);
    for (i64 p : special_primes) {
        bool divides = false;
        for (auto [q, e] : f.pe) divides |= (q == p);
        if (!divides) v *= local(p, 0);
    }
    for (auto [p, e] : f.pe) v *= local(p, e);
    return v;
}

ScriptAResult script_A(const MultFnSpec& f, i64 q, i64 P) {
    ScriptAResult res;
    res.truncation = P;
    res.converged = true;

    // growth-class sanity: |A_p(nu) - A_p(nu-1)| <= C2/p^nu off the modulus b
    for (i64 p : primes_up_to(50)) {
        for (int nu = 1; nu <= 3; nu++) {
            double diff = std::fabs((double)f.local(p, nu) - (double)f.local(p, nu - 1));
            i64 pnu = 1;
            for (int i = 0; i < nu; i++) pnu *= p;
            bool divides_b = (f.b % pnu == 0);
            double cap = divides_b ? f.C1 : f.C2 / (double)pnu;
            if (diff > cap + 1e-9) res.converged = false;
        }
    }

    long double prod = (long double)(double)f.c;
    for (i64 p : primes_up_to(P)) {
        Rational A0 = f.local(p, 0);
        long double factor;
        if (q % p == 0) {
            factor = (long double)(double)A0;
        } else if (f.constant_from_nu1) {
            Rational A1 = f.local(p, 1);
            if (A1 == A0) {
                factor = (long double)(double)A0;
            } else {
                long double a0 = (long double)(double)A0, a1 = (long double)(double)A1;
                factor = (1.0L - 1.0L / p) * a0 + a1 / p;
            }
        } else {
            long double S = 0, pk = 1;
            for (int nu = 0; nu < 64; nu++) {
                long double term = (long double)(double)f.local(p, nu) / pk;
                S += term;
                pk *= p;
                if (nu > 0 && std::fabs((double)term) < 1e-19) break;
            }
            factor = (1.0L - 1.0L / p) * S;
        }
        prod *= factor;
    }
    res.value = (double)prod;
    res.tail_bound = std::expm1(2.0 * f.C2 / (double)P);
    return res;
}

int theta_var_count(SurfaceId s) { return s == SurfaceId::S1 ? 6 : 7; }

Rational theta_table_local(SurfaceId s, i64 p, const std::set<int>& I) {
    std::vector<int> v(I.begin(), I.end());
    for (const TableRow& row : theta_rows(s))
        if (row.set == v) return kind_value(row.kind, p);
    return 0;
}

Rational theta1_table(SurfaceId s, const std::vector<i64>& eta) {
    int n = theta_var_count(s);
    if ((int)eta.size() != n) throw std::invalid_argument("theta1_table: tuple size");
    std::set<i64> primes;
    std::vector<Factorization> fs(n);
    for (int i = 0; i < n; i++) {
        fs[i] = factorize(eta[i]);
        for (auto [p, e] : fs[i].pe) primes.insert(p);
    }
    Rational v = 1;
    for (i64 p : primes) {
        std::set<int> I;
        for (int i = 0; i < n; i++)
            for (auto [q, e] : fs[i].pe)
                if (q == p) I.insert(i + 1);
        v *= theta_table_local(s, p, I);
        if (v == 0) break;
    }
    return v;
}

namespace {

// S1: sum over squarefree k | eta1 coprime to eta2 eta3 eta5 eta6 of
//   mu(k) phi*(eta1 eta2 eta5) / (k phi*(gcd(eta1, k eta4)))
//   * #{rho mod k*eta4 coprime: eta2 eta5^2 eta6 = -rho eta3}
Rational direct_s1(const std::vector<i64>& e) {
    i64 e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4], e6 = e[5];
    Rational num = phi_star(e1) * phi_star(e2 / gcd64(e2, e1)) *
                   phi_star(e5 / gcd64(e5, e1 * e2));  // phi*(e1*e2*e5) via radicals
    // phi* depends only on the radical; compute directly on the product when
    // it fits
    num = 1;
    {
        // product e1*e2*e5 <= 1e12, safe
        num = phi_star(e1 * e2 * e5);
    }
    Rational sum = 0;
    i64 coprime_to = 1;
    Rational total = 0;
    (void)sum;
    (void)coprime_to;
    for (auto [k, mu] : squarefree_divisors(factorize(e1))) {
        if (gcd64(k, e2) != 1 || gcd64(k, e3) != 1 || gcd64(k, e5) != 1 ||
            gcd64(k, e6) != 1)
            continue;
        i64 m = k * e4;
        i64 b = pmod64(-mod_product({e2, e5, e5, e6}, m), m);
        i64 cnt = count_linear_congruence(e3, b, m);
        if (cnt == 0) continue;
        Rational coef = num / (Rational(k) * phi_star(gcd64(e1, m)));
        total += Rational(mu) * coef * cnt;
    }
    return total;
}

// S2 (same shape with the roles (delta; alpha; beta; gamma) =
// (eta3; eta4,eta5,eta6; eta2; eta1)):
Rational direct_s2(const std::vector<i64>& e) {
    i64 e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4], e6 = e[5], e7 = e[6];
    Rational num = phi_star(e3 * e4 * e5 * e6);
    Rational total = 0;
    for (auto [k, mu] : squarefree_divisors(factorize(e3))) {
        if (gcd64(k, e2) != 1 || gcd64(k, e4) != 1 || gcd64(k, e5) != 1 ||
            gcd64(k, e6) != 1 || gcd64(k, e7) != 1)
            continue;
        i64 m = k * e1;
        i64 b = pmod64(-mod_product({e4, e5, e5, e5, e6, e6, e7}, m), m);
        i64 cnt = count_linear_congruence(e2, b, m);
        if (cnt == 0) continue;
        Rational coef = num / (Rational(k) * phi_star(gcd64(e3, m)));
        total += Rational(mu) * coef * cnt;
    }
    return total;
}

// S3 reduced form: the inner quadratic count collapses after the
// observation gcd(k, eta4 eta6 eta7) = 1, leaving a pure Moebius/phi* sum.
Rational direct_s3(const std::vector<i64>& e) {
    i64 e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4], e6 = e[5];
    Rational num = phi_star(e2 * e3 * e4 * e6);
    Rational total = 0;
    for (auto [k, mu] : squarefree_divisors(factorize(e2))) {
        if (gcd64(k, e1) != 1 || gcd64(k, e3) != 1) continue;
        Rational coef = num / (Rational(k) * phi_star(gcd64(e2, k * e5)));
        total += Rational(mu) * coef;
    }
    return total;
}

}  // namespace

Rational theta1_direct(SurfaceId s, const std::vector<i64>& eta) {
    int n = theta_var_count(s);
    if ((int)eta.size() != n) throw std::invalid_argument("theta1_direct: tuple size");
    switch (s) {
        case SurfaceId::S1: return direct_s1(eta);
        case SurfaceId::S2: return direct_s2(eta);
        default: return direct_s3(eta);
    }
}

Rational theta1_quadratic_s3(const std::vector<i64>& e) {
    if (e.size() != 7) throw std::invalid_argument("theta1_quadratic_s3: tuple size");
    i64 e1 = e[0], e2 = e[1], e3 = e[2], e4 = e[3], e5 = e[4], e6 = e[5], e7 = e[6];
    Rational num = phi_star(e2 * e3 * e4 * e6);
    Rational total = 0;
    for (auto [k, mu] : squarefree_divisors(factorize(e2))) {
        if (gcd64(k, e1) != 1 || gcd64(k, e3) != 1) continue;
        i64 m = k * e5;
        if (gcd64(e1, m) != 1)
            throw std::invalid_argument("theta1_quadratic_s3: eta1 not invertible");
        i64 a = m == 1 ? 0
                       : (i64)((i128)pmod64(-mod_product({e3, e6, e7}, m), m) *
                               modinv64(e1, m) % m);
        i64 cnt = count_quadratic_congruence(a, m);
        if (cnt == 0) continue;
        Rational coef = num / (Rational(k) * phi_star(gcd64(e2, m)));
        total += Rational(mu) * coef * cnt;
    }
    return total;
}

bool tuple_admissible(SurfaceId s, const std::vector<i64>& eta) {
    int n = theta_var_count(s);
    if ((int)eta.size() != n) throw std::invalid_argument("tuple_admissible: tuple size");
    const TorsorSpec& t = torsor(s);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [a, b] : t.coprime_edges)
        if (a < n && b < n) adj[a][b] = adj[b][a] = true;
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++)
            if (!adj[i][j] && gcd64(eta[i], eta[j]) != 1) return false;
    return true;
}

MultFnSpec theta_slice(SurfaceId s, const std::vector<i64>& eta, int slot) {
    int n = theta_var_count(s);
    if ((int)eta.size() != n || slot < 0 || slot >= n)
        throw std::invalid_argument("theta_slice: bad arguments");
    auto fixed_sets = std::make_shared<std::unordered_map<i64, std::set<int>>>();
    i64 rad = 1;
    for (int i = 0; i < n; i++) {
        if (i == slot) continue;
        for (auto [p, e] : factorize(eta[i]).pe) {
            (*fixed_sets)[p].insert(i + 1);
            if (rad % p != 0) rad *= p;
        }
    }
    MultFnSpec f;
    f.c = 1;
    f.constant_from_nu1 = true;
    f.b = rad;
    f.C1 = 1;
    f.C2 = 1;
    f.C3 = 1;
    for (auto& [p, I] : *fixed_sets) f.special_primes.push_back(p);
    std::sort(f.special_primes.begin(), f.special_primes.end());
    f.local = [s, slot, fixed_sets](i64 p, int nu) -> Rational {
        std::set<int> I;
        auto it = fixed_sets->find(p);
        if (it != fixed_sets->end()) I = it->second;
        if (nu >= 1) I.insert(slot + 1);
        return theta_table_local(s, p, I);
    };
    return f;
}

Rational omega_p_from_table(SurfaceId s, i64 p) {
    int n = theta_var_count(s);
    Rational u(1, p);
    Rational total = 0;
    for (const TableRow& row : theta_rows(s)) {
        Rational w = kind_value(row.kind, p);
        int k = (int)row.set.size();
        Rational weight = 1;
        for (int i = 0; i < k; i++) weight *= u;
        for (int i = 0; i < n - k; i++) weight *= (1 - u);
        total += w * weight;
    }
    return total;
}

Rational omega_p_closed(SurfaceId s, i64 p) {
    Rational u(1, p);
    Rational om = 1 + 1 * u * Rational(s == SurfaceId::S1 ? 5 : 6) + u * u;
    int e = s == SurfaceId::S1 ? 5 : 6;
    Rational f = 1;
    for (int i = 0; i < e; i++) f *= (1 - u);
    return f * om;
}

ResidualSeries lemma_residual_series(const MultFnSpec& f, const CongruenceSpec& spec,
                                     const std::vector<i64>& t_grid) {
    ResidualSeries out;
    if (t_grid.empty()) return out;
    i64 tmax = *std::max_element(t_grid.begin(), t_grid.end());

    // congruence counts depend only on n mod q
    std::vector<i64> cnt(spec.q, 0);
    if (spec.q == 1) {
        cnt[0] = 1;
    } else {
        i64 A1bar = modinv64(spec.A1, spec.q);
        for (i64 rho = 1; rho <= spec.q; rho++) {
            if (gcd64(rho, spec.q) != 1) continue;
            i64 r = (i64)((i128)A1bar * pmod64(spec.A2, spec.q) % spec.q *
                          powmod(rho, spec.m, spec.q) % spec.q);
            cnt[r]++;
        }
    }

    // smallest-prime-factor sieve for fast vartheta evaluation
    std::vector<int> spf(tmax + 1, 0);
    for (i64 i = 2; i <= tmax; i++) {
        if (spf[i]) continue;
        for (i64 j = i; j <= tmax; j += i)
            if (!spf[j]) spf[j] = (int)i;
    }
    std::unordered_map<i64, double> memo;  // key p*64 + min(nu,60)
    auto A = [&](i64 p, int nu) {
        i64 key = p * 64 + std::min(nu, 60);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        double v = (double)f.local(p, nu);
        memo[key] = v;
        return v;
    };

    ScriptAResult sa = script_A(f, spec.q);
    out.script_a = sa.value;
    double phistar_q = (double)phi_star(spec.q);

    double M = 0, comp = 0;  // Kahan accumulator
    size_t gi = 0;
    std::vector<i64> grid = t_grid;
    std::sort(grid.begin(), grid.end());
    for (i64 n = 1; n <= tmax; n++) {
        i64 c = cnt[n % spec.q];
        if (c != 0) {
            double v = (double)f.c;
            i64 rem = n;
            i64 seen[16];
            int nseen = 0;
            while (rem > 1) {
                i64 p = spf[rem];
                int nu = 0;
                while (rem % p == 0) { rem /= p; nu++; }
                v *= A(p, nu);
                seen[nseen++] = p;
            }
            for (i64 p : f.special_primes) {
                bool divides = false;
                for (int i = 0; i < nseen; i++) divides |= (seen[i] == p);
                if (!divides) v *= A(p, 0);
            }
            double term = v * (double)c - comp;
            double t2 = M + term;
            comp = (t2 - M) - term;
            M = t2;
        }
        while (gi < grid.size() && grid[gi] == n) {
            double main = phistar_q * sa.value * (double)n;
            out.t.push_back((double)n);
            out.M.push_back(M);
            out.main.push_back(main);
            out.residual.push_back(M - main);
            gi++;
        }
    }

    // log-growth exponent of the running-max envelope vs log log t
    double env = 0;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < out.t.size(); i++) {
        env = std::max(env, std::fabs(out.residual[i]));
        if (out.t[i] >= 100 && env > 0) {
            xs.push_back(std::log(std::log(out.t[i])));
            ys.push_back(std::log(env));
        }
    }
    if (xs.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); i++) {
            sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
        }
        double nn = (double)xs.size();
        out.fitted_exponent = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    }
    return out;
}

}  // namespace dpc
