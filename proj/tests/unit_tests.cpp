#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "dpc/analytics.hpp"
#include "dpc/arith.hpp"
#include "dpc/oracle.hpp"
#include "dpc/peyre.hpp"
#include "dpc/rng.hpp"
#include "dpc/surface.hpp"
#include "dpc/torsor.hpp"

using namespace dpc;

namespace {
const SurfaceId kAll[] = {SurfaceId::S1, SurfaceId::S2, SurfaceId::S3};

std::vector<i64> random_admissible(SurfaceId id, u64 seed, u64& idx, i64 cap) {
    int n = theta_var_count(id);
    while (true) {
        CounterRng rng(seed, 0xad, idx++);
        std::vector<i64> eta(n);
        for (auto& e : eta) e = 1 + (i64)(rng.next_u64() % (u64)cap);
        if (tuple_admissible(id, eta)) return eta;
    }
}
}  // namespace

TEST_CASE("normalize produces canonical primitive representatives") {
    CHECK(normalize({2, 4, -6}).coords == std::vector<i64>{1, 2, -3});
    CHECK(normalize({0, -3, 6}).coords == std::vector<i64>{0, 1, -2});
    CHECK(normalize({-5, 0, 10}).coords == std::vector<i64>{1, 0, -2});
    CHECK_THROWS(normalize({0, 0, 0}));
    CHECK(height(normalize({3, -9, 6})) == 3);
}

TEST_CASE("surface membership and line filter") {
    for (SurfaceId id : kAll) {
        const SurfaceSpec& s = surface(id);
        for (const auto& p : s.singular_points) CHECK(on_surface(s, p.coords));
        // every line parametrization produces surface points that the filter drops
        std::vector<ProjectivePoint> pts;
        count_exhaustive(s, 3, &pts);
        for (const auto& p : pts) {
            CHECK(on_surface(s, p.coords));
            CHECK(!is_on_line(s, p));
        }
    }
}

TEST_CASE("exhaustive scan equals projection solver at desk scale") {
    for (SurfaceId id : kAll) {
        const SurfaceSpec& s = surface(id);
        auto hist = exhaustive_counts_by_height(s, 8);
        for (i64 B = 1; B <= 8; B++) {
            CHECK(count_exhaustive(s, B).count == hist[B]);
            CHECK(count_projection(s, B).count == hist[B]);
        }
    }
}

TEST_CASE("torsor equation solver and psi identity") {
    for (SurfaceId id : kAll) {
        const TorsorSpec& t = torsor(id);
        auto sols = random_torsor_solutions(t, 500, 7, 12);
        CHECK(sols.size() == 500);
        const SurfaceSpec& s = surface(id);
        for (const auto& eta : sols) {
            CHECK(torsor_residual_check(t, eta) == 0);
            CHECK(on_surface(s, psi_raw(t, eta)));
        }
    }
}

TEST_CASE("torsor enumeration matches the direct count and is shard-stable") {
    for (SurfaceId id : kAll) {
        const TorsorSpec& t = torsor(id);
        auto r1 = enumerate_torsor(t, 60, {10, 25, 60}, false, 1);
        auto r4 = enumerate_torsor(t, 60, {10, 25, 60}, false, 4);
        auto r16 = enumerate_torsor(t, 60, {10, 25, 60}, false, 16);
        CHECK(r1.count == r4.count);
        CHECK(r1.threshold_counts == r4.threshold_counts);
        CHECK(r1.threshold_counts == r16.threshold_counts);
        CHECK(r1.threshold_counts[0] == enumerate_torsor(t, 10).count);
        CHECK(r1.threshold_counts[1] == enumerate_torsor(t, 25).count);
        CHECK(r1.threshold_counts[2] == r1.count);
        BijectionReport rep = verify_bijection(id, 25);
        CHECK(rep.sets_equal);
        CHECK(rep.injective);
    }
}

TEST_CASE("factorization helpers agree with brute force") {
    for (i64 n = 1; n <= 300; n++) {
        i64 prod = 1, divisors = 0, phi = 0;
        for (auto [p, e] : factorize(n).pe) {
            for (int i = 0; i < e; i++) prod *= p;
        }
        CHECK(prod == n);
        for (i64 d = 1; d <= n; d++) {
            if (n % d == 0) divisors++;
            if (gcd64(d, n) == 1) phi++;
        }
        CHECK(tau(n) == divisors);
        CHECK(euler_phi(n) == phi);
        CHECK(phi_star(n) == Rational(phi, n));
    }
    CHECK(mobius(1) == 1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(little_omega(60) == 3);
    CHECK(primes_up_to(30) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("congruence counts agree with brute force") {
    u64 idx = 0;
    for (int trial = 0; trial < 400; trial++) {
        CounterRng rng(3, 0xc0, idx++);
        i64 m = 1 + (i64)(rng.next_u64() % 60);
        i64 a = (i64)(rng.next_u64() % 120) - 60;
        i64 b = (i64)(rng.next_u64() % 120) - 60;
        i64 lin = 0, quad = 0;
        for (i64 r = 1; r <= m; r++) {
            if (gcd64(r, m) != 1) continue;
            if (pmod64(a * r - b, m) == 0) lin++;
            if (pmod64(r * r - a, m) == 0) quad++;
        }
        CAPTURE(a); CAPTURE(b); CAPTURE(m);
        CHECK(count_linear_congruence(a, b, m) == lin);
        CHECK(count_quadratic_congruence(a, m) == quad);
    }
    // rho^m = A n (mod q) direct-scan counter
    CongruenceSpec cs{7, 3, 2, 2};
    for (i64 n = 0; n < 7; n++) {
        i64 brute = 0;
        i64 rhs = pmod64(3 * modinv64(2, 7) % 7 * n, 7);
        for (i64 r = 1; r <= 7; r++)
            if (gcd64(r, 7) == 1 && r * r % 7 == rhs) brute++;
        CHECK(count_congruence_solutions(cs, n) == brute);
    }
}

TEST_CASE("Euler-product mean value of the trivial function is exactly 1") {
    MultFnSpec one;
    one.c = 1;
    one.constant_from_nu1 = true;
    one.local = [](i64, int) { return Rational(1); };
    ScriptAResult r = script_A(one, 1, 10000);
    CHECK(r.value == 1.0);
    CHECK(r.converged);
}

TEST_CASE("single-variable density slice matches the full table product") {
    u64 idx = 0;
    for (SurfaceId id : kAll) {
        for (int trial = 0; trial < 40; trial++) {
            auto eta = random_admissible(id, 11, idx, 30);
            int slot = trial % theta_var_count(id);
            MultFnSpec f = theta_slice(id, eta, slot);
            for (i64 n : {1, 2, 3, 4, 6, 9, 10, 30}) {
                std::vector<i64> full = eta;
                full[slot] = n;
                CHECK(f.eval(n) == theta1_table(id, full));
            }
        }
    }
}

TEST_CASE("density table equals the divisor-sum form on admissible tuples") {
    u64 idx = 0;
    for (SurfaceId id : kAll) {
        for (int trial = 0; trial < 300; trial++) {
            auto eta = random_admissible(id, 5, idx, 50);
            CAPTURE((int)id);
            CHECK(theta1_table(id, eta) == theta1_direct(id, eta));
        }
    }
}

TEST_CASE("local density identity at small primes") {
    for (SurfaceId id : kAll)
        for (i64 p : primes_up_to(100))
            CHECK(omega_p_from_table(id, p) == omega_p_closed(id, p));
}

TEST_CASE("summatory residual vanishes for the trivial case") {
    MultFnSpec one;
    one.c = 1;
    one.constant_from_nu1 = true;
    one.local = [](i64, int) { return Rational(1); };
    std::vector<i64> grid;
    for (i64 t = 1; t <= 5000; t++) grid.push_back(t);
    ResidualSeries r = lemma_residual_series(one, CongruenceSpec{}, grid);
    CHECK(r.script_a == 1.0);
    for (double res : r.residual) CHECK(res == 0.0);
}

TEST_CASE("polytope volume: simplex, redundancy, permutation, degeneracies") {
    PolytopeSpec simplex;
    simplex.dim = 3;
    simplex.inequalities = {{{1, 1, 1}, 1}};
    CHECK(polytope_volume(simplex) == Rational(1, 6));

    PolytopeSpec slack = simplex;
    slack.inequalities.push_back({{1, 0, 1}, 5});  // redundant
    CHECK(polytope_volume(slack) == Rational(1, 6));

    PolytopeSpec p1 = alpha_polytope(SurfaceId::S1);
    PolytopeSpec perm = p1;
    for (Inequality& q : perm.inequalities) std::swap(q.a[1], q.a[3]);
    CHECK(polytope_volume(perm) == polytope_volume(p1));

    PolytopeSpec empty;
    empty.dim = 2;
    empty.inequalities = {{{1, 1}, -1}};
    CHECK(polytope_volume(empty) == 0);

    PolytopeSpec unbounded;
    unbounded.dim = 2;
    unbounded.inequalities = {{{1, -1}, 1}};
    CHECK_THROWS(polytope_volume(unbounded));
}

TEST_CASE("alpha constants") {
    CHECK(alpha_value(SurfaceId::S1) == Rational(1, 864));
    CHECK(alpha_value(SurfaceId::S2) == Rational(1, 8640));
    CHECK(alpha_value(SurfaceId::S3) == Rational(1, 21600));
}

TEST_CASE("Euler products: range, equality, monotone truncation") {
    EulerProduct e1 = euler_product(SurfaceId::S1, 20000);
    EulerProduct e2 = euler_product(SurfaceId::S2, 20000);
    EulerProduct e3 = euler_product(SurfaceId::S3, 20000);
    CHECK(e2.value == e3.value);
    for (const EulerProduct& e : {e1, e2, e3}) {
        CHECK(e.value > 0);
        CHECK(e.value < 1);
    }
    double prev = 1;
    for (i64 P : {10, 100, 1000, 10000}) {
        double v = euler_product(SurfaceId::S1, P).value;
        CHECK(v < prev);
        prev = v;
    }
    // closed form at p=2 for the degree-5 product
    CHECK(omega_p_closed(SurfaceId::S1, 2) == Rational(15, 128));
}

TEST_CASE("Monte Carlo cube estimate and error calibration") {
    McResult r = omega_infty_cube(200000, 1);
    CHECK(std::fabs(r.estimate - 8.0) < 4 * r.stderr_);
    // chi^2 consistency of reported stderr over 10 seeds (1% two-sided, df=9)
    std::vector<double> est;
    double se = 0;
    for (u64 seed = 0; seed < 10; seed++) {
        McResult m = omega_infty_cube(100000, seed);
        est.push_back(m.estimate);
        se = m.stderr_;
    }
    double mean = 0;
    for (double e : est) mean += e;
    mean /= est.size();
    double chi2 = 0;
    for (double e : est) chi2 += (e - mean) * (e - mean) / (se * se);
    CHECK(chi2 > 1.73);
    CHECK(chi2 < 23.6);
}

TEST_CASE("MC results are bit-identical across shard counts") {
    for (SurfaceId id : kAll) {
        McResult a = omega_infty(id, 100000, 9, 1);
        McResult b = omega_infty(id, 100000, 9, 4);
        McResult c = omega_infty(id, 100000, 9, 16);
        CHECK(a.estimate == b.estimate);
        CHECK(a.estimate == c.estimate);
        CHECK(a.stderr_ == b.stderr_);
    }
}

TEST_CASE("omega_infty stable across seeds") {
    for (SurfaceId id : kAll) {
        McResult a = omega_infty(id, 300000, 1);
        McResult b = omega_infty(id, 300000, 2);
        double sigma = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
        CHECK(std::fabs(a.estimate - b.estimate) < 4 * sigma);
        CHECK(a.estimate > 0);
    }
}

TEST_CASE("leading-coefficient fit recovers synthetic models") {
    int rho = 5;
    std::vector<double> B, cnt, cnt2, cnt_scaled;
    for (double b = 1e3; b <= 1.1e7; b *= 1.5) {
        double lb = std::log(b);
        B.push_back(b);
        cnt.push_back(0.25 * b * std::pow(lb, rho - 1));
        cnt2.push_back(0.25 * b * std::pow(lb, rho - 1) + 3.0 * b * std::pow(lb, rho - 2));
        cnt_scaled.push_back(2.0 * 0.25 * b * std::pow(lb, rho - 1));
    }
    FitReport exact = fit_leading(B, cnt, rho);
    CHECK(std::fabs(exact.leading - 0.25) < 1e-6 * 0.25);
    FitReport noisy = fit_leading(B, cnt2, rho);
    CHECK(std::fabs(noisy.leading - 0.25) < 1e-3 * 0.25);
    FitReport scaled = fit_leading(B, cnt_scaled, rho);
    CHECK(scaled.leading == doctest::Approx(2 * exact.leading).epsilon(1e-9));
    for (int j = 0; j < rho; j++)
        CHECK(scaled.coeffs[j] == doctest::Approx(2 * exact.coeffs[j]).epsilon(1e-6));
    CHECK_THROWS(fit_leading(std::vector<double>{1e3, 2e3, 4e3, 8e3, 1.6e4, 3e4},
                             std::vector<double>{1, 2, 3, 4, 5, 6}, rho));
}

TEST_CASE("grid plumbing") {
    std::vector<i64> g = geometric_grid(1000, 100000, 4);
    CHECK(g.front() == 1000);
    CHECK(g.back() == 100000);
    for (size_t i = 1; i < g.size(); i++) CHECK(g[i] > g[i - 1]);
    CHECK(run_grid(SurfaceId::S1, {}).empty());
    auto grid = run_grid(SurfaceId::S2, {10, 50});
    CHECK(grid[0].count == enumerate_torsor(torsor(SurfaceId::S2), 10).count);
    CHECK(grid[1].count == enumerate_torsor(torsor(SurfaceId::S2), 50).count);
    CHECK(drift_decreasing({1.5, 1.2, 1.1, 1.05, 1.02, 1.01}));
    CHECK(!drift_decreasing({1.0, 1.01, 1.0, 1.2, 0.8, 1.5}));
}

TEST_CASE("volume identity report at desk scale") {
    VolumeIdentityReport rep = check_volume_identity(SurfaceId::S1, 1000, 500000, 0, 2);
    CHECK(rep.v0.estimate > 0);
    CHECK(rep.predicted > 0);
    CHECK(rep.discrepancy_sigma < 5.0);
}
