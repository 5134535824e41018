#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <set>
#include <vector>

#include "dpc/surface.hpp"

namespace dpc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Factorization {
    std::vector<std::pair<i64, int>> pe;  // ascending primes with exponents
};
Factorization factorize(i64 n);  // n >= 1
int mobius(i64 n);
i64 tau(i64 n);
int little_omega(i64 n);
i64 euler_phi(i64 n);
Rational phi_star(i64 n);  // phi(n)/n = prod_{p|n} (1 - 1/p)

std::vector<i64> primes_up_to(i64 n);

// #{rho in [1,q]: gcd(rho,q)=1, rho^m = A1/A2 * n (mod q)} by direct scan.
struct CongruenceSpec {
    i64 q = 1;
    i64 A1 = 1, A2 = 1;  // A = A1/A2 with gcd(A2, q) = 1
    int m = 1;
};
i64 count_congruence_solutions(const CongruenceSpec& spec, i64 n);

// Exact counts for large moduli (used inside the Moebius sums):
// #{rho in [1,m]: gcd(rho,m)=1, a*rho = b (mod m)}
i64 count_linear_congruence(i64 a, i64 b, i64 m);
// #{rho in [1,m]: gcd(rho,m)=1, rho^2 = a (mod m)}
i64 count_quadratic_congruence(i64 a, i64 m);

// Multiplicative function vartheta(n) = c * prod_{p^nu || n} A_p(nu)
//                                        * prod_{p not dividing n} A_p(0),
// where A_p(0) = 1 for every prime outside special_primes.
struct MultFnSpec {
    Rational c = 1;
    std::function<Rational(i64 p, int nu)> local;  // A_p(nu)
    bool constant_from_nu1 = false;                // A_p(nu) = A_p(1) for nu >= 1
    std::vector<i64> special_primes;               // primes with A_p(0) != 1
    i64 b = 1;          // growth-class modulus
    double C1 = 1, C2 = 1, C3 = 1;
    Rational eval(i64 n) const;
};

// Euler-product mean value A(vartheta, n, q) truncated at primes <= P,
// with a relative tail bound.  converged=false when the growth-class bounds
// are violated on small primes (the product then need not converge).
struct ScriptAResult {
    double value = 0;
    double tail_bound = 0;  // relative
    i64 truncation = 0;
    bool converged = false;
};
ScriptAResult script_A(const MultFnSpec& f, i64 q, i64 P = 1000000);

// Local table of the arithmetic density function: value at a prime p given
// the set I of variable indices (1-based) divisible by p.
Rational theta_table_local(SurfaceId s, i64 p, const std::set<int>& I);
int theta_var_count(SurfaceId s);  // 6 for S1, 7 for S2/S3

// Product over primes of the table values (tuple length 6 for S1, 7 else).
Rational theta1_table(SurfaceId s, const std::vector<i64>& eta);

// The same density evaluated from its Moebius/phi* sum, including the inner
// congruence-solution counts where present.
Rational theta1_direct(SurfaceId s, const std::vector<i64>& eta);

// Full quadratic-congruence form for S3 (inner sum over rho^2 mod k*eta5);
// defined only when gcd(eta1, k*eta5) = 1 for all contributing k.
Rational theta1_quadratic_s3(const std::vector<i64>& eta);

// Admissibility = pairwise coprimality for non-adjacent variable pairs,
// restricted to the table variables.
bool tuple_admissible(SurfaceId s, const std::vector<i64>& eta);

// vartheta as a function of the single variable eta[slot] with the other
// coordinates frozen (the "second summation" setup).
MultFnSpec theta_slice(SurfaceId s, const std::vector<i64>& eta, int slot);

// Local density omega_p: subset-weighted sum of the table vs closed form.
Rational omega_p_from_table(SurfaceId s, i64 p);
Rational omega_p_closed(SurfaceId s, i64 p);

// Congruence-weighted summatory function
//   M(t) = sum_{0<n<=t} vartheta(n) * #{rho^m = A n (mod q), gcd(rho,q)=1}
// compared against its linear main term phi*(q) A(vartheta,n,q) t.
struct ResidualSeries {
    std::vector<double> t;
    std::vector<double> M;
    std::vector<double> main;
    std::vector<double> residual;
    double script_a = 0;
    double fitted_exponent = 0;  // slope of log(envelope) vs log log t
};
ResidualSeries lemma_residual_series(const MultFnSpec& f, const CongruenceSpec& spec,
                                     const std::vector<i64>& t_grid);

}  // namespace dpc
