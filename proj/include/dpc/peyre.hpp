#pragma once

#include "dpc/arith.hpp"
#include "dpc/common.hpp"
#include "dpc/surface.hpp"

namespace dpc {

// Polytope {t in R^dim : t >= 0 componentwise, a_i . t <= A_i}, whose exact
// volume (times prefactor) gives the rational constant in front of the
// leading log power.
struct Inequality {
    std::vector<Rational> a;
    Rational A;
};
struct PolytopeSpec {
    int dim = 0;
    std::vector<Inequality> inequalities;
    Rational prefactor = 1;
};

// Exact volume via vertex enumeration over rational linear systems and
// recursive facet triangulation.  Throws on an unbounded region; an empty
// region has volume 0.
Rational polytope_volume(const PolytopeSpec& p);

// Inequality data of the alpha-polytope (defined for S1 and S3; S2's data
// lives in an external reference, so alpha_value returns the literal there).
PolytopeSpec alpha_polytope(SurfaceId s);
Rational alpha_value(SurfaceId s);

struct EulerProduct {
    double value = 0;
    double tail_bound = 0;  // relative bound on the omitted factors
    i64 truncation = 0;
};
// prod_{p <= P} omega_p with omega_p = (1-1/p)^5 (1+5/p+1/p^2) for S1 and
// (1-1/p)^6 (1+6/p+1/p^2) for S2/S3.
EulerProduct euler_product(SurfaceId s, i64 P = 1000000);

struct McResult {
    double estimate = 0;
    double stderr_ = 0;
    i64 samples = 0;
    u64 seed = 0;
};

// Archimedean density by importance-sampled Monte Carlo.  Deterministic for
// fixed (samples, seed) and independent of the shard count.
McResult omega_infty(SurfaceId s, i64 samples, u64 seed, int nshards = 1);

// Synthetic check region: cube [-1,1]^3 sampled from an enclosing box;
// estimates 8.
McResult omega_infty_cube(i64 samples, u64 seed, int nshards = 1);

struct PeyreBreakdown {
    SurfaceId surf;
    Rational alpha;
    EulerProduct ep;
    McResult omega_inf;
    int rho = 0;
    double c_total = 0;
    double c_stderr = 0;  // from the MC error only; ep tail reported separately
};
PeyreBreakdown assemble_c(SurfaceId s, i64 samples = 1000000, u64 seed = 0,
                          i64 truncation = 1000000, int nshards = 1);

// Monte Carlo check of the volume identity
//   V0'(B) = alpha * omega_infty * B (log B)^r     (r = rho - 1)
// for S1 (7-dim integral of 1/eta4) and S3 (8-dim integral of 1/eta5).
struct VolumeIdentityReport {
    SurfaceId surf;
    i64 bound = 0;
    McResult v0;          // direct estimate of V0'(B)
    McResult omega;       // omega_infty used in the prediction
    double alpha = 0;
    int r = 0;
    double predicted = 0;
    double combined_sigma = 0;
    double discrepancy_sigma = 0;
    bool pass = false;
};
VolumeIdentityReport check_volume_identity(SurfaceId s, i64 B, i64 samples,
                                           u64 seed, int nshards = 1);

}  // namespace dpc
