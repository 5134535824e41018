#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dpc/surface.hpp"

namespace dpc {

// Sign domain for a torsor variable.
enum class SignDomain { Positive, NonZero, Any };

struct TorsorTerm {
    std::vector<int> exps;  // exponent per torsor variable
};

// Universal-torsor model of a surface: integer tuples eta satisfying a
// single trinomial equation term0 + term1 + term2 = 0, the pairwise
// coprimality conditions of the configuration graph (vertices NOT joined by
// an edge must be coprime), and |psi_k(eta)| <= B for every ambient
// coordinate monomial psi_k.  The map psi sends such a tuple to the
// canonical coordinates of a rational point of height <= B.
struct TorsorSpec {
    SurfaceId surf;
    int n_vars;
    TorsorTerm terms[3];
    int dependent_var;  // torsor variable solved from the equation (0-based)
    std::vector<SignDomain> domains;
    std::vector<std::pair<int, int>> coprime_edges;  // adjacency (0-based)
    std::vector<std::vector<int>> psi;  // ambient_dim+1 monomials over n_vars
};

const TorsorSpec& torsor(SurfaceId id);

// Value of the dependent variable making the torsor equation vanish, or
// nullopt if the linear coefficient is zero or divisibility fails.
// eta must carry valid values in every slot except dependent_var.
std::optional<i64> solve_dependent(const TorsorSpec& t, const std::vector<i64>& eta);

i64 torsor_residual_check(const TorsorSpec& t, const std::vector<i64>& eta);  // lhs of the equation

// True iff every non-adjacent pair of variables is coprime
// (gcd(0, n) = |n|, so a zero variable forces its partners to be units).
bool coprimality_ok(const TorsorSpec& t, const std::vector<i64>& eta);
bool sign_domains_ok(const TorsorSpec& t, const std::vector<i64>& eta);

// Ambient coordinates (monomial evaluation, not normalized).
std::vector<i64> psi_raw(const TorsorSpec& t, const std::vector<i64>& eta);
ProjectivePoint psi_map(const TorsorSpec& t, const std::vector<i64>& eta);

struct TorsorEnumResult {
    i64 count = 0;
    std::vector<i64> threshold_counts;       // counts at caller-given heights
    std::vector<std::vector<i64>> tuples;    // filled only when collecting
};

// Enumerate all torsor tuples of height bound B.  thresholds (ascending)
// requests a histogram of counts at intermediate bounds in the same pass.
// The result is independent of nthreads.
TorsorEnumResult enumerate_torsor(const TorsorSpec& t, i64 B,
                                  const std::vector<i64>& thresholds = {},
                                  bool collect = false, int nthreads = 0);

struct BijectionReport {
    i64 bound = 0;
    i64 torsor_count = 0;
    i64 oracle_count = 0;
    bool injective = false;
    bool sets_equal = false;
    std::vector<ProjectivePoint> only_torsor;  // truncated to a few entries
    std::vector<ProjectivePoint> only_oracle;
};

// Compare the torsor parametrization against the independent direct count.
BijectionReport verify_bijection(SurfaceId id, i64 B, int nthreads = 0);

// Random solutions of the torsor equation (sign domains respected,
// coprimality NOT enforced) with free variables drawn from [-range, range].
std::vector<std::vector<i64>> random_torsor_solutions(const TorsorSpec& t, int count,
                                                      u64 seed, i64 range);

}  // namespace dpc
