#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpc/surface.hpp"

namespace dpc {

enum class CountMethod { Exhaustive, Projection, Torsor };
std::string method_name(CountMethod m);

struct CountRecord {
    std::string surface;
    CountMethod method;
    i64 bound = 0;
    i64 count = 0;
    double elapsed_sec = 0.0;
    std::map<std::string, std::string> params;
};

// Tier-1 oracle: scan every primitive integer vector with |x_i| <= B and
// first nonzero coordinate positive, keep those on the surface but not on a
// line.  Feasible only for very small B; exists to validate everything else.
CountRecord count_exhaustive(const SurfaceSpec& s, i64 B,
                             std::vector<ProjectivePoint>* out = nullptr);

// Same scan, returning counts for every bound 1..Bmax in one pass.
std::vector<i64> exhaustive_counts_by_height(const SurfaceSpec& s, i64 Bmax);

// Tier-2 oracle: solve the defining equations coordinate by coordinate
// (divisibility conditions on a projection), then normalize, filter lines
// and deduplicate.  Independent of the torsor parametrization.
CountRecord count_projection(const SurfaceSpec& s, i64 B,
                             std::vector<ProjectivePoint>* out = nullptr,
                             int nthreads = 0);

}  // namespace dpc
