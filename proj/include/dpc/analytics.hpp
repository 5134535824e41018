#pragma once

#include <vector>

#include "dpc/common.hpp"
#include "dpc/surface.hpp"

namespace dpc {

struct GridPoint {
    i64 B = 0;
    i64 count = 0;
};

// Point counts on an increasing grid of height bounds, produced by a single
// torsor enumeration pass with threshold bucketing.
std::vector<GridPoint> run_grid(SurfaceId s, const std::vector<i64>& bounds,
                                int nthreads = 0);

// Geometric grid with the given points per decade.
std::vector<i64> geometric_grid(i64 bmin, i64 bmax, int per_decade = 16);

// Least-squares fit of count/B against a degree-(rho-1) polynomial in log B.
// The fit runs in a Chebyshev basis over the observed log-range to keep the
// normal equations well conditioned; coefficients are reported in the plain
// power basis (count/B = sum_k coeffs[k] (log B)^k).
struct FitReport {
    std::vector<double> coeffs;
    double leading = 0;         // coefficient of (log B)^{rho-1}
    double leading_stderr = 0;
    double condition = 0;       // condition estimate of the normal equations
    bool ill_conditioned = false;
};
FitReport fit_leading(const std::vector<double>& B, const std::vector<double>& count,
                      int rho);
FitReport fit_leading(const std::vector<GridPoint>& grid, int rho);

struct AsymptoticReport {
    SurfaceId surf;
    std::vector<GridPoint> grid;
    double predicted_c = 0;
    std::vector<double> ratios;  // count / (c B (log B)^{rho-1})
    FitReport fit;
    double leading_rel_dev = 0;  // |fit.leading - c| / c
    bool drift_decreasing = false;
};

// Compare grid counts against the predicted leading constant.
AsymptoticReport analyze_asymptotics(SurfaceId s, const std::vector<GridPoint>& grid,
                                     double predicted_c);

// Mean absolute successive difference of the second half of the sequence is
// no larger than that of the first half.
bool drift_decreasing(const std::vector<double>& ratios);

}  // namespace dpc
