#include "dpc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpc/torsor.hpp"

namespace dpc {

namespace {

using Matd = std::vector<std::vector<long double>>;

Matd invert(Matd M) {
    int n = (int)M.size();
    Matd I(n, std::vector<long double>(n, 0));
    for (int i = 0; i < n; i++) I[i][i] = 1;
    for (int col = 0; col < n; col++) {
        int piv = col;
        for (int r = col; r < n; r++)
            if (std::fabs((double)M[r][col]) > std::fabs((double)M[piv][col])) piv = r;
        if (M[piv][col] == 0) throw std::runtime_error("fit: singular normal equations");
        std::swap(M[piv], M[col]);
        std::swap(I[piv], I[col]);
        long double d = M[col][col];
        for (int c = 0; c < n; c++) { M[col][c] /= d; I[col][c] /= d; }
        for (int r = 0; r < n; r++) {
            if (r == col) continue;
            long double f = M[r][col];
            if (f == 0) continue;
            for (int c = 0; c < n; c++) { M[r][c] -= f * M[col][c]; I[r][c] -= f * I[col][c]; }
        }
    }
    return I;
}

long double norm1(const Matd& M) {
    long double best = 0;
    for (size_t c = 0; c < M.size(); c++) {
        long double s = 0;
        for (size_t r = 0; r < M.size(); r++) s += std::fabs((double)M[r][c]);
        best = std::max(best, s);
    }
    return best;
}

// coefficients (power basis in u) of the Chebyshev polynomial T_k
std::vector<std::vector<long double>> cheb_coeffs(int kmax) {
    std::vector<std::vector<long double>> T(kmax + 1);
    T[0] = {1};
    if (kmax >= 1) T[1] = {0, 1};
    for (int k = 2; k <= kmax; k++) {
        T[k].assign(k + 1, 0);
        for (size_t i = 0; i < T[k - 1].size(); i++) T[k][i + 1] += 2 * T[k - 1][i];
        for (size_t i = 0; i < T[k - 2].size(); i++) T[k][i] -= T[k - 2][i];
    }
    return T;
}

// compose poly(u) with u = alpha*x + beta, returning power-basis coeffs in x
std::vector<long double> compose_affine(const std::vector<long double>& p,
                                        long double alpha, long double beta) {
    std::vector<long double> out = {0};
    std::vector<long double> pw = {1};  // (alpha x + beta)^i
    for (size_t i = 0; i < p.size(); i++) {
        if (out.size() < pw.size()) out.resize(pw.size(), 0);
        for (size_t j = 0; j < pw.size(); j++) out[j] += p[i] * pw[j];
        // pw *= (alpha x + beta)
        std::vector<long double> nx(pw.size() + 1, 0);
        for (size_t j = 0; j < pw.size(); j++) {
            nx[j] += beta * pw[j];
            nx[j + 1] += alpha * pw[j];
        }
        pw = std::move(nx);
    }
    return out;
}

}  // namespace

std::vector<GridPoint> run_grid(SurfaceId s, const std::vector<i64>& bounds,
                                int nthreads) {
    std::vector<GridPoint> grid;
    if (bounds.empty()) return grid;
    for (size_t i = 1; i < bounds.size(); i++)
        if (bounds[i] <= bounds[i - 1])
            throw std::invalid_argument("run_grid: bounds must be strictly increasing");
    i64 bmax = bounds.back();
    TorsorEnumResult res = enumerate_torsor(torsor(s), bmax, bounds, false, nthreads);
    for (size_t i = 0; i < bounds.size(); i++)
        grid.push_back({bounds[i], res.threshold_counts[i]});
    return grid;
}

std::vector<i64> geometric_grid(i64 bmin, i64 bmax, int per_decade) {
    std::vector<i64> out;
    double lg = std::log10((double)bmin);
    double lgmax = std::log10((double)bmax);
    for (int k = 0;; k++) {
        double v = lg + (double)k / per_decade;
        if (v > lgmax + 1e-12) break;
        i64 B = (i64)std::llround(std::pow(10.0, v));
        if (out.empty() || B > out.back()) out.push_back(B);
    }
    if (out.empty() || out.back() != bmax) out.push_back(bmax);
    return out;
}

FitReport fit_leading(const std::vector<double>& B, const std::vector<double>& count,
                      int rho) {
    int k = rho;  // number of coefficients, degree rho-1
    int n = (int)B.size();
    if (n != (int)count.size() || n < k + 1)
        throw std::invalid_argument("fit_leading: need at least rho+1 points");
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; i++) {
        x[i] = std::log(B[i]);
        y[i] = count[i] / B[i];
    }
    double xmin = *std::min_element(x.begin(), x.end());
    double xmax = *std::max_element(x.begin(), x.end());
    if (std::log10(std::exp(xmax)) - std::log10(std::exp(xmin)) < 2.0 - 1e-9)
        throw std::invalid_argument("fit_leading: grid must span at least 2 decades");
    long double alpha = 2.0L / (xmax - xmin);
    long double beta = -1.0L - alpha * xmin;

    auto T = cheb_coeffs(k - 1);
    // design matrix in the Chebyshev basis evaluated at u_i
    std::vector<std::vector<long double>> X(n, std::vector<long double>(k));
    for (int i = 0; i < n; i++) {
        long double u = alpha * x[i] + beta;
        long double t0 = 1, t1 = u;
        for (int j = 0; j < k; j++) {
            X[i][j] = j == 0 ? t0 : t1;
            if (j >= 1) {
                long double t2 = 2 * u * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
        }
    }
    Matd G(k, std::vector<long double>(k, 0));
    std::vector<long double> rhs(k, 0);
    for (int i = 0; i < n; i++)
        for (int a = 0; a < k; a++) {
            rhs[a] += X[i][a] * (long double)y[i];
            for (int b = 0; b < k; b++) G[a][b] += X[i][a] * X[i][b];
        }
    Matd Ginv = invert(G);
    std::vector<long double> c(k, 0);
    for (int a = 0; a < k; a++)
        for (int b = 0; b < k; b++) c[a] += Ginv[a][b] * rhs[b];

    // residual variance
    long double rss = 0;
    for (int i = 0; i < n; i++) {
        long double fit = 0;
        for (int a = 0; a < k; a++) fit += c[a] * X[i][a];
        long double r = (long double)y[i] - fit;
        rss += r * r;
    }
    long double sigma2 = n > k ? rss / (n - k) : 0;

    // convert to power basis in log B
    std::vector<long double> power(k, 0);
    std::vector<std::vector<long double>> conv(k);  // T_a(alpha x + beta) in x
    for (int a = 0; a < k; a++) {
        conv[a] = compose_affine(T[a], alpha, beta);
        conv[a].resize(k, 0);
        for (int j = 0; j < k; j++) power[j] += c[a] * conv[a][j];
    }
    // leading = L . c with L_a = coefficient of x^{k-1} in T_a(alpha x + beta)
    long double var_lead = 0;
    for (int a = 0; a < k; a++)
        for (int b = 0; b < k; b++)
            var_lead += conv[a][k - 1] * Ginv[a][b] * conv[b][k - 1];
    var_lead *= sigma2;

    FitReport rep;
    rep.coeffs.assign(k, 0);
    for (int j = 0; j < k; j++) rep.coeffs[j] = (double)power[j];
    rep.leading = (double)power[k - 1];
    rep.leading_stderr = std::sqrt(std::max(0.0, (double)var_lead));
    rep.condition = (double)(norm1(G) * norm1(Ginv));
    rep.ill_conditioned = rep.condition > 1e12;
    return rep;
}

FitReport fit_leading(const std::vector<GridPoint>& grid, int rho) {
    std::vector<double> B, cnt;
    for (const GridPoint& g : grid) {
        B.push_back((double)g.B);
        cnt.push_back((double)g.count);
    }
    return fit_leading(B, cnt, rho);
}

bool drift_decreasing(const std::vector<double>& ratios) {
    if (ratios.size() < 4) return true;
    std::vector<double> d;
    for (size_t i = 1; i < ratios.size(); i++)
        d.push_back(std::fabs(ratios[i] - ratios[i - 1]));
    size_t half = d.size() / 2;
    double first = 0, second = 0;
    for (size_t i = 0; i < half; i++) first += d[i];
    for (size_t i = half; i < d.size(); i++) second += d[i];
    first /= half;
    second /= d.size() - half;
    return second <= first;
}

AsymptoticReport analyze_asymptotics(SurfaceId s, const std::vector<GridPoint>& grid,
                                     double predicted_c) {
    AsymptoticReport rep;
    rep.surf = s;
    rep.grid = grid;
    rep.predicted_c = predicted_c;
    int rho = surface(s).rho;
    for (const GridPoint& g : grid) {
        double lb = std::log((double)g.B);
        double pred = predicted_c * (double)g.B * std::pow(lb, rho - 1);
        rep.ratios.push_back(pred > 0 ? (double)g.count / pred : 0.0);
    }
    rep.fit = fit_leading(grid, rho);
    rep.leading_rel_dev =
        predicted_c != 0 ? std::fabs(rep.fit.leading - predicted_c) / predicted_c : 0;
    // drift judged over the top decade of the grid
    std::vector<double> top;
    i64 bmax = grid.empty() ? 0 : grid.back().B;
    for (size_t i = 0; i < grid.size(); i++)
        if (grid[i].B * 10 >= bmax) top.push_back(rep.ratios[i]);
    rep.drift_decreasing = drift_decreasing(top);
    return rep;
}

}  // namespace dpc
