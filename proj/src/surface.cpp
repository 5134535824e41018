#include "dpc/surface.hpp"

#include <numeric>
#include <stdexcept>

namespace dpc {

namespace {

// Shorthand for a quadratic monomial c * x_i * x_j in d+1 variables.
PolyTerm quad(int nvars, i64 c, int i, int j) {
    PolyTerm t;
    t.coeff = c;
    t.exps.assign(nvars, 0);
    t.exps[i] += 1;
    t.exps[j] += 1;
    return t;
}

LinearForm coord_form(int nvars, int i) {
    LinearForm f;
    f.coeffs.assign(nvars, 0);
    f.coeffs[i] = 1;
    return f;
}

LinearForm sum_form(int nvars, int i, int j) {
    LinearForm f;
    f.coeffs.assign(nvars, 0);
    f.coeffs[i] = 1;
    f.coeffs[j] = 1;
    return f;
}

SurfaceSpec make_s1() {
    SurfaceSpec s;
    s.id = SurfaceId::S1;
    s.name = "s1";
    s.ambient_dim = 5;
    s.rho = 5;
    const int n = 6;
    // x0*x2 - x1*x5, x0*x2 - x3*x4, x0*x3 + x1^2 + x1*x4,
    // x0*x5 + x1*x4 + x4^2, x3*x5 + x1*x2 + x2*x4
    s.equations = {
        {quad(n, 1, 0, 2), quad(n, -1, 1, 5)},
        {quad(n, 1, 0, 2), quad(n, -1, 3, 4)},
        {quad(n, 1, 0, 3), quad(n, 1, 1, 1), quad(n, 1, 1, 4)},
        {quad(n, 1, 0, 5), quad(n, 1, 1, 4), quad(n, 1, 4, 4)},
        {quad(n, 1, 3, 5), quad(n, 1, 1, 2), quad(n, 1, 2, 4)},
    };
    // Four lines: {x0=x1=x4=x3=0}, {x0=x1=x4=x5=0},
    // {x0=x3=x5=x1+x4=0}, {x2=x3=x5=x1+x4=0}
    s.lines = {
        {{coord_form(n, 0), coord_form(n, 1), coord_form(n, 4), coord_form(n, 3)}},
        {{coord_form(n, 0), coord_form(n, 1), coord_form(n, 4), coord_form(n, 5)}},
        {{coord_form(n, 0), coord_form(n, 3), coord_form(n, 5), sum_form(n, 1, 4)}},
        {{coord_form(n, 2), coord_form(n, 3), coord_form(n, 5), sum_form(n, 1, 4)}},
    };
    s.singular_points = {{{0, 0, 1, 0, 0, 0}}};
    return s;
}

SurfaceSpec make_s2() {
    SurfaceSpec s;
    s.id = SurfaceId::S2;
    s.name = "s2";
    s.ambient_dim = 4;
    s.rho = 6;
    const int n = 5;
    // x0^2 + x0*x3 + x2*x4, x1*x3 - x2^2
    s.equations = {
        {quad(n, 1, 0, 0), quad(n, 1, 0, 3), quad(n, 1, 2, 4)},
        {quad(n, 1, 1, 3), quad(n, -1, 2, 2)},
    };
    // {x0=x1=x2=0}, {x0+x3=x1=x2=0}, {x0=x2=x3=0}
    s.lines = {
        {{coord_form(n, 0), coord_form(n, 1), coord_form(n, 2)}},
        {{sum_form(n, 0, 3), coord_form(n, 1), coord_form(n, 2)}},
        {{coord_form(n, 0), coord_form(n, 2), coord_form(n, 3)}},
    };
    s.singular_points = {{{0, 0, 0, 0, 1}}, {{0, 1, 0, 0, 0}}};
    return s;
}

SurfaceSpec make_s3() {
    SurfaceSpec s;
    s.id = SurfaceId::S3;
    s.name = "s3";
    s.ambient_dim = 4;
    s.rho = 6;
    const int n = 5;
    // x0*x1 - x2*x3, x0*x4 + x1*x2 + x3^2
    s.equations = {
        {quad(n, 1, 0, 1), quad(n, -1, 2, 3)},
        {quad(n, 1, 0, 4), quad(n, 1, 1, 2), quad(n, 1, 3, 3)},
    };
    // {x0=x2=x3=0}, {x0=x1=x3=0}, {x1=x3=x4=0}
    s.lines = {
        {{coord_form(n, 0), coord_form(n, 2), coord_form(n, 3)}},
        {{coord_form(n, 0), coord_form(n, 1), coord_form(n, 3)}},
        {{coord_form(n, 1), coord_form(n, 3), coord_form(n, 4)}},
    };
    s.singular_points = {{{0, 0, 0, 0, 1}}};
    return s;
}

}  // namespace

const SurfaceSpec& surface(SurfaceId id) {
    static const SurfaceSpec s1 = make_s1();
    static const SurfaceSpec s2 = make_s2();
    static const SurfaceSpec s3 = make_s3();
    switch (id) {
        case SurfaceId::S1: return s1;
        case SurfaceId::S2: return s2;
        default: return s3;
    }
}

const SurfaceSpec* surface_by_name(const std::string& name) {
    for (SurfaceId id : all_surfaces())
        if (surface(id).name == name) return &surface(id);
    return nullptr;
}

std::vector<SurfaceId> all_surfaces() {
    return {SurfaceId::S1, SurfaceId::S2, SurfaceId::S3};
}

ProjectivePoint normalize(const std::vector<i64>& raw) {
    i64 g = 0;
    for (i64 v : raw) g = gcd64(g, v);
    if (g == 0) throw std::invalid_argument("normalize: zero vector");
    ProjectivePoint p;
    p.coords.reserve(raw.size());
    for (i64 v : raw) p.coords.push_back(v / g);
    for (i64 v : p.coords) {
        if (v == 0) continue;
        if (v < 0)
            for (i64& w : p.coords) w = -w;
        break;
    }
    return p;
}

i64 height(const ProjectivePoint& p) {
    i64 h = 0;
    for (i64 v : p.coords) h = std::max(h, v < 0 ? -v : v);
    return h;
}

std::vector<i64> eval_equations(const SurfaceSpec& s, const std::vector<i64>& coords) {
    if ((int)coords.size() != s.ambient_dim + 1)
        throw std::invalid_argument("eval_equations: wrong coordinate count");
    std::vector<i64> out;
    out.reserve(s.equations.size());
    for (const Polynomial& eq : s.equations) {
        i128 acc = 0;
        for (const PolyTerm& t : eq) {
            i128 v = t.coeff;
            for (size_t i = 0; i < t.exps.size(); i++)
                for (int e = 0; e < t.exps[i]; e++) v *= (i128)coords[i];
            acc += v;
        }
        if (acc > (i128)9e18 || acc < -(i128)9e18)
            throw std::overflow_error("eval_equations: residue overflows 64 bits");
        out.push_back((i64)acc);
    }
    return out;
}

bool on_surface(const SurfaceSpec& s, const std::vector<i64>& coords) {
    for (i64 r : eval_equations(s, coords))
        if (r != 0) return false;
    return true;
}

bool is_on_line(const SurfaceSpec& s, const ProjectivePoint& p) {
    for (const Line& line : s.lines) {
        bool all = true;
        for (const LinearForm& f : line.forms) {
            i128 v = 0;
            for (size_t i = 0; i < f.coeffs.size(); i++) v += (i128)f.coeffs[i] * p.coords[i];
            if (v != 0) { all = false; break; }
        }
        if (all) return true;
    }
    return false;
}

}  // namespace dpc
