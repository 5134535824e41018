#pragma once

#include <string>
#include <vector>

#include "dpc/common.hpp"

namespace dpc {

// The three singular del Pezzo surfaces handled by this toolkit:
//   S1: degree 5, one A2 singularity, Picard rank of the desingularization 5
//   S2: degree 4, A3 + A1 singularities, rank 6
//   S3: degree 4, one A4 singularity, rank 6
enum class SurfaceId { S1, S2, S3 };

struct ProjectivePoint {
    std::vector<i64> coords;
    bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
    bool operator<(const ProjectivePoint& o) const { return coords < o.coords; }
};

struct PolyTerm {
    i64 coeff;
    std::vector<int> exps;  // exponent per ambient coordinate
};
using Polynomial = std::vector<PolyTerm>;

struct LinearForm {
    std::vector<i64> coeffs;
};

// A line on the surface, cut out by ambient linear forms whose common zero
// locus is a projective line contained in the surface.
struct Line {
    std::vector<LinearForm> forms;
};

struct SurfaceSpec {
    SurfaceId id;
    std::string name;
    int ambient_dim;  // surface lives in P^ambient_dim
    std::vector<Polynomial> equations;
    std::vector<Line> lines;
    std::vector<ProjectivePoint> singular_points;
    int rho;  // Picard rank of the minimal desingularization
};

const SurfaceSpec& surface(SurfaceId id);
const SurfaceSpec* surface_by_name(const std::string& name);  // nullptr if unknown
std::vector<SurfaceId> all_surfaces();

// Canonical representative of a nonzero integer vector: divide by the gcd
// and make the first nonzero coordinate positive.  Throws on the zero vector.
ProjectivePoint normalize(const std::vector<i64>& raw);

// max |x_i| of a canonical representative.
i64 height(const ProjectivePoint& p);

// Residues of all defining equations at p (128-bit intermediates).
std::vector<i64> eval_equations(const SurfaceSpec& s, const std::vector<i64>& coords);
bool on_surface(const SurfaceSpec& s, const std::vector<i64>& coords);

bool is_on_line(const SurfaceSpec& s, const ProjectivePoint& p);

}  // namespace dpc
