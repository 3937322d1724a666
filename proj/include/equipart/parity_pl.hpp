#pragma once

// Mod-2 degree of piecewise-linear maps X -> R^n on triangulated
// n-manifolds with boundary (n <= 3): preimage counts of 0, ray-crossing
// counts on the boundary, decomposition of the boundary into shielded
// pieces, and the symmetric cancellation rule.
//
// All incidence decisions are made by determinant signs. A floating-point
// filter settles clear cases; anything near zero is recomputed in exact
// rational arithmetic from the (exactly representable) double inputs.

#include <cstdint>
#include <optional>
#include <vector>

namespace equipart {

using Face = std::vector<int>;  // sorted vertex ids

struct PLManifoldMap {
    int n = 0;
    std::vector<Face> simplices;             // n + 1 vertices each
    std::vector<std::vector<double>> coords; // optional vertex positions (any dimension)
    std::vector<std::vector<double>> values; // n components per vertex
    std::vector<Face> boundary;              // n vertices each; filled in by validate() when empty

    int vertex_count() const { return static_cast<int>(values.size()); }

    // Pseudomanifold check: each (n-1)-face lies in one (boundary) or two
    // (interior) n-simplices. Sorts faces and fills or cross-checks `boundary`.
    // Throws InvalidMesh / InvalidDimension.
    void validate();
};

struct RaySpec {
    std::vector<double> direction;
};

struct DecompositionPiece {
    std::vector<Face> faces;      // boundary faces
    std::optional<int> shield;    // index into r' = first n-1 components
};

// Throws GenericityViolation (naming the face) if 0 lies in the image of an (n-1)-face.
void check_genericity(const PLManifoldMap& m);

// Parity of n-simplices whose image contains 0.
int zero_parity(const PLManifoldMap& m);

struct RayResult {
    int parity = 0;
    std::vector<double> ray;  // direction actually used
    int retries = 0;
};

// Parity of boundary faces whose image meets {l v : l > 0}. On a
// non-transverse contact the ray is jittered deterministically (seeded by a
// hash of the input) up to max_retries times, then NonTransverseRay is thrown.
RayResult ray_parity(const PLManifoldMap& m, const RaySpec& ray, int max_retries = 0);

inline constexpr int kDefaultRayRetries = 20;

struct BoundaryIdentity {
    int lhs = 0;
    int rhs = 0;
    bool equal = false;
    RayResult ray;
};

// zero_parity against the boundary ray count. The default ray is +e_n, i.e.
// zeros of r' = (r_1..r_{n-1}) on the boundary where r_n > 0.
BoundaryIdentity boundary_identity(const PLManifoldMap& m, std::optional<RaySpec> ray = std::nullopt);

struct DecompositionResult {
    std::vector<int> piece_parities;
    int total = 0;
    int direct = 0;  // zero_parity(m)
    bool consistent = false;
};

// Pieces must partition the boundary faces. Each piece's frontier (its
// (n-2)-faces met by exactly one face of the piece) must either carry no
// zero of r', or, when a shield coordinate is declared, that coordinate of
// r' must keep a strict sign on every frontier face. Otherwise ShieldViolation.
// A non-default ray is handled by a rational linear change of coordinates
// sending it to +e_n.
DecompositionResult decompose_parity(const PLManifoldMap& m, const std::vector<DecompositionPiece>& pieces,
                                     std::optional<RaySpec> ray = std::nullopt);

struct SymmetricCancelResult {
    int value = 0;        // a * P(r'; Y1) mod 2
    int zeros_y1 = 0;     // zeros of r' found on Y1
    int zeros_y2 = 0;
    int direct = 0;       // zeros of r' with r_n > 0 on Y1 and Y2, mod 2
};

// beta is a vertex map (size vertex_count) sending faces of Y1 onto faces of Y2.
// Every zero of r' on Y1 must map to a zero on Y2 with r_n(beta x) = (-1)^a r_n(x)
// in sign; otherwise InvalidSymmetry. a must be 0 or 1.
SymmetricCancelResult symmetric_cancel(const PLManifoldMap& m, const std::vector<Face>& y1,
                                       const std::vector<Face>& y2, const std::vector<int>& beta, int a);

// Smallest Euclidean distance from 0 to the image of any (n-1)-face.
double min_face_distance(const PLManifoldMap& m);

// ---- mesh generators (values are left zero) ----

// Cone from the origin over the boundary of the cross-polytope, whose
// facets are split `refine` times by antipode-equivariant edge midpoints.
PLManifoldMap cross_polytope_ball(int n, int refine = 0);

// Replaces simplex `index` by n + 1 simplices around its barycenter.
void stellar_subdivide(PLManifoldMap& m, std::size_t index);

// [0,1]^n cut into divisions^n cubes, each split into n! Kuhn simplices.
PLManifoldMap kuhn_cube(int n, int divisions);

// Vertex id of the negated position of every vertex; -1 where there is none.
std::vector<int> antipode_map(const PLManifoldMap& m);

// Boundary faces whose barycenter has positive / negative last coordinate.
std::vector<Face> upper_hemisphere(const PLManifoldMap& m);
std::vector<Face> lower_hemisphere(const PLManifoldMap& m);

// Random values with f(-x) = -f(x) on the boundary (Gaussian, seeded).
void assign_boundary_odd_values(PLManifoldMap& m, std::uint64_t seed);

// Boundary-odd map on a refined cross-polytope ball with a few interior vertices.
PLManifoldMap random_boundary_odd_ball(int n, std::uint64_t seed);

// Random generic map on one of the generated meshes.
PLManifoldMap random_generic_map(int n, std::uint64_t seed);

struct BorsukUlamReport {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<int> parities;
    bool all_odd = false;
};

BorsukUlamReport bu_check(int n, std::uint64_t seed, int trials);

// The 3-simplex x <= y <= z with r' vanishing along the edge from (0,0,0) to (1,1,1),
// split into its four facets. decompose_parity must refuse it.
struct AdversarialInstance {
    PLManifoldMap map;
    std::vector<DecompositionPiece> pieces;
};
AdversarialInstance adversarial_unshielded();

}  // namespace equipart
