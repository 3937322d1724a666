#pragma once

// Moment curve, oriented hyperplanes on the compactified configuration
// space (S^d)^k, and the hyperoctahedral group Z_2^k x| S_k acting on
// configurations and on hyperorthant labels.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace equipart {

using Rational = boost::multiprecision::cpp_rational;

// Hyperorthant label: bit i set means "on the negative side of plane i".
using Label = std::uint32_t;

struct CurvePoint {
    double t = 0.0;
    std::vector<double> coords;  // (t, t^2, ..., t^d)

    int dim() const { return static_cast<int>(coords.size()); }
};

CurvePoint moment_point(double t, int d);

// Point of S^d: the unit (d+1)-vector (a0, a1, ..., ad) describing
// {x : a0 + a.x = 0} with positive side a0 + a.x >= 0.
class OrientedHyperplane {
public:
    // Normalizes; throws on the zero vector or d < 1.
    explicit OrientedHyperplane(std::vector<double> coefficients);

    static OrientedHyperplane from_affine(double a0, std::span<const double> normal);

    int dim() const { return static_cast<int>(coeffs_.size()) - 1; }
    double a0() const { return coeffs_[0]; }
    double a(int i) const { return coeffs_[static_cast<std::size_t>(i) + 1]; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    bool at_infinity() const;
    OrientedHyperplane antipode() const;

    // a0 + a.phi(t) as a polynomial in t; coefficients()[i] multiplies t^i.
    long double curve_value(long double t) const;

    friend bool operator==(const OrientedHyperplane&, const OrientedHyperplane&) = default;

private:
    std::vector<double> coeffs_;
};

double side(const OrientedHyperplane& h, std::span<const double> x);
inline double side(const OrientedHyperplane& h, const CurvePoint& p) { return side(h, p.coords); }

bool approx_equal(const OrientedHyperplane& lhs, const OrientedHyperplane& rhs, double tol = 1e-12);

// Coefficients c_0..c_n of the monic polynomial prod (t - r_i), exactly.
std::vector<Rational> monic_coefficients(std::span<const Rational> roots);

// Hyperplane through phi(r_1), ..., phi(r_d): side(h, phi(t)) = orientation * prod (t - r_i)
// up to the positive normalization factor. Throws DegenerateRoots on repeats.
OrientedHyperplane hyperplane_from_roots(std::span<const Rational> roots, int orientation, int d);
OrientedHyperplane hyperplane_from_roots(std::span<const double> roots, int orientation, int d);

struct Configuration {
    int d = 0;
    std::vector<OrientedHyperplane> planes;

    Configuration() = default;
    Configuration(int dim, std::vector<OrientedHyperplane> hs);

    int size() const { return static_cast<int>(planes.size()); }

    // Orthant label of x, ties going to the positive side.
    Label label_of(std::span<const double> x) const;
};

// Element of Z_2^k x| S_k. Acting on a configuration: plane perm[j] of the
// result is plane j of the input, reoriented when bit perm[j] of flips is set.
struct GroupElement {
    std::vector<int> perm;
    Label flips = 0;

    int size() const { return static_cast<int>(perm.size()); }

    static GroupElement identity(int k);
    GroupElement inverse() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// (g * h) acts as g after h.
GroupElement compose(const GroupElement& g, const GroupElement& h);

// All 2^k * k! elements, permutations in lexicographic order, flips ascending.
std::vector<GroupElement> group_elements(int k);

Configuration act(const GroupElement& g, const Configuration& c);
Label act_label(const GroupElement& g, Label label);

// Applies only the permutation part to a label (bit j moves to perm[j]).
Label permute_bits(std::span<const int> perm, Label label);

}  // namespace equipart
