#include "equipart/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "equipart/errors.hpp"

namespace equipart {

CurvePoint moment_point(double t, int d) {
    if (d < 1) throw Error(ErrorKind::InvalidDimension, "moment curve needs d >= 1, got " + std::to_string(d));
    CurvePoint p;
    p.t = t;
    p.coords.resize(static_cast<std::size_t>(d));
    long double power = 1.0L;
    for (auto& c : p.coords) {
        power *= t;
        c = static_cast<double>(power);
    }
    return p;
}

OrientedHyperplane::OrientedHyperplane(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.size() < 2) throw Error(ErrorKind::InvalidDimension, "hyperplane needs d >= 1");
    long double norm2 = 0.0L;
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "non-finite hyperplane coefficient");
        norm2 += static_cast<long double>(c) * c;
    }
    if (norm2 == 0.0L) throw Error(ErrorKind::InvalidArgument, "(a0, a) must be nonzero");
    const long double norm = std::sqrt(norm2);
    for (auto& c : coeffs_) c = static_cast<double>(c / norm);
}

OrientedHyperplane OrientedHyperplane::from_affine(double a0, std::span<const double> normal) {
    std::vector<double> v;
    v.reserve(normal.size() + 1);
    v.push_back(a0);
    v.insert(v.end(), normal.begin(), normal.end());
    return OrientedHyperplane(std::move(v));
}

bool OrientedHyperplane::at_infinity() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](double c) { return c == 0.0; });
}

OrientedHyperplane OrientedHyperplane::antipode() const {
    OrientedHyperplane h = *this;
    for (auto& c : h.coeffs_) c = -c;
    return h;
}

long double OrientedHyperplane::curve_value(long double t) const {
    long double acc = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double side(const OrientedHyperplane& h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != h.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "point has dimension " + std::to_string(x.size()) + ", hyperplane " + std::to_string(h.dim()));
    }
    long double acc = h.a0();
    for (int i = 0; i < h.dim(); ++i) acc += static_cast<long double>(h.a(i)) * x[static_cast<std::size_t>(i)];
    return static_cast<double>(acc);
}

bool approx_equal(const OrientedHyperplane& lhs, const OrientedHyperplane& rhs, double tol) {
    if (lhs.dim() != rhs.dim()) return false;
    for (std::size_t i = 0; i < lhs.coefficients().size(); ++i) {
        if (std::abs(lhs.coefficients()[i] - rhs.coefficients()[i]) > tol) return false;
    }
    return true;
}

std::vector<Rational> monic_coefficients(std::span<const Rational> roots) {
    std::vector<Rational> c{Rational(1)};
    for (const auto& r : roots) {
        // multiply by (t - r)
        std::vector<Rational> next(c.size() + 1, Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

OrientedHyperplane hyperplane_from_roots(std::span<const Rational> roots, int orientation, int d) {
    if (d < 1) throw Error(ErrorKind::InvalidDimension, "d must be >= 1");
    if (static_cast<int>(roots.size()) != d) {
        throw Error(ErrorKind::SizeMismatch,
                    "need exactly d = " + std::to_string(d) + " roots, got " + std::to_string(roots.size()));
    }
    if (orientation != 1 && orientation != -1) throw Error(ErrorKind::InvalidArgument, "orientation must be +1 or -1");
    std::vector<Rational> sorted(roots.begin(), roots.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorKind::DegenerateRoots, "roots must be pairwise distinct");
    }
    const auto exact = monic_coefficients(roots);

    // Normalize in extended precision before rounding to double.
    std::vector<long double> wide;
    wide.reserve(exact.size());
    long double norm2 = 0.0L;
    for (const auto& c : exact) {
        const long double v = static_cast<long double>(c) * orientation;
        wide.push_back(v);
        norm2 += v * v;
    }
    const long double norm = std::sqrt(norm2);
    std::vector<double> coeffs;
    coeffs.reserve(wide.size());
    for (long double v : wide) coeffs.push_back(static_cast<double>(v / norm));
    return OrientedHyperplane(std::move(coeffs));
}

OrientedHyperplane hyperplane_from_roots(std::span<const double> roots, int orientation, int d) {
    std::vector<Rational> exact;
    exact.reserve(roots.size());
    for (double r : roots) {
        if (!std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "non-finite root");
        exact.emplace_back(r);
    }
    return hyperplane_from_roots(std::span<const Rational>(exact), orientation, d);
}

Configuration::Configuration(int dim, std::vector<OrientedHyperplane> hs) : d(dim), planes(std::move(hs)) {
    if (planes.empty()) throw Error(ErrorKind::SizeMismatch, "configuration needs k >= 1 planes");
    for (const auto& h : planes) {
        if (h.dim() != d) {
            throw Error(ErrorKind::DimensionMismatch,
                        "plane of dimension " + std::to_string(h.dim()) + " in configuration of dimension " +
                            std::to_string(d));
        }
    }
}

Label Configuration::label_of(std::span<const double> x) const {
    Label label = 0;
    for (int i = 0; i < size(); ++i) {
        if (side(planes[static_cast<std::size_t>(i)], x) < 0.0) label |= Label{1} << i;
    }
    return label;
}

GroupElement GroupElement::identity(int k) {
    GroupElement g;
    g.perm.resize(static_cast<std::size_t>(k));
    std::iota(g.perm.begin(), g.perm.end(), 0);
    return g;
}

GroupElement GroupElement::inverse() const {
    // g^-1 = (perm^-1, perm^-1(flips))
    GroupElement inv;
    inv.perm.resize(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) inv.perm[static_cast<std::size_t>(perm[j])] = static_cast<int>(j);
    inv.flips = permute_bits(inv.perm, flips);
    return inv;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    if (g.size() != h.size()) throw Error(ErrorKind::SizeMismatch, "group elements of different rank");
    GroupElement gh;
    gh.perm.resize(g.perm.size());
    for (std::size_t j = 0; j < h.perm.size(); ++j) {
        gh.perm[j] = g.perm[static_cast<std::size_t>(h.perm[j])];
    }
    gh.flips = g.flips ^ permute_bits(g.perm, h.flips);
    return gh;
}

std::vector<GroupElement> group_elements(int k) {
    if (k < 1 || k > 8) throw Error(ErrorKind::InvalidArgument, "group rank must be in [1, 8]");
    std::vector<GroupElement> out;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (Label f = 0; f < (Label{1} << k); ++f) out.push_back(GroupElement{perm, f});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Label permute_bits(std::span<const int> perm, Label label) {
    Label out = 0;
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if ((label >> j) & 1U) out |= Label{1} << perm[j];
    }
    return out;
}

Label act_label(const GroupElement& g, Label label) { return permute_bits(g.perm, label) ^ g.flips; }

Configuration act(const GroupElement& g, const Configuration& c) {
    if (g.size() != c.size()) {
        throw Error(ErrorKind::SizeMismatch, "group element of rank " + std::to_string(g.size()) +
                                                 " acting on " + std::to_string(c.size()) + " planes");
    }
    std::vector<OrientedHyperplane> planes(c.planes);
    for (std::size_t j = 0; j < c.planes.size(); ++j) {
        const auto dest = static_cast<std::size_t>(g.perm[j]);
        planes[dest] = ((g.flips >> dest) & 1U) ? c.planes[j].antipode() : c.planes[j];
    }
    return Configuration(c.d, std::move(planes));
}

}  // namespace equipart
