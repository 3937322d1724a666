#include "equipart/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

using Poly = std::vector<long double>;  // p[i] multiplies t^i

long double eval(const Poly& p, long double t) {
    long double acc = 0.0L;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
    return acc;
}

// Magnitude bound for the rounding error of eval at t.
long double eval_scale(const Poly& p, long double t) {
    long double acc = 0.0L;
    const long double at = std::abs(t);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * at + std::abs(*it);
    return acc;
}

Poly trimmed(Poly p) {
    while (!p.empty() && p.back() == 0.0L) p.pop_back();
    return p;
}

Poly derivative(const Poly& p) {
    Poly q;
    for (std::size_t i = 1; i < p.size(); ++i) q.push_back(p[i] * static_cast<long double>(i));
    return trimmed(std::move(q));
}

long double bisect(const Poly& p, long double lo, long double hi) {
    long double plo = eval(p, lo);
    for (int iter = 0; iter < 200; ++iter) {
        const long double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        const long double pm = eval(p, mid);
        if (pm == 0.0L) return mid;
        if ((pm < 0) == (plo < 0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    return lo + (hi - lo) / 2;
}

constexpr long double kTangencyTol = 1e-14L;

// Roots of p in [a, b], found between consecutive critical points.
std::vector<long double> real_roots(const Poly& p, long double a, long double b) {
    std::vector<long double> out;
    if (p.size() <= 1) return out;  // constant (nonzero) polynomial
    std::vector<long double> breaks{a};
    if (p.size() > 2) {
        for (long double c : real_roots(derivative(p), a, b)) {
            if (c > a && c < b) breaks.push_back(c);
        }
    }
    breaks.push_back(b);

    for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
        const long double c = breaks[i];
        if (std::abs(eval(p, c)) <= kTangencyTol * eval_scale(p, c)) {
            throw Error(ErrorKind::DegenerateTangency,
                        "hyperplane is tangent to the moment curve near t = " + std::to_string(static_cast<double>(c)));
        }
    }
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const long double lo = breaks[i];
        const long double hi = breaks[i + 1];
        const long double plo = eval(p, lo);
        const long double phi = eval(p, hi);
        if (plo == 0.0L) {
            if (out.empty() || out.back() != lo) out.push_back(lo);
            continue;
        }
        if (phi == 0.0L) {
            out.push_back(hi);
            continue;
        }
        if ((plo < 0) != (phi < 0)) out.push_back(bisect(p, lo, hi));
    }
    return out;
}

std::vector<long double> crossings_wide(const OrientedHyperplane& h, long double a, long double b) {
    Poly p(h.coefficients().begin(), h.coefficients().end());
    return real_roots(trimmed(std::move(p)), a, b);
}

std::vector<double> interval_orthant_masses(const IntervalMeasure& mu, const Configuration& c) {
    const int k = c.size();
    std::vector<double> masses(std::size_t{1} << k, 0.0);
    std::vector<long double> cuts{mu.lo, mu.hi};
    for (const auto& h : c.planes) {
        if (h.at_infinity()) continue;
        for (long double t : crossings_wide(h, mu.lo, mu.hi)) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    // Boundary parameters have measure zero; label each piece at its midpoint.
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const long double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0L) continue;
        const long double mid = cuts[i] + len / 2;
        Label label = 0;
        for (int j = 0; j < k; ++j) {
            if (c.planes[static_cast<std::size_t>(j)].curve_value(mid) < 0.0L) label |= Label{1} << j;
        }
        masses[label] += static_cast<double>(len);
    }
    return masses;
}

std::vector<double> discrete_orthant_masses(const DiscreteMeasure& mu, const Configuration& c) {
    std::vector<double> masses(std::size_t{1} << c.size(), 0.0);
    for (const auto& p : mu.points) masses[c.label_of(p.x)] += p.w;
    return masses;
}

}  // namespace

IntervalMeasure::IntervalMeasure(int dim, double lo_, double hi_) : d(dim), lo(lo_), hi(hi_) {
    if (d < 1) throw Error(ErrorKind::InvalidDimension, "interval measure needs d >= 1");
    if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "interval measure needs lo < hi");
}

DiscreteMeasure::DiscreteMeasure(std::vector<WeightedPoint> pts) : points(std::move(pts)) {
    for (const auto& p : points) {
        if (!(p.w > 0.0)) throw Error(ErrorKind::InvalidArgument, "point weights must be positive");
        if (p.x.size() != points.front().x.size()) {
            throw Error(ErrorKind::DimensionMismatch, "discrete measure points of mixed dimension");
        }
    }
}

int DiscreteMeasure::dim() const { return points.empty() ? 0 : static_cast<int>(points.front().x.size()); }

double DiscreteMeasure::total_mass() const {
    double sum = 0.0;
    for (const auto& p : points) sum += p.w;
    return sum;
}

double total_mass(const Measure& mu) {
    return std::visit([](const auto& m) { return m.total_mass(); }, mu);
}

int measure_dim(const Measure& mu) {
    return std::visit(
        [](const auto& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, IntervalMeasure>) {
                return m.d;
            } else {
                return m.dim();
            }
        },
        mu);
}

std::vector<double> orthant_masses(const Measure& mu, const Configuration& c) {
    const int md = measure_dim(mu);
    if (md != 0 && md != c.d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "measure in R^" + std::to_string(md) + ", configuration in R^" + std::to_string(c.d));
    }
    if (c.size() > 16) throw Error(ErrorKind::TooManyBits, "too many planes for orthant enumeration");
    if (const auto* im = std::get_if<IntervalMeasure>(&mu)) return interval_orthant_masses(*im, c);
    return discrete_orthant_masses(std::get<DiscreteMeasure>(mu), c);
}

double orthant_mass(const Measure& mu, const Configuration& c, Label label) {
    if (label >= (Label{1} << c.size())) {
        throw Error(ErrorKind::InvalidLabel, "label " + std::to_string(label) + " has bits beyond k");
    }
    return orthant_masses(mu, c)[label];
}

std::vector<double> curve_crossings(const OrientedHyperplane& h, double a, double b) {
    if (h.at_infinity()) throw Error(ErrorKind::InvalidArgument, "hyperplane at infinity has no curve crossings");
    if (!(a <= b)) throw Error(ErrorKind::InvalidArgument, "window must satisfy a <= b");
    std::vector<double> out;
    for (long double r : crossings_wide(h, a, b)) out.push_back(static_cast<double>(r));
    return out;
}

double bisector_defect(const Measure& mu, const OrientedHyperplane& h) {
    const auto masses = orthant_masses(mu, Configuration(h.dim(), {h}));
    return masses[0] - masses[1];
}

}  // namespace equipart
