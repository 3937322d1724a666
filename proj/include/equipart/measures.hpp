#pragma once

#include <variant>
#include <vector>

#include "equipart/geometry.hpp"

namespace equipart {

// Push-forward of Lebesgue measure on [lo, hi] along the moment curve in R^d.
struct IntervalMeasure {
    int d = 0;
    double lo = 0.0;
    double hi = 0.0;

    IntervalMeasure() = default;
    IntervalMeasure(int dim, double lo_, double hi_);

    double total_mass() const { return hi - lo; }
};

struct WeightedPoint {
    std::vector<double> x;
    double w = 0.0;
};

// Point masses. Not continuous, so none of the topological guarantees apply;
// a point lying exactly on a hyperplane is counted on its positive side.
struct DiscreteMeasure {
    std::vector<WeightedPoint> points;

    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<WeightedPoint> pts);

    int dim() const;
    double total_mass() const;
};

using Measure = std::variant<IntervalMeasure, DiscreteMeasure>;

double total_mass(const Measure& mu);
int measure_dim(const Measure& mu);  // 0 for an empty discrete measure

// All 2^k hyperorthant masses, indexed by label.
std::vector<double> orthant_masses(const Measure& mu, const Configuration& c);

double orthant_mass(const Measure& mu, const Configuration& c, Label label);

// Sorted parameters t in [a, b] with side(h, phi(t)) = 0. Every root must be
// simple; a tangency throws DegenerateTangency.
std::vector<double> curve_crossings(const OrientedHyperplane& h, double a, double b);

// mu(h+) - mu(h-).
double bisector_defect(const Measure& mu, const OrientedHyperplane& h);

}  // namespace equipart
