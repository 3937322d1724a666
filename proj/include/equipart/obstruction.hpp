#pragma once

// Moment-curve evaluation of the equipartition obstruction. Measures are
// uniform on consecutive parameter intervals of the moment curve; every zero
// of the test map is then a crossing pattern, the obstruction parity is the
// number of G-orbits of patterns mod 2, and each orbit can be realized as an
// explicit hyperplane configuration.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equipart/geometry.hpp"
#include "equipart/graycode.hpp"
#include "equipart/measures.hpp"
#include "equipart/testmap.hpp"

namespace equipart {

struct ProblemSpec {
    int d = 0;
    int k = 0;
    std::vector<ConstraintKind> constraints;

    int full_count() const;
    int bisector_count() const;

    // Every plane must meet the curve in exactly d points inside the intervals:
    // full_count * (2^k - 1) + bisector_count == k * d. Throws Infeasible.
    void validate() const;

    bool operator==(const ProblemSpec&) const = default;
};

// "F,F,B" style constraint lists.
std::vector<ConstraintKind> parse_constraints(const std::string& text);
std::string format_constraints(std::span<const ConstraintKind> constraints);

struct OrbitEntry {
    int id = 0;
    CrossingPattern canonical;
    // Same orbit, relabeled so the first Full interval has non-increasing flip counts.
    CrossingPattern table_representative;
    int stabilizer = 1;
    FlipCountVector i1_type;
    FlipCountVector i2_type;
    std::optional<int> bisector_plane;  // 0-based, first Bisector interval of the table representative
    int claim_case = 0;                 // 1..7 for the (5, 3, [F,F,B]) census, else 0
};

struct MatchRow {
    FlipCountVector i1_type;
    FlipCountVector i2_type;
    int count = 0;
    int claim_case = 0;
};

struct OrbitReport {
    ProblemSpec spec;
    std::uint64_t raw_pattern_count = 0;  // start label pinned to 0
    std::vector<OrbitEntry> orbits;
    std::vector<MatchRow> match_table;

    int orbit_count() const { return static_cast<int>(orbits.size()); }
    int theta() const { return orbit_count() % 2; }
};

struct EnumerateOptions {
    unsigned threads = 1;
    bool allow_large = false;
};

// All start-pinned patterns with per-plane totals equal to d.
std::vector<CrossingPattern> enumerate_patterns(const ProblemSpec& spec, const EnumerateOptions& options = {});

OrbitReport enumerate_orbits(const ProblemSpec& spec, const EnumerateOptions& options = {});

std::vector<MatchRow> match_table(const ProblemSpec& spec, const EnumerateOptions& options = {});

// Orbit counts per table case 1..7 (index 0 = case 1).
std::array<int, 7> claim_case_counts(std::span<const MatchRow> table);

int claim_case(const FlipCountVector& i1_type, const FlipCountVector& i2_type);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

// Consecutive intervals with unit gaps: Full ones of length 2^k, Bisector ones of length 2.
std::vector<Interval> default_intervals(const ProblemSpec& spec, double origin = 0.0);

// Throws OverlappingIntervals unless lo < hi and intervals are consecutive and
// non-overlapping (touching endpoints are allowed). Throws SizeMismatch on a count mismatch.
void validate_intervals(std::span<const Interval> intervals, std::size_t expected);

struct Crossing {
    double t = 0.0;
    int plane = 0;
    int slot = 0;  // index into that plane's root list
    int interval = 0;
};

struct RealizedZero {
    ProblemSpec spec;
    CrossingPattern pattern;
    std::vector<Interval> intervals;
    std::vector<Measure> full_measures;
    std::vector<Measure> bisector_measures;
    Configuration config;
    std::vector<int> orientations;         // +1 / -1 per plane
    std::vector<std::vector<double>> roots;  // per plane, in slot order
    std::vector<Crossing> crossings;       // sorted by t
    double residual = 0.0;                 // |f| / total mass of all measures
    std::optional<double> det_estimate;

    double total_mass() const;
};

struct RealizeOptions {
    double tolerance = 1e-9;
};

// Full intervals are cut into 2^k equal pieces, Bisector intervals at their
// midpoint; plane i passes through the curve points assigned to it by the
// pattern. Throws RealizationFailed if the residual or the recovered pattern
// disagrees.
RealizedZero realize(const ProblemSpec& spec, const CrossingPattern& pattern, std::span<const Interval> intervals,
                     const RealizeOptions& options = {});

// Reads the crossing pattern of a configuration off the curve: start label at
// the first interval and the crossing planes per interval, in order.
CrossingPattern recover_pattern(const Configuration& c, const ProblemSpec& spec, std::span<const Interval> intervals);

struct JacobianOptions {
    double relative_step = 1e-5;  // times the length of the crossing's interval
    double threshold = 1e-6;
    int max_retries = 3;
};

struct JacobianResult {
    double det_estimate = 0.0;  // after scaling every row to unit length
    bool ok = false;
    double step_scale = 1.0;    // 2^-retries
    int retries = 0;
};

// Central-difference Jacobian of the test map with respect to the crossing
// parameters, used as local coordinates around the zero.
JacobianResult jacobian_nondegenerate(const RealizedZero& z, const JacobianOptions& options = {});

// Test-map values as a function of the crossing parameters (same order as z.crossings).
std::vector<double> chart_test_map(const RealizedZero& z, std::span<const double> params);

struct CorollaryResult {
    OrientedHyperplane halving;  // H: x_1 = midpoint
    IntervalMeasure mu_plus;
    IntervalMeasure mu_minus;
    RealizedZero zero;           // three planes for (mu_plus, mu_minus, nu_3)
    Configuration planes;        // H followed by the three planes
    std::vector<double> masses;  // 16 orthant masses of mu
    double max_relative_error = 0.0;
    int theta = 0;
};

// Reduces one measure and four planes to two measures and three planes plus a bisector.
// nu3 defaults to a unit-gap interval after mu.
CorollaryResult corollary_pipeline(const IntervalMeasure& mu, std::optional<Interval> nu3 = std::nullopt,
                                   const EnumerateOptions& options = {});

struct PerturbationOptions {
    std::optional<std::vector<Interval>> base_intervals;
    bool check_jacobian = true;
    EnumerateOptions enumerate;
};

struct PerturbationReport {
    bool invariant = true;
    int expected_orbits = 0;
    int expected_theta = 0;
    std::vector<int> orbit_counts;  // per trial, distinct orbits among realized zeros
    std::vector<std::vector<Interval>> placements;
};

// Re-places the intervals at random (seeded) and checks that every orbit still
// realizes as a nondegenerate zero and that the orbit census is unchanged.
PerturbationReport perturbation_parity_invariance(const ProblemSpec& spec, int trials, std::uint64_t seed,
                                                  const PerturbationOptions& options = {});

}  // namespace equipart
