#include "equipart/obstruction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

// Runs fn(unit) for unit in [0, n) on up to `threads` workers. Results are
// indexed by unit, so the output does not depend on scheduling.
template <typename Result, typename Fn>
std::vector<Result> parallel_units(std::size_t n, unsigned threads, Fn fn) {
    std::vector<Result> results(n);
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t u = 0; u < n; ++u) results[u] = fn(u);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t u = next++; u < n; u = next++) results[u] = fn(u);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

std::vector<std::vector<IntervalPattern>> interval_choices(const ProblemSpec& spec, bool allow_large) {
    std::vector<IntervalPattern> full;
    for (auto& s : flip_sequences(spec.k, allow_large)) full.push_back({ConstraintKind::Full, s.flips});
    std::vector<IntervalPattern> bisector;
    for (int p = 0; p < spec.k; ++p) bisector.push_back({ConstraintKind::Bisector, {p}});
    std::vector<std::vector<IntervalPattern>> choices;
    for (auto kind : spec.constraints) choices.push_back(kind == ConstraintKind::Full ? full : bisector);
    return choices;
}

void extend(const ProblemSpec& spec, const std::vector<std::vector<IntervalPattern>>& choices, std::size_t level,
            std::vector<int>& totals, CrossingPattern& current, std::vector<CrossingPattern>& out) {
    if (level == choices.size()) {
        if (std::all_of(totals.begin(), totals.end(), [&](int t) { return t == spec.d; })) out.push_back(current);
        return;
    }
    for (const auto& choice : choices[level]) {
        bool fits = true;
        for (int b : choice.planes) {
            if (++totals[static_cast<std::size_t>(b)] > spec.d) fits = false;
        }
        if (fits) {
            current.intervals.push_back(choice);
            extend(spec, choices, level + 1, totals, current, out);
            current.intervals.pop_back();
        }
        for (int b : choice.planes) --totals[static_cast<std::size_t>(b)];
    }
}

std::vector<std::vector<CrossingPattern>> patterns_by_unit(const ProblemSpec& spec, const EnumerateOptions& options) {
    spec.validate();
    const auto choices = interval_choices(spec, options.allow_large);
    return parallel_units<std::vector<CrossingPattern>>(
        choices.front().size(), options.threads, [&](std::size_t unit) {
            std::vector<CrossingPattern> out;
            std::vector<int> totals(static_cast<std::size_t>(spec.k), 0);
            CrossingPattern current{spec.k, 0, {}};
            const auto& first = choices.front()[unit];
            for (int b : first.planes) ++totals[static_cast<std::size_t>(b)];
            if (std::all_of(totals.begin(), totals.end(), [&](int t) { return t <= spec.d; })) {
                current.intervals.push_back(first);
                extend(spec, choices, 1, totals, current, out);
            }
            return out;
        });
}

const IntervalPattern* nth_of_kind(const CrossingPattern& p, ConstraintKind kind, int n) {
    for (const auto& iv : p.intervals) {
        if (iv.kind == kind && n-- == 0) return &iv;
    }
    return nullptr;
}

FlipCountVector counts_of(const IntervalPattern& iv, int k) {
    FlipCountVector counts(static_cast<std::size_t>(k), 0);
    for (int b : iv.planes) ++counts[static_cast<std::size_t>(b)];
    return counts;
}

CrossingPattern table_representative(const CrossingPattern& canonical) {
    const IntervalPattern* first = nth_of_kind(canonical, ConstraintKind::Full, 0);
    std::vector<int> perm(static_cast<std::size_t>(canonical.k));
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<CrossingPattern> best;
    do {
        auto candidate = relabel(canonical, perm);
        if (first != nullptr) {
            const auto counts = counts_of(*nth_of_kind(candidate, ConstraintKind::Full, 0), canonical.k);
            if (!std::is_sorted(counts.begin(), counts.end(), std::greater<>())) continue;
        }
        if (!best || candidate < *best) best = std::move(candidate);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

bool is_claim_spec(const ProblemSpec& spec) {
    return spec.d == 5 && spec.k == 3 &&
           spec.constraints ==
               std::vector<ConstraintKind>{ConstraintKind::Full, ConstraintKind::Full, ConstraintKind::Bisector};
}

OrbitEntry make_entry(int id, const CrossingPattern& canonical, const ProblemSpec& spec) {
    OrbitEntry e;
    e.id = id;
    e.canonical = canonical;
    e.table_representative = table_representative(canonical);
    e.stabilizer = stabilizer_order(canonical);
    const auto& rep = e.table_representative;
    if (const auto* iv = nth_of_kind(rep, ConstraintKind::Full, 0)) e.i1_type = counts_of(*iv, spec.k);
    if (const auto* iv = nth_of_kind(rep, ConstraintKind::Full, 1)) e.i2_type = counts_of(*iv, spec.k);
    if (const auto* iv = nth_of_kind(rep, ConstraintKind::Bisector, 0)) e.bisector_plane = iv->planes.front();
    if (is_claim_spec(spec)) e.claim_case = claim_case(e.i1_type, e.i2_type);
    return e;
}

std::vector<MatchRow> rows_from(std::span<const OrbitEntry> orbits) {
    std::map<std::pair<FlipCountVector, FlipCountVector>, MatchRow> rows;
    for (const auto& e : orbits) {
        auto& row = rows[{e.i1_type, e.i2_type}];
        row.i1_type = e.i1_type;
        row.i2_type = e.i2_type;
        row.claim_case = e.claim_case;
        ++row.count;
    }
    std::vector<MatchRow> out;
    for (auto& [key, row] : rows) out.push_back(row);
    std::stable_sort(out.begin(), out.end(), [](const MatchRow& a, const MatchRow& b) {
        if (a.claim_case != b.claim_case) return a.claim_case < b.claim_case;
        if (a.i1_type != b.i1_type) return a.i1_type > b.i1_type;
        return a.i2_type < b.i2_type;
    });
    return out;
}

Rational exact(double x) { return Rational(x); }

std::vector<Measure> interval_measures(const ProblemSpec& spec, std::span<const Interval> intervals,
                                       ConstraintKind kind) {
    std::vector<Measure> out;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (spec.constraints[i] == kind) out.emplace_back(IntervalMeasure(spec.d, intervals[i].lo, intervals[i].hi));
    }
    return out;
}

Configuration build_configuration(int d, const std::vector<std::vector<double>>& roots, std::span<const int> orientations) {
    std::vector<OrientedHyperplane> planes;
    planes.reserve(roots.size());
    for (std::size_t p = 0; p < roots.size(); ++p) planes.push_back(hyperplane_from_roots(std::span<const double>(roots[p]), orientations[p], d));
    return Configuration(d, std::move(planes));
}

Label label_at(const Configuration& c, long double t) {
    Label label = 0;
    for (int j = 0; j < c.size(); ++j) {
        if (c.planes[static_cast<std::size_t>(j)].curve_value(t) < 0.0L) label |= Label{1} << j;
    }
    return label;
}

}  // namespace

int ProblemSpec::full_count() const {
    return static_cast<int>(std::count(constraints.begin(), constraints.end(), ConstraintKind::Full));
}

int ProblemSpec::bisector_count() const {
    return static_cast<int>(std::count(constraints.begin(), constraints.end(), ConstraintKind::Bisector));
}

void ProblemSpec::validate() const {
    if (d < 1) throw Error(ErrorKind::Infeasible, "dimension d must be >= 1");
    if (k < 1 || k > 6) throw Error(ErrorKind::Infeasible, "number of planes k must be in [1, 6]");
    if (constraints.empty()) throw Error(ErrorKind::Infeasible, "at least one interval constraint is required");
    const long long per_full = (1LL << k) - 1;
    const long long used = full_count() * per_full + bisector_count();
    const long long available = static_cast<long long>(k) * d;
    if (used != available) {
        std::ostringstream msg;
        msg << "the intervals consume " << full_count() << " * (2^" << k << " - 1) + " << bisector_count() << " = "
            << used << " crossings, but " << k << " hyperplanes meet the moment curve in R^" << d << " in exactly "
            << k << " * " << d << " = " << available << " points when every crossing is needed";
        throw Error(ErrorKind::Infeasible, msg.str());
    }
}

std::vector<ConstraintKind> parse_constraints(const std::string& text) {
    std::vector<ConstraintKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   item.end());
        if (item == "F" || item == "f" || item == "Full" || item == "full") {
            out.push_back(ConstraintKind::Full);
        } else if (item == "B" || item == "b" || item == "Bisector" || item == "bisector") {
            out.push_back(ConstraintKind::Bisector);
        } else {
            throw Error(ErrorKind::InvalidArgument, "unknown constraint '" + item + "' (expected F or B)");
        }
    }
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty constraint list");
    return out;
}

std::string format_constraints(std::span<const ConstraintKind> constraints) {
    std::string out;
    for (auto kind : constraints) {
        if (!out.empty()) out += ',';
        out += kind == ConstraintKind::Full ? 'F' : 'B';
    }
    return out;
}

std::vector<CrossingPattern> enumerate_patterns(const ProblemSpec& spec, const EnumerateOptions& options) {
    std::vector<CrossingPattern> out;
    for (auto& unit : patterns_by_unit(spec, options)) {
        out.insert(out.end(), std::make_move_iterator(unit.begin()), std::make_move_iterator(unit.end()));
    }
    return out;
}

OrbitReport enumerate_orbits(const ProblemSpec& spec, const EnumerateOptions& options) {
    const auto units = patterns_by_unit(spec, options);
    OrbitReport report;
    report.spec = spec;
    auto canon = parallel_units<std::set<CrossingPattern>>(units.size(), options.threads, [&](std::size_t u) {
        std::set<CrossingPattern> keys;
        for (const auto& p : units[u]) keys.insert(canonical_pattern(p));
        return keys;
    });
    std::set<CrossingPattern> merged;
    for (std::size_t u = 0; u < units.size(); ++u) {
        report.raw_pattern_count += units[u].size();
        merged.insert(canon[u].begin(), canon[u].end());
    }
    int id = 0;
    for (const auto& p : merged) report.orbits.push_back(make_entry(id++, p, spec));
    report.match_table = rows_from(report.orbits);
    return report;
}

std::vector<MatchRow> match_table(const ProblemSpec& spec, const EnumerateOptions& options) {
    return enumerate_orbits(spec, options).match_table;
}

std::array<int, 7> claim_case_counts(std::span<const MatchRow> table) {
    std::array<int, 7> counts{};
    for (const auto& row : table) {
        if (row.claim_case >= 1 && row.claim_case <= 7) counts[static_cast<std::size_t>(row.claim_case - 1)] += row.count;
    }
    return counts;
}

int claim_case(const FlipCountVector& i1, const FlipCountVector& i2) {
    using V = FlipCountVector;
    if (i1 == V{4, 2, 1}) {
        if (i2 == V{1, 2, 4}) return 1;
        if (i2 == V{1, 3, 3}) return 2;
    } else if (i1 == V{3, 3, 1}) {
        if (i2 == V{1, 2, 4} || i2 == V{2, 1, 4}) return 3;
        if (i2 == V{2, 2, 3}) return 4;
    } else if (i1 == V{3, 2, 2}) {
        if (i2 == V{1, 3, 3}) return 5;
        if (i2 == V{2, 3, 2}) return 6;
        if (i2 == V{2, 2, 3}) return 7;
    }
    return 0;
}

std::vector<Interval> default_intervals(const ProblemSpec& spec, double origin) {
    std::vector<Interval> out;
    double lo = origin;
    for (auto kind : spec.constraints) {
        const double len = kind == ConstraintKind::Full ? static_cast<double>(1 << spec.k) : 2.0;
        out.push_back({lo, lo + len});
        lo += len + 1.0;
    }
    return out;
}

void validate_intervals(std::span<const Interval> intervals, std::size_t expected) {
    if (intervals.size() != expected) {
        throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(expected) + " intervals, got " +
                                                 std::to_string(intervals.size()));
    }
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
            throw Error(ErrorKind::OverlappingIntervals, "interval " + std::to_string(i) + " is empty or not finite");
        }
        if (i > 0 && iv.lo < intervals[i - 1].hi) {
            throw Error(ErrorKind::OverlappingIntervals,
                        "interval " + std::to_string(i) + " overlaps or precedes interval " + std::to_string(i - 1));
        }
    }
}

double RealizedZero::total_mass() const {
    double sum = 0.0;
    for (const auto& mu : full_measures) sum += equipart::total_mass(mu);
    for (const auto& mu : bisector_measures) sum += equipart::total_mass(mu);
    return sum;
}

CrossingPattern recover_pattern(const Configuration& c, const ProblemSpec& spec, std::span<const Interval> intervals) {
    validate_intervals(intervals, spec.constraints.size());
    if (c.size() != spec.k || c.d != spec.d) throw Error(ErrorKind::SizeMismatch, "configuration does not match spec");
    CrossingPattern p;
    p.k = spec.k;
    Label expected = 0;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        std::vector<std::pair<double, int>> hits;
        for (int j = 0; j < c.size(); ++j) {
            for (double t : curve_crossings(c.planes[static_cast<std::size_t>(j)], intervals[i].lo, intervals[i].hi)) {
                hits.emplace_back(t, j);
            }
        }
        std::sort(hits.begin(), hits.end());
        const long double first_cut = hits.empty() ? intervals[i].hi : hits.front().first;
        const Label entry = label_at(c, (static_cast<long double>(intervals[i].lo) + first_cut) / 2);
        if (i == 0) {
            p.start = entry;
        } else if (entry != expected) {
            throw Error(ErrorKind::InvalidArgument,
                        "the curve changes orthant between intervals " + std::to_string(i - 1) + " and " +
                            std::to_string(i));
        }
        IntervalPattern iv;
        iv.kind = spec.constraints[i];
        for (const auto& [t, j] : hits) iv.planes.push_back(j);
        if (iv.kind == ConstraintKind::Bisector && iv.planes.size() != 1) {
            throw Error(ErrorKind::InvalidArgument, "bisector interval " + std::to_string(i) + " is crossed " +
                                                        std::to_string(iv.planes.size()) + " times");
        }
        expected = entry;
        for (int b : iv.planes) expected ^= Label{1} << b;
        p.intervals.push_back(std::move(iv));
    }
    validate_pattern(p);
    return p;
}

RealizedZero realize(const ProblemSpec& spec, const CrossingPattern& pattern, std::span<const Interval> intervals,
                     const RealizeOptions& options) {
    spec.validate();
    validate_pattern(pattern);
    validate_intervals(intervals, spec.constraints.size());
    if (pattern.k != spec.k || pattern.intervals.size() != spec.constraints.size()) {
        throw Error(ErrorKind::SizeMismatch, "pattern does not match the problem spec");
    }
    for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
        if (pattern.intervals[i].kind != spec.constraints[i]) {
            throw Error(ErrorKind::InvalidArgument, "pattern interval " + std::to_string(i) + " has the wrong kind");
        }
    }
    const auto totals = pattern.plane_totals();
    for (int p = 0; p < spec.k; ++p) {
        if (totals[static_cast<std::size_t>(p)] != spec.d) {
            throw Error(ErrorKind::Infeasible, "plane " + std::to_string(p + 1) + " is crossed " +
                                                   std::to_string(totals[static_cast<std::size_t>(p)]) +
                                                   " times instead of d = " + std::to_string(spec.d));
        }
    }

    RealizedZero z;
    z.spec = spec;
    z.pattern = pattern;
    z.intervals.assign(intervals.begin(), intervals.end());

    // Crossing parameters are exact rationals; they are rounded only when stored.
    std::vector<std::vector<Rational>> exact_roots(static_cast<std::size_t>(spec.k));
    z.roots.assign(static_cast<std::size_t>(spec.k), {});
    const Rational pieces(1 << spec.k);
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const Rational lo = exact(intervals[i].lo);
        const Rational hi = exact(intervals[i].hi);
        const auto& planes = pattern.intervals[i].planes;
        for (std::size_t j = 0; j < planes.size(); ++j) {
            const Rational t = spec.constraints[i] == ConstraintKind::Full
                                   ? lo + (hi - lo) * Rational(static_cast<int>(j) + 1) / pieces
                                   : (lo + hi) / 2;
            const auto p = static_cast<std::size_t>(planes[j]);
            z.crossings.push_back({static_cast<double>(t), planes[j], static_cast<int>(exact_roots[p].size()),
                                   static_cast<int>(i)});
            exact_roots[p].push_back(t);
            z.roots[p].push_back(static_cast<double>(t));
        }
    }
    std::stable_sort(z.crossings.begin(), z.crossings.end(),
                     [](const Crossing& a, const Crossing& b) { return a.t < b.t; });

    // Before the first root the monic polynomial has sign (-1)^d.
    std::vector<OrientedHyperplane> planes;
    const int below_roots = spec.d % 2 == 0 ? 1 : -1;
    for (int p = 0; p < spec.k; ++p) {
        const int wanted = ((pattern.start >> p) & 1U) ? -1 : 1;
        z.orientations.push_back(wanted * below_roots);
        planes.push_back(hyperplane_from_roots(std::span<const Rational>(exact_roots[static_cast<std::size_t>(p)]),
                                               z.orientations.back(), spec.d));
    }
    z.config = Configuration(spec.d, std::move(planes));
    z.full_measures = interval_measures(spec, intervals, ConstraintKind::Full);
    z.bisector_measures = interval_measures(spec, intervals, ConstraintKind::Bisector);
    z.residual = full_test_map(z.config, z.full_measures, z.bisector_measures).norm() / z.total_mass();

    if (!(z.residual <= options.tolerance)) {
        throw Error(ErrorKind::RealizationFailed,
                    "test-map residual " + std::to_string(z.residual) + " exceeds " + std::to_string(options.tolerance));
    }
    if (recover_pattern(z.config, spec, intervals) != pattern) {
        throw Error(ErrorKind::RealizationFailed, "orthant walk along the curve does not reproduce the pattern");
    }
    return z;
}

std::vector<double> chart_test_map(const RealizedZero& z, std::span<const double> params) {
    if (params.size() != z.crossings.size()) throw Error(ErrorKind::SizeMismatch, "chart has one coordinate per crossing");
    auto roots = z.roots;
    for (std::size_t j = 0; j < params.size(); ++j) {
        const auto& c = z.crossings[j];
        roots[static_cast<std::size_t>(c.plane)][static_cast<std::size_t>(c.slot)] = params[j];
    }
    const auto config = build_configuration(z.spec.d, roots, z.orientations);
    return full_test_map(config, z.full_measures, z.bisector_measures).flatten();
}

JacobianResult jacobian_nondegenerate(const RealizedZero& z, const JacobianOptions& options) {
    const std::size_t n = z.crossings.size();
    std::vector<double> base(n);
    for (std::size_t j = 0; j < n; ++j) base[j] = z.crossings[j].t;
    const std::size_t rows = chart_test_map(z, base).size();

    auto fits = [&](std::size_t j, double h) {
        const auto& c = z.crossings[j];
        const auto& iv = z.intervals[static_cast<std::size_t>(c.interval)];
        double lo = iv.lo;
        double hi = iv.hi;
        for (std::size_t m = 0; m < n; ++m) {
            const auto& o = z.crossings[m];
            if (o.plane == c.plane && o.slot == c.slot) continue;
            if (o.t <= c.t) lo = std::max(lo, o.t);
            if (o.t >= c.t) hi = std::min(hi, o.t);
        }
        return c.t - h > lo && c.t + h < hi;
    };

    JacobianResult result;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        const double scale = std::ldexp(1.0, -attempt);
        bool chart_ok = true;
        std::vector<double> steps(n);
        for (std::size_t j = 0; j < n && chart_ok; ++j) {
            const auto& iv = z.intervals[static_cast<std::size_t>(z.crossings[j].interval)];
            steps[j] = options.relative_step * iv.length() * scale;
            chart_ok = fits(j, steps[j]);
        }
        if (!chart_ok) continue;

        Eigen::MatrixXd jac(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) {
            auto plus = base;
            auto minus = base;
            plus[j] += steps[j];
            minus[j] -= steps[j];
            const auto fp = chart_test_map(z, plus);
            const auto fm = chart_test_map(z, minus);
            for (std::size_t r = 0; r < rows; ++r) {
                jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = (fp[r] - fm[r]) / (2.0 * steps[j]);
            }
        }
        result.step_scale = scale;
        result.retries = attempt;
        if (rows != n) {
            result.det_estimate = 0.0;
            result.ok = false;
            return result;
        }
        for (Eigen::Index r = 0; r < jac.rows(); ++r) {
            const double norm = jac.row(r).norm();
            if (norm > 0.0) jac.row(r) /= norm;
        }
        result.det_estimate = jac.partialPivLu().determinant();
        result.ok = std::abs(result.det_estimate) > options.threshold;
        return result;
    }
    throw Error(ErrorKind::ChartBreakdown, "crossing order collapses under perturbation even after " +
                                               std::to_string(options.max_retries) + " step reductions");
}

CorollaryResult corollary_pipeline(const IntervalMeasure& mu, std::optional<Interval> nu3,
                                   const EnumerateOptions& options) {
    if (!(mu.total_mass() > 0.0)) throw Error(ErrorKind::TrivialMeasures, "measure must have positive mass");
    if (mu.d != 5) throw Error(ErrorKind::InvalidDimension, "the four-plane reduction runs in R^5");
    const double mid = mu.lo + (mu.hi - mu.lo) / 2;
    const Interval third = nu3.value_or(Interval{mu.hi + 1.0, mu.hi + 3.0});

    const ProblemSpec spec{5, 3, {ConstraintKind::Full, ConstraintKind::Full, ConstraintKind::Bisector}};
    const auto report = enumerate_orbits(spec, options);

    std::vector<double> normal(static_cast<std::size_t>(mu.d), 0.0);
    normal[0] = 1.0;
    CorollaryResult out{
        OrientedHyperplane::from_affine(-mid, normal),
        IntervalMeasure(mu.d, mid, mu.hi),
        IntervalMeasure(mu.d, mu.lo, mid),
        {},
        {},
        {},
        0.0,
        report.theta(),
    };
    // mu_minus lives on the first interval along the curve, mu_plus on the second.
    const std::vector<Interval> intervals{{mu.lo, mid}, {mid, mu.hi}, third};
    out.zero = realize(spec, report.orbits.front().canonical, intervals);

    std::vector<OrientedHyperplane> four{out.halving};
    four.insert(four.end(), out.zero.config.planes.begin(), out.zero.config.planes.end());
    out.planes = Configuration(mu.d, std::move(four));
    out.masses = orthant_masses(Measure(mu), out.planes);
    const double share = mu.total_mass() / static_cast<double>(out.masses.size());
    for (double m : out.masses) out.max_relative_error = std::max(out.max_relative_error, std::abs(m - share) / share);
    return out;
}

PerturbationReport perturbation_parity_invariance(const ProblemSpec& spec, int trials, std::uint64_t seed,
                                                  const PerturbationOptions& options) {
    spec.validate();
    const std::size_t n = spec.constraints.size();
    const std::vector<Interval> base = options.base_intervals.value_or(default_intervals(spec));
    validate_intervals(base, n);

    const auto census = enumerate_orbits(spec, options.enumerate);
    PerturbationReport report;
    report.expected_orbits = census.orbit_count();
    report.expected_theta = census.theta();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> scale_dist(0.5, 1.2);
    std::uniform_real_distribution<double> shift_dist(-4.0, 2.0);
    std::uniform_real_distribution<double> length_dist(0.6, 1.2);
    std::uniform_real_distribution<double> gap_dist(0.2, 1.5);

    for (int trial = 0; trial < trials; ++trial) {
        const double scale = scale_dist(rng);
        std::vector<Interval> placement;
        double lo = base.front().lo * scale + shift_dist(rng);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) lo += (base[i].lo - base[i - 1].hi + 0.5) * scale * gap_dist(rng);
            const double len = base[i].length() * scale * length_dist(rng);
            placement.push_back({lo, lo + len});
            lo += len;
        }

        std::set<CrossingPattern> realized;
        for (const auto& orbit : census.orbits) {
            const auto z = realize(spec, orbit.canonical, placement);
            if (options.check_jacobian && !jacobian_nondegenerate(z).ok) {
                report.invariant = false;
                continue;
            }
            realized.insert(canonical_pattern(recover_pattern(z.config, spec, placement)));
        }
        const int count = static_cast<int>(realized.size());
        report.orbit_counts.push_back(count);
        report.placements.push_back(std::move(placement));
        if (count != report.expected_orbits || count % 2 != report.expected_theta) report.invariant = false;
    }
    return report;
}

}  // namespace equipart
