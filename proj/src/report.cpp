#include "equipart/report.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "equipart/errors.hpp"
#include "equipart/parity_pl.hpp"
#include "equipart/version.hpp"

namespace equipart {

namespace {

constexpr int kShieldTrials = 1000;
constexpr int kBorsukUlamTrials = 20;
constexpr int kPerturbationTrials = 10;

ProblemSpec spec_of(int d, int k, const char* constraints) { return ProblemSpec{d, k, parse_constraints(constraints)}; }

std::string census_text(const OrbitReport& r) {
    return std::to_string(r.orbit_count()) + " orbits, theta = " + std::to_string(r.theta());
}

Criterion check(std::string name, std::string expected, std::string observed, bool pass) {
    return Criterion{std::move(name), std::move(expected), std::move(observed), pass};
}

std::string join(const std::array<int, 7>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << x;
    return os.str();
}

// Largest deviation of the shield component from +-1 over random singular configurations.
double shield_deviation(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> start(-2.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int d = 2 + t % 4;
        const int k = 2 + t % 2;
        std::vector<OrientedHyperplane> planes;
        for (int p = 0; p < k; ++p) {
            std::vector<double> c(static_cast<std::size_t>(d) + 1);
            for (auto& x : c) x = gauss(rng);
            planes.emplace_back(std::move(c));
        }
        const bool antipodal = t % 2 == 1;
        planes[1] = antipodal ? planes[0].antipode() : planes[0];
        const double lo = start(rng);
        const Measure mu = IntervalMeasure(d, lo, lo + 1.0);
        const auto r = shielding_check(mu, Configuration(d, planes), 0b11);
        const double expected = antipodal ? -1.0 : 1.0;
        worst = std::max(worst, r.shielded ? std::abs(r.value - expected) : INFINITY);
    }
    return worst;
}

}  // namespace

bool PaperReport::all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

PaperReport paper_report(std::uint64_t seed, unsigned threads, const PaperReportHooks& hooks) {
    const EnumerateOptions opts{threads, false};
    auto enumerate = [&](const ProblemSpec& s) { return hooks.enumerate ? hooks.enumerate(s, opts) : enumerate_orbits(s, opts); };
    PaperReport r;
    r.seed = seed;

    const auto main_spec = spec_of(5, 3, "F,F,B");
    const auto census = enumerate(main_spec);
    r.criteria.push_back(check("orbit-census", "13 orbits, theta = 1", census_text(census),
                               census.orbit_count() == 13 && census.theta() == 1));

    r.claim_table = census.match_table;
    const auto counts = claim_case_counts(census.match_table);
    const std::array<int, 7> expected_counts{1, 2, 2, 2, 2, 2, 2};
    r.criteria.push_back(check("claim-table", join(expected_counts), join(counts), counts == expected_counts));

    std::set<FlipCountVector> types;
    for (const auto& s : flip_sequences(3)) {
        auto c = flip_counts(s);
        std::sort(c.begin(), c.end(), std::greater<>());
        types.insert(c);
    }
    std::string observed_types;
    for (const auto& t : types) observed_types += io::format_type(t);
    const std::set<FlipCountVector> expected_types{{4, 2, 1}, {3, 3, 1}, {3, 2, 2}};
    r.criteria.push_back(check("gray-types", "(3,2,2)(3,3,1)(4,2,1)", observed_types, types == expected_types));

    const auto seven = enumerate(spec_of(7, 3, "F,F,F"));
    r.criteria.push_back(check("vanishing-7-3-3", "theta = 0", "theta = " + std::to_string(seven.theta()), seven.theta() == 0));

    const auto small = enumerate(spec_of(3, 2, "F,F"));
    r.criteria.push_back(check("parity-3-2-2", "theta = 1", "theta = " + std::to_string(small.theta()), small.theta() == 1));

    {
        int ok = 0;
        double worst = 0.0;
        const auto intervals = default_intervals(main_spec);
        for (const auto& orbit : census.orbits) {
            try {
                const auto z = realize(main_spec, orbit.canonical, intervals);
                worst = std::max(worst, z.residual);
                if (z.residual < 1e-9 && jacobian_nondegenerate(z).ok) ++ok;
            } catch (const Error&) {
                worst = INFINITY;
            }
        }
        r.criteria.push_back(check("realization", "13 of 13 nondegenerate, residual < 1e-9",
                                   std::to_string(ok) + " of " + std::to_string(census.orbit_count()) +
                                       " nondegenerate, residual " + sci(worst),
                                   ok == 13 && census.orbit_count() == 13));
    }

    {
        const auto c = corollary_pipeline(IntervalMeasure(5, 0.0, 16.0), std::nullopt, opts);
        r.criteria.push_back(check("corollary", "16 masses of 1 within 1e-9",
                                   std::to_string(c.masses.size()) + " masses, max error " + sci(c.max_relative_error),
                                   c.masses.size() == 16 && c.max_relative_error < 1e-9));
    }

    {
        const double dev = shield_deviation(seed, kShieldTrials);
        r.criteria.push_back(check("shielding", "+1 equal, -1 antipodal within 1e-12", "max deviation " + sci(dev), dev < 1e-12));
    }

    {
        std::string observed;
        bool pass = true;
        for (int n = 2; n <= 3; ++n) {
            const auto bu = bu_check(n, seed, kBorsukUlamTrials);
            const auto odd = std::count(bu.parities.begin(), bu.parities.end(), 1);
            observed += (n > 2 ? ", " : "") + std::string("n=") + std::to_string(n) + ": " + std::to_string(odd) + "/" +
                        std::to_string(bu.trials);
            pass = pass && bu.all_odd;
        }
        r.criteria.push_back(check("borsuk-ulam", "parity 1 on every boundary-odd map", observed, pass));
    }

    {
        PerturbationOptions p;
        p.enumerate = opts;
        const auto a = perturbation_parity_invariance(main_spec, kPerturbationTrials, seed, p);
        const auto b = perturbation_parity_invariance(spec_of(3, 2, "F,F"), kPerturbationTrials, seed, p);
        auto range = [](const PerturbationReport& x) {
            const auto [lo, hi] = std::minmax_element(x.orbit_counts.begin(), x.orbit_counts.end());
            return std::to_string(*lo) + ".." + std::to_string(*hi);
        };
        r.criteria.push_back(check("perturbation", "13 and 1 orbits on every placement",
                                   range(a) + " and " + range(b),
                                   a.invariant && b.invariant && a.expected_orbits == 13 && b.expected_orbits == 1));
    }
    return r;
}

std::string render_text(const PaperReport& r) {
    std::ostringstream os;
    os << kToolName << " " << kVersion << "  seed " << r.seed << "\n\n";
    os << "Orbits of zeros for d = 5, three planes, intervals F,F,B\n";
    os << "case  I1 type   I2 type   orbits\n";
    for (const auto& row : r.claim_table) {
        const std::string c = row.claim_case ? "(" + std::to_string(row.claim_case) + ")" : "(?)";
        os << c << std::string(6 - c.size(), ' ') << io::format_type(row.i1_type) << "   " << io::format_type(row.i2_type)
           << "   " << row.count << "\n";
    }
    os << "\n";
    for (const auto& c : r.criteria) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.observed << "\n";
        if (!c.pass) {
            os << "  - expected: " << c.expected << "\n";
            os << "  + observed: " << c.observed << "\n";
        }
    }
    os << "\n" << (r.all_pass() ? "all criteria pass" : "some criteria FAIL") << "\n";
    return os.str();
}

io::Json to_json(const PaperReport& r) {
    io::Json criteria = io::Json::array();
    for (const auto& c : r.criteria) {
        criteria.push_back(io::Json{{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"observed", c.observed}});
    }
    io::Json table = io::Json::array();
    for (const auto& row : r.claim_table) {
        table.push_back(io::Json{{"claim_case", row.claim_case}, {"i1_type", row.i1_type}, {"i2_type", row.i2_type},
                                 {"count", row.count}});
    }
    return io::Json{{"all_pass", r.all_pass()}, {"criteria", criteria}, {"claim_table", table}};
}

}  // namespace equipart
