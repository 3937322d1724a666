#include "equipart/io.hpp"

#include <sstream>

#include "equipart/errors.hpp"
#include "equipart/version.hpp"

namespace equipart::io {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("field '") + key + "': " + e.what());
    }
}

Json one_based(const std::vector<int>& v) {
    Json out = Json::array();
    for (int x : v) out.push_back(x + 1);
    return out;
}

Json label_bits(Label label, int k) {
    std::string s;
    for (int i = 0; i < k; ++i) s += ((label >> i) & 1U) ? '1' : '0';
    return s;
}

const char* kind_name(ConstraintKind kind) { return kind == ConstraintKind::Full ? "F" : "B"; }

}  // namespace

Json to_json(const OrientedHyperplane& h) {
    Json a = Json::array();
    for (int i = 0; i < h.dim(); ++i) a.push_back(h.a(i));
    return Json{{"a0", h.a0()}, {"a", a}};
}

OrientedHyperplane hyperplane_from_json(const Json& j) {
    std::vector<double> coeffs{field<double>(j, "a0")};
    for (double x : field<std::vector<double>>(j, "a")) coeffs.push_back(x);
    return OrientedHyperplane(std::move(coeffs));
}

Json to_json(const Configuration& c) {
    Json planes = Json::array();
    for (const auto& h : c.planes) planes.push_back(to_json(h));
    return Json{{"d", c.d}, {"planes", planes}};
}

Configuration configuration_from_json(const Json& j) {
    std::vector<OrientedHyperplane> planes;
    for (const auto& p : field<Json>(j, "planes")) planes.push_back(hyperplane_from_json(p));
    return Configuration(field<int>(j, "d"), std::move(planes));
}

Json to_json(const Measure& mu) {
    if (const auto* iv = std::get_if<IntervalMeasure>(&mu)) {
        return Json{{"kind", "interval"}, {"d", iv->d}, {"lo", iv->lo}, {"hi", iv->hi}};
    }
    Json pts = Json::array();
    for (const auto& p : std::get<DiscreteMeasure>(mu).points) pts.push_back(Json{{"x", p.x}, {"w", p.w}});
    return Json{{"kind", "discrete"}, {"points", pts}};
}

Measure measure_from_json(const Json& j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "interval") return IntervalMeasure(field<int>(j, "d"), field<double>(j, "lo"), field<double>(j, "hi"));
    if (kind == "discrete") {
        std::vector<WeightedPoint> pts;
        for (const auto& p : field<Json>(j, "points")) {
            pts.push_back({field<std::vector<double>>(p, "x"), field<double>(p, "w")});
        }
        return DiscreteMeasure(std::move(pts));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown measure kind '" + kind + "'");
}

Json to_json(const ProblemSpec& spec) {
    return Json{{"d", spec.d}, {"k", spec.k}, {"constraints", format_constraints(spec.constraints)}};
}

Json to_json(const CrossingPattern& p) {
    Json intervals = Json::array();
    for (const auto& iv : p.intervals) intervals.push_back(Json{{"kind", kind_name(iv.kind)}, {"planes", one_based(iv.planes)}});
    return Json{{"k", p.k}, {"start", label_bits(p.start, p.k)}, {"intervals", intervals}};
}

CrossingPattern pattern_from_json(const Json& j) {
    CrossingPattern p;
    p.k = field<int>(j, "k");
    const auto start = field<std::string>(j, "start");
    if (start.size() != static_cast<std::size_t>(p.k)) throw Error(ErrorKind::InvalidLabel, "start label needs k bits");
    for (std::size_t i = 0; i < start.size(); ++i) {
        if (start[i] == '1') {
            p.start |= Label{1} << i;
        } else if (start[i] != '0') {
            throw Error(ErrorKind::InvalidLabel, "start label must be a 0/1 string");
        }
    }
    for (const auto& iv : field<Json>(j, "intervals")) {
        IntervalPattern ip;
        const auto kind = field<std::string>(iv, "kind");
        if (kind != "F" && kind != "B") throw Error(ErrorKind::InvalidArgument, "interval kind must be F or B");
        ip.kind = kind == "F" ? ConstraintKind::Full : ConstraintKind::Bisector;
        for (int b : field<std::vector<int>>(iv, "planes")) ip.planes.push_back(b - 1);
        p.intervals.push_back(std::move(ip));
    }
    validate_pattern(p);
    return p;
}

Json to_json(const OrbitReport& r) {
    Json orbits = Json::array();
    for (const auto& e : r.orbits) {
        orbits.push_back(Json{
            {"id", e.id},
            {"i1_type", e.i1_type},
            {"i2_type", e.i2_type},
            {"bisector_index", e.bisector_plane ? Json(*e.bisector_plane + 1) : Json(nullptr)},
            {"claim_case", e.claim_case},
            {"stabilizer", e.stabilizer},
            {"canonical", to_json(e.canonical)},
            {"representative", to_json(e.table_representative)},
        });
    }
    Json table = Json::array();
    for (const auto& row : r.match_table) {
        table.push_back(Json{{"i1_type", row.i1_type}, {"i2_type", row.i2_type}, {"count", row.count},
                             {"claim_case", row.claim_case}});
    }
    return Json{{"spec", to_json(r.spec)},
                {"raw_pattern_count", r.raw_pattern_count},
                {"orbit_count", r.orbit_count()},
                {"theta", r.theta()},
                {"orbits", orbits},
                {"match_table", table}};
}

Json to_json(const JacobianResult& r) {
    return Json{{"det_estimate", r.det_estimate}, {"ok", r.ok}, {"step_scale", r.step_scale}, {"retries", r.retries}};
}

Json to_json(const RealizedZero& z) {
    Json intervals = Json::array();
    for (const auto& iv : z.intervals) intervals.push_back(Json::array({iv.lo, iv.hi}));
    Json crossings = Json::array();
    for (const auto& c : z.crossings) {
        crossings.push_back(Json{{"t", c.t}, {"plane", c.plane + 1}, {"interval", c.interval + 1}});
    }
    Json out{{"spec", to_json(z.spec)},
             {"pattern", to_json(z.pattern)},
             {"intervals", intervals},
             {"configuration", to_json(z.config)},
             {"orientations", z.orientations},
             {"crossings", crossings},
             {"residual", z.residual}};
    out["det_estimate"] = z.det_estimate ? Json(*z.det_estimate) : Json(nullptr);
    return out;
}

Json to_json(const CorollaryResult& c) {
    return Json{{"halving", to_json(c.halving)},
                {"mu_minus", to_json(Measure(c.mu_minus))},
                {"mu_plus", to_json(Measure(c.mu_plus))},
                {"configuration", to_json(c.planes)},
                {"masses", c.masses},
                {"max_relative_error", c.max_relative_error},
                {"theta", c.theta},
                {"zero", to_json(c.zero)}};
}

Json testmap_eval(const Configuration& c, std::span<const Measure> full, std::span<const Measure> bisector) {
    const auto v = full_test_map(c, full, bisector);
    Json orthant = Json::array();
    for (const auto& mu : full) orthant.push_back(orthant_basis(mu, c));
    return Json{{"k", v.k}, {"dft", v.full_blocks}, {"orthant", orthant}, {"bisector", v.bisector_values},
                {"norm", v.norm()}};
}

Json to_json(const PLManifoldMap& m) {
    Json out{{"n", m.n}, {"simplices", m.simplices}};
    if (!m.coords.empty()) out["coords_at_vertices"] = m.coords;
    out["values"] = m.values;
    out["boundary"] = m.boundary;
    return out;
}

PLManifoldMap mesh_from_json(const Json& j) {
    PLManifoldMap m;
    m.n = field<int>(j, "n");
    m.simplices = field<std::vector<Face>>(j, "simplices");
    m.values = field<std::vector<std::vector<double>>>(j, "values");
    if (j.contains("coords_at_vertices")) m.coords = field<std::vector<std::vector<double>>>(j, "coords_at_vertices");
    if (j.contains("boundary")) m.boundary = field<std::vector<Face>>(j, "boundary");
    m.validate();
    return m;
}

Json to_json(const BorsukUlamReport& r) {
    return Json{{"n", r.n}, {"trials", r.trials}, {"parities", r.parities}, {"all_odd", r.all_odd}};
}

Json envelope(const std::string& command, std::uint64_t seed, Json result) {
    return Json{{"tool", kToolName}, {"version", kVersion}, {"seed", seed}, {"command", command},
                {"result", std::move(result)}};
}

std::vector<Interval> parse_intervals(const std::string& text) {
    std::vector<Interval> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "interval '" + item + "' is not lo:hi");
        try {
            std::size_t used = 0;
            const double lo = std::stod(item.substr(0, colon), &used);
            const double hi = std::stod(item.substr(colon + 1));
            out.push_back({lo, hi});
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidArgument, "interval '" + item + "' is not lo:hi");
        }
    }
    return out;
}

std::string format_type(const FlipCountVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace equipart::io
