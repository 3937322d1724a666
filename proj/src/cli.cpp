#include "equipart/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "equipart/errors.hpp"
#include "equipart/io.hpp"
#include "equipart/report.hpp"
#include "equipart/version.hpp"

namespace equipart {

namespace {

using io::Json;

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;  // 0: hardware concurrency
    std::string format = "json";
    std::string json_path;
    std::optional<double> tolerance;
};

struct SpecArgs {
    int d = 5;
    int k = 3;
    std::string constraints = "F,F,B";

    ProblemSpec spec() const { return ProblemSpec{d, k, parse_constraints(constraints)}; }
};

void add_spec_options(CLI::App* cmd, SpecArgs& a) {
    cmd->add_option("--dim", a.d, "ambient dimension d")->capture_default_str();
    cmd->add_option("--planes", a.k, "number of hyperplanes k")->capture_default_str();
    cmd->add_option("--constraints", a.constraints, "interval kinds along the curve, e.g. F,F,B")->capture_default_str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
    }
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidArgument, "'" + text + "' is not a comma-separated vector");
        }
    }
    return out;
}

std::string dashed(const FlipCountVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "-" : "") + std::to_string(v[i]);
    return s;
}

void emit(std::ostream& out, const RunConfig& cfg, const std::string& command, Json result) {
    const auto doc = io::envelope(command, cfg.seed, std::move(result));
    if (!cfg.json_path.empty()) {
        std::ofstream f(cfg.json_path);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + cfg.json_path + "'");
        f << doc.dump(2) << "\n";
    }
    out << doc.dump(2) << "\n";
}

void print_orbits(std::ostream& out, const RunConfig& cfg, const OrbitReport& r) {
    if (cfg.format == "csv") {
        out << "# " << kToolName << " " << kVersion << " seed " << cfg.seed << "\n";
        out << "orbit_id,i1_type,i2_type,bisector_index,claim_case\n";
        for (const auto& e : r.orbits) {
            out << e.id << "," << dashed(e.i1_type) << "," << dashed(e.i2_type) << ","
                << (e.bisector_plane ? std::to_string(*e.bisector_plane + 1) : "") << "," << e.claim_case << "\n";
        }
    } else if (cfg.format == "text") {
        out << kToolName << " " << kVersion << "  seed " << cfg.seed << "\n";
        out << "d = " << r.spec.d << ", k = " << r.spec.k << ", intervals " << format_constraints(r.spec.constraints)
            << "\n";
        out << "patterns (start label fixed): " << r.raw_pattern_count << "\n";
        out << "orbits: " << r.orbit_count() << "\ntheta: " << r.theta() << "\n";
        for (const auto& row : r.match_table) {
            out << "  " << io::format_type(row.i1_type) << " " << io::format_type(row.i2_type) << "  " << row.count;
            if (row.claim_case) out << "  case (" << row.claim_case << ")";
            out << "\n";
        }
    }
    if (cfg.format == "json" || !cfg.json_path.empty()) {
        std::ostringstream sink;
        emit(cfg.format == "json" ? out : sink, cfg, "orbits", io::to_json(r));
    }
}

}  // namespace

unsigned effective_threads(unsigned requested) {
    unsigned n = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
    if (const char* env = std::getenv("EQUIPART_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperplane mass equipartitions on the moment curve: orbit census, realization and PL parity"};
    app.name(kToolName);
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "seed for every randomized step")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores; EQUIPART_THREADS caps)");

    SpecArgs orbits_spec;
    auto* orbits = app.add_subcommand("orbits", "enumerate crossing patterns and their orbits");
    add_spec_options(orbits, orbits_spec);
    orbits->add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    orbits->add_option("--json", cfg.json_path, "also write the JSON report to this file");
    bool allow_large = false;
    orbits->add_flag("--allow-large", allow_large, "permit k > 4");

    SpecArgs realize_spec;
    int orbit_id = 0;
    std::string intervals_text;
    auto* realize_cmd = app.add_subcommand("realize", "realize one orbit as an explicit configuration");
    add_spec_options(realize_cmd, realize_spec);
    realize_cmd->add_option("--orbit-id", orbit_id, "orbit id from `orbits`")->required();
    realize_cmd->add_option("--intervals", intervals_text, "lo:hi,... (default: unit gaps)");
    realize_cmd->add_option("--tolerance", cfg.tolerance, "relative residual tolerance");

    SpecArgs verify_spec;
    bool verify_all = false;
    auto* verify = app.add_subcommand("verify", "realize every orbit and check Jacobian nondegeneracy");
    add_spec_options(verify, verify_spec);
    verify->add_flag("--all", verify_all, "every orbit of the problem")->required();
    verify->add_option("--intervals", intervals_text, "lo:hi,... (default: unit gaps)");
    verify->add_option("--tolerance", cfg.tolerance, "relative residual tolerance");

    int bits = 3;
    auto* gray = app.add_subcommand("gray", "Hamiltonian flip sequences of the k-cube as JSON lines");
    gray->add_option("--bits", bits, "k")->required();
    gray->add_flag("--allow-large", allow_large, "permit k > 4");

    auto* testmap = app.add_subcommand("testmap", "test-map evaluation");
    testmap->require_subcommand(1);
    std::string testmap_input;
    auto* eval = testmap->add_subcommand("eval", "evaluate the test map of a configuration");
    eval->add_option("--input", testmap_input, "JSON with configuration, full_measures, bisector_measures")->required();

    std::string mesh_path;
    std::string ray_text;
    auto* pl = app.add_subcommand("pl-parity", "mod-2 degree of a PL map and its boundary ray count");
    pl->add_option("--mesh", mesh_path, "mesh JSON")->required();
    pl->add_option("--ray", ray_text, "ray direction x,y,z (default +e_n with jitter)");

    int bu_n = 3;
    int bu_trials = 100;
    auto* bu = app.add_subcommand("bu-check", "parity of random boundary-odd maps of the n-ball");
    bu->add_option("--n", bu_n, "dimension")->capture_default_str();
    bu->add_option("--trials", bu_trials, "number of maps")->capture_default_str();

    double cor_lo = 0.0;
    double cor_hi = 16.0;
    std::string nu3_text;
    auto* corollary = app.add_subcommand("corollary", "equipartition of one interval measure in R^5 by four hyperplanes");
    corollary->add_option("--lo", cor_lo)->capture_default_str();
    corollary->add_option("--hi", cor_hi)->capture_default_str();
    corollary->add_option("--nu3", nu3_text, "lo:hi of the auxiliary bisected measure");

    bool report_json = false;
    auto* report = app.add_subcommand("paper-report", "regenerate every reference number with pass/fail marks");
    report->add_flag("--json", report_json, "machine-readable bundle");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const unsigned threads = effective_threads(cfg.threads);
    const EnumerateOptions enum_opts{threads, allow_large};

    try {
        if (*orbits) {
            print_orbits(out, cfg, enumerate_orbits(orbits_spec.spec(), enum_opts));
        } else if (*realize_cmd) {
            const auto spec = realize_spec.spec();
            const auto census = enumerate_orbits(spec, enum_opts);
            if (orbit_id < 0 || orbit_id >= census.orbit_count()) {
                throw Error(ErrorKind::InvalidArgument, "orbit id " + std::to_string(orbit_id) + " is not in 0.." +
                                                            std::to_string(census.orbit_count() - 1));
            }
            const auto intervals = intervals_text.empty() ? default_intervals(spec) : io::parse_intervals(intervals_text);
            RealizeOptions ropts;
            if (cfg.tolerance) ropts.tolerance = *cfg.tolerance;
            auto z = realize(spec, census.orbits[static_cast<std::size_t>(orbit_id)].canonical, intervals, ropts);
            const auto jac = jacobian_nondegenerate(z);
            z.det_estimate = jac.det_estimate;
            auto doc = io::to_json(z);
            doc["orbit_id"] = orbit_id;
            doc["jacobian"] = io::to_json(jac);
            emit(out, cfg, "realize", doc);
        } else if (*verify) {
            const auto spec = verify_spec.spec();
            const auto census = enumerate_orbits(spec, enum_opts);
            const auto intervals = intervals_text.empty() ? default_intervals(spec) : io::parse_intervals(intervals_text);
            RealizeOptions ropts;
            if (cfg.tolerance) ropts.tolerance = *cfg.tolerance;
            Json rows = Json::array();
            bool all_ok = true;
            for (const auto& orbit : census.orbits) {
                const auto z = realize(spec, orbit.canonical, intervals, ropts);
                const auto jac = jacobian_nondegenerate(z);
                all_ok = all_ok && jac.ok;
                rows.push_back(Json{{"orbit_id", orbit.id}, {"residual", z.residual}, {"jacobian", io::to_json(jac)}});
            }
            emit(out, cfg, "verify",
                 Json{{"spec", io::to_json(spec)}, {"orbit_count", census.orbit_count()}, {"all_ok", all_ok}, {"orbits", rows}});
            return all_ok ? kExitOk : kExitInternal;
        } else if (*gray) {
            const auto seqs = flip_sequences(bits, allow_large);
            out << Json{{"tool", kToolName}, {"version", kVersion}, {"seed", cfg.seed}, {"command", "gray"}, {"bits", bits},
                        {"count", seqs.size()}}
                       .dump()
                << "\n";
            for (const auto& s : seqs) {
                Json flips = Json::array();
                for (int b : s.flips) flips.push_back(b + 1);
                out << Json{{"flips", flips}, {"counts", flip_counts(s)}}.dump() << "\n";
            }
        } else if (*testmap) {
            const auto doc = read_json_file(testmap_input);
            if (!doc.contains("configuration")) throw Error(ErrorKind::InvalidArgument, "input needs a configuration");
            const auto c = io::configuration_from_json(doc.at("configuration"));
            std::vector<Measure> full;
            std::vector<Measure> bis;
            if (doc.contains("full_measures")) {
                for (const auto& m : doc.at("full_measures")) full.push_back(io::measure_from_json(m));
            }
            if (doc.contains("bisector_measures")) {
                for (const auto& m : doc.at("bisector_measures")) bis.push_back(io::measure_from_json(m));
            }
            emit(out, cfg, "testmap eval", io::testmap_eval(c, full, bis));
        } else if (*pl) {
            const auto m = io::mesh_from_json(read_json_file(mesh_path));
            std::optional<RaySpec> ray;
            if (!ray_text.empty()) ray = RaySpec{parse_vector(ray_text)};
            const auto b = boundary_identity(m, ray);
            emit(out, cfg, "pl-parity",
                 Json{{"n", m.n}, {"simplices", m.simplices.size()}, {"zero_parity", b.lhs}, {"ray_parity", b.rhs},
                      {"ray", b.ray.ray}, {"ray_retries", b.ray.retries}, {"equal", b.equal}});
        } else if (*bu) {
            const auto r = bu_check(bu_n, cfg.seed, bu_trials);
            emit(out, cfg, "bu-check", io::to_json(r));
        } else if (*corollary) {
            std::optional<Interval> nu3;
            if (!nu3_text.empty()) {
                const auto parsed = io::parse_intervals(nu3_text);
                if (parsed.size() != 1) throw Error(ErrorKind::InvalidArgument, "--nu3 takes one lo:hi interval");
                nu3 = parsed.front();
            }
            emit(out, cfg, "corollary", io::to_json(corollary_pipeline(IntervalMeasure(5, cor_lo, cor_hi), nu3, enum_opts)));
        } else if (*report) {
            const auto r = paper_report(cfg.seed, threads);
            if (report_json) {
                emit(out, cfg, "paper-report", to_json(r));
            } else {
                out << render_text(r);
            }
            return r.all_pass() ? kExitOk : kExitInternal;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_refusal(e.kind()) ? kExitRefusal : kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace equipart
