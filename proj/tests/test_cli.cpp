#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "equipart/cli.hpp"
#include "equipart/io.hpp"
#include "equipart/report.hpp"
#include "equipart/version.hpp"

using namespace equipart;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("equipart_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(ExitCodes, Success) {
    const auto r = invoke({"orbits", "--dim", "3", "--planes", "2", "--constraints", "F,F"});
    EXPECT_EQ(r.code, kExitOk);
    const auto j = io::Json::parse(r.out);
    EXPECT_EQ(j["tool"], kToolName);
    EXPECT_EQ(j["version"], kVersion);
    EXPECT_EQ(j["seed"], kDefaultSeed);
    EXPECT_EQ(j["result"]["orbit_count"], 1);
    EXPECT_EQ(j["result"]["theta"], 1);
}

TEST(ExitCodes, RefusalOnInfeasibleSpec) {
    const auto r = invoke({"orbits", "--dim", "4", "--planes", "3", "--constraints", "F,F,B"});
    EXPECT_EQ(r.code, kExitRefusal);
    EXPECT_NE(r.err.find("infeasible"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(ExitCodes, UsageOnUnknownFlag) {
    EXPECT_EQ(invoke({"--bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"orbits", "--nope", "1"}).code, kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"orbits", "--format", "xml"}).code, kExitUsage);
}

TEST(ExitCodes, HelpAndVersion) {
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
    const auto v = invoke({"--version"});
    EXPECT_EQ(v.code, kExitOk);
    EXPECT_NE(v.out.find(kVersion), std::string::npos);
}

TEST(ExitCodes, InternalOnRealizationFailure) {
    EXPECT_EQ(invoke({"realize", "--orbit-id", "0", "--tolerance", "1e-300"}).code, kExitInternal);
}

TEST(ExitCodes, RefusalOnBadInput) {
    EXPECT_EQ(invoke({"realize", "--orbit-id", "99"}).code, kExitRefusal);
    EXPECT_EQ(invoke({"realize", "--orbit-id", "0", "--intervals", "0:8,7:16,17:19"}).code, kExitRefusal);
    EXPECT_EQ(invoke({"pl-parity", "--mesh", "/nonexistent/mesh.json"}).code, kExitRefusal);
}

TEST(Gray, JsonLines) {
    const auto r = invoke({"gray", "--bits", "2"});
    ASSERT_EQ(r.code, kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<io::Json> docs;
    while (std::getline(lines, line)) docs.push_back(io::Json::parse(line));
    ASSERT_EQ(docs.size(), 3U);
    EXPECT_EQ(docs[0]["count"], 2);
    EXPECT_EQ(docs[1]["flips"], (std::vector<int>{1, 2, 1}));
    EXPECT_EQ(docs[1]["counts"], (std::vector<int>{2, 1}));
    EXPECT_EQ(invoke({"gray", "--bits", "3"}).out.size() > 0, true);
}

TEST(Orbits, CsvAndText) {
    const auto csv = invoke({"orbits", "--format", "csv"});
    ASSERT_EQ(csv.code, kExitOk);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("# equipart", 0), 0U);
    std::getline(lines, line);
    EXPECT_EQ(line, "orbit_id,i1_type,i2_type,bisector_index,claim_case");
    int rows = 0;
    while (std::getline(lines, line)) rows += !line.empty();
    EXPECT_EQ(rows, 13);
    const auto text = invoke({"orbits", "--format", "text"});
    EXPECT_EQ(text.code, kExitOk);
    EXPECT_NE(text.out.find("13"), std::string::npos);
}

TEST(Orbits, JsonFileOutput) {
    const auto path = std::filesystem::temp_directory_path() / "equipart_test_orbits.json";
    std::filesystem::remove(path);
    ASSERT_EQ(invoke({"orbits", "--json", path.string()}).code, kExitOk);
    std::ifstream in(path);
    const auto j = io::Json::parse(in);
    EXPECT_EQ(j["result"]["orbit_count"], 13);
    EXPECT_EQ(j["result"]["raw_pattern_count"], 78);
}

TEST(Determinism, ThreadsAndRepeats) {
    const std::vector<std::string> base{"orbits", "--dim", "7", "--planes", "3", "--constraints", "F,F,F"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto four = base;
    four.insert(four.end(), {"--threads", "4"});
    const auto a = invoke(one);
    const auto b = invoke(four);
    ASSERT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(invoke({"bu-check", "--n", "2", "--trials", "5", "--seed", "11"}).out,
              invoke({"bu-check", "--n", "2", "--trials", "5", "--seed", "11", "--threads", "3"}).out);
    EXPECT_EQ(invoke({"verify", "--all", "--threads", "1"}).out, invoke({"verify", "--all", "--threads", "2"}).out);
}

TEST(Determinism, SeedIsRecorded) {
    const auto j = io::Json::parse(invoke({"bu-check", "--n", "1", "--trials", "2", "--seed", "123"}).out);
    EXPECT_EQ(j["seed"], 123);
    EXPECT_EQ(j["result"]["all_odd"], true);
}

TEST(Threads, EnvironmentCap) {
    ::setenv("EQUIPART_THREADS", "2", 1);
    EXPECT_EQ(effective_threads(8), 2U);
    EXPECT_EQ(effective_threads(1), 1U);
    ::unsetenv("EQUIPART_THREADS");
    EXPECT_EQ(effective_threads(5), 5U);
}

TEST(Realize, ResidualAndJacobian) {
    const auto r = invoke({"realize", "--orbit-id", "4"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = io::Json::parse(r.out)["result"];
    EXPECT_LT(j["residual"].get<double>(), 1e-9);
    EXPECT_EQ(j["configuration"]["planes"].size(), 3U);
    const auto v = io::Json::parse(invoke({"verify", "--all"}).out)["result"];
    EXPECT_EQ(v["all_ok"], true);
}

TEST(TestmapEval, ZeroAtRealizedConfiguration) {
    const auto z = io::Json::parse(invoke({"realize", "--orbit-id", "2"}).out)["result"];
    io::Json input;
    input["configuration"] = z["configuration"];
    input["full_measures"] = io::Json::array({{{"kind", "interval"}, {"d", 5}, {"lo", 0}, {"hi", 8}},
                                              {{"kind", "interval"}, {"d", 5}, {"lo", 9}, {"hi", 17}}});
    input["bisector_measures"] = io::Json::array({{{"kind", "interval"}, {"d", 5}, {"lo", 18}, {"hi", 20}}});
    const auto path = temp_file("testmap.json", input.dump());
    const auto r = invoke({"testmap", "eval", "--input", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = io::Json::parse(r.out)["result"];
    EXPECT_LT(j["norm"].get<double>(), 1e-8);
    EXPECT_TRUE(j.contains("dft"));
    EXPECT_TRUE(j.contains("orthant"));
}

TEST(PlParity, MeshFile) {
    const std::string mesh = R"({"n": 1, "simplices": [[0, 1], [1, 2]], "values": [[-1.0], [0.5], [2.0]]})";
    const auto path = temp_file("mesh.json", mesh);
    const auto r = invoke({"pl-parity", "--mesh", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = io::Json::parse(r.out)["result"];
    EXPECT_EQ(j["zero_parity"], 1);
    EXPECT_EQ(j["ray_parity"], 1);
    EXPECT_EQ(j["equal"], true);
    const auto neg = io::Json::parse(invoke({"pl-parity", "--mesh", path.string(), "--ray", "-1"}).out)["result"];
    EXPECT_EQ(neg["ray_parity"], 1);
    const auto bad = temp_file("bad_mesh.json", R"({"n": 1, "simplices": [[0, 1]], "values": [[0.0], [1.0]]})");
    EXPECT_EQ(invoke({"pl-parity", "--mesh", bad.string()}).code, kExitRefusal);
}

TEST(FourPlanePipeline, SixteenMasses) {
    const auto r = invoke({"corollary", "--lo", "0", "--hi", "16"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = io::Json::parse(r.out)["result"];
    ASSERT_EQ(j["masses"].size(), 16U);
    for (const auto& m : j["masses"]) EXPECT_NEAR(m.get<double>(), 1.0, 1e-9);
}

TEST(PaperReport, AllPassAndJson) {
    const auto text = invoke({"paper-report"});
    EXPECT_EQ(text.code, kExitOk);
    EXPECT_NE(text.out.find("PASS orbit-census"), std::string::npos);
    EXPECT_EQ(text.out.find("FAIL"), std::string::npos);
    const auto j = io::Json::parse(invoke({"paper-report", "--json"}).out);
    EXPECT_EQ(j["result"]["all_pass"], true);
    EXPECT_EQ(j["result"]["criteria"].size(), 10U);
}

// Negative control: an enumerator that loses one orbit must be caught by name.
TEST(PaperReport, TamperedEnumeratorFails) {
    PaperReportHooks hooks;
    hooks.enumerate = [](const ProblemSpec& spec, const EnumerateOptions& opts) {
        auto r = enumerate_orbits(spec, opts);
        r.orbits.pop_back();
        return r;
    };
    const auto rep = paper_report(kDefaultSeed, 1, hooks);
    EXPECT_FALSE(rep.all_pass());
    const auto it = std::find_if(rep.criteria.begin(), rep.criteria.end(),
                                 [](const Criterion& c) { return c.name == "orbit-census"; });
    ASSERT_NE(it, rep.criteria.end());
    EXPECT_FALSE(it->pass);
    EXPECT_EQ(it->observed, "12 orbits, theta = 0");
    const auto text = render_text(rep);
    EXPECT_NE(text.find("FAIL orbit-census"), std::string::npos);
    EXPECT_NE(text.find("- expected: 13 orbits, theta = 1"), std::string::npos);
    EXPECT_NE(text.find("+ observed: 12 orbits, theta = 0"), std::string::npos);
}
