#pragma once

// Regenerates the reference numbers (orbit census, case table, Gray types,
// vanishing and parity results, realization, equipartition, shielding,
// PL parity and perturbation invariance) and marks each pass or fail.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "equipart/io.hpp"
#include "equipart/obstruction.hpp"

namespace equipart {

struct Criterion {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
};

// Substitutes for library calls, so a tampered component can be shown to fail.
struct PaperReportHooks {
    std::function<OrbitReport(const ProblemSpec&, const EnumerateOptions&)> enumerate;
};

struct PaperReport {
    std::uint64_t seed = 0;
    std::vector<Criterion> criteria;
    std::vector<MatchRow> claim_table;

    bool all_pass() const;
};

PaperReport paper_report(std::uint64_t seed, unsigned threads = 1, const PaperReportHooks& hooks = {});

std::string render_text(const PaperReport& r);
io::Json to_json(const PaperReport& r);

}  // namespace equipart
