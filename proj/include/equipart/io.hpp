#pragma once

// JSON encodings. Plane and bit indices are 1-based in every document;
// in memory they are 0-based.

#include <cstdint>
#include <string>

#include "json.hpp"

#include "equipart/geometry.hpp"
#include "equipart/graycode.hpp"
#include "equipart/measures.hpp"
#include "equipart/obstruction.hpp"
#include "equipart/parity_pl.hpp"
#include "equipart/testmap.hpp"

namespace equipart::io {

using Json = nlohmann::ordered_json;

Json to_json(const OrientedHyperplane& h);
OrientedHyperplane hyperplane_from_json(const Json& j);

Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

Json to_json(const Measure& mu);
Measure measure_from_json(const Json& j);

Json to_json(const ProblemSpec& spec);
Json to_json(const CrossingPattern& p);
CrossingPattern pattern_from_json(const Json& j);

Json to_json(const OrbitReport& r);
Json to_json(const JacobianResult& r);
Json to_json(const RealizedZero& z);
Json to_json(const CorollaryResult& c);

// The TestVector in the Fourier basis (per full measure, indices 1..2^k-1)
// and the orthant basis (per full measure, labels 0..2^k-1), plus bisector values.
Json testmap_eval(const Configuration& c, std::span<const Measure> full, std::span<const Measure> bisector);

Json to_json(const PLManifoldMap& m);
PLManifoldMap mesh_from_json(const Json& j);
Json to_json(const BorsukUlamReport& r);

// Tool name, version, seed and command, followed by `result`.
Json envelope(const std::string& command, std::uint64_t seed, Json result);

// "0:8,9:17,18:20"
std::vector<Interval> parse_intervals(const std::string& text);

// "(4,2,1)"
std::string format_type(const FlipCountVector& v);

}  // namespace equipart::io
