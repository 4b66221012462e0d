// JSON input parsing (graphs, divisors), report serialization for every
// struct the CLI emits, and the OFF export used for display.
//
// Reports are nlohmann objects; key order is alphabetical (std::map), so a
// fixed report dumps byte-identically across runs.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "tropjac/divisor.hpp"
#include "tropjac/graph.hpp"
#include "tropjac/homology.hpp"
#include "tropjac/lefschetz.hpp"
#include "tropjac/linear_series.hpp"
#include "tropjac/symd.hpp"
#include "tropjac/torus_complex.hpp"
#include "tropjac/voronoi.hpp"

namespace tropjac {

using Json = nlohmann::json;

std::string read_file(const std::string& path);             // InvalidInput if unreadable
void write_file(const std::string& path, const std::string& text);

/** 64-bit FNV-1a of the raw bytes, 16 hex digits. */
std::string fnv1a64_hex(const std::string& data);

/** Truncated fixed-point decimal with exactly `digits` fractional digits. */
std::string decimal_string(const Rat& x, int digits = 12);

Rat rat_from_json(const Json& j);      // "p/q", "p", or a JSON integer
Int int_from_json(const Json& j);

/** Raw graph from its JSON document (callers normalize). */
MetricGraph graph_from_json(const Json& j);
MetricGraph load_graph(const std::string& path);

/** Divisor on a normalized graph; edge ids may be pre-subdivision loop ids. */
Divisor divisor_from_json(const Json& j, const MetricGraph& g);
Divisor load_divisor(const std::string& path, const MetricGraph& g);

Json graph_json(const MetricGraph& g);

Json vec_json(const Vec& v);
Json ivec_json(const IVec& v);
Json mat_json(const Mat& m);
Json point_json(const MetricGraph& g, const GraphPoint& p);
Json divisor_json(const MetricGraph& g, const Divisor& d);
Json polytope_json(const Polytope& p);
Json homology_json(const std::vector<HomologyResult>& hs);
Json to_json(const HomologyResult& h);
Json to_json(const InducedMapReport& r);
Json to_json(const ConnectivityReport& r);
Json wd_cell_json(const JacobianData& jd, const WdCell& c);
Json series_json(const LinearSeries& s);
Json complex_counts_json(const TorusCellComplex& c, const std::string& flag = "");

/** Common report envelope: command, input hash, basepoint, convention tag,
 *  guard values, seed. Callers merge result fields into it. */
Json report_header(const std::string& command, const std::string& input_hash,
                   const JacobianData& jd, const Guards& guards, std::uint64_t seed);

/** Canonical dump: 2-space indent, sorted keys, trailing newline. */
std::string dump_report(const Json& j);

/** OFF model of one polytope (ambient <= 3); 2-faces as polygons, or the
 *  edges as 2-gons when nothing 2-dimensional exists. Display only. */
std::string off_of_polytope(const Polytope& p, int digits = 12);

/** OFF model of the (optionally flagged) cells of a torus complex; each cell
 *  emits its own vertex block, so the torus identifications stay visible as
 *  coordinates, not as shared indices. */
std::string off_of_complex(const TorusCellComplex& c, const std::string& flag = "",
                           int digits = 12);

} // namespace tropjac
