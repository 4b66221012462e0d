// Built-in graph families and the end-to-end verification suite: eight
// numbered criteria with deterministic JSON reports and a fault-injection
// switch for exercising the failure path.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropjac/graph.hpp"
#include "tropjac/json_io.hpp"

namespace tropjac {

MetricGraph make_bouquet(const std::vector<Rat>& lengths);
MetricGraph make_theta(const Rat& l0, const Rat& l1, const Rat& l2);
MetricGraph make_dumbbell(const Rat& loop0, const Rat& bridge, const Rat& loop1);
/** Edge order: 01, 02, 03, 12, 13, 23. */
MetricGraph make_k4(const std::vector<Rat>& lengths);
/** 4-cycle with both edges of one opposite pair doubled; order: 01, 01',
 *  12, 23, 23', 30. */
MetricGraph make_doubled_c4(const std::vector<Rat>& lengths);

struct NamedGraph {
    std::string name;
    MetricGraph graph;
};

/** bouquet2, bouquet3, theta, dumbbell, k4, doubled_c4 with fixed lengths. */
std::vector<NamedGraph> suite_graphs();

/** The five connected trivalent multigraphs of first Betti number 3. */
std::vector<NamedGraph> trivalent_genus3_types(const std::vector<Rat>& lengths);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    int exit_code = 0; // 0 pass, 1 fail, 2 invalid input, 3 guard exceeded
    double seconds = 0.0;
    double budget_seconds = 0.0; // 0 = no stated budget
    Json detail;                 // deterministic, no wall-clock content
};

struct SuiteOptions {
    std::uint64_t seed = 2026;
    bool inject_sign_fault = false; // fixture: flips one chain sign in criterion 7
    std::string dump_path = "tropjac_counterexample.json"; // "" = no file dump
    std::vector<NamedGraph> graphs; // empty = suite_graphs()
    Guards guards;
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    Json report; // byte-stable for a fixed SuiteOptions
    int worst_exit = 0;
};

SuiteResult run_suite(const SuiteOptions& opt);

} // namespace tropjac
