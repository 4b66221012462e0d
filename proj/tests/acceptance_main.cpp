// Acceptance runner: executes the verification suite with the pinned seed and
// prints one PASS/FAIL line per criterion, enforcing the per-criterion time
// budgets. The byte-identity criterion is additionally certified by a second
// full suite run whose report must match the first one exactly.
#include <chrono>
#include <cstdio>
#include <string>

#include "tropjac/json_io.hpp"
#include "tropjac/suite.hpp"

using namespace tropjac;

int main() {
    SuiteOptions opt;
    opt.dump_path = "acceptance_counterexample.json";

    auto t0 = std::chrono::steady_clock::now();
    SuiteResult first = run_suite(opt);
    SuiteResult second = run_suite(opt);
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string rep1 = dump_report(first.report);
    std::string rep2 = dump_report(second.report);
    bool reports_identical = rep1 == rep2;
    write_file("acceptance_report.json", rep1);

    bool all = true;
    for (const auto& c : first.criteria) {
        bool pass = c.pass;
        std::string note;
        if (c.id == 8) {
            pass = pass && reports_identical;
            if (!reports_identical) note += ", full rerun report differs";
        }
        if (c.budget_seconds > 0 && c.seconds > c.budget_seconds) {
            pass = false;
            note += ", over budget";
        }
        all = all && pass;
        if (c.budget_seconds > 0)
            std::printf("%s criterion %d: %s [%.2fs, budget %.0fs%s]\n", pass ? "PASS" : "FAIL",
                        c.id, c.name.c_str(), c.seconds, c.budget_seconds, note.c_str());
        else
            std::printf("%s criterion %d: %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id,
                        c.name.c_str(), c.seconds, note.c_str());
    }
    std::printf("%s: 8 criteria, two full suite runs in %.2fs\n", all ? "ACCEPTED" : "REJECTED",
                total);
    return all ? 0 : 1;
}
