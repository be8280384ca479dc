#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ermatch::verify {

struct CheckResult {
    std::string key;
    bool pass = false;
    std::string detail;  // witness of the first violation, or summary stats
    double seconds = 0.0;
};

struct Check {
    std::string key;          // identity suite id, e.g. "lemma-6"
    std::string description;  // one line, printed in the table
    int criterion = 0;        // acceptance criterion number; 0 = invariant-only
    std::function<CheckResult()> run;
};

// The full identity suite: every exact identity and statistical property the
// library promises, keyed by the lemma/theorem numbering used in the docs.
const std::vector<Check>& all_checks();

// Runs checks (all, or only those backing an acceptance criterion), streaming
// one table row per check to `out` when non-null. A non-empty filter keeps
// only checks whose key contains it. Returns the results.
std::vector<CheckResult> run_checks(bool acceptance_only, std::ostream* out,
                                    const std::string& filter = "");

}  // namespace ermatch::verify
