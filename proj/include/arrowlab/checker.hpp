#pragma once

#include <map>
#include <string>

#include "arrowlab/trace.hpp"

namespace arrowlab {

struct Verdict {
    bool valid = false;
    int line = 0;             // first offending line (0 when valid or pre-body)
    std::string violation;    // empty when valid
    std::map<std::string, int> rule_counts;
};

// Replays a parsed trace against a fresh ground instance built from its own
// header, verifying every inference semantically: scope discipline, no
// reassignment, refs resolve to literals still active in an open scope, each
// rule application is sound, conflicts are genuinely violated constraints,
// and the case analysis covers both truth values before concluding. Shares
// no state with the search engine.
Verdict check_trace(const ProofTrace& t);

}  // namespace arrowlab
