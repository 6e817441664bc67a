#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrowlab/search.hpp"

namespace arrowlab {

enum class LineKind : std::uint8_t {
    Premises,
    AssumeNonDict,
    Case,
    Prop,
    Conflict,
    Discharge,
    CaseClose,
    Conclude,
};

enum class TraceRule : std::uint8_t {
    Prem,
    NoDict,
    Case,
    Spu,       // unanimity
    Spt,       // transitivity
    Iia,       // pair diffusion
    Comp,      // completeness
    ConfTrans,
    ConfComp,
    ConfDict,  // carries a voter index
    Disch,
    Concl,
};

struct TraceLiteral {
    ProfileId profile;
    Alt from;
    Alt to;
    bool value;

    bool operator==(const TraceLiteral&) const = default;
};

struct TraceLine {
    int number = 0;
    int depth = 0;
    LineKind kind = LineKind::Prop;
    std::optional<TraceLiteral> literal;
    TraceRule rule = TraceRule::Prem;
    int dict_voter = -1;  // CONF-DICT:k only
    std::vector<int> refs;

    bool operator==(const TraceLine&) const = default;
};

struct ProofTrace {
    Config cfg;
    std::uint64_t fingerprint = 0;
    std::vector<TraceLine> lines;

    bool operator==(const ProofTrace& o) const {
        return cfg.voters == o.cfg.voters && cfg.alternatives == o.cfg.alternatives &&
               fingerprint == o.fingerprint && lines == o.lines;
    }
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(std::string msg, int line_, int column_ = 0)
        : std::runtime_error("line " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + std::move(msg)),
          line(line_),
          column(column_) {}
};

// Depth-first rendering of a refutation in the .apf line format.
// Throws StateError on a malformed refutation (open leaf).
ProofTrace emit_trace(const Refutation& r);

std::string render_trace(const ProofTrace& t);
ProofTrace parse_trace(const std::string& text);

const char* line_kind_token(LineKind k);
std::string rule_token(TraceRule r, int dict_voter = -1);

}  // namespace arrowlab
