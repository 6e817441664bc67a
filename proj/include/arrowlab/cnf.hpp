#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arrowlab/constraints.hpp"

namespace arrowlab {

// Cell <-> DIMACS variable bijection. Variables are dense 1..V in
// ProfileId-major, pair-minor order, i.e. var = cell_index + 1.
struct VarMap {
    Config cfg;
    std::vector<std::string> names;  // names[v-1] = "R[pid](s,x,y)"

    int var_count() const { return static_cast<int>(names.size()); }
    std::string to_json() const;
};

struct CnfDoc {
    int var_count = 0;
    std::vector<std::vector<int>> clauses;

    std::string to_dimacs() const;
    static CnfDoc parse_dimacs(const std::string& text);
};

struct CnfExport {
    CnfDoc doc;
    VarMap map;
};

CnfExport export_cnf(const Config& cfg, bool non_dict);

}  // namespace arrowlab
