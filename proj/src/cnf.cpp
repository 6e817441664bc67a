#include "arrowlab/cnf.hpp"

#include <sstream>

#include "json.hpp"

namespace arrowlab {

std::string VarMap::to_json() const {
    nlohmann::ordered_json j;
    for (size_t i = 0; i < names.size(); ++i) j[names[i]] = i + 1;
    return j.dump(2) + "\n";
}

std::string CnfDoc::to_dimacs() const {
    std::ostringstream os;
    os << "p cnf " << var_count << ' ' << clauses.size() << '\n';
    for (const auto& cl : clauses) {
        for (int lit : cl) os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

CnfDoc CnfDoc::parse_dimacs(const std::string& text) {
    std::istringstream is(text);
    CnfDoc doc;
    std::string tok;
    long declared_clauses = -1;
    bool have_header = false;
    std::vector<int> cur;
    while (is >> tok) {
        if (tok == "c") {
            std::string line;
            std::getline(is, line);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (!(is >> fmt >> doc.var_count >> declared_clauses) || fmt != "cnf")
                throw ParameterError("bad DIMACS header");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParameterError("literal before DIMACS header");
        int lit = 0;
        try {
            lit = std::stoi(tok);
        } catch (const std::exception&) {
            throw ParameterError("bad DIMACS token: " + tok);
        }
        if (lit == 0) {
            doc.clauses.push_back(cur);
            cur.clear();
        } else {
            if (std::abs(lit) > doc.var_count)
                throw ParameterError("literal exceeds declared variable count");
            cur.push_back(lit);
        }
    }
    if (!cur.empty()) throw ParameterError("unterminated clause");
    if (!have_header) throw ParameterError("missing DIMACS header");
    if (declared_clauses != static_cast<long>(doc.clauses.size()))
        throw ParameterError("clause count mismatch with header");
    return doc;
}

CnfExport export_cnf(const Config& cfg, bool non_dict) {
    cfg.validate();
    OrderEnumeration orders(cfg.alternatives);
    ProfileSpace space(cfg, orders);
    ConstraintSet cs(space, non_dict);

    CnfExport out;
    out.map.cfg = cfg;
    out.map.names.reserve(static_cast<size_t>(cs.cell_count()));
    for (CellIndex c = 0; c < cs.cell_count(); ++c) out.map.names.push_back(cs.cell_name(c));
    out.doc.var_count = cs.cell_count();
    out.doc.clauses.reserve(cs.clauses().size());
    for (const Clause& cl : cs.clauses())
        out.doc.clauses.emplace_back(cl.lits.begin(), cl.lits.end());
    return out;
}

}  // namespace arrowlab
