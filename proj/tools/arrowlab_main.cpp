#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "arrowlab/checker.hpp"
#include "arrowlab/cnf.hpp"
#include "arrowlab/dpll.hpp"
#include "arrowlab/search.hpp"
#include "arrowlab/trace.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitGuard = 65;
constexpr int kExitInvalid = 2;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

bool guard_override_env() {
    const char* v = std::getenv("ARROWLAB_GUARD_OVERRIDE");
    return v != nullptr && std::string(v) == "1";
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw arrowlab::ParameterError("cannot open output file: " + path);
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw arrowlab::ParameterError("cannot open file: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string pair_key(arrowlab::Alt x, arrowlab::Alt y) {
    return std::string(1, arrowlab::alt_letter(x)) + arrowlab::alt_letter(y);
}

int cmd_orders(int m, bool override_guard, bool as_json, const std::string& out) {
    auto orders = arrowlab::enumerate_weak_orders(m, override_guard);
    std::ostringstream os;
    if (as_json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (size_t id = 0; id < orders.size(); ++id) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (arrowlab::Alt x = 0; x < m; ++x) rows.push_back(orders[id].row_bits(x));
            j.push_back({{"id", id}, {"rows", rows}});
        }
        os << j.dump(2) << '\n';
    } else {
        for (size_t id = 0; id < orders.size(); ++id) {
            os << id;
            for (arrowlab::Alt x = 0; x < m; ++x) os << ' ' << orders[id].row_bits(x);
            os << '\n';
        }
    }
    write_output(out, os.str());
    return 0;
}

int cmd_profiles(const arrowlab::Config& cfg, bool count_only, bool as_json,
                 const std::string& out) {
    cfg.validate();
    if (count_only) {
        write_output(out, std::to_string(arrowlab::profile_count(cfg)) + "\n");
        return 0;
    }
    arrowlab::OrderEnumeration orders(cfg.alternatives);
    arrowlab::ProfileSpace space(cfg, orders);
    std::ostringstream os;
    if (as_json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (arrowlab::ProfileId pid = 0; pid < space.count(); ++pid) {
            nlohmann::ordered_json voters = nlohmann::ordered_json::array();
            for (int v = 0; v < cfg.voters; ++v) voters.push_back(space.voter_order_id(pid, v));
            j.push_back({{"id", pid}, {"orders", voters}});
        }
        os << j.dump(2) << '\n';
    } else {
        for (arrowlab::ProfileId pid = 0; pid < space.count(); ++pid) {
            os << pid;
            for (int v = 0; v < cfg.voters; ++v) os << ' ' << space.voter_order_id(pid, v);
            os << '\n';
        }
    }
    write_output(out, os.str());
    return 0;
}

int cmd_prove(const arrowlab::Config& cfg, const std::string& out) {
    arrowlab::Refutation r = arrowlab::refute(cfg);
    arrowlab::ProofTrace t = arrowlab::emit_trace(r);
    if (!out.empty()) write_output(out, arrowlab::render_trace(t));
    std::cout << r.root_cases().size() << " top-level cases closed\n";
    return 0;
}

int cmd_check(const std::string& path, bool stats) {
    arrowlab::Verdict v;
    try {
        arrowlab::ProofTrace t = arrowlab::parse_trace(read_file(path));
        v = arrowlab::check_trace(t);
    } catch (const arrowlab::ParseError& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return kExitInvalid;
    }
    if (stats) {
        nlohmann::ordered_json j;
        j["valid"] = v.valid;
        if (!v.valid) {
            j["line"] = v.line;
            j["violation"] = v.violation;
        }
        nlohmann::ordered_json rc;
        for (const auto& [rule, n] : v.rule_counts) rc[rule] = n;
        j["rule_counts"] = rc;
        std::cout << j.dump(2) << '\n';
    }
    if (!v.valid) {
        std::cerr << path << ": line " << v.line << ": " << v.violation << '\n';
        return kExitInvalid;
    }
    if (!stats) std::cout << "valid\n";
    return 0;
}

int cmd_models(const arrowlab::Config& cfg, std::int64_t limit, bool as_json,
               const std::string& out) {
    std::optional<std::int64_t> lim;
    if (limit >= 0) lim = limit;
    arrowlab::ModelList ml = arrowlab::enumerate_models(cfg, lim);

    arrowlab::OrderEnumeration orders(cfg.alternatives);
    arrowlab::ProfileSpace space(cfg, orders);
    const int m = cfg.alternatives;
    const int ppp = arrowlab::pairs_per_profile(m);
    std::ostringstream os;
    if (as_json) {
        nlohmann::ordered_json j;
        j["count"] = ml.models.size();
        j["truncated"] = ml.truncated;
        nlohmann::ordered_json models = nlohmann::ordered_json::array();
        for (const arrowlab::Model& mod : ml.models) {
            nlohmann::ordered_json cells;
            for (arrowlab::ProfileId pid = 0; pid < space.count(); ++pid) {
                nlohmann::ordered_json prof;
                for (arrowlab::Alt x = 0; x < m; ++x)
                    for (arrowlab::Alt y = 0; y < m; ++y) {
                        if (x == y) continue;
                        size_t c = static_cast<size_t>(pid * ppp +
                                                       arrowlab::pair_index(m, x, y));
                        prof[pair_key(x, y)] =
                            mod.cells[c] == arrowlab::TriState::True ? 1 : 0;
                    }
                cells[std::to_string(pid)] = prof;
            }
            models.push_back({{"dictators", mod.dictators}, {"cells", cells}});
        }
        j["models"] = models;
        os << j.dump(2) << '\n';
    } else {
        os << ml.models.size() << " models" << (ml.truncated ? " (truncated)" : "") << '\n';
        for (size_t i = 0; i < ml.models.size(); ++i) {
            os << "model " << i << " dictators=";
            for (size_t k = 0; k < ml.models[i].dictators.size(); ++k)
                os << (k ? "," : "") << ml.models[i].dictators[k];
            if (ml.models[i].dictators.empty()) os << "-";
            os << '\n';
        }
    }
    write_output(out, os.str());
    return 0;
}

int cmd_cnf(const arrowlab::Config& cfg, bool non_dict, const std::string& out,
            const std::string& map_out) {
    arrowlab::CnfExport e = arrowlab::export_cnf(cfg, non_dict);
    write_output(out, e.doc.to_dimacs());
    if (!map_out.empty()) write_output(map_out, e.map.to_json());
    return 0;
}

int cmd_solve(const std::string& path, bool enumerate, std::int64_t limit) {
    arrowlab::CnfDoc doc = arrowlab::CnfDoc::parse_dimacs(read_file(path));
    std::optional<std::int64_t> lim;
    if (limit >= 0) lim = limit;
    arrowlab::SolveResult r = arrowlab::solve_cnf(
        doc, enumerate ? arrowlab::SolveMode::Enumerate : arrowlab::SolveMode::Decide, lim);
    if (enumerate)
        std::cout << r.models.size() << " models" << (r.truncated ? " (truncated)" : "")
                  << '\n';
    else
        std::cout << (r.sat ? "SAT" : "UNSAT") << '\n';
    return r.sat ? kExitSat : kExitUnsat;
}

int cmd_stats(const arrowlab::Config& cfg, bool non_dict) {
    cfg.validate();
    arrowlab::OrderEnumeration orders(cfg.alternatives);
    arrowlab::ProfileSpace space(cfg, orders);
    arrowlab::ConstraintSet cs(space, non_dict);
    arrowlab::ConstraintStats s = cs.stats();
    nlohmann::ordered_json j;
    j["voters"] = cfg.voters;
    j["alternatives"] = cfg.alternatives;
    j["orders"] = orders.count();
    j["profiles"] = space.count();
    j["cells"] = s.cells;
    j["clauses"] = {{"completeness", s.completeness}, {"transitivity", s.transitivity},
                    {"unanimity", s.unanimity},       {"iia", s.iia},
                    {"non_dict", s.non_dict},         {"total", s.total()}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground-instance tooling for the impossibility of non-dictatorial "
                 "social welfare functions"};
    app.require_subcommand(1);

    int n = 2, m = 3;
    bool override_guard = guard_override_env();
    std::string out, map_out, in_file;
    bool as_json = false, count_only = false, stats_flag = false;
    bool no_nondict = false, enumerate = false;
    std::int64_t limit = -1;

    auto add_nm = [&](CLI::App* sub, bool with_n) {
        if (with_n) sub->add_option("-n,--voters", n, "number of voters");
        sub->add_option("-m,--alternatives", m, "number of alternatives");
        sub->add_flag("--override-guard", override_guard,
                      "lift the default n<=3, m<=4 guard");
    };

    CLI::App* orders = app.add_subcommand("orders", "list the canonical weak orders");
    add_nm(orders, false);
    orders->add_flag("--json", as_json, "JSON output");
    orders->add_option("-o,--output", out, "output file (default stdout)");

    CLI::App* profiles = app.add_subcommand("profiles", "list or count preference profiles");
    add_nm(profiles, true);
    profiles->add_flag("--count", count_only, "print only the profile count");
    profiles->add_flag("--json", as_json, "JSON output");
    profiles->add_option("-o,--output", out, "output file (default stdout)");

    CLI::App* prove = app.add_subcommand(
        "prove", "refute the non-dictatorship assumption by case analysis");
    add_nm(prove, true);
    prove->add_option("-o,--output", out, "write the proof trace (.apf) here");

    CLI::App* check = app.add_subcommand("check", "validate a proof trace");
    check->add_option("file", in_file, "trace file (.apf)")->required();
    check->add_flag("--stats", stats_flag, "emit verdict statistics as JSON");

    CLI::App* models = app.add_subcommand(
        "models", "enumerate the social welfare functions satisfying the axioms");
    add_nm(models, true);
    models->add_option("--limit", limit, "stop after this many models");
    models->add_flag("--json", as_json, "JSON output");
    models->add_option("-o,--output", out, "output file (default stdout)");

    CLI::App* cnf = app.add_subcommand("cnf", "export the ground instance as DIMACS CNF");
    add_nm(cnf, true);
    cnf->add_flag("--no-nondict", no_nondict, "omit the non-dictatorship clauses");
    cnf->add_option("-o,--output", out, "output file (default stdout)");
    cnf->add_option("--map", map_out, "write the variable map sidecar (JSON)");

    CLI::App* solve = app.add_subcommand("solve", "decide or enumerate a DIMACS CNF file");
    solve->add_option("file", in_file, "CNF file")->required();
    solve->add_flag("--enumerate", enumerate, "enumerate all models");
    solve->add_option("--limit", limit, "stop after this many models");

    CLI::App* stats = app.add_subcommand("stats", "constraint statistics as JSON");
    add_nm(stats, true);
    stats->add_flag("--no-nondict", no_nondict, "omit the non-dictatorship clauses");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : kExitUsage;
    }

    arrowlab::Config cfg{n, m, override_guard};
    try {
        if (app.got_subcommand(orders)) return cmd_orders(m, override_guard, as_json, out);
        if (app.got_subcommand(profiles)) return cmd_profiles(cfg, count_only, as_json, out);
        if (app.got_subcommand(prove)) return cmd_prove(cfg, out);
        if (app.got_subcommand(check)) return cmd_check(in_file, stats_flag);
        if (app.got_subcommand(models)) return cmd_models(cfg, limit, as_json, out);
        if (app.got_subcommand(cnf)) return cmd_cnf(cfg, !no_nondict, out, map_out);
        if (app.got_subcommand(solve)) return cmd_solve(in_file, enumerate, limit);
        if (app.got_subcommand(stats)) return cmd_stats(cfg, !no_nondict);
    } catch (const arrowlab::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
