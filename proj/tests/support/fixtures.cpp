#include "fixtures.hpp"

namespace kcsat::testing {

CspInstance mixed_domain_instance() {
    CspInstance inst;
    inst.variables = {"u", "v", "w"};
    inst.domains = {{0, 1}, {0, 1}, {0, 1, 2}};
    Constraint con;
    con.scope = {"u", "v", "w"};
    con.allowed = {{0, 0, 1}, {0, 0, 2}, {0, 1, 2}, {1, 1, 2}};
    inst.constraints.push_back(std::move(con));
    return inst;
}

CspInstance mixed_domain_instance_binary() {
    CspInstance inst;
    inst.variables = {"u", "v", "w"};
    inst.domains = {{0, 1}, {0, 1}, {0, 1, 2}};
    Constraint uv;
    uv.scope = {"u", "v"};
    uv.allowed = {{0, 0}, {0, 1}, {1, 1}}; // u <= v
    Constraint vw;
    vw.scope = {"v", "w"};
    vw.allowed = {{0, 1}, {0, 2}, {1, 2}}; // v < w
    inst.constraints.push_back(std::move(uv));
    inst.constraints.push_back(std::move(vw));
    return inst;
}

CnfFormula three_group_exclusion_formula() {
    CnfFormula cnf;
    cnf.add(Clause({1, 2}));
    cnf.add(Clause({3, 4}));
    cnf.add(Clause({5, 6}));
    cnf.add(Clause({-1, -2}));
    cnf.add(Clause({-3, -4}));
    cnf.add(Clause({-5, -6}));
    cnf.add(Clause({-1, -3}));
    cnf.add(Clause({-2, -5}));
    cnf.add(Clause({-2, -4, -6}));
    return cnf;
}

} // namespace kcsat::testing
