#include "kcsat/csp_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kcsat/error.hpp"

namespace kcsat {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

} // namespace

CspInstance instance_from_json_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error("instance JSON must be an object");

    CspInstance inst;
    if (!doc.contains("variables") || !doc["variables"].is_array())
        throw Error("instance JSON needs a \"variables\" array");
    for (const auto& v : doc["variables"]) {
        if (!v.is_string()) throw Error("variable names must be strings");
        inst.variables.push_back(v.get<std::string>());
    }

    if (!doc.contains("domains") || !doc["domains"].is_object())
        throw Error("instance JSON needs a \"domains\" object");
    const auto& domains = doc["domains"];
    for (const auto& name : inst.variables) {
        if (!domains.contains(name))
            throw Error("no domain given for variable \"" + name + "\"");
        const auto& dom = domains[name];
        if (!dom.is_array())
            throw Error("domain of \"" + name + "\" must be an array");
        std::vector<Value> values;
        for (const auto& v : dom) {
            if (!v.is_number_integer())
                throw Error("domain of \"" + name + "\" must contain integers");
            values.push_back(v.get<Value>());
        }
        inst.domains.push_back(std::move(values));
    }
    for (auto it = domains.begin(); it != domains.end(); ++it)
        if (!inst.variable_index(it.key()))
            throw Error("domain given for unknown variable \"" + it.key() + "\"");

    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array())
            throw Error("\"constraints\" must be an array");
        for (const auto& c : doc["constraints"]) {
            if (!c.is_object() || !c.contains("scope") || !c.contains("allowed"))
                throw Error("each constraint needs \"scope\" and \"allowed\"");
            Constraint con;
            if (!c["scope"].is_array())
                throw Error("constraint \"scope\" must be an array");
            for (const auto& s : c["scope"]) {
                if (!s.is_string()) throw Error("scope entries must be strings");
                con.scope.push_back(s.get<std::string>());
            }
            if (!c["allowed"].is_array())
                throw Error("constraint \"allowed\" must be an array");
            for (const auto& t : c["allowed"]) {
                if (!t.is_array()) throw Error("allowed tuples must be arrays");
                std::vector<Value> tuple;
                for (const auto& v : t) {
                    if (!v.is_number_integer())
                        throw Error("allowed tuples must contain integers");
                    tuple.push_back(v.get<Value>());
                }
                con.allowed.push_back(std::move(tuple));
            }
            inst.constraints.push_back(std::move(con));
        }
    }
    return inst;
}

std::string instance_to_json_text(const CspInstance& inst) {
    ordered_json doc;
    doc["variables"] = inst.variables;
    ordered_json domains = ordered_json::object();
    for (std::size_t v = 0; v < inst.variables.size() && v < inst.domains.size(); ++v)
        domains[inst.variables[v]] = inst.domains[v];
    doc["domains"] = std::move(domains);
    ordered_json constraints = ordered_json::array();
    for (const Constraint& con : inst.constraints) {
        ordered_json c;
        c["scope"] = con.scope;
        c["allowed"] = con.allowed;
        constraints.push_back(std::move(c));
    }
    doc["constraints"] = std::move(constraints);
    return doc.dump(2) + "\n";
}

CspInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json_text(buf.str());
}

void save_instance(const CspInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << instance_to_json_text(inst);
}

} // namespace kcsat
