#pragma once

#include <string>
#include <string_view>

#include "kcsat/csp.hpp"

namespace kcsat {

/// JSON interchange format:
///   {"variables": ["u","v"],
///    "domains": {"u": [0,1], "v": [0,1,2]},
///    "constraints": [{"scope": ["u","v"], "allowed": [[0,1],[0,2]]}]}
/// Parsing checks shape (types, presence, domain coverage of the variables);
/// semantic validity is left to validate_instance so that questionable
/// instances can be loaded and reported on.
CspInstance instance_from_json_text(std::string_view text);
std::string instance_to_json_text(const CspInstance&);

CspInstance load_instance(const std::string& path);
void save_instance(const CspInstance&, const std::string& path);

} // namespace kcsat
