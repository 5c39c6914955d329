#pragma once

#include <string>

#include <json.hpp>

#include "rootcert/certify.hpp"
#include "rootcert/solve.hpp"

namespace rootcert {

using Json = nlohmann::ordered_json;

Json trace_to_json(const IterationTrace& trace);
Json certificate_to_json(const Certificate& cert);
Json enclosure_to_json(const RootEnclosure& enc);

// CSV with header `n,x,f`, 17 significant digits.
std::string trace_to_csv(const IterationTrace& trace);

// Human-aligned table, 17 significant digits.
std::string trace_to_table(const IterationTrace& trace);

}  // namespace rootcert
