#pragma once

#include <string>

#include "json.hpp"

#include "jtx/lead.hpp"
#include "jtx/model.hpp"

namespace jtx {

struct TransportSetup;
struct TransportResult;

using json = nlohmann::ordered_json;

json to_json(const JacobiModel& model);
JacobiModel jacobi_model_from_json(const json& j);

json to_json(const DiscreteMeasure& nu);
DiscreteMeasure discrete_measure_from_json(const json& j);

json to_json(const PeriodicJacobi& per);
PeriodicJacobi periodic_jacobi_from_json(const json& j);

json to_json(const Lead& lead);
Lead lead_from_json(const json& j);

json to_json(const TransportResult& result);

/// Deterministic float formatting (shortest round-trip via %.17g).
std::string format_double(double v);

/// FNV-1a hash of the canonical JSON text of a transport setup.
std::string transport_setup_hash(const TransportSetup& spec);

/// Table-lead CSV ingestion: columns E, ReF, ImF (header optional).
Lead lead_from_csv(const std::string& text);

}  // namespace jtx
