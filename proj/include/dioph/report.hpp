#pragma once

#include <string>

#include <json.hpp>

#include "dioph/classgroup.hpp"
#include "dioph/pell.hpp"
#include "dioph/quadfield.hpp"
#include "dioph/solvers.hpp"

namespace dioph {

/// Key order is insertion order, so documents serialize deterministically.
using Json = nlohmann::ordered_json;

// Integers are written as decimal strings; nothing is ever truncated.
Json to_json(Integer const & v);
Integer integer_from_json(Json const & j);

Json to_json(PowerSumSolution const & s);
PowerSumSolution power_sum_from_json(Json const & j);

Json to_json(XCYNSolution const & s);
XCYNSolution xcyn_from_json(Json const & j);

Json to_json(BoundCertificate const & c);
BoundCertificate bound_from_json(Json const & j);

Json to_json(SzalayTrace const & t);
Json to_json(Lemma32Report const & r);
Json to_json(PellSolution const & s);
Json to_json(CFExpansion const & e);
Json to_json(ClassGroupTable const & t);
Json to_json(Theorem15Witness const & w);
Json to_json(NormRepReport const & r);

/*
 * A run report is one JSON document:
 *   { "command": ..., "parameters": {...}, "payload": {...},
 *     "meta": { "version": ..., "elapsed_ms": ... } }
 * The payload is a pure function of the parameters; timing lives in meta.
 */
Json make_run_report(std::string const & command, Json parameters, Json payload, double elapsed_ms);

char const * version_string();

} // namespace dioph
