#pragma once

#include <string>

#include <json.hpp>

#include "proxcvx/catalog.hpp"
#include "proxcvx/certify.hpp"
#include "proxcvx/diagnostics.hpp"
#include "proxcvx/ppa.hpp"
#include "proxcvx/prox.hpp"
#include "proxcvx/subdiff.hpp"

namespace proxcvx {

using Json = nlohmann::ordered_json;

/// Bounds as numbers, with "-inf"/"+inf" strings for the infinite ones.
Json bound_to_json(double v);
double bound_from_json(const Json& j);

/// One-dimensional functions:
///   {"id", "dimension": 1, "pieces": [...], "domain": {"lo","hi"}, "exceptions"?, "closed_form"?}
/// Separable two-dimensional functions carry "terms": [{"pieces","domain","exceptions"?}, ...]
/// instead of "pieces".
Json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const Json& j);

Box box_from_string(const std::string& text);
std::string box_to_string(const Box& b);
Point point_from_string(const std::string& text);

Json to_json(const Box& b);
Json to_json(const ProxResult& r);
Json to_json(const Witness& w);
Json to_json(const AlphaCertificate& c);
Json to_json(const AlphaCheck& c);
Json to_json(const FirmReport& r);
Json to_json(const MembershipReport& r);
Json to_json(const CharminReport& r);
Json to_json(const StronglyGReport& r);
Json to_json(const ConsequenceReport& r);
Json to_json(const ProbeReport& r);
Json to_json(const CoercivityReport& r);
Json to_json(const PPATrace& t);
Json to_json(const MonotoneReport& r);
Json to_json(const FejerReport& r);

/// z, xbar, x, lhs, ip, bound_type, bound_value
std::string witness_table_csv(const AlphaCertificate& c);
/// k, x, h, step_norm, fejer_dist (k from 1, coordinates joined by ';')
std::string trace_csv(const PPATrace& t);

/// Shortest decimal that round-trips the double.
std::string format_number(double v);

}  // namespace proxcvx
