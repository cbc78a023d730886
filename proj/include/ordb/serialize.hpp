#pragma once

#include "ordb/bundle.hpp"
#include "ordb/realization.hpp"
#include "ordb/search.hpp"

#include "json.hpp"

#include <string>

namespace ordb {

/// JSON converters for every artifact the CLI emits. Objects use
/// alphabetically sorted keys and a fixed indentation, so identical
/// inputs render byte-identical certificates. Rationals are serialized
/// exactly as ["num", "den"] decimal strings (heights can overflow any
/// machine integer), group elements as their normal-form integer
/// vectors.

nlohmann::json rational_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json element_json(const GroupElement& g);
GroupElement element_from_json(const nlohmann::json& j);

nlohmann::json group_json(const GroupCtxPtr& ctx);
GroupCtxPtr group_from_json(const nlohmann::json& j);

/// Carrier names, reps, step tables (kOutOfWindow as -1) and the owning
/// group, enough to rebuild the action without the original job.
nlohmann::json gset_json(const GSetPtr& x);
GSetPtr gset_from_json(const nlohmann::json& j);

nlohmann::json relation_json(const Relation& r);
Relation relation_from_json(const nlohmann::json& j);

nlohmann::json cone_json(const PositiveCone& p);
PositiveCone cone_from_json(const nlohmann::json& j);

nlohmann::json outcome_json(const SearchOutcome& o);
SearchOutcome outcome_from_json(const nlohmann::json& j);

nlohmann::json embedding_json(const OrderEmbedding& e);
OrderEmbedding embedding_from_json(const nlohmann::json& j);

nlohmann::json pl_json(const PLHomeo& f);
PLHomeo pl_from_json(const nlohmann::json& j);

nlohmann::json witness_json(const HeightWitness& w);
HeightWitness witness_from_json(const nlohmann::json& j);

/// Canonical rendering used for every certificate file.
std::string certificate_text(const nlohmann::json& j);

} // namespace ordb
