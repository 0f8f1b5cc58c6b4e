// doc_json.hpp - JSON form of the rich text model, shared by the draft
// files and the HTTP API.
//
//   {"text": "See Berlin.",
//    "spans": [{"start": 4, "end": 10, "type": "link", "target": "Berlin", "missing": false}]}
//
// Span types: link (target, missing), strong, emphasis, opaque (payload, key).
// Offsets are code points.

#pragma once

#include <json.hpp>

#include "cx/doc_model.hpp"

namespace cx {

class JsonSchemaError : public Error {
 public:
  using Error::Error;
};

nlohmann::json rich_text_to_json(const RichText& rt);
/// Validates shape, bounds and span discipline; throws JsonSchemaError.
RichText rich_text_from_json(const nlohmann::json& j);

nlohmann::json span_to_json(const Span& s);

}  // namespace cx
