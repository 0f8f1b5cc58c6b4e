#include "cx/doc_json.hpp"

namespace cx {

using nlohmann::json;

json span_to_json(const Span& s) {
  json j{{"start", s.start}, {"end", s.end}, {"type", annotation_kind(s.annotation)}};
  if (const auto* l = std::get_if<Link>(&s.annotation)) {
    j["target"] = l->target;
    j["missing"] = l->missing;
  } else if (const auto* o = std::get_if<Opaque>(&s.annotation)) {
    j["payload"] = o->payload;
    j["key"] = o->key;
  }
  return j;
}

json rich_text_to_json(const RichText& rt) {
  json spans = json::array();
  for (const auto& s : rt.spans) spans.push_back(span_to_json(s));
  return json{{"text", utf8::encode(rt.text)}, {"spans", std::move(spans)}};
}

namespace {

const json& field(const json& j, const char* name, json::value_t type) {
  auto it = j.find(name);
  if (it == j.end()) throw JsonSchemaError(std::string("missing field '") + name + "'");
  bool ok = it->type() == type ||
            (type == json::value_t::number_unsigned && it->is_number_integer() &&
             it->get<long long>() >= 0);
  if (!ok) throw JsonSchemaError(std::string("field '") + name + "' has wrong type");
  return *it;
}

Annotation annotation_from_json(const json& j) {
  auto type = field(j, "type", json::value_t::string).get<std::string>();
  if (type == "link") {
    Link l{field(j, "target", json::value_t::string).get<std::string>(), false};
    if (j.contains("missing")) l.missing = field(j, "missing", json::value_t::boolean).get<bool>();
    return l;
  }
  if (type == "strong") return Strong{};
  if (type == "emphasis") return Emphasis{};
  if (type == "opaque") {
    return Opaque{field(j, "payload", json::value_t::string).get<std::string>(),
                  field(j, "key", json::value_t::string).get<std::string>()};
  }
  throw JsonSchemaError("unknown span type '" + type + "'");
}

}  // namespace

RichText rich_text_from_json(const json& j) {
  if (!j.is_object()) throw JsonSchemaError("rich text must be an object");
  RichText rt;
  try {
    rt.text = utf8::decode(field(j, "text", json::value_t::string).get<std::string>());
  } catch (const Utf8Error& e) {
    throw JsonSchemaError(std::string("text: ") + e.what());
  }
  if (j.contains("spans")) {
    for (const auto& s : field(j, "spans", json::value_t::array)) {
      if (!s.is_object()) throw JsonSchemaError("span must be an object");
      rt.spans.push_back(Span{field(s, "start", json::value_t::number_unsigned).get<std::size_t>(),
                              field(s, "end", json::value_t::number_unsigned).get<std::size_t>(),
                              annotation_from_json(s)});
    }
  }
  if (auto v = span_violation(rt)) throw JsonSchemaError("invalid spans: " + *v);
  return rt;
}

}  // namespace cx
