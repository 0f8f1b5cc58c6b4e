// Internal helpers shared by the HTML parser and serializer.

#pragma once

#include <string>
#include <string_view>

#include "cx/doc_model.hpp"

namespace cx::html {

bool is_void_element(std::string_view name);
bool opaque_is_void(const Opaque& o);

std::string escape_attribute(std::string_view value);

/// Decodes character references; unknown references are kept literally.
std::u32string decode_entities(std::string_view raw);

/// Reverses title_to_href for the part after "./".
std::string decode_href_title(std::string_view href_tail);

}  // namespace cx::html
