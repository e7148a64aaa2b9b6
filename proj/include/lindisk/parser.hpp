#pragma once

#include "lindisk/element.hpp"
#include "lindisk/series.hpp"

#include <map>
#include <string>

namespace lindisk {

using Bindings = std::map<std::string, PadicElement>;

// Element expression grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor ("*" factor | "/" factor)*
//   factor := atom ("^" uint)?
//   atom   := uint | "p" | "pi" | name | "(" expr ")"
// Names resolve through the bindings map.  The result carries the field's
// default precision unless an explicit precision is requested.
PadicElement parse_element(const std::string& text, const FieldPtr& field,
                           const Bindings& bindings = {});
PadicElement parse_element_at(const std::string& text, const FieldPtr& field,
                              const Bindings& bindings, long precision);

// Map expression grammar: the element grammar extended with the free
// variable "x" (the name "lambda" arrives through the bindings).  The result
// is an entire polynomial; division is only defined by x-free expressions.
PowerSeries parse_map(const std::string& text, const FieldPtr& field,
                      const Bindings& bindings = {});
PowerSeries parse_map_at(const std::string& text, const FieldPtr& field,
                         const Bindings& bindings, long precision);

} // namespace lindisk
