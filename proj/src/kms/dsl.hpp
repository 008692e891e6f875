#pragma once

#include "kms/operator_model.hpp"

#include <variant>

namespace kms {

// Expression language for part maps and operators.
//
//   expr := term { "+" term }
//   term := [ rational "*" ] atom
//   atom := NAME | NAME "(" expr ")" | "(" expr ")"
//
// Names (case and whitespace insensitive):
//   part maps:  id, transpose, sym, skew, tr, dev, devsym, skewtr, zero
//   operators:  curl (n = 2, 3), div, inc (n = 3), grad
//
// Application composes: a part map name applied to a value post-composes it,
// an operator name applied to a part map pre-composes, applied to an operator
// it chains (orders add). "+" adds values of equal shape. Scalar-codomain
// values (e.g. tr) are identified with multiples of the identity matrix and
// embedded on demand whenever the surrounding expression needs a matrix
// codomain, so "skew(curl) + tr(curl)" equals "skewtr(curl)".
using DslValue = std::variant<PartMap, HomOperator>;

DslValue parse_expression(const std::string& text, int n,
                          bool embed_scalar = true);
PartMap parse_partmap(const std::string& text, int n);
// With embed_scalar, a top-level scalar codomain is embedded as well.
HomOperator parse_operator(const std::string& text, int n,
                           bool embed_scalar = true);

// The zero map on an arbitrary space (kernel is everything); complements the
// matrix-domain "zero" of the catalog.
PartMap zero_map(const SpaceDesc& domain);

// Scalar-codomain part map embedded into matrix codomain via c -> c * id.
PartMap embed_scalar_codomain_part(const PartMap& p, int n);

}  // namespace kms
