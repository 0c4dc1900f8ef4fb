#pragma once

// JSON wire formats for polynomials, trace expressions, symbols, operator
// specs and oracle assignments.

#include "ncwres/fourier.hpp"
#include "ncwres/parametrix.hpp"
#include "ncwres/trace.hpp"

#include <json.hpp>

namespace ncwres {

using Json = nlohmann::json;

/// {"num", "den", "pi"}.  Throws std::overflow_error beyond 64 bits.
Json scalar_to_json(const Rational& q, int pi_power = 0);
Scalar scalar_from_json(const Json& j);

Json letter_to_json(const Letter& l, int d);
Letter letter_from_json(const Json& j);
Json word_to_json(const Word& w, int d);
Word word_from_json(const Json& j);

/// {"terms": [{"coef": ..., "word": [...]}]}; deriv arrays have d entries.
Json to_json(const NCPoly& p, int d);
NCPoly ncpoly_from_json(const Json& j);

/// Like NCPoly, each term marked "trace": true.
Json to_json(const TraceExpression& e, int d);
TraceExpression trace_expression_from_json(const Json& j);

/// {"components": {"<degree>": [{"coef", "alpha", "m"}]}}.
Json to_json(const Symbol& s);
Symbol symbol_from_json(const Json& j, int d);

Json to_json(const OperatorSpec& spec);
OperatorSpec operator_spec_from_json(const Json& j);

/// {"theta": [[...]], "atoms": {"h": {"coeffs": [{"index", "re", "im"}]}}, "tol"}.
Json to_json(const Assignment& a);
/// Rebuilds h^-1 with the Neumann series at the recorded tolerance.
Assignment assignment_from_json(const Json& j);

}  // namespace ncwres
