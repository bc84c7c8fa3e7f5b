#ifndef CAVSIM_CIRCUIT_IO_HPP
#define CAVSIM_CIRCUIT_IO_HPP

#include <stdexcept>
#include <string>

#include "cavsim/circuit.hpp"

namespace cavsim {

enum class ParseErrorKind {
    Syntax,                ///< malformed line or missing mandatory declaration
    UnknownElement,        ///< directive name not in the format
    UnregisteredLocation,  ///< reference to an undeclared path/port or atom
    DuplicatePort,         ///< second declaration of the same port role
};

struct ParseError : std::runtime_error {
    ParseError(ParseErrorKind kind, int line, int column, const std::string& message);

    ParseErrorKind kind;
    int line;    ///< 1-based
    int column;  ///< 1-based
};

/// Parses the line-oriented circuit-description format:
///
///   atoms <n>
///   path <name>
///   port in <name> | port out <name> | port discard <name>
///   cpbs in=<a>,<b> out=<c>,<d>
///   hwp path=<p>
///   sigmax path=<p>
///   atomh atom=<i>
///   cavity path=<p> atom=<i>     # reflection values are bound at run time
///   relabel from=<a> to=<b>
///   checkpoint <label>
///
/// '#' starts a comment; lines are whitespace-insensitive; element order in
/// the file is application order. Throws ParseError with line/column on any
/// defect. The returned spec carries ideal default cavity bindings.
CircuitSpec parse_circuit(const std::string& text);

/// Canonical text form; parse_circuit(serialize_circuit(s)) == s and the
/// output of a parse serializes back byte-identically.
std::string serialize_circuit(const CircuitSpec& spec);

} // namespace cavsim

#endif
