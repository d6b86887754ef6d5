#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "seanode/graph.hpp"

namespace seanode {

/// Version tag written to and required in every program file.
inline constexpr std::string_view kFormatVersion = "seanode/1";

/// Parses a program file. The result is structurally valid (known kinds,
/// required fields present, unique ids) but may not be well-formed.
///
/// Throws ParseError, DuplicateId or UnknownKind.
Program parse_program(std::string_view text);
Program load_program(const std::filesystem::path& path);

/// Canonical text: methods in signature order, nodes in id order, one node
/// record per line. parse_program(to_text(p)) == p.
std::string to_text(const Program& program);
void save_program(const Program& program, const std::filesystem::path& path);

/// Parses "Class.method(int,int)". Also accepts "Class.method" and a bare
/// method name; those forms resolve against a program with find_method.
Signature parse_signature(std::string_view text);

/// Resolves a user-supplied method reference. Full signatures must match
/// exactly; partial ones must match a unique method. Throws Error otherwise.
Signature find_method(const Program& program, std::string_view text);

/// DOT digraph: solid successor edges, dashed input edges drawn from the
/// input to its user, labels "<id>: <Kind>".
std::string to_dot(const Graph& g, std::string_view name);

} // namespace seanode
