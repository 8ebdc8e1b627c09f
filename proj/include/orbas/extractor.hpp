#pragma once

// Fault-tolerant call-sequence extraction for a Java-like source subset.
//
// Recognized structure: package and import declarations, (nested) class,
// interface, enum and record declarations, fields, and methods with
// brace-balanced bodies. Inside bodies the parser understands local
// declarations, expression statements, control-flow headers and
// return/throw; invocations `recv.m(...)`, `Type.m(...)` and `new T(...)`
// become ApiCalls in evaluation order (arguments before the enclosing call,
// statements in source order). A body that fails to parse is dropped whole
// and reported as `skipped-method`; the rest of the file is unaffected.

#include "orbas/api_call.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbas {

struct ExtractionResult {
    std::vector<CallSequence> sequences;
    std::vector<ExtractionDiagnostic> diagnostics;

    friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

/// Never throws on malformed input. Sequence ids are "<file_label>#<n>".
ExtractionResult extract_file(std::string_view source_text, std::string_view file_label);

/// Declarations visible at a call site.
struct ResolutionScope {
    /// Parameters and locals in textual order; later entries shadow earlier ones.
    std::vector<std::pair<std::string, std::string>> locals;
    /// Field name -> declared type of the enclosing class.
    std::map<std::string, std::string> fields;
    /// Simple name -> qualified name, single-type imports only.
    std::map<std::string, std::string> imports;
};

/// Qualifies a declared type name through the import table; names whose
/// first segment is not imported are returned unchanged.
std::string qualify_type(const ResolutionScope& scope, std::string_view type_name);

/// Local, then field, then static-call (capitalized receiver) resolution.
/// Returns nullopt when none applies.
std::optional<std::string> resolve_receiver(const ResolutionScope& scope, std::string_view receiver);

}  // namespace orbas
