#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbas {

/// One resolved API invocation. class_name is package-qualified when an
/// import resolved it, otherwise the simple class name.
struct ApiCall {
    std::string class_name;
    std::string method_name;

    std::string qualified() const { return class_name + "." + method_name; }

    friend auto operator<=>(const ApiCall&, const ApiCall&) = default;
    friend bool operator==(const ApiCall&, const ApiCall&) = default;
};

struct CallSequence {
    std::string id;
    std::vector<ApiCall> calls;
    std::string origin_owner;
    std::string origin_method;
    std::string origin_file;

    friend bool operator==(const CallSequence&, const CallSequence&) = default;
};

enum class DiagnosticKind { SkippedMethod, UnresolvedReceiver, LexError };

std::string_view to_string(DiagnosticKind kind);
/// Returns false for unknown names.
bool parse_diagnostic_kind(std::string_view name, DiagnosticKind& out);

struct ExtractionDiagnostic {
    std::uint32_t line = 1;
    DiagnosticKind kind = DiagnosticKind::SkippedMethod;

    friend bool operator==(const ExtractionDiagnostic&, const ExtractionDiagnostic&) = default;
};

/// Index keys under which a call is filed: "pkg.C.m", "C.m" and "m".
/// Duplicates are collapsed when the class name is unqualified.
std::vector<std::string> method_keys(const ApiCall& call);

/// True when the dot-separated segments of query equal a suffix of the
/// segments of the call's qualified name.
bool query_matches(std::string_view query, const ApiCall& call);

}  // namespace orbas
