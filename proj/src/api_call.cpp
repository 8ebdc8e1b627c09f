#include "orbas/api_call.hpp"

namespace orbas {

std::string_view to_string(DiagnosticKind kind) {
    switch (kind) {
    case DiagnosticKind::SkippedMethod: return "skipped-method";
    case DiagnosticKind::UnresolvedReceiver: return "unresolved-receiver";
    case DiagnosticKind::LexError: return "lex-error";
    }
    return "unknown";
}

bool parse_diagnostic_kind(std::string_view name, DiagnosticKind& out) {
    for (auto k : {DiagnosticKind::SkippedMethod, DiagnosticKind::UnresolvedReceiver,
                   DiagnosticKind::LexError}) {
        if (to_string(k) == name) {
            out = k;
            return true;
        }
    }
    return false;
}

std::vector<std::string> method_keys(const ApiCall& call) {
    std::vector<std::string> keys;
    keys.push_back(call.qualified());
    auto dot = call.class_name.rfind('.');
    if (dot != std::string::npos)
        keys.push_back(call.class_name.substr(dot + 1) + "." + call.method_name);
    keys.push_back(call.method_name);
    return keys;
}

bool query_matches(std::string_view query, const ApiCall& call) {
    if (query.empty()) return false;
    // Compare segment-wise from the right: method name first, then class segments.
    std::string_view method = call.method_name;
    std::string_view cls = call.class_name;

    auto last_dot = query.rfind('.');
    std::string_view q_method = last_dot == std::string_view::npos ? query : query.substr(last_dot + 1);
    if (q_method != method) return false;
    if (last_dot == std::string_view::npos) return true;

    std::string_view q_cls = query.substr(0, last_dot);
    if (q_cls.size() > cls.size()) return false;
    if (cls.substr(cls.size() - q_cls.size()) != q_cls) return false;
    // Suffix must start on a segment boundary.
    return q_cls.size() == cls.size() || cls[cls.size() - q_cls.size() - 1] == '.';
}

}  // namespace orbas
