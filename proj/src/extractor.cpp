#include "orbas/extractor.hpp"

#include "java_lexer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace orbas {

using detail::Token;
using detail::TokenKind;

std::string qualify_type(const ResolutionScope& scope, std::string_view type_name) {
    auto dot = type_name.find('.');
    std::string head(type_name.substr(0, dot));
    auto it = scope.imports.find(head);
    if (it == scope.imports.end()) return std::string(type_name);
    return dot == std::string_view::npos ? it->second : it->second + std::string(type_name.substr(dot));
}

std::optional<std::string> resolve_receiver(const ResolutionScope& scope, std::string_view receiver) {
    if (receiver.empty()) return std::nullopt;
    for (auto it = scope.locals.rbegin(); it != scope.locals.rend(); ++it) {
        if (it->first == receiver) {
            if (it->second == "var") return std::nullopt;
            return qualify_type(scope, it->second);
        }
    }
    if (auto it = scope.fields.find(std::string(receiver)); it != scope.fields.end()) {
        if (it->second == "var") return std::nullopt;
        return qualify_type(scope, it->second);
    }
    if (std::isupper(static_cast<unsigned char>(receiver.front()))) return qualify_type(scope, receiver);
    return std::nullopt;
}

namespace {

constexpr int kMaxDepth = 200;

bool is_primitive(std::string_view w) {
    static const std::set<std::string_view> kPrimitives = {"boolean", "byte", "char",  "double", "float",
                                                           "int",     "long", "short", "void"};
    return kPrimitives.count(w) > 0;
}

bool is_modifier(std::string_view w) {
    static const std::set<std::string_view> kModifiers = {
        "public", "private",  "protected", "static",   "final",  "abstract", "synchronized",
        "native", "transient", "volatile",  "strictfp", "default", "sealed",  "non-sealed"};
    return kModifiers.count(w) > 0;
}

bool is_type_decl_keyword(std::string_view w) {
    return w == "class" || w == "interface" || w == "enum" || w == "record";
}

bool is_name(const Token& t) {
    return t.kind == TokenKind::Ident && !detail::is_keyword(t.text);
}

bool is_type_word(const Token& t) {
    return t.kind == TokenKind::Ident && (!detail::is_keyword(t.text) || is_primitive(t.text));
}

struct ParseError {
    std::uint32_t line;
};

// Receiver shape of an expression, as far as call resolution cares.
struct Expr {
    enum class Kind { None, Name, This, Super, ThisField, Other };
    Kind kind = Kind::None;
    std::vector<std::string> segments;

    static Expr none() { return {}; }
    static Expr other() { return {Kind::Other, {}}; }
};

class TokenCursor {
public:
    TokenCursor(const std::vector<Token>& tokens, std::size_t begin, std::size_t end)
        : tokens_(tokens), pos_(begin), end_(end) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t at = pos_ + ahead;
        return at < end_ ? tokens_[at] : end_token();
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < end_) ++pos_;
        return t;
    }
    bool at_end() const { return pos_ >= end_; }
    bool accept(std::string_view p) {
        if (!peek().is(p)) return false;
        next();
        return true;
    }
    void expect(std::string_view p) {
        if (!accept(p)) throw ParseError{peek().line};
    }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t p) { pos_ = std::min(p, end_); }
    std::size_t end() const { return end_; }

    // Index just past the bracket closing the one at `open_at` (same bracket
    // kind only), and whether a closer was found before the end.
    std::pair<std::size_t, bool> find_close(std::size_t open_at) const {
        if (open_at >= end_) return {end_, false};
        const std::string& open = tokens_[open_at].text;
        const std::string_view close = open == "(" ? ")" : open == "[" ? "]" : "}";
        int depth = 0;
        for (std::size_t i = open_at; i < end_; ++i) {
            const auto& t = tokens_[i];
            if (t.kind != TokenKind::Punct) continue;
            if (t.text == open) ++depth;
            if (t.text == close && --depth == 0) return {i + 1, true};
        }
        return {end_, false};
    }

    std::size_t matching(std::size_t open_at) const { return find_close(open_at).first; }

    void skip_balanced() { seek(matching(pos_)); }

private:
    const Token& end_token() const { return tokens_.back(); }

    const std::vector<Token>& tokens_;
    std::size_t pos_;
    std::size_t end_;
};

// Skips "@Name", "@a.b.Name" and "@Name(...)". Leaves "@interface" alone.
bool skip_annotation(TokenCursor& cur) {
    if (!cur.peek().is("@") || cur.peek(1).is("interface")) return false;
    cur.next();
    if (is_name(cur.peek())) cur.next();
    while (cur.peek().is(".") && cur.peek(1).kind == TokenKind::Ident) {
        cur.next();
        cur.next();
    }
    if (cur.peek().is("(")) cur.skip_balanced();
    return true;
}

// Skips a "<...>" group starting at the cursor. Returns false (cursor
// unchanged) when the contents cannot be a type argument list.
bool skip_type_arguments(TokenCursor& cur) {
    std::size_t start = cur.pos();
    int depth = 0;
    do {
        const Token& t = cur.next();
        if (t.is("<")) {
            ++depth;
        } else if (t.is(">")) {
            --depth;
        } else if (!(t.kind == TokenKind::Ident || t.is(",") || t.is(".") || t.is("?") || t.is("[") ||
                     t.is("]") || t.is("&") || t.is("@"))) {
            cur.seek(start);
            return false;
        }
    } while (depth > 0);
    return true;
}

// Parses "Name(.Name)*(<...>)?([])*" and returns the base name with type
// arguments and array brackets stripped. nullopt (cursor unchanged) if the
// tokens do not form a type.
std::optional<std::string> parse_type(TokenCursor& cur) {
    std::size_t start = cur.pos();
    if (!is_type_word(cur.peek())) return std::nullopt;
    std::string name = cur.next().text;
    for (;;) {
        if (cur.peek().is(".") && is_type_word(cur.peek(1))) {
            cur.next();
            name += "." + cur.next().text;
        } else if (cur.peek().is("<")) {
            if (!skip_type_arguments(cur)) {
                cur.seek(start);
                return std::nullopt;
            }
        } else {
            break;
        }
    }
    while (cur.peek().is("[") && cur.peek(1).is("]")) {
        cur.next();
        cur.next();
    }
    if (cur.peek().is("...")) cur.next();
    return name;
}

void skip_modifiers(TokenCursor& cur) {
    for (;;) {
        if (skip_annotation(cur)) continue;
        if (cur.peek().kind == TokenKind::Ident && (cur.peek().text == "final" || is_modifier(cur.peek().text))) {
            cur.next();
            continue;
        }
        break;
    }
}

// Parses a method body into calls; throws ParseError on malformed input.
class BodyParser {
public:
    BodyParser(TokenCursor cur, ResolutionScope& scope) : cur_(cur), scope_(scope) {}

    void parse() {
        while (!cur_.at_end()) statement();
    }

    std::vector<ApiCall> calls;
    std::vector<ExtractionDiagnostic> unresolved;

private:
    struct DepthGuard {
        explicit DepthGuard(BodyParser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth) throw ParseError{parser.cur_.peek().line};
        }
        ~DepthGuard() { --parser.depth_; }
        BodyParser& parser;
    };

    void block() {
        DepthGuard guard(*this);
        cur_.expect("{");
        while (!cur_.peek().is("}")) {
            if (cur_.at_end()) throw ParseError{cur_.peek().line};
            statement();
        }
        cur_.next();
    }

    void paren_condition() {
        cur_.expect("(");
        expression();
        cur_.expect(")");
    }

    void statement() {
        DepthGuard guard(*this);
        const Token& t = cur_.peek();
        if (t.is("{")) return block();
        if (t.is(";")) {
            cur_.next();
            return;
        }
        if (t.is("@") && !cur_.peek(1).is("interface")) {
            skip_annotation(cur_);
            return;
        }
        if (t.kind == TokenKind::Ident) {
            const std::string& w = t.text;
            if (w == "if" || w == "while" || w == "switch" || w == "synchronized") {
                cur_.next();
                if (cur_.peek().is("(")) paren_condition();
                return;
            }
            if (w == "for") {
                cur_.next();
                return for_header();
            }
            if (w == "do" || w == "else" || w == "finally") {
                cur_.next();
                return;
            }
            if (w == "try") {
                cur_.next();
                if (cur_.peek().is("(")) try_resources();
                return;
            }
            if (w == "catch") {
                cur_.next();
                return catch_clause();
            }
            if (w == "case") {
                cur_.next();
                return skip_case_label();
            }
            if (w == "default" && (cur_.peek(1).is(":") || cur_.peek(1).is("->"))) {
                cur_.next();
                cur_.next();
                return;
            }
            if (w == "return" || w == "throw" || w == "yield" || w == "assert") {
                cur_.next();
                if (!cur_.peek().is(";")) expression();
                cur_.expect(";");
                return;
            }
            if (w == "break" || w == "continue") {
                cur_.next();
                if (is_name(cur_.peek())) cur_.next();
                cur_.expect(";");
                return;
            }
            if (is_type_decl_keyword(w) && is_name(cur_.peek(1))) {
                // Local type declaration: not analyzed.
                while (!cur_.at_end() && !cur_.peek().is("{")) cur_.next();
                cur_.skip_balanced();
                return;
            }
            if (is_name(t) && cur_.peek(1).is(":") && !cur_.peek(2).is(":")) {
                cur_.next();
                cur_.next();
                return;
            }
        }
        if (looks_like_declaration()) {
            declaration();
            cur_.expect(";");
            return;
        }
        Expr e = expression();
        if (e.kind == Expr::Kind::None && !cur_.peek().is(";")) throw ParseError{cur_.peek().line};
        cur_.expect(";");
    }

    void for_header() {
        cur_.expect("(");
        if (!cur_.peek().is(";")) {
            if (looks_like_declaration()) {
                declaration();
                if (cur_.accept(":")) {
                    expression();
                    cur_.expect(")");
                    return;
                }
            } else {
                expression_list();
            }
        }
        cur_.expect(";");
        if (!cur_.peek().is(";")) expression();
        cur_.expect(";");
        if (!cur_.peek().is(")")) expression_list();
        cur_.expect(")");
    }

    void try_resources() {
        cur_.expect("(");
        while (!cur_.peek().is(")")) {
            if (cur_.at_end()) throw ParseError{cur_.peek().line};
            if (looks_like_declaration()) {
                declaration();
            } else {
                expression();
            }
            if (!cur_.accept(";")) break;
        }
        cur_.expect(")");
    }

    void catch_clause() {
        cur_.expect("(");
        skip_modifiers(cur_);
        auto type = parse_type(cur_);
        if (!type) throw ParseError{cur_.peek().line};
        while (cur_.accept("|")) {
            if (!parse_type(cur_)) throw ParseError{cur_.peek().line};
            type = "Throwable";  // union: no single static type
        }
        if (!is_name(cur_.peek())) throw ParseError{cur_.peek().line};
        scope_.locals.emplace_back(cur_.next().text, *type);
        cur_.expect(")");
    }

    void skip_case_label() {
        while (!cur_.at_end()) {
            const Token& t = cur_.peek();
            if (t.is("->")) {
                cur_.next();
                return;
            }
            if (t.is(":") && !cur_.peek(1).is(":")) {
                cur_.next();
                return;
            }
            if (t.is(":")) {
                cur_.next();
            } else if (t.is(";") || t.is("{") || t.is("}")) {
                throw ParseError{t.line};
            }
            cur_.next();
        }
    }

    bool looks_like_declaration() {
        std::size_t start = cur_.pos();
        skip_modifiers(cur_);
        bool result = false;
        if (parse_type(cur_) && is_name(cur_.peek())) {
            const Token& after = cur_.peek(1);
            result = after.is("=") || after.is(";") || after.is(",") || after.is(":") || after.is("[");
        }
        cur_.seek(start);
        return result;
    }

    void declaration() {
        skip_modifiers(cur_);
        auto type = parse_type(cur_);
        if (!type) throw ParseError{cur_.peek().line};
        do {
            if (!is_name(cur_.peek())) throw ParseError{cur_.peek().line};
            std::string name = cur_.next().text;
            while (cur_.peek().is("[") && cur_.peek(1).is("]")) {
                cur_.next();
                cur_.next();
            }
            if (cur_.accept("=")) expression();
            scope_.locals.emplace_back(std::move(name), *type);
        } while (cur_.accept(","));
    }

    void expression_list() {
        do {
            expression();
        } while (cur_.accept(","));
    }

    static bool is_binary_operator(const Token& t) {
        if (t.kind == TokenKind::Punct) {
            static const std::set<std::string_view> kOps = {"=", "<", ">", "!", "~", "?", ":", "+", "-",
                                                            "*", "/", "&", "|", "^", "%", "->"};
            return kOps.count(t.text) > 0;
        }
        return t.is("instanceof");
    }

    Expr expression() {
        DepthGuard guard(*this);
        Expr e = unary();
        while (is_binary_operator(cur_.peek())) {
            const Token& op = cur_.next();
            if (op.is(":") && cur_.peek().is(":")) {  // method reference
                cur_.next();
                if (cur_.peek().kind == TokenKind::Ident) cur_.next();
            } else if (op.is("->") && cur_.peek().is("{")) {
                block();
            } else if (op.is("instanceof")) {
                skip_modifiers(cur_);
                parse_type(cur_);
                if (is_name(cur_.peek())) cur_.next();  // pattern binding
            } else {
                unary();
            }
            e = Expr::other();
        }
        return e;
    }

    static bool starts_operand(const Token& t) {
        if (t.kind == TokenKind::Number || t.kind == TokenKind::String || t.kind == TokenKind::Char) return true;
        if (t.kind == TokenKind::Ident)
            return is_name(t) || t.is("this") || t.is("super") || t.is("new") || is_primitive(t.text);
        return t.is("(") || t.is("!") || t.is("~");
    }

    Expr unary() {
        bool prefixed = false;
        while (cur_.peek().is("+") || cur_.peek().is("-") || cur_.peek().is("!") || cur_.peek().is("~")) {
            cur_.next();
            prefixed = true;
        }
        Expr e = primary();
        e = postfix(std::move(e));
        return prefixed && e.kind != Expr::Kind::None ? Expr::other() : e;
    }

    Expr primary() {
        const Token& t = cur_.peek();
        switch (t.kind) {
        case TokenKind::Number:
        case TokenKind::String:
        case TokenKind::Char:
            cur_.next();
            return Expr::other();
        case TokenKind::End:
            return Expr::none();
        case TokenKind::Punct:
            if (t.is("(")) return parenthesized();
            if (t.is("{")) {
                array_initializer();
                return Expr::other();
            }
            if (t.is("@")) {
                skip_annotation(cur_);
                return primary();
            }
            return Expr::none();
        case TokenKind::Ident:
            break;
        }

        const std::string& w = t.text;
        if (w == "new") return creation();
        if (w == "this" || w == "super") {
            cur_.next();
            if (cur_.peek().is("(")) {  // constructor delegation
                arguments();
                return Expr::other();
            }
            return {w == "this" ? Expr::Kind::This : Expr::Kind::Super, {}};
        }
        if (w == "true" || w == "false" || w == "null") {
            cur_.next();
            return Expr::other();
        }
        if (w == "switch") {
            cur_.next();
            paren_condition();
            if (!cur_.peek().is("{")) throw ParseError{cur_.peek().line};
            cur_.skip_balanced();
            return Expr::other();
        }
        if (detail::is_keyword(w) && !is_primitive(w)) throw ParseError{t.line};

        std::string name = cur_.next().text;
        if (cur_.peek().is("(")) {
            arguments();  // unqualified call: a method of the enclosing class
            return Expr::other();
        }
        return {Expr::Kind::Name, {std::move(name)}};
    }

    Expr parenthesized() {
        std::size_t close = cur_.matching(cur_.pos());
        if (close < cur_.end() && close > 0) {
            TokenCursor probe = cur_;
            probe.seek(close);
            if (probe.peek().is("->")) {  // lambda parameter list
                cur_.seek(close);
                return Expr::other();
            }
        }
        cur_.expect("(");
        expression_list();
        cur_.expect(")");
        if (starts_operand(cur_.peek())) unary();  // cast
        return Expr::other();
    }

    void array_initializer() {
        DepthGuard guard(*this);
        cur_.expect("{");
        while (!cur_.peek().is("}")) {
            expression();
            if (!cur_.accept(",")) break;
        }
        cur_.expect("}");
    }

    Expr creation() {
        cur_.next();
        skip_annotation(cur_);
        if (cur_.peek().is("<")) skip_type_arguments(cur_);
        if (!is_type_word(cur_.peek())) throw ParseError{cur_.peek().line};
        std::string type = cur_.next().text;
        while (cur_.peek().is(".") && is_type_word(cur_.peek(1))) {
            cur_.next();
            type += "." + cur_.next().text;
        }
        if (cur_.peek().is("<") && !skip_type_arguments(cur_)) throw ParseError{cur_.peek().line};

        if (cur_.peek().is("(")) {
            arguments();
            calls.push_back({qualify_type(scope_, type), "<init>"});
            if (cur_.peek().is("{")) cur_.skip_balanced();  // anonymous class body
            return Expr::other();
        }
        if (!cur_.peek().is("[")) throw ParseError{cur_.peek().line};
        while (cur_.accept("[")) {
            if (!cur_.peek().is("]")) expression();
            cur_.expect("]");
        }
        if (cur_.peek().is("{")) array_initializer();
        return Expr::other();
    }

    void arguments() {
        DepthGuard guard(*this);
        cur_.expect("(");
        if (cur_.accept(")")) return;
        for (;;) {
            expression();
            if (cur_.accept(",")) continue;
            cur_.expect(")");
            return;
        }
    }

    Expr postfix(Expr e) {
        for (;;) {
            if (cur_.peek().is(".")) {
                cur_.next();
                if (cur_.peek().is("<")) skip_type_arguments(cur_);
                if (cur_.peek().is("new")) {  // inner class creation: outer.new Inner()
                    creation();
                    e = Expr::other();
                    continue;
                }
                const Token& member = cur_.peek();
                if (member.kind != TokenKind::Ident) throw ParseError{member.line};
                cur_.next();
                if (cur_.peek().is("(")) {
                    arguments();
                    invoke(e, member.text, member.line);
                    e = Expr::other();
                } else {
                    e = select(std::move(e), member.text);
                }
            } else if (cur_.peek().is("[")) {
                cur_.next();
                if (!cur_.peek().is("]")) expression();
                cur_.expect("]");
                e = Expr::other();
            } else {
                return e;
            }
        }
    }

    static Expr select(Expr e, const std::string& member) {
        switch (e.kind) {
        case Expr::Kind::Name:
            e.segments.push_back(member);
            return e;
        case Expr::Kind::This:
            return {Expr::Kind::ThisField, {member}};
        default:
            return Expr::other();
        }
    }

    bool is_variable(const std::string& name) const {
        for (const auto& [local, _] : scope_.locals)
            if (local == name) return true;
        return scope_.fields.count(name) > 0;
    }

    void invoke(const Expr& receiver, const std::string& method, std::uint32_t line) {
        std::optional<std::string> owner;
        switch (receiver.kind) {
        case Expr::Kind::This:
        case Expr::Kind::Super:
        case Expr::Kind::None:
            return;  // calls on the enclosing class are not API usage
        case Expr::Kind::Name:
            if (receiver.segments.size() == 1) {
                owner = resolve_receiver(scope_, receiver.segments.front());
            } else if (!is_variable(receiver.segments.front()) &&
                       std::isupper(static_cast<unsigned char>(receiver.segments.back().front()))) {
                // Qualified static call: pkg.Type.m() or Outer.Inner.m()
                std::string joined = receiver.segments.front();
                for (std::size_t i = 1; i < receiver.segments.size(); ++i) joined += "." + receiver.segments[i];
                owner = qualify_type(scope_, joined);
            }
            break;
        case Expr::Kind::ThisField:
            if (auto it = scope_.fields.find(receiver.segments.front()); it != scope_.fields.end() &&
                                                                        it->second != "var")
                owner = qualify_type(scope_, it->second);
            break;
        case Expr::Kind::Other:
            break;
        }
        if (owner) {
            calls.push_back({*owner, method});
        } else {
            unresolved.push_back({line, DiagnosticKind::UnresolvedReceiver});
        }
    }

    TokenCursor cur_;
    ResolutionScope& scope_;
    int depth_ = 0;
};

struct MethodDecl {
    std::string name;
    std::uint32_t line;
    std::size_t params_begin;  // first token inside "("
    std::size_t params_end;    // the ")" token
    std::size_t body_begin;    // the "{" token
    std::size_t body_end;      // one past the closing "}", or the end of input
    bool terminated;
};

class FileParser {
public:
    FileParser(const detail::LexResult& lexed, std::string_view label)
        : tokens_(lexed.tokens), label_(label) {}

    ExtractionResult run() {
        TokenCursor cur(tokens_, 0, tokens_.size() - 1);
        while (!cur.at_end()) {
            const Token& t = cur.peek();
            if (t.is("package")) {
                cur.next();
                package_ = dotted_name(cur);
                skip_to_semicolon(cur);
            } else if (t.is("import")) {
                cur.next();
                import_decl(cur);
            } else if (t.kind == TokenKind::Ident && is_type_decl_keyword(t.text) && is_name(cur.peek(1))) {
                type_decl(cur, "", 0);
            } else if (t.is("@") && cur.peek(1).is("interface")) {
                cur.next();
            } else if (skip_annotation(cur)) {
            } else if (t.is("{")) {
                cur.skip_balanced();
            } else {
                cur.next();
            }
        }
        return std::move(result_);
    }

private:
    static std::string dotted_name(TokenCursor& cur) {
        std::string name;
        while (cur.peek().kind == TokenKind::Ident) {
            name += cur.next().text;
            if (!cur.peek().is(".")) break;
            cur.next();
            name += ".";
            if (cur.peek().is("*")) {
                cur.next();
                name += "*";
                break;
            }
        }
        return name;
    }

    static void skip_to_semicolon(TokenCursor& cur) {
        while (!cur.at_end() && !cur.peek().is(";") && !cur.peek().is("{") && !cur.peek().is("}")) cur.next();
        cur.accept(";");
    }

    void import_decl(TokenCursor& cur) {
        bool is_static = cur.accept("static");
        std::string name = dotted_name(cur);
        skip_to_semicolon(cur);
        if (is_static || name.empty() || name.back() == '*' || name.back() == '.') return;
        auto dot = name.rfind('.');
        if (dot == std::string::npos) return;
        imports_[name.substr(dot + 1)] = name;
    }

    // Cursor at class/interface/enum/record keyword.
    void type_decl(TokenCursor& cur, const std::string& outer, int depth) {
        cur.next();
        std::string simple = cur.next().text;
        std::string owner = !outer.empty() ? outer + "." + simple : package_.empty() ? simple : package_ + "." + simple;
        while (!cur.at_end() && !cur.peek().is("{") && !cur.peek().is(";")) {
            if (cur.peek().is("(")) {
                cur.skip_balanced();  // record header
            } else {
                cur.next();
            }
        }
        if (!cur.peek().is("{")) {
            cur.accept(";");
            return;
        }
        auto [body_end, closed] = cur.find_close(cur.pos());
        std::size_t inner_end = closed ? body_end - 1 : body_end;
        TokenCursor body(tokens_, cur.pos() + 1, inner_end);
        cur.seek(body_end);
        class_body(body, owner, simple, depth);
    }

    struct Member {
        enum class Kind { Method, NestedType } kind;
        MethodDecl method;
        std::size_t type_pos;
    };

    void class_body(TokenCursor cur, const std::string& owner, const std::string& simple, int depth) {
        ResolutionScope scope;
        scope.imports = imports_;
        std::vector<Member> members;

        while (!cur.at_end()) {
            std::size_t head_begin = cur.pos();
            std::vector<std::size_t> head;  // token indices, annotations removed
            bool initializer = false;
            bool done = false;
            while (!cur.at_end() && !done) {
                if (!initializer && skip_annotation(cur)) continue;
                const Token& t = cur.peek();
                if (t.is(";")) {
                    cur.next();
                    field_or_skip(head, scope);
                    done = true;
                } else if (t.is("{") && !initializer) {
                    member_with_body(cur, head, simple, members);
                    done = true;
                } else if (t.is("(") || t.is("[") || t.is("{")) {
                    std::size_t at = cur.pos();
                    bool square = t.is("[");
                    cur.skip_balanced();
                    head.push_back(at);
                    if (square && cur.pos() - 1 > at) head.push_back(cur.pos() - 1);
                } else if (t.is("}")) {
                    cur.next();  // stray closer
                    done = true;
                } else {
                    if (t.is("=")) initializer = true;
                    head.push_back(cur.pos());
                    cur.next();
                }
            }
            if (!done) field_or_skip(head, scope);
            if (cur.pos() == head_begin) cur.next();
        }

        for (const auto& m : members) {
            if (m.kind == Member::Kind::NestedType) {
                if (depth >= kMaxDepth) continue;
                TokenCursor nested(tokens_, m.type_pos, cur.end());
                type_decl(nested, owner, depth + 1);
            } else {
                method(m.method, owner, scope);
            }
        }
    }

    // head holds the member tokens seen before "{" (parens recorded as their
    // opening token only).
    void member_with_body(TokenCursor& cur, const std::vector<std::size_t>& head, const std::string& simple,
                          std::vector<Member>& members) {
        std::size_t open = cur.pos();
        auto [close, closed] = cur.find_close(open);
        cur.seek(close);

        for (std::size_t k = 0; k < head.size(); ++k) {
            const Token& t = tokens_[head[k]];
            if (t.kind == TokenKind::Ident && is_type_decl_keyword(t.text) && k + 1 < head.size() &&
                is_name(tokens_[head[k + 1]])) {
                members.push_back({Member::Kind::NestedType, {}, head[k]});
                return;
            }
        }
        for (std::size_t k = 1; k < head.size(); ++k) {
            if (!tokens_[head[k]].is("(") || !is_name(tokens_[head[k - 1]])) continue;
            const Token& name_tok = tokens_[head[k - 1]];
            MethodDecl m;
            m.name = name_tok.text == simple && (k == 1 || !is_type_word(tokens_[head[k - 2]]) ||
                                                 is_modifier(tokens_[head[k - 2]].text))
                         ? "<init>"
                         : name_tok.text;
            m.line = name_tok.line;
            m.params_begin = head[k] + 1;
            TokenCursor probe(tokens_, head[k], cur.end());
            m.params_end = probe.matching(head[k]) - 1;
            m.body_begin = open;
            m.body_end = close;
            m.terminated = closed;
            members.push_back({Member::Kind::Method, std::move(m), 0});
            return;
        }
        // Initializer blocks and enum constant bodies are not analyzed.
    }

    // "Type name (= init)? (, name (= init)?)* ;"
    void field_or_skip(const std::vector<std::size_t>& head, ResolutionScope& scope) const {
        std::vector<Token> toks;
        for (auto i : head) toks.push_back(tokens_[i]);
        toks.push_back(tokens_.back());
        TokenCursor cur(toks, 0, toks.size() - 1);
        skip_modifiers(cur);
        auto type = parse_type(cur);
        if (!type) return;
        while (is_name(cur.peek())) {
            std::string name = cur.next().text;
            while (cur.peek().is("[")) cur.next();
            if (cur.peek().is("(")) return;  // method without body
            if (cur.accept("=")) {
                while (!cur.at_end() && !cur.peek().is(",")) cur.next();
            }
            scope.fields[name] = *type;
            if (!cur.accept(",")) break;
        }
    }

    static bool brackets_balanced(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
        std::vector<char> stack;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& t = tokens[i];
            if (t.kind != TokenKind::Punct || t.text.size() != 1) continue;
            char c = t.text[0];
            if (c == '(' || c == '[' || c == '{') {
                stack.push_back(c);
            } else if (c == ')' || c == ']' || c == '}') {
                char want = c == ')' ? '(' : c == ']' ? '[' : '{';
                if (stack.empty() || stack.back() != want) return false;
                stack.pop_back();
            }
        }
        return stack.empty();
    }

    void parameters(const MethodDecl& m, ResolutionScope& scope) const {
        if (m.params_end <= m.params_begin) return;
        std::vector<Token> toks(tokens_.begin() + static_cast<std::ptrdiff_t>(m.params_begin),
                                tokens_.begin() + static_cast<std::ptrdiff_t>(m.params_end));
        toks.push_back(tokens_.back());
        TokenCursor cur(toks, 0, toks.size() - 1);
        while (!cur.at_end()) {
            skip_modifiers(cur);
            auto type = parse_type(cur);
            if (type && is_name(cur.peek())) scope.locals.emplace_back(cur.next().text, *type);
            int angle = 0;
            while (!cur.at_end()) {
                const Token& t = cur.next();
                if (t.is("<")) ++angle;
                if (t.is(">")) --angle;
                if (t.is(",") && angle <= 0) break;
            }
        }
    }

    void method(const MethodDecl& m, const std::string& owner, const ResolutionScope& class_scope) {
        const std::size_t inner_begin = m.body_begin + 1;
        const std::size_t inner_end = m.terminated ? m.body_end - 1 : m.body_end;
        if (!m.terminated || !brackets_balanced(tokens_, inner_begin, inner_end)) {
            result_.diagnostics.push_back({m.line, DiagnosticKind::SkippedMethod});
            return;
        }
        ResolutionScope scope = class_scope;
        parameters(m, scope);
        BodyParser parser(TokenCursor(tokens_, inner_begin, inner_end), scope);
        try {
            parser.parse();
        } catch (const ParseError&) {
            result_.diagnostics.push_back({m.line, DiagnosticKind::SkippedMethod});
            return;
        }
        result_.diagnostics.insert(result_.diagnostics.end(), parser.unresolved.begin(), parser.unresolved.end());
        if (parser.calls.empty()) return;
        CallSequence seq;
        seq.id = std::string(label_) + "#" + std::to_string(result_.sequences.size());
        seq.calls = std::move(parser.calls);
        seq.origin_owner = owner;
        seq.origin_method = m.name;
        seq.origin_file = std::string(label_);
        result_.sequences.push_back(std::move(seq));
    }

    const std::vector<Token>& tokens_;
    std::string_view label_;
    std::string package_;
    std::map<std::string, std::string> imports_;
    ExtractionResult result_;
};

}  // namespace

ExtractionResult extract_file(std::string_view source_text, std::string_view file_label) {
    auto lexed = detail::lex(source_text);
    auto result = FileParser(lexed, file_label).run();
    result.diagnostics.insert(result.diagnostics.end(), lexed.diagnostics.begin(), lexed.diagnostics.end());
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const ExtractionDiagnostic& a, const ExtractionDiagnostic& b) { return a.line < b.line; });
    for (auto& d : result.diagnostics) d.line = std::min(d.line, lexed.line_count);
    return result;
}

}  // namespace orbas
