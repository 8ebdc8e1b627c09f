#include "orbas/ratio.hpp"

#include "orbas/error.hpp"

#include <cctype>
#include <limits>

namespace orbas {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw InvalidArgument("not a number: '" + std::string(whole) + "'");
    std::int64_t value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidArgument("not a number: '" + std::string(whole) + "'");
        if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
            throw InvalidArgument("number too large: '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Ratio parse_ratio(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_digits(text.substr(0, slash), text);
        auto den = parse_digits(text.substr(slash + 1), text);
        if (den == 0) throw InvalidArgument("zero denominator: '" + std::string(text) + "'");
        return Ratio(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Ratio(parse_digits(text, text));

    auto int_part = text.substr(0, dot);
    auto frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    if (frac_part.size() > 15) throw InvalidArgument("too many decimals: '" + std::string(text) + "'");
    std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
    std::int64_t frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    if (whole > std::numeric_limits<std::int64_t>::max() / scale - 1)
        throw InvalidArgument("number too large: '" + std::string(text) + "'");
    return Ratio(whole * scale + frac, scale);
}

Ratio parse_unit_ratio(std::string_view text) {
    Ratio r = parse_ratio(text);
    if (r < 0 || r > 1) throw InvalidArgument("value outside [0,1]: '" + std::string(text) + "'");
    return r;
}

std::string to_string(const Ratio& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Ratio& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t ceil_nonneg(const Ratio& r) {
    auto q = r.numerator() / r.denominator();
    return r.numerator() % r.denominator() == 0 ? q : q + 1;
}

}  // namespace orbas
