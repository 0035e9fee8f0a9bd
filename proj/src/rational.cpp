#include "rategraph/rational.hpp"

#include <cctype>

#include "rategraph/errors.hpp"

namespace rategraph {

namespace {

bool is_integer_literal(const std::string& text) {
    if (text.empty()) {
        return false;
    }
    std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    if (i == text.size()) {
        return false;
    }
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return false;
        }
    }
    return true;
}

// Base-10 regardless of leading zeros (the BigInt string constructor would
// read "025" as octal).
BigInt decimal_bigint(const std::string& text) {
    std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    while (i + 1 < text.size() && text[i] == '0') {
        ++i;
    }
    BigInt value(text.substr(i));
    if (text[0] == '-') {
        value = -value;
    }
    return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const std::string num = text.substr(0, slash);
            const std::string den = text.substr(slash + 1);
            if (!is_integer_literal(num) || !is_integer_literal(den)) {
                throw ValidationError("not a rational literal: \"" + text + "\"");
            }
            const BigInt d = decimal_bigint(den);
            if (d == 0) {
                throw ValidationError("zero denominator in \"" + text + "\"");
            }
            return Rational(decimal_bigint(num), d);
        }
        if (is_integer_literal(text)) {
            return Rational(decimal_bigint(text));
        }
        // Decimal form, e.g. "0.25": exact scaling by a power of ten.
        const auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const std::size_t frac_len = text.size() - dot - 1;
            if (frac_len == 0 || !is_integer_literal(digits)) {
                throw ValidationError("not a rational literal: \"" + text + "\"");
            }
            BigInt scale = 1;
            for (std::size_t i = 0; i < frac_len; ++i) {
                scale *= 10;
            }
            return Rational(decimal_bigint(digits), scale);
        }
    } catch (const std::exception&) {
        throw ValidationError("not a rational literal: \"" + text + "\"");
    }
    throw ValidationError("not a rational literal: \"" + text + "\"");
}

std::string to_string(const Rational& value) {
    return value.str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace rategraph
