#include "distrecon/scalar.hpp"

#include <cctype>

namespace distrecon {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    // Trim surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw invalid_input("empty number");

    const std::string original(text);

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) throw invalid_input("not a number: '" + original + "'");

    // Explicit fraction "p/q".
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw invalid_input("not a number: '" + original + "'");
        }
        Int n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) throw invalid_input("zero denominator: '" + original + "'");
        Rat q(n, d);
        q.canonicalize();
        return negative ? Rat(-q) : q;
    }

    // Decimal with optional exponent: int[.frac][e[sign]digits]
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = text.substr(0, epos);
        std::string_view exp = text.substr(epos + 1);
        bool exp_neg = false;
        if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
            exp_neg = exp.front() == '-';
            exp.remove_prefix(1);
        }
        if (!all_digits(exp) || exp.size() > 6) {
            throw invalid_input("not a number: '" + original + "'");
        }
        exponent = std::stol(std::string(exp));
        if (exp_neg) exponent = -exponent;
    }

    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
        throw invalid_input("not a number: '" + original + "'");
    }
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
        throw invalid_input("not a number: '" + original + "'");
    }

    std::string digits;
    digits.reserve(int_part.size() + frac_part.size());
    digits.append(int_part);
    digits.append(frac_part);
    if (digits.empty()) throw invalid_input("not a number: '" + original + "'");

    Int numerator(digits, 10);
    long shift = exponent - static_cast<long>(frac_part.size());

    Rat result(numerator);
    if (shift > 0) {
        Int pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        result *= Rat(pow10);
    } else if (shift < 0) {
        Int pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        result /= Rat(pow10);
    }
    result.canonicalize();
    return negative ? Rat(-result) : result;
}

std::string rational_to_string(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace distrecon
