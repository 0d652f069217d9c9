#include "tiler/rational.hpp"

#include <stdexcept>

namespace tiler {

std::string rat_string(const Rat& q) {
    return rat_num(q).str() + "/" + rat_den(q).str();
}

std::string rat_decimal(const Rat& q, int digits) {
    BigInt num = rat_num(q);
    BigInt den = rat_den(q);
    bool negative = num < 0;
    if (negative) num = -num;
    BigInt scale = int_pow(10, digits);
    BigInt scaled = num * scale / den;
    BigInt whole = scaled / scale;
    BigInt frac = scaled % scale;
    std::string f = frac.str();
    f.insert(f.begin(), static_cast<size_t>(digits) - f.size(), '0');
    return (negative ? "-" : "") + whole.str() + "." + f;
}

Rat parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: '" + text + "'");
    }
}

BigInt int_pow(const BigInt& base, int exponent) {
    BigInt out = 1;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

bool at_least_one_minus_sqrt(const Rat& value, const Rat& eps) {
    if (value >= 1) return true;
    Rat gap = 1 - value;
    return gap * gap <= eps;
}

}  // namespace tiler
