#include "nselab/exponent.hpp"

#include <charconv>

namespace nselab {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole)
{
    if (text.empty()) throw std::invalid_argument("malformed fraction: '" + std::string(whole) + "'");
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("malformed fraction: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("malformed fraction: '" + std::string(whole) + "'");
    }
    std::string digits(text.front() == '+' ? text.substr(1) : text);
    return boost::multiprecision::cpp_int(digits);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& value)
{
    auto num = boost::multiprecision::numerator(value);
    auto den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Exponent::Exponent(const Rational& value)
{
    if (value < 1) throw std::domain_error("Lebesgue exponent must be >= 1, got " + to_string(value));
    reciprocal_ = 1 / value;
}

Exponent Exponent::infinity() { return Exponent(FromReciprocal{}, Rational(0)); }

Exponent Exponent::from_reciprocal(const Rational& inv)
{
    if (inv < 0 || inv > 1)
        throw std::domain_error("reciprocal exponent must lie in [0,1], got " + to_string(inv));
    return Exponent(FromReciprocal{}, inv);
}

Exponent Exponent::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    return Exponent(parse_rational(text));
}

Rational Exponent::value() const
{
    if (is_infinite()) throw std::domain_error("infinite exponent has no finite value");
    return 1 / reciprocal_;
}

double Exponent::to_double() const
{
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(1 / reciprocal_);
}

std::string Exponent::str() const { return is_infinite() ? std::string("inf") : to_string(value()); }

}  // namespace nselab
