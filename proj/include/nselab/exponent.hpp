#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nselab {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/4" or "inf". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

/// Lebesgue exponent in [1, inf], stored exactly.
///
/// All exponent formulas in this library are written in terms of reciprocals,
/// so the type keeps the reciprocal as its canonical representation:
/// 1/inf = 0 and no arithmetic ever touches floating point.
class Exponent {
public:
    /// Default is the Hilbert exponent 2.
    Exponent() : reciprocal_(1, 2) {}
    Exponent(long long value) : Exponent(Rational(value)) {}
    explicit Exponent(const Rational& value);

    static Exponent infinity();
    /// Builds the exponent whose reciprocal is `inv`. Requires 0 <= inv <= 1.
    static Exponent from_reciprocal(const Rational& inv);
    static Exponent parse(std::string_view text);

    [[nodiscard]] bool is_infinite() const { return reciprocal_ == 0; }
    [[nodiscard]] const Rational& reciprocal() const { return reciprocal_; }
    /// Finite value; throws std::domain_error for infinity.
    [[nodiscard]] Rational value() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.reciprocal_ == b.reciprocal_; }
    /// Ordering of the exponents themselves (larger exponent = smaller reciprocal).
    friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b)
    {
        if (a.reciprocal_ == b.reciprocal_) return std::strong_ordering::equal;
        return a.reciprocal_ > b.reciprocal_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    struct FromReciprocal {};
    Exponent(FromReciprocal, Rational inv) : reciprocal_(std::move(inv)) {}

    Rational reciprocal_;
};

inline std::string to_string(const Exponent& e) { return e.str(); }

}  // namespace nselab
