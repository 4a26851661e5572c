#include "lieforge/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace lieforge {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);

    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!den.empty() && (den.front() == '-' || den.front() == '+')) {
        negative = negative != (den.front() == '-');
        den.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");

    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");

    Scalar value(n, d);
    value.canonicalize();
    return negative ? Scalar(-value) : value;
}

std::string to_string(const Scalar& value)
{
    return value.get_str(10);
}

}  // namespace lieforge
