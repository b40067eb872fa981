#include "parikh/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "parikh/error.hpp"

namespace parikh {

namespace {

bool all_digits(std::string_view text)
{
    return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

BigInt parse_natural(std::string_view text)
{
    if (!all_digits(text))
        throw InputError("expected a non-negative decimal integer, got '" + std::string(text) + "'");
    return BigInt(std::string(text), 10);
}

BigInt parse_integer(std::string_view text)
{
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        BigInt magnitude = parse_natural(text.substr(1));
        return text.front() == '-' ? BigInt(-magnitude) : magnitude;
    }
    return parse_natural(text);
}

Rational parse_fraction(std::string_view text)
{
    if (text.find_first_of(".eE") != std::string_view::npos)
        throw InputError("decimal literal '" + std::string(text) + "' rejected; write probabilities as m/d");
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_natural(text.substr(slash + 1));
    if (den == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str(10);
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Rational make_rational(const BigInt& num, const BigInt& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool fits_u64(const BigInt& value)
{
    return value >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& value)
{
    if (!fits_u64(value))
        throw SizeError("integer " + to_string(value) + " does not fit in 64 bits");
    // mpz_get_ui is only 64 bits wide on LP64; go through export to stay portable.
    std::uint64_t out = 0;
    std::size_t count = 0;
    mpz_export(&out, &count, -1, sizeof(out), 0, 0, value.get_mpz_t());
    return count == 0 ? 0 : out;
}

BigInt binomial(const BigInt& n, const BigInt& k)
{
    if (k < 0 || k > n)
        return 0;
    BigInt small = k;
    BigInt rest = n - k;
    if (rest < small)
        small = rest;
    // Beyond this the result has more digits than any machine could hold.
    if (small > BigInt(std::numeric_limits<unsigned long>::max() >> 8))
        throw SizeError("binomial coefficient with " + to_string(small) + " factors is out of reach");
    BigInt out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), small.get_ui());
    return out;
}

BigInt multinomial(std::vector<BigInt> parts)
{
    std::sort(parts.begin(), parts.end(), [](const BigInt& a, const BigInt& b) { return a > b; });
    BigInt result = 1;
    BigInt total = 0;
    for (const BigInt& part : parts) {
        total += part;
        result *= binomial(total, part);
    }
    return result;
}

BigInt factorial(std::uint64_t n)
{
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

bool bit(const BigInt& value, const BigInt& index)
{
    if (index < 0)
        throw InputError("negative bit index");
    if (value < 0)
        throw InputError("bit extraction on a negative number");
    if (BigInt(mpz_sizeinbase(value.get_mpz_t(), 2)) <= index)
        return false;
    return mpz_tstbit(value.get_mpz_t(), index.get_ui()) != 0;
}

BigInt floor(const Rational& value)
{
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

} // namespace parikh
