#include "nilco/integer.hpp"

#include <stdexcept>

namespace nilco {

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_mod(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b)
{
    ExtendedGcd out;
    mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return out;
}

Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool fits_int64(const Integer& x)
{
    static const Integer lo{"-9223372036854775808"};
    static const Integer hi{"9223372036854775807"};
    return x >= lo && x <= hi;
}

std::int64_t to_int64(const Integer& x)
{
    if (!fits_int64(x))
        throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
    // mpz_get_si is exact for values within long on LP64
    return static_cast<std::int64_t>(mpz_get_si(x.get_mpz_t()));
}

std::optional<Integer> parse_integer(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        return std::nullopt;
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            return std::nullopt;
    std::string digits{text.substr(text[0] == '+' ? 1 : 0)};
    return Integer{digits, 10};
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const IntVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

IntVector zero_vector(std::size_t n) { return IntVector(n, Integer{0}); }

bool is_zero(const IntVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

IntVector add(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector length mismatch");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

IntVector sub(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector length mismatch");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

IntVector scale(const Integer& k, const IntVector& v)
{
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = k * v[i];
    return r;
}

const Integer& Count::value() const
{
    if (!value_)
        throw std::logic_error("value() on an infinite count");
    return *value_;
}

std::string Count::to_string() const { return value_ ? value_->get_str() : "infinite"; }

bool operator==(const Count& a, const Count& b)
{
    if (a.is_infinite() || b.is_infinite())
        return a.is_infinite() && b.is_infinite();
    return *a.value_ == *b.value_;
}

} // namespace nilco
