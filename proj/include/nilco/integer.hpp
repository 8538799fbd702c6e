#ifndef NILCO_INTEGER_HPP
#define NILCO_INTEGER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace nilco {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Floor division and the matching nonnegative remainder (for b > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

struct ExtendedGcd {
    Integer g; // nonnegative
    Integer s;
    Integer t; // s*a + t*b == g
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

Integer lcm(const Integer& a, const Integer& b);

bool fits_int64(const Integer& x);
std::int64_t to_int64(const Integer& x);

// Accepts an optional sign followed by decimal digits.
std::optional<Integer> parse_integer(std::string_view text);

std::string to_string(const Integer& x);
std::string to_string(const IntVector& v);

IntVector zero_vector(std::size_t n);
bool is_zero(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& k, const IntVector& v);

// A cardinality that is either a nonnegative integer or infinite.
class Count {
public:
    Count() = default;
    explicit Count(Integer value) : value_(std::move(value)) {}
    static Count infinite() { return Count{}; }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    const Integer& value() const;

    std::string to_string() const;

    friend bool operator==(const Count& a, const Count& b);

private:
    std::optional<Integer> value_;
};

} // namespace nilco

#endif
