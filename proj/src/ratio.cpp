#include "axsat/ratio.hpp"

#include <numeric>
#include <stdexcept>

namespace axsat {

Ratio::Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Ratio Ratio::operator*(const Ratio& o) const { return Ratio(num * o.num, den * o.den); }

Ratio Ratio::operator+(const Ratio& o) const {
  return Ratio(num * o.den + o.num * den, den * o.den);
}

Ratio operator*(std::int64_t k, const Ratio& r) { return Ratio(k * r.num, r.den); }

std::int64_t ceil_div(std::int64_t bits, const Ratio& rate) {
  if (!rate.positive()) throw std::invalid_argument("ceil_div: rate must be positive");
  if (bits <= 0) return 0;
  // ceil(bits / (num/den)) = ceil(bits*den / num)
  const std::int64_t x = bits * rate.den;
  return (x + rate.num - 1) / rate.num;
}

}  // namespace axsat
