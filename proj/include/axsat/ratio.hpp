#pragma once
#include <cstdint>

namespace axsat {

// Exact rational on int64, always normalized with den > 0. Bits-per-symbol
// values are kept in this form so that symbol-count ceilings never see
// floating point rounding (e.g. 5/6-rate codes on 1960 subcarriers).
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t n) : num(n), den(1) {}
  Ratio(std::int64_t n, std::int64_t d);

  Ratio operator*(const Ratio& o) const;
  Ratio operator+(const Ratio& o) const;
  bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
  bool positive() const { return num > 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Ratio operator*(std::int64_t k, const Ratio& r);

// ceil(bits / rate) for rate > 0: the OFDM symbol count needed for a payload.
std::int64_t ceil_div(std::int64_t bits, const Ratio& rate);

}  // namespace axsat
