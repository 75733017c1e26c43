// Copyright 2026 The ipgkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipgkit/rational.h"

#include <charconv>
#include <cmath>
#include <system_error>

namespace ipgkit {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kLimitExceeded: return "limit-exceeded";
    case ErrorCode::kMembership: return "membership";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

namespace {

using boost::multiprecision::mpz_int;

mpz_int parseInteger(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorCode::kParse, "malformed number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(ErrorCode::kParse, "malformed number '" + std::string(whole) + "'");
  }
  // Leading zeros would select octal in the mpz string constructor.
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? mpz_int(0) : mpz_int(std::string(digits.substr(first)));
}

Rational parseDecimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    text = text.substr(0, e);
    auto first = exp_text.data();
    if (!exp_text.empty() && exp_text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) {
      throw Error(ErrorCode::kParse, "malformed exponent in '" + std::string(whole) + "'");
    }
  }
  std::string digits;
  if (auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot_pos);
    std::string_view frac_part = text.substr(dot_pos + 1);
    if (int_part.empty() && frac_part.empty()) throw Error(ErrorCode::kParse, "malformed number '" + std::string(whole) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    digits = std::string(text);
  }
  mpz_int mantissa = parseInteger(digits, whole);
  if (std::labs(exponent) > 4000) throw Error(ErrorCode::kParse, "exponent out of range in '" + std::string(whole) + "'");
  mpz_int scale = boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parseRational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::kParse, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    mpz_int n = parseInteger(num, whole);
    mpz_int d = parseInteger(den, whole);
    if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(whole) + "'");
    Rational value(n, d);
    return negative ? Rational(-value) : value;
  }
  return parseDecimal(text, whole);
}

Rational rationalFromDouble(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::kParse, "non-finite number");
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error(ErrorCode::kParse, "cannot format number");
  return parseRational(std::string_view(buffer, ptr - buffer));
}

std::string toString(const Rational& value) {
  if (boost::multiprecision::denominator(value) == 1) {
    return boost::multiprecision::numerator(value).str();
  }
  return value.str();
}

double toDouble(const Rational& value) { return value.convert_to<double>(); }

Rational defaultTolerance() { return Rational(1, 1000000); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "dot: length mismatch");
  Rational sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0 && b[k] != 0) sum += a[k] * b[k];
  }
  return sum;
}

Rational dot(const RationalVector& coeffs, const Strategy& x) {
  if (coeffs.size() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "dot: length mismatch");
  Rational sum = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != 0) sum += coeffs[k] * x[k];
  }
  return sum;
}

std::string toString(const Strategy& x) {
  std::string out = "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(x[k]);
  }
  return out + ")";
}

std::optional<std::vector<std::int64_t>> scaleToIntegers(const RationalVector& values) {
  using boost::multiprecision::mpz_int;
  mpz_int scale = 1;
  for (const auto& v : values) {
    const mpz_int den = boost::multiprecision::denominator(v);
    scale = scale / boost::multiprecision::gcd(scale, den) * den;
  }
  const mpz_int limit = mpz_int(1) << 62;
  mpz_int total = 0;
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    mpz_int x = boost::multiprecision::numerator(v) * (scale / boost::multiprecision::denominator(v));
    total += abs(x);
    if (total >= limit) return std::nullopt;
    out.push_back(x.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace ipgkit
