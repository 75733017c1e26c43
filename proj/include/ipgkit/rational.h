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

#ifndef IPGKIT_RATIONAL_H_
#define IPGKIT_RATIONAL_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace ipgkit {

// Exact arithmetic for payoffs, constraints and certificates.
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// A pure strategy of one player: a 0/1 vector.
using Strategy = std::vector<int>;

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kInfeasible,
  kNumerical,
  kLimitExceeded,
  kMembership,
  kParse,
  kIo,
};

std::string_view errorCodeName(ErrorCode code);

// Structured error raised by every module of the toolkit.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parses "p", "p/q", or a finite decimal such as "-0.125" or "1e-6".
Rational parseRational(std::string_view text);

// Exact decimal value of the shortest round-trip representation of `value`.
Rational rationalFromDouble(double value);

// "p" for integers, "p/q" otherwise.
std::string toString(const Rational& value);

double toDouble(const Rational& value);

inline Rational makeRational(std::int64_t num, std::int64_t den = 1) {
  return Rational(num, den);
}

// Default absolute tolerance (1e-6).
Rational defaultTolerance();

Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const RationalVector& coeffs, const Strategy& x);

std::string toString(const Strategy& x);

// values * lcm(denominators) as int64, or nothing when the sum of absolute
// values reaches 2^62 (so sums of any subset cannot overflow).
std::optional<std::vector<std::int64_t>> scaleToIntegers(const RationalVector& values);

}  // namespace ipgkit

#endif  // IPGKIT_RATIONAL_H_
