// Copyright 2026 The ccmix Authors
//
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

#pragma once

// Constants and helpers shared by the scalar and vector kernel variants.
// Internal to src/simd.

#include <cstdint>

namespace ccmix::simd::detail {

// fdlibm log: log(1+f) = f - f^2/2 + s*(f^2/2 + R(s^2)), s = f/(2+f).
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

// Mantissa offset that pushes m >= sqrt(2) into the next binade.
inline constexpr std::int64_t kSqrt2Carry = 0x95f64;
inline constexpr std::int64_t kPolyLo = 0x6147a;
inline constexpr std::int64_t kPolyHi = 0x6b851;

} // namespace ccmix::simd::detail
