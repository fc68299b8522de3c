/*
 * Copyright 2026 The costbound Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef COSTBOUND_TIMESTAMP_H_
#define COSTBOUND_TIMESTAMP_H_

#include <chrono>
#include <string>
#include <string_view>

namespace costbound {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDThh:mm[:ss[.fff]]" with an optional
// "Z" or "+hh:mm"/"-hh:mm" suffix. Throws DataError on anything else.
Timestamp parse_timestamp(std::string_view text);

// Always "YYYY-MM-DDThh:mm:ssZ".
std::string format_timestamp(Timestamp t);

inline Timestamp days_after(Timestamp t, int days) {
  return t + std::chrono::days(days);
}

}  // namespace costbound

#endif  // COSTBOUND_TIMESTAMP_H_
