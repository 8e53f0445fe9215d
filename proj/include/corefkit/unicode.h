// Copyright 2026 The corefkit Authors.
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

#ifndef COREFKIT_UNICODE_H_
#define COREFKIT_UNICODE_H_

#include <string>
#include <string_view>

namespace corefkit {

inline constexpr char32_t kReplacementCharacter = 0xFFFD;

// Unicode general category P*, plus the Indic danda marks.
bool IsPunctuation(char32_t cp);

// Unicode White_Space property.
bool IsWhitespace(char32_t cp);

// Lenient UTF-8 decoder; malformed sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view text);

}  // namespace corefkit

#endif  // COREFKIT_UNICODE_H_
