// Copyright 2026 The prepub Authors
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

#include <string>
#include <string_view>

namespace prepub::utf8 {

/// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

/// Number of code points; agrees with decode(text).size().
std::size_t length(std::string_view text);

}  // namespace prepub::utf8
