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

#include <optional>
#include <string>
#include <string_view>

namespace prepub {

/// Strips resolver prefixes ("https://doi.org/", "http://dx.doi.org/",
/// "doi:"), trims whitespace and lowercases. Throws MalformedDoi unless the
/// result has the shape "10.<registrant>/<suffix>".
std::string normalize_doi(std::string_view raw);

/// As normalize_doi, but returns nullopt instead of throwing.
std::optional<std::string> try_normalize_doi(std::string_view raw);

}  // namespace prepub
