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

#include <filesystem>
#include <string>
#include <vector>

namespace prepub::cli {

struct ArchiveMember {
  std::string name;
  std::string data;
};

/// Regular-file members of a POSIX ustar (or GNU) tar archive, in archive
/// order. GNU long names are honoured; other entry types are skipped.
/// Throws std::runtime_error on a truncated or corrupt archive.
std::vector<ArchiveMember> read_tar(const std::filesystem::path& path);
std::vector<ArchiveMember> parse_tar(const std::string& bytes);

}  // namespace prepub::cli
