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


#include "prepub/cli/archive.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prepub::cli {
namespace {

constexpr std::size_t kBlock = 512;

std::string field(const char* p, std::size_t n) {
  std::size_t len = 0;
  while (len < n && p[len] != '\0') ++len;
  return std::string(p, len);
}

std::uint64_t octal(const char* p, std::size_t n) {
  std::uint64_t v = 0;
  std::size_t i = 0;
  while (i < n && (p[i] == ' ' || p[i] == '\0')) ++i;
  for (; i < n && p[i] >= '0' && p[i] <= '7'; ++i) v = v * 8 + static_cast<std::uint64_t>(p[i] - '0');
  return v;
}

bool checksum_ok(const char* h) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < kBlock; ++i) {
    sum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(h[i]);
  }
  return sum == octal(h + 148, 8);
}

}  // namespace

std::vector<ArchiveMember> parse_tar(const std::string& bytes) {
  std::vector<ArchiveMember> out;
  std::string long_name;
  std::size_t pos = 0;
  while (pos + kBlock <= bytes.size()) {
    const char* h = bytes.data() + pos;
    bool zero = true;
    for (std::size_t i = 0; i < kBlock && zero; ++i) zero = h[i] == '\0';
    if (zero) return out;
    if (!checksum_ok(h)) throw std::runtime_error("tar header checksum mismatch at offset " + std::to_string(pos));

    const std::uint64_t size = octal(h + 124, 12);
    const char type = h[156];
    std::string name = field(h, 100);
    if (field(h + 257, 5) == "ustar") {
      const std::string prefix = field(h + 345, 155);
      if (!prefix.empty()) name = prefix + "/" + name;
    }
    pos += kBlock;
    if (pos + size > bytes.size()) throw std::runtime_error("truncated tar member '" + name + "'");
    std::string data = bytes.substr(pos, size);
    pos += (size + kBlock - 1) / kBlock * kBlock;

    if (type == 'L') {
      long_name = field(data.data(), data.size());
      continue;
    }
    if (!long_name.empty()) {
      name = std::move(long_name);
      long_name.clear();
    }
    if (type == '0' || type == '\0') out.push_back({std::move(name), std::move(data)});
  }
  if (pos != bytes.size()) throw std::runtime_error("truncated tar archive");
  return out;
}

std::vector<ArchiveMember> read_tar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tar(ss.str());
}

}  // namespace prepub::cli
