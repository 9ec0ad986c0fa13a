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

#include <stdexcept>
#include <string>

namespace prepub {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedDoi : public Error {
 public:
  explicit MalformedDoi(const std::string& raw)
      : Error("malformed DOI: '" + raw + "'"), raw_(raw) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

class UnparsableRecord : public Error {
 public:
  using Error::Error;
};

/// The on-disk store holds a record that cannot be decoded.
class StoreCorruption : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

/// OAI-PMH error response; code() is the protocol's error code attribute.
class ProtocolError : public Error {
 public:
  ProtocolError(std::string code, const std::string& message)
      : Error("OAI-PMH error " + code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class TokenExpired : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class MalformedResponse : public Error {
 public:
  using Error::Error;
};

class DownloadFailed : public Error {
 public:
  using Error::Error;
};

class OutOfRangeScore : public Error {
 public:
  using Error::Error;
};

class MetricMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace prepub
