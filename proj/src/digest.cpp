// Copyright 2026 The hamlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamlearn/digest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>

#include "hamlearn/errors.hpp"

namespace hamlearn {

namespace {

Digest sha256_bytes(const void* data, std::size_t len) {
  Digest out{};
  unsigned int written = 0;
  if (EVP_Digest(data, len, out.data(), &written, EVP_sha256(), nullptr) != 1 || written != out.size()) {
    throw Error("SHA-256 computation failed");
  }
  return out;
}

}  // namespace

Digest sha256(std::string_view data) { return sha256_bytes(data.data(), data.size()); }

Digest sha256(const std::vector<std::uint8_t>& data) { return sha256_bytes(data.data(), data.size()); }

std::string to_hex(const Digest& d) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : d) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open file for digest");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return to_hex(sha256(bytes));
}

}  // namespace hamlearn
