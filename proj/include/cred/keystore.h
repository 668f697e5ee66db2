// Copyright 2026 The cred Authors.
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "cred/codec.h"
#include "cred/status.h"

namespace cred {

// Writes `bytes` to `path` through a temporary file and rename, so readers
// never observe a partial file. With `owner_only` the file is made 0600; a
// failure to restrict permissions is reported on stderr but is not fatal.
Status WriteFileAtomic(const std::filesystem::path& path, ByteView bytes,
                       bool owner_only = false);
Result<Bytes> ReadFile(const std::filesystem::path& path);

template <typename T>
Status Store(const std::filesystem::path& path, const T& artifact) {
  constexpr bool kSecret = std::is_same_v<T, RevMasterSecretKey> ||
                           std::is_same_v<T, BaseMsk>;
  return WriteFileAtomic(path, Encode(artifact), kSecret);
}

template <typename T>
Result<T> Load(const std::filesystem::path& path) {
  CRED_ASSIGN_OR_RETURN(Bytes bytes, ReadFile(path));
  return Decode<T>(bytes);
}

// Authority state directory:
//   mpk.<epoch>.crd   one snapshot per epoch, never rewritten
//   msk.crd
//   key.<i>.crd
//   delta.<from>-<to>.crd
class StateDir {
 public:
  explicit StateDir(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  Status Create() const;

  std::filesystem::path MpkPath(uint64_t epoch) const;
  std::filesystem::path MskPath() const;
  std::filesystem::path KeyPath(Index i) const;
  std::filesystem::path DeltaPath(uint64_t from, uint64_t to) const;

  // Fails with kIo if a snapshot for this epoch already exists.
  Status PublishMpk(const RevMasterPublicKey& mpk) const;
  Result<RevMasterPublicKey> LoadMpk(uint64_t epoch) const;
  Result<RevMasterPublicKey> LatestMpk() const;
  std::vector<uint64_t> MpkEpochs() const;

  Status StoreMsk(const RevMasterSecretKey& msk) const;
  Result<RevMasterSecretKey> LoadMsk() const;

  Status StoreDelta(const EpochDelta& delta) const;
  Result<EpochDelta> LoadDelta(uint64_t from, uint64_t to) const;

 private:
  std::filesystem::path root_;
};

}  // namespace cred
