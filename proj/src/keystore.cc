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

#include "cred/keystore.h"

#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <regex>

namespace cred {

namespace fs = std::filesystem;

namespace {

Error IoError(const fs::path& path, const std::string& what) {
  return MakeError(ErrorCode::kIo, path.string() + ": " + what);
}

}  // namespace

Status WriteFileAtomic(const fs::path& path, ByteView bytes, bool owner_only) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return IoError(tmp, "cannot open for writing");
    if (owner_only) {
      std::error_code ec;
      fs::permissions(tmp, fs::perms::owner_read | fs::perms::owner_write,
                      fs::perm_options::replace, ec);
      if (ec) {
        std::cerr << "warning: could not restrict permissions on " << path
                  << ": " << ec.message() << "\n";
      }
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      return IoError(tmp, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return IoError(path, "rename failed");
  }
  return OkStatus();
}

Result<Bytes> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IoError(path, std::strerror(errno));
  Bytes out((std::istreambuf_iterator<char>(in)),
            std::istreambuf_iterator<char>());
  if (in.bad()) return IoError(path, "read failed");
  return out;
}

Status StateDir::Create() const {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) return IoError(root_, ec.message());
  return OkStatus();
}

fs::path StateDir::MpkPath(uint64_t epoch) const {
  return root_ / ("mpk." + std::to_string(epoch) + ".crd");
}

fs::path StateDir::MskPath() const { return root_ / "msk.crd"; }

fs::path StateDir::KeyPath(Index i) const {
  return root_ / ("key." + std::to_string(i) + ".crd");
}

fs::path StateDir::DeltaPath(uint64_t from, uint64_t to) const {
  return root_ / ("delta." + std::to_string(from) + "-" + std::to_string(to) +
                  ".crd");
}

Status StateDir::PublishMpk(const RevMasterPublicKey& mpk) const {
  const fs::path path = MpkPath(mpk.epoch);
  if (fs::exists(path)) return IoError(path, "snapshot already published");
  return Store(path, mpk);
}

Result<RevMasterPublicKey> StateDir::LoadMpk(uint64_t epoch) const {
  CRED_ASSIGN_OR_RETURN(RevMasterPublicKey mpk,
                        Load<RevMasterPublicKey>(MpkPath(epoch)));
  if (mpk.epoch != epoch) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "snapshot file holds epoch " + std::to_string(mpk.epoch));
  }
  return mpk;
}

std::vector<uint64_t> StateDir::MpkEpochs() const {
  static const std::regex kName(R"(mpk\.(\d+)\.crd)");
  std::vector<uint64_t> epochs;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_, ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, kName)) {
      epochs.push_back(std::stoull(m[1].str()));
    }
  }
  std::sort(epochs.begin(), epochs.end());
  return epochs;
}

Result<RevMasterPublicKey> StateDir::LatestMpk() const {
  const std::vector<uint64_t> epochs = MpkEpochs();
  if (epochs.empty()) return IoError(root_, "no published master public key");
  return LoadMpk(epochs.back());
}

Status StateDir::StoreMsk(const RevMasterSecretKey& msk) const {
  return Store(MskPath(), msk);
}

Result<RevMasterSecretKey> StateDir::LoadMsk() const {
  return Load<RevMasterSecretKey>(MskPath());
}

Status StateDir::StoreDelta(const EpochDelta& delta) const {
  return Store(DeltaPath(delta.from, delta.to), delta);
}

Result<EpochDelta> StateDir::LoadDelta(uint64_t from, uint64_t to) const {
  return Load<EpochDelta>(DeltaPath(from, to));
}

}  // namespace cred
