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

#include <sys/types.h>

#include <filesystem>
#include <string>
#include <vector>

namespace cred::testing {

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI binary with `--state state` prepended; no shell involved.
CliRun RunCli(const std::string& binary, const std::filesystem::path& state,
              const std::vector<std::string>& args);

// Starts the CLI in the background with stdout sent to `out_file`.
pid_t SpawnCli(const std::string& binary, const std::filesystem::path& state,
               const std::vector<std::string>& args,
               const std::filesystem::path& out_file);
int WaitCli(pid_t pid);

// Waits up to ~10 s for `path` to appear and returns its trimmed contents.
std::string WaitForFile(const std::filesystem::path& path);

std::string Trim(std::string s);

// End-to-end scripted scenario over the CLI: one happy path, one revoked
// key and one replayed token over files, then the same nonces over TCP.
struct ProtocolScript {
  std::vector<int> happy;   // exit code of every step
  int revoked = -1;
  bool revoked_diagnostic = false;
  int replay = -1;
  std::string file_decision;
  std::string tcp_decision;
  int tcp_exit = -1;
  std::string log;
};

ProtocolScript RunProtocolScript(const std::string& binary,
                                 const std::filesystem::path& workdir);

}  // namespace cred::testing
