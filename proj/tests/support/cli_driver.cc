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

#include "cli_driver.h"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace cred::testing {

namespace fs = std::filesystem;

namespace {

pid_t Launch(const std::string& binary, const fs::path& state,
             const std::vector<std::string>& args, const fs::path& out_file,
             const fs::path& err_file) {
  std::vector<std::string> argv_s{binary, "--state", state.string()};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  const pid_t pid = ::fork();
  if (pid == 0) {
    const int out = ::open(out_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int err = ::open(err_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    ::dup2(out, 1);
    ::dup2(err, 2);
    std::vector<char*> argv;
    for (auto& a : argv_s) argv.push_back(a.data());
    argv.push_back(nullptr);
    ::execv(binary.c_str(), argv.data());
    ::_exit(127);
  }
  return pid;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string Trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

int WaitCli(pid_t pid) {
  int status = 0;
  if (::waitpid(pid, &status, 0) < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CliRun RunCli(const std::string& binary, const fs::path& state,
              const std::vector<std::string>& args) {
  const fs::path out = fs::temp_directory_path() /
                       ("cred-cli-" + std::to_string(::getpid()) + ".out");
  const fs::path err = fs::temp_directory_path() /
                       ("cred-cli-" + std::to_string(::getpid()) + ".err");
  CliRun run;
  run.exit_code = WaitCli(Launch(binary, state, args, out, err));
  run.out = Slurp(out);
  run.err = Slurp(err);
  fs::remove(out);
  fs::remove(err);
  return run;
}

pid_t SpawnCli(const std::string& binary, const fs::path& state,
               const std::vector<std::string>& args, const fs::path& out_file) {
  fs::path err = out_file;
  err += ".err";
  return Launch(binary, state, args, out_file, err);
}

std::string WaitForFile(const fs::path& path) {
  for (int i = 0; i < 200; ++i) {
    if (fs::exists(path)) return Trim(Slurp(path));
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  return {};
}

ProtocolScript RunProtocolScript(const std::string& binary, const fs::path& workdir) {
  ProtocolScript result;
  const fs::path state = workdir / "state";
  const std::string rc1(64, 'a'), rc2(64, 'b'), kc(64, 'c');
  std::ostringstream log;
  auto step = [&](const std::vector<std::string>& args) {
    CliRun r = RunCli(binary, state, args);
    log << "$ cred";
    for (const auto& a : args) log << " " << a;
    log << "\n  exit " << r.exit_code << "\n" << r.out << r.err;
    return r;
  };
  const std::string key1 = (workdir / "key1.crd").string();
  const std::string key2 = (workdir / "key2.crd").string();
  const std::string bundle1 = (workdir / "bundle1.crd").string();
  const std::string bundle2 = (workdir / "bundle2.crd").string();
  const std::string bundle3 = (workdir / "bundle3.crd").string();
  const std::string policy = "AND(staff,OR(eng,ops))";

  // Happy path.
  result.happy.push_back(
      step({"authority", "setup", "--universe", "staff,eng,ops,guest", "--capacity", "8"})
          .exit_code);
  result.happy.push_back(
      step({"authority", "keygen", "--attrs", "staff,eng", "--out", key1}).exit_code);
  result.happy.push_back(
      step({"authority", "keygen", "--attrs", "staff,ops", "--out", key2}).exit_code);
  result.happy.push_back(step({"prover", "request", "--resource", "repo", "--rc", rc1})
                             .exit_code);
  result.happy.push_back(step({"verifier", "challenge", "--policy", policy, "--rc",
                               rc1, "--resource", "repo", "--kc", kc, "--out", bundle1})
                             .exit_code);
  CliRun respond = step({"prover", "respond", "--key", key1, "--bundle", bundle1});
  result.happy.push_back(respond.exit_code);
  const std::string token = Trim(respond.out);
  CliRun check = step({"verifier", "check", "--token", token});
  result.happy.push_back(check.exit_code);
  result.file_decision = Trim(check.out);

  // Replay: the same token again, then against a fresh challenge.
  const int replay_same = step({"verifier", "check", "--token", token}).exit_code;
  step({"verifier", "challenge", "--policy", policy, "--rc", rc2, "--resource",
        "repo", "--out", bundle2});
  const int replay_fresh = step({"verifier", "check", "--token", token}).exit_code;
  result.replay = replay_same == 1 && replay_fresh == 1 ? 1 : 0;

  // Revoked key.
  step({"authority", "revoke", "--index", "1"});
  step({"prover", "request", "--resource", "repo", "--rc", rc2});
  step({"verifier", "challenge", "--policy", policy, "--rc", rc2, "--resource",
        "repo", "--out", bundle3});
  CliRun revoked = step({"prover", "respond", "--key", key1, "--bundle", bundle3});
  result.revoked = revoked.exit_code;
  result.revoked_diagnostic = revoked.err.find("revoked") != std::string::npos;

  // Same nonce and token over TCP with the surviving key, and over files.
  step({"prover", "request", "--resource", "repo", "--rc", rc1});
  step({"verifier", "challenge", "--policy", policy, "--rc", rc1, "--resource",
        "repo", "--kc", kc, "--out", bundle1});
  CliRun r2 = step({"prover", "respond", "--key", key2, "--bundle", bundle1});
  CliRun c2 = step({"verifier", "check", "--token", Trim(r2.out)});
  result.file_decision = Trim(c2.out);

  const fs::path port_file = workdir / "port";
  const fs::path serve_out = workdir / "serve.out";
  const pid_t server =
      SpawnCli(binary, state,
               {"demo", "serve", "--listen", "127.0.0.1:0", "--policy", policy,
                "--max-sessions", "1", "--port-file", port_file.string(), "--kc", kc},
               serve_out);
  const std::string port = WaitForFile(port_file);
  CliRun tcp = step({"demo", "request", "--connect", "127.0.0.1:" + port, "--key",
                     key2, "--resource", "repo", "--rc", rc1});
  result.tcp_exit = tcp.exit_code;
  result.tcp_decision = Trim(tcp.out);
  WaitCli(server);
  log << "server: " << Slurp(serve_out);
  result.log = log.str();
  return result;
}

}  // namespace cred::testing
