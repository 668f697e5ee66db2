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

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "support/cli_driver.h"

namespace cred {
namespace {

namespace fs = std::filesystem;
using testing::RunCli;

const std::string kCli = CRED_CLI_PATH;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    char tmpl[] = "/tmp/cred-cli-XXXXXX";
    dir_ = ::mkdtemp(tmpl);
    state_ = dir_ / "state";
  }
  void TearDown() override { fs::remove_all(dir_); }

  testing::CliRun Cred(const std::vector<std::string>& args) {
    return RunCli(kCli, state_, args);
  }

  fs::path dir_;
  fs::path state_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cred({"--no-such-flag"}).exit_code, 2);
  EXPECT_EQ(Cred({}).exit_code, 2);
  EXPECT_EQ(Cred({"authority", "setup"}).exit_code, 2);
  EXPECT_EQ(Cred({"authority", "setup", "--universe", "a", "--bogus"}).exit_code, 2);
  EXPECT_EQ(Cred({"verifier", "check", "--token", "zz"}).exit_code, 2);
  EXPECT_EQ(Cred({"--help"}).exit_code, 0);
}

TEST_F(CliTest, SetupWritesStateLayout) {
  auto r = Cred({"authority", "setup", "--universe", "a,b", "--capacity", "4"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(testing::Trim(r.out), "0");
  EXPECT_TRUE(fs::exists(state_ / "mpk.0.crd"));
  EXPECT_TRUE(fs::exists(state_ / "msk.crd"));
  EXPECT_EQ(fs::status(state_ / "msk.crd").permissions() & fs::perms::all,
            fs::perms::owner_read | fs::perms::owner_write);
  // A second setup would clobber the authority.
  EXPECT_EQ(Cred({"authority", "setup", "--universe", "a"}).exit_code, 2);

  auto k = Cred({"authority", "keygen", "--attrs", "a", "--out",
                 (dir_ / "k.crd").string()});
  ASSERT_EQ(k.exit_code, 0) << k.err;
  EXPECT_EQ(testing::Trim(k.out), "1");
  EXPECT_TRUE(fs::exists(state_ / "key.1.crd"));
  EXPECT_TRUE(fs::exists(state_ / "mpk.1.crd"));
  EXPECT_TRUE(fs::exists(state_ / "delta.0-1.crd"));
  EXPECT_EQ(Cred({"authority", "keygen", "--attrs", "zz"}).exit_code, 2);
}

TEST_F(CliTest, QuietKeepsStderrEmpty) {
  auto r = Cred({"authority", "setup", "--universe", "a", "-q"});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, UpdateFollowsEpochs) {
  ASSERT_EQ(Cred({"authority", "setup", "--universe", "a,b"}).exit_code, 0);
  const std::string k1 = (dir_ / "k1.crd").string();
  ASSERT_EQ(Cred({"authority", "keygen", "--attrs", "a", "--out", k1}).exit_code, 0);
  ASSERT_EQ(Cred({"authority", "keygen", "--attrs", "b"}).exit_code, 0);
  ASSERT_EQ(Cred({"authority", "revoke", "--index", "2"}).exit_code, 0);
  auto u = Cred({"prover", "update", "--key", k1});
  ASSERT_EQ(u.exit_code, 0) << u.err;
  EXPECT_EQ(testing::Trim(u.out), "3");
  ASSERT_EQ(Cred({"authority", "revoke", "--index", "1"}).exit_code, 0);
  auto revoked = Cred({"prover", "update", "--key", k1});
  EXPECT_EQ(revoked.exit_code, 1);
  EXPECT_NE(revoked.err.find("revoked"), std::string::npos);
  EXPECT_EQ(Cred({"authority", "revoke", "--index", "1"}).exit_code, 1);
}

TEST_F(CliTest, TamperedBundleDenied) {
  ASSERT_EQ(Cred({"authority", "setup", "--universe", "a"}).exit_code, 0);
  const std::string key = (dir_ / "k.crd").string();
  const std::string bundle = (dir_ / "b.crd").string();
  ASSERT_EQ(Cred({"authority", "keygen", "--attrs", "a", "--out", key}).exit_code, 0);
  auto rc = Cred({"prover", "request"});
  ASSERT_EQ(rc.exit_code, 0);
  ASSERT_EQ(Cred({"verifier", "challenge", "--policy", "a", "--rc",
                  testing::Trim(rc.out), "--out", bundle})
                .exit_code,
            0);
  {
    std::fstream f(bundle, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-40, std::ios::end);
    f.put('\x5a');
  }
  EXPECT_EQ(Cred({"prover", "respond", "--key", key, "--bundle", bundle}).exit_code, 1);
}

TEST_F(CliTest, ScriptedProtocol) {
  const testing::ProtocolScript s = testing::RunProtocolScript(kCli, dir_);
  for (int code : s.happy) EXPECT_EQ(code, 0) << s.log;
  EXPECT_EQ(s.revoked, 1) << s.log;
  EXPECT_TRUE(s.revoked_diagnostic) << s.log;
  EXPECT_EQ(s.replay, 1) << s.log;
  EXPECT_EQ(s.file_decision, "granted") << s.log;
  EXPECT_EQ(s.tcp_decision, s.file_decision) << s.log;
  EXPECT_EQ(s.tcp_exit, 0) << s.log;
}

TEST_F(CliTest, ConcurrentTcpSessions) {
  ASSERT_EQ(Cred({"authority", "setup", "--universe", "a,b"}).exit_code, 0);
  const std::string good = (dir_ / "good.crd").string();
  const std::string bad = (dir_ / "bad.crd").string();
  ASSERT_EQ(Cred({"authority", "keygen", "--attrs", "a", "--out", good}).exit_code, 0);
  ASSERT_EQ(Cred({"authority", "keygen", "--attrs", "b", "--out", bad}).exit_code, 0);
  ASSERT_EQ(Cred({"prover", "update", "--key", good}).exit_code, 0);
  const fs::path port_file = dir_ / "port";
  const pid_t server = testing::SpawnCli(
      kCli, state_,
      {"demo", "serve", "--policy", "a", "--max-sessions", "6", "--port-file",
       port_file.string()},
      dir_ / "serve.out");
  const std::string addr = "127.0.0.1:" + testing::WaitForFile(port_file);
  std::vector<pid_t> clients;
  for (int i = 0; i < 6; ++i) {
    clients.push_back(testing::SpawnCli(
        kCli, state_,
        {"demo", "request", "--connect", addr, "--key", i % 2 ? bad : good},
        dir_ / ("client" + std::to_string(i))));
  }
  for (size_t i = 0; i < clients.size(); ++i) {
    EXPECT_EQ(testing::WaitCli(clients[i]), i % 2 ? 1 : 0) << i;
  }
  EXPECT_EQ(testing::WaitCli(server), 0);
}

}  // namespace
}  // namespace cred
