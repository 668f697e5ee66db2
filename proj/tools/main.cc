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

// cred: authority, prover and verifier roles over a state directory, plus a
// TCP demo of the four-message protocol.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cred/codec.h"
#include "cred/keystore.h"
#include "cred/protocol.h"
#include "cred/rng.h"
#include "net.h"

namespace fs = std::filesystem;

namespace cred::tools {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitDenied = 1;
constexpr int kExitUsage = 2;
constexpr int kSessionTimeoutSeconds = 60;

struct Options {
  std::string state = "cred-state";
  bool quiet = false;
};

Options g_opts;
std::mutex g_log_mutex;

template <typename... Args>
void Log(const Args&... args) {
  if (g_opts.quiet) return;
  std::lock_guard<std::mutex> lock(g_log_mutex);
  (std::cerr << ... << args) << "\n";
}

// Thrown out of command handlers; carries the exit code.
struct Exit {
  int code;
};

bool IsUsageError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
    case ErrorCode::kDuplicateAttribute:
    case ErrorCode::kUnknownAttribute:
    case ErrorCode::kUniverseTooLarge:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIo:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void Fail(const Error& error, std::string_view context = {}) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::cerr << "cred: ";
  if (!context.empty()) std::cerr << context << ": ";
  std::cerr << error.ToString() << "\n";
  throw Exit{IsUsageError(error.code) ? kExitUsage : kExitDenied};
}

[[noreturn]] void Usage(const std::string& message) {
  std::cerr << "cred: " << message << "\n";
  throw Exit{kExitUsage};
}

template <typename T>
T Check(Result<T> result, std::string_view context = {}) {
  if (!result.ok()) Fail(result.error(), context);
  return std::move(result).value();
}

void Check(const Status& status, std::string_view context = {}) {
  if (!status.ok()) Fail(status.error(), context);
}

std::string Hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

template <size_t N>
std::array<uint8_t, N> ParseHex(const std::string& text, const char* what) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::array<uint8_t, N> out{};
  if (text.size() != 2 * N) {
    Usage(std::string(what) + " must be " + std::to_string(2 * N) +
          " hex digits");
  }
  for (size_t i = 0; i < N; ++i) {
    const int hi = nibble(text[2 * i]);
    const int lo = nibble(text[2 * i + 1]);
    if (hi < 0 || lo < 0) Usage(std::string(what) + " is not hex");
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

StateDir State() { return StateDir(g_opts.state); }

fs::path VerifierSessionPath() { return fs::path(g_opts.state) / "verifier.session.crd"; }
fs::path ProverSessionPath() { return fs::path(g_opts.state) / "prover.session.crd"; }

// Brings the key to the bundle's epoch using the published snapshots. A key
// whose index was removed in between fails with "revoked".
RevSecretKey KeyAtEpoch(const StateDir& dir, const RevSecretKey& key,
                        uint64_t epoch) {
  if (key.epoch == epoch) return key;
  const RevMasterPublicKey from = Check(dir.LoadMpk(key.epoch), "key epoch");
  const RevMasterPublicKey to = Check(dir.LoadMpk(epoch), "bundle epoch");
  return Check(RevUpdateKey(key, from, to), "key update");
}

Result<Token> Answer(const StateDir& dir, ProverSession& session,
                     const Challenge& challenge, const RevSecretKey& key) {
  const uint64_t epoch = challenge.bundle.epoch;
  CRED_ASSIGN_OR_RETURN(RevMasterPublicKey mpk, dir.LoadMpk(epoch));
  const RevSecretKey current = KeyAtEpoch(dir, key, epoch);
  CRED_ASSIGN_OR_RETURN(Response response,
                        ProverOnChallenge(session, challenge, current, mpk));
  return response.token;
}

Policy ParsePolicyArg(const std::string& text) {
  return Check(ParsePolicy(text), "policy");
}

// ---- authority ----

void AuthoritySetup(const std::string& universe_list, Index capacity) {
  const StateDir dir = State();
  Check(dir.Create());
  if (fs::exists(dir.MskPath())) {
    Usage("state directory " + g_opts.state + " is already initialized");
  }
  SystemRng rng;
  RevSetupOutput out =
      Check(RevSetup(SplitList(universe_list), capacity, rng), "setup");
  Check(dir.StoreMsk(out.msk));
  Check(dir.PublishMpk(out.mpk));
  Log("initialized ", g_opts.state, ": ", out.mpk.universe.size(),
      " attributes, capacity ", capacity);
  std::cout << out.mpk.epoch << "\n";
}

void AuthorityKeyGen(const std::string& attr_list, const std::string& out_path) {
  const StateDir dir = State();
  RevMasterSecretKey msk = Check(dir.LoadMsk());
  const RevMasterPublicKey mpk = Check(dir.LatestMpk());
  const std::vector<std::string> list = SplitList(attr_list);
  const AttributeSet attrs(list.begin(), list.end());
  SystemRng rng;
  RevKeyGenOutput out = Check(RevKeyGen(mpk, msk, attrs, rng), "keygen");
  Check(dir.PublishMpk(out.mpk));
  Check(dir.StoreDelta(MakeDelta(mpk.epoch, mpk.members, out.mpk.epoch,
                                 out.mpk.members)));
  Check(dir.StoreMsk(msk));
  Check(Store(dir.KeyPath(out.key.index), out.key));
  if (!out_path.empty()) Check(Store(out_path, out.key));
  Log("issued key ", out.key.index, " at epoch ", out.mpk.epoch);
  std::cout << out.key.index << "\n";
}

void AuthorityRevoke(Index index) {
  const StateDir dir = State();
  RevMasterSecretKey msk = Check(dir.LoadMsk());
  const RevMasterPublicKey mpk = Check(dir.LatestMpk());
  const RevMasterPublicKey next = Check(RevKeyRemove(mpk, msk, index), "revoke");
  Check(dir.PublishMpk(next));
  Check(dir.StoreDelta(MakeDelta(mpk.epoch, mpk.members, next.epoch,
                                 next.members)));
  Check(dir.StoreMsk(msk));
  Log("revoked key ", index, "; epoch now ", next.epoch);
  std::cout << next.epoch << "\n";
}

// ---- prover ----

void ProverRequest(const std::string& resource, const std::string& rc_hex) {
  const ProverStart start =
      rc_hex.empty()
          ? [&] {
              SystemRng rng;
              return ProverBegin(resource, rng);
            }()
          : ProverBegin(resource, ParseHex<kNonceSize>(rc_hex, "--rc"));
  Check(State().Create());
  Check(Store(ProverSessionPath(), start.session));
  Log("started session for '", resource, "'");
  std::cout << Hex(start.request.r_c) << "\n";
}

void ProverUpdate(const std::string& key_path) {
  const StateDir dir = State();
  const RevSecretKey key = Check(Load<RevSecretKey>(key_path), key_path);
  const RevMasterPublicKey latest = Check(dir.LatestMpk());
  const RevSecretKey updated = KeyAtEpoch(dir, key, latest.epoch);
  Check(Store(key_path, updated));
  Log("key ", updated.index, " updated from epoch ", key.epoch, " to ",
      updated.epoch);
  std::cout << updated.epoch << "\n";
}

void ProverRespond(const std::string& key_path, const std::string& bundle_path,
                   const std::string& rc_hex) {
  const StateDir dir = State();
  const RevSecretKey key = Check(Load<RevSecretKey>(key_path), key_path);
  ChallengeBundle bundle =
      Check(Load<ChallengeBundle>(bundle_path), bundle_path);

  ProverSession session;
  const bool from_file = rc_hex.empty();
  if (from_file) {
    session = Check(Load<ProverSession>(ProverSessionPath()), "prover session");
  } else {
    session = ProverBegin("", ParseHex<kNonceSize>(rc_hex, "--rc")).session;
  }
  Result<Token> token = Answer(dir, session, Challenge{std::move(bundle)}, key);
  if (from_file) Check(Store(ProverSessionPath(), session));
  const Token t = Check(std::move(token), "respond");
  Log("challenge answered");
  std::cout << Hex(t) << "\n";
}

// ---- verifier ----

void VerifierChallenge(const std::string& policy_text, const std::string& rc_hex,
                       const std::string& out_path, const std::string& resource,
                       const std::string& kc_hex) {
  const Policy policy = ParsePolicyArg(policy_text);
  const RevMasterPublicKey mpk = Check(State().LatestMpk());
  const ResourceRequest request{resource,
                                ParseHex<kNonceSize>(rc_hex, "--rc")};
  SystemRng rng;
  const VerifierStart start =
      kc_hex.empty()
          ? Check(VerifierOnRequest(request, policy, mpk, rng), "challenge")
          : Check(VerifierOnRequest(request, policy, mpk,
                                    ParseHex<kTokenSize>(kc_hex, "--kc")),
                  "challenge");
  Check(Store(out_path, start.challenge.bundle));
  Check(Store(VerifierSessionPath(), start.session));
  Log("challenge for '", start.session.policy, "' at epoch ", mpk.epoch);
}

void VerifierCheck(const std::string& token_hex, const std::string& resource) {
  VerifierSession session =
      Check(Load<VerifierSession>(VerifierSessionPath()), "verifier session");
  const Response response{resource.empty() ? session.resource_id : resource,
                          ParseHex<kTokenSize>(token_hex, "--token")};
  const Decision decision = VerifierOnResponse(session, response);
  Check(Store(VerifierSessionPath(), session));
  std::cout << decision.reason << "\n";
  if (!decision.granted) throw Exit{kExitDenied};
}

// ---- demo ----

Decision ServeSession(const Socket& conn, const Policy& policy,
                      const std::optional<Token>& fixed_kc) {
  const StateDir dir = State();
  SetTimeout(conn, kSessionTimeoutSeconds);
  Result<Message> first = ReceiveMessage(conn);
  if (!first.ok()) return Decision{false, first.error().ToString()};
  const auto* request = std::get_if<ResourceRequest>(&*first);
  if (request == nullptr) return Decision{false, "expected a resource request"};

  Result<RevMasterPublicKey> mpk = dir.LatestMpk();
  if (!mpk.ok()) return Decision{false, mpk.error().ToString()};
  SystemRng rng;
  Result<VerifierStart> start =
      fixed_kc ? VerifierOnRequest(*request, policy, *mpk, *fixed_kc)
               : VerifierOnRequest(*request, policy, *mpk, rng);
  if (!start.ok()) return Decision{false, start.error().ToString()};
  if (!SendMessage(conn, start->challenge).ok()) {
    return Decision{false, "send failed"};
  }

  Result<Message> reply = ReceiveMessage(conn);
  if (!reply.ok()) return Decision{false, "prover aborted"};
  const auto* response = std::get_if<Response>(&*reply);
  if (response == nullptr) return Decision{false, "expected a response"};
  const Decision decision = VerifierOnResponse(start->session, *response);
  (void)SendMessage(conn, decision);
  return decision;
}

void DemoServe(const std::string& listen, const std::string& policy_text,
               int max_sessions, const std::string& port_file,
               const std::string& kc_hex) {
  const Policy policy = ParsePolicyArg(policy_text);
  std::optional<Token> fixed_kc;
  if (!kc_hex.empty()) fixed_kc = ParseHex<kTokenSize>(kc_hex, "--kc");
  Check(State().LatestMpk());

  const Socket listener = Check(Listen(Check(ParseEndpoint(listen))));
  const uint16_t port = Check(LocalPort(listener));
  if (!port_file.empty()) {
    const std::string text = std::to_string(port) + "\n";
    Check(WriteFileAtomic(
        port_file,
        ByteView(reinterpret_cast<const uint8_t*>(text.data()), text.size())));
  }
  Log("listening on port ", port);

  std::vector<std::thread> workers;
  for (int served = 0; max_sessions <= 0 || served < max_sessions; ++served) {
    Socket conn = Check(Accept(listener));
    workers.emplace_back([conn = std::move(conn), &policy, &fixed_kc]() {
      const Decision d = ServeSession(conn, policy, fixed_kc);
      std::lock_guard<std::mutex> lock(g_log_mutex);
      std::cout << (d.granted ? "granted" : "denied: " + d.reason) << std::endl;
    });
  }
  for (auto& w : workers) w.join();
}

void DemoRequest(const std::string& connect, const std::string& key_path,
                 const std::string& resource, const std::string& rc_hex) {
  const StateDir dir = State();
  const RevSecretKey key = Check(Load<RevSecretKey>(key_path), key_path);
  ProverStart start;
  if (rc_hex.empty()) {
    SystemRng rng;
    start = ProverBegin(resource, rng);
  } else {
    start = ProverBegin(resource, ParseHex<kNonceSize>(rc_hex, "--rc"));
  }

  const Socket conn = Check(Connect(Check(ParseEndpoint(connect))));
  SetTimeout(conn, kSessionTimeoutSeconds);
  Check(SendMessage(conn, start.request));
  const Message reply = Check(ReceiveMessage(conn), "challenge");
  const auto* challenge = std::get_if<Challenge>(&reply);
  if (challenge == nullptr) {
    Fail(MakeError(ErrorCode::kProtocol, "expected a challenge"));
  }
  // On rejection the connection is dropped without a response.
  const Token token =
      Check(Answer(dir, start.session, *challenge, key), "respond");
  Check(SendMessage(conn, Response{resource, token}));
  const Message last = Check(ReceiveMessage(conn), "decision");
  const auto* decision = std::get_if<Decision>(&last);
  if (decision == nullptr) {
    Fail(MakeError(ErrorCode::kProtocol, "expected a decision"));
  }
  std::cout << decision->reason << "\n";
  if (!decision->granted) throw Exit{kExitDenied};
}

int Run(int argc, char** argv) {
  CLI::App app{"Attribute-based credential verification with revocation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--state", g_opts.state, "State directory")
      ->envname("CRED_STATE");
  app.add_flag("-q,--quiet", g_opts.quiet, "Suppress summaries on stderr");

  std::string universe, attrs, out, key, bundle, policy, rc, kc, token,
      resource = "resource", listen = "127.0.0.1:0", connect, port_file;
  Index capacity = 16, index = 0;
  int max_sessions = 0;

  auto* authority = app.add_subcommand("authority", "Issuing authority");
  authority->require_subcommand(1);
  auto* setup = authority->add_subcommand("setup", "Create a new authority");
  setup->add_option("--universe", universe, "Comma-separated attributes")
      ->required();
  setup->add_option("--capacity", capacity, "Maximum number of issued keys");
  auto* keygen = authority->add_subcommand("keygen", "Issue a key");
  keygen->add_option("--attrs", attrs, "Comma-separated attributes")->required();
  keygen->add_option("--out", out, "Key file to write");
  auto* revoke = authority->add_subcommand("revoke", "Revoke a key");
  revoke->add_option("--index", index, "Key index")->required();

  auto* prover = app.add_subcommand("prover", "Key holder");
  prover->require_subcommand(1);
  auto* request = prover->add_subcommand("request", "Start a session");
  request->add_option("--resource", resource, "Resource id");
  request->add_option("--rc", rc, "Session nonce (hex), random by default");
  auto* update = prover->add_subcommand("update", "Move a key to the latest epoch");
  update->add_option("--key", key, "Key file")->required();
  auto* respond = prover->add_subcommand("respond", "Answer a challenge");
  respond->add_option("--key", key, "Key file")->required();
  respond->add_option("--bundle", bundle, "Challenge bundle")->required();
  respond->add_option("--rc", rc, "Session nonce (hex); default: session file");

  auto* verifier = app.add_subcommand("verifier", "Resource guard");
  verifier->require_subcommand(1);
  auto* challenge = verifier->add_subcommand("challenge", "Issue a challenge");
  challenge->add_option("--policy", policy, "Access policy")->required();
  challenge->add_option("--rc", rc, "Prover nonce (hex)")->required();
  challenge->add_option("--out", out, "Bundle file to write")->required();
  challenge->add_option("--resource", resource, "Resource id");
  challenge->add_option("--kc", kc, "Token (hex), random by default");
  auto* check = verifier->add_subcommand("check", "Check a returned token");
  check->add_option("--token", token, "Token (hex)")->required();
  check->add_option("--resource", resource, "Resource id; default: session's");

  auto* demo = app.add_subcommand("demo", "Protocol over TCP");
  demo->require_subcommand(1);
  auto* serve = demo->add_subcommand("serve", "Run a verifier");
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--policy", policy, "Access policy")->required();
  serve->add_option("--max-sessions", max_sessions, "Exit after N sessions");
  serve->add_option("--port-file", port_file, "Write the bound port here");
  serve->add_option("--kc", kc, "Fixed token (hex) for reproducible runs");
  auto* dreq = demo->add_subcommand("request", "Run a prover");
  dreq->add_option("--connect", connect, "host:port")->required();
  dreq->add_option("--key", key, "Key file")->required();
  dreq->add_option("--resource", resource, "Resource id");
  dreq->add_option("--rc", rc, "Session nonce (hex)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (setup->parsed()) {
      AuthoritySetup(universe, capacity);
    } else if (keygen->parsed()) {
      AuthorityKeyGen(attrs, out);
    } else if (revoke->parsed()) {
      AuthorityRevoke(index);
    } else if (request->parsed()) {
      ProverRequest(resource, rc);
    } else if (update->parsed()) {
      ProverUpdate(key);
    } else if (respond->parsed()) {
      ProverRespond(key, bundle, rc);
    } else if (challenge->parsed()) {
      const bool explicit_resource = challenge->count("--resource") > 0;
      VerifierChallenge(policy, rc, out, explicit_resource ? resource : "resource",
                        kc);
    } else if (check->parsed()) {
      VerifierCheck(token, check->count("--resource") > 0 ? resource : "");
    } else if (serve->parsed()) {
      DemoServe(listen, policy, max_sessions, port_file, kc);
    } else if (dreq->parsed()) {
      DemoRequest(connect, key, resource, rc);
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitOk;
}

}  // namespace
}  // namespace cred::tools

int main(int argc, char** argv) { return cred::tools::Run(argc, argv); }
