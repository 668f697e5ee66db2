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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.
//
//   acceptance <cli-binary>          run everything
//   acceptance --emit-determinism    print seeded artifacts (used by AC9)

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cred/cca.h"
#include "cred/codec.h"
#include "cred/kem.h"
#include "cred/protocol.h"
#include "cred/revocable_kem.h"
#include "support/cli_driver.h"
#include "support/oracles.h"
#include "support/scenario.h"

namespace cred {
namespace {

namespace fs = std::filesystem;
using testing::Authority;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps a count of checks.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  Outcome Done(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " checks";
    if (failures_ > 0) s << ", " << failures_ << " failed; first: " << first_;
    return Outcome{failures_ == 0, s.str()};
  }

 private:
  size_t checks_ = 0;
  size_t failures_ = 0;
  std::string first_;
};

const CipherElement& Gc() { return PairingContext::Default().cipher_generator; }
const KeyElement& Gk() { return PairingContext::Default().key_generator; }

template <size_t N>
std::array<uint8_t, N> Fill(Rng& rng) {
  std::array<uint8_t, N> out;
  rng.Fill(out);
  return out;
}

Outcome Ac1BaseKem() {
  Checker c;
  std::mt19937_64 gen(1001);
  DeterministicRng rng(1001);
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const auto universe = testing::Universe(2 + gen() % 15);
    auto setup = BaseSetup(universe, rng);
    c.Expect(setup.ok(), "setup");
    if (!setup.ok()) continue;
    const Policy p = testing::RandomPolicy(gen, universe, 8);
    const bool satisfy = gen() & 1;
    auto attrs = testing::RandomSubset(gen, universe, p, satisfy);
    if (!attrs) continue;
    auto key = BaseKeyGen(setup->mpk, setup->msk, *attrs, rng);
    auto enc = BaseEncrypt(setup->mpk, *CompilePolicy(p), std::nullopt, rng);
    if (!key.ok() || !enc.ok()) {
      c.Expect(false, "keygen/encrypt");
      continue;
    }
    auto dec = BaseDecrypt(*key, enc->ciphertext);
    if (satisfy) {
      c.Expect(dec.ok() && *dec == enc->secret, "decrypt " + CanonicalPolicy(p));
    } else {
      c.Expect(!dec.ok() && dec.code() == ErrorCode::kNotSatisfied,
               "unsatisfied " + CanonicalPolicy(p));
    }
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  c.Expect(secs < 60, "runtime budget");
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "100 trials in " << secs << " s";
  return c.Done(s.str());
}

Outcome Ac2Identity() {
  Checker c;
  const auto universe = testing::Universe(6);
  std::mt19937_64 gen(2002);
  for (int trial = 0; trial < 25; ++trial) {
    Authority auth(universe, 8, 2002 + trial);
    testing::RandomHistory(auth, gen, 5, universe);
    const Policy p = testing::RandomPolicy(gen, universe, 6);
    const AttributeSet attrs = *testing::RandomSubset(gen, universe, p, true);
    if (auth.msk().next_index > auth.mpk().params.capacity) continue;
    Scalar t;
    const Index i = auth.Issue(attrs, &t);
    const RevSecretKey& key = auth.IssuedKey(i);
    const RevMasterPublicKey& mpk = auth.mpk();
    const RevMasterSecretKey& msk = auth.msk();
    const Index n = mpk.params.capacity;
    const Bytes seed = testing::ToBytes("ac2/" + std::to_string(trial));
    const AccessMatrix am = *CompilePolicy(p);
    auto enc = RevEncrypt(mpk, am, seed, auth.rng());
    if (!enc.ok()) {
      c.Expect(false, "encrypt");
      continue;
    }
    const RevCiphertext& ct = enc->ciphertext;
    const Scalar s = DeriveScalars(seed, am.columns)[0];
    const TargetElement e_acc = Pair(mpk.acc, Gk());
    Scalar sum;
    for (Index j : mpk.members) sum += msk.gamma.Pow(n + 1 + i - j);
    const TargetElement sabt = e_acc.Pow(s * msk.a * msk.b * t);
    c.Expect(Pair(ct.c_dprime, key.k) ==
                 e_acc.Pow(msk.alpha * s) * sabt *
                     Pair(Gc().Pow(s), Gk()).Pow(msk.b * sum),
             "numerator decomposition");
    const auto omega = SolveReconstruction(am, attrs);
    TargetElement cancel;
    for (const auto& [k, w] : *omega) {
      cancel *= (Pair(ct.c_rows[k], key.l) *
                 Pair(ct.c_prime, key.k_x.at(am.rho[k])))
                    .Pow(w);
    }
    c.Expect(cancel == sabt, "sabt cancellation");
  }
  return c.Done("25 instances");
}

Outcome Ac3ForwardRevocation() {
  Checker c;
  const auto universe = testing::Universe(5);
  std::mt19937_64 gen(3003);
  int histories = 0;
  for (int trial = 0; histories < 100 && trial < 400; ++trial) {
    Authority auth(universe, 10, 3003 + trial);
    testing::RandomHistory(auth, gen, 4, universe);
    const Policy p = testing::RandomPolicy(gen, universe, 4);
    const AttributeSet attrs = *testing::RandomSubset(gen, universe, p, true);
    const AccessMatrix am = *CompilePolicy(p);
    if (auth.msk().next_index + 1 > auth.mpk().params.capacity) continue;
    const Index victim = auth.Issue(attrs);
    auth.Issue({});  // keeps the accumulator non-empty after revocation
    testing::RandomHistory(auth, gen, 2, universe);
    if (!auth.members().count(victim)) continue;
    ++histories;

    const RevSecretKey before_key = *auth.CurrentKey(victim);
    const uint64_t before_epoch = auth.mpk().epoch;
    auto old_ct = RevEncrypt(auth.mpk(), am, std::nullopt, auth.rng());
    auth.Revoke(victim);
    testing::RandomHistory(auth, gen, 2, universe);
    if (auth.members().empty()) auth.Issue({});
    auto new_ct = RevEncrypt(auth.mpk(), am, std::nullopt, auth.rng());
    if (!old_ct.ok() || !new_ct.ok()) {
      c.Expect(false, "encrypt");
      continue;
    }

    // (a) The stale key, with its witness forced to the new epoch.
    RevSecretKey forced = before_key;
    forced.epoch = forced.witness.epoch = new_ct->ciphertext.epoch;
    auto garbage = RevDecrypt(forced, new_ct->ciphertext);
    c.Expect(!garbage.ok() || !(*garbage == new_ct->secret), "(a) recovered secret");
    c.Expect(RevDecrypt(before_key, new_ct->ciphertext).code() ==
                 ErrorCode::kEpochMismatch,
             "(a) epoch discipline");
    // (b) Witness update fails.
    c.Expect(RevUpdateKey(before_key, auth.Snapshot(before_epoch), auth.mpk()).code() ==
                 ErrorCode::kRevoked,
             "(b) update not revoked");
    // (c) The old ciphertext against the matching snapshot.
    auto old = RevDecrypt(before_key, old_ct->ciphertext);
    c.Expect(old.ok() && *old == old_ct->secret, "(c) old ciphertext");
    c.Expect(auth.Snapshot(old_ct->ciphertext.epoch).epoch == before_epoch,
             "(c) snapshot");
  }
  c.Expect(histories == 100, "too few usable histories");
  return c.Done(std::to_string(histories) + " histories");
}

Outcome Ac4WitnessMaintenance() {
  Checker c;
  std::mt19937_64 gen(4004);
  DeterministicRng rng(4004);
  int sequences = 0;
  for (int trial = 0; trial < 20; ++trial, ++sequences) {
    const Index n = 8;
    const Scalar gamma = Scalar::Random(rng);
    auto init = AccInit(n, gamma);
    AccParams params = init->params;
    AccumulatorState state = init->state;
    std::map<Index, Witness> wits;
    for (int event = 0; event < 10; ++event) {
      const Index i = 1 + gen() % n;
      const AccumulatorState before = state;
      auto next = state.members.count(i)
                      ? AccUpdate(params, state, std::nullopt, i, gamma)
                      : AccUpdate(params, state, i, std::nullopt, gamma);
      c.Expect(next.ok(), "update");
      state = *next;
      const EpochDelta delta =
          MakeDelta(before.epoch, before.members, state.epoch, state.members);
      for (auto it = wits.begin(); it != wits.end();) {
        auto w = ApplyDelta(params, it->second, delta);
        if (state.members.count(it->first)) {
          c.Expect(w.ok(), "survivor update");
          it->second = *w;
          ++it;
        } else {
          c.Expect(w.code() == ErrorCode::kRevoked, "removed index updated");
          it = wits.erase(it);
        }
      }
      for (Index j : state.members) {
        if (!wits.count(j)) wits[j] = *ComputeWitness(params, state.members, j, state.epoch);
      }
      for (const auto& [j, w] : wits) {
        auto fresh = ComputeWitness(params, state.members, j, state.epoch);
        c.Expect(fresh.ok() && *fresh == w, "incremental != fresh");
      }
    }
  }
  return c.Done(std::to_string(sequences) + " sequences of 10 events");
}

bool Accepts(const Bytes& wire, const RevSecretKey& key, const SessionNonce& r_c,
             const RevMasterPublicKey& mpk) {
  auto bundle = Decode<ChallengeBundle>(wire);
  return bundle.ok() && CcaDecrypt(key, *bundle, r_c, mpk).ok();
}

Outcome Ac5Cca() {
  Checker c;
  const auto universe = testing::Universe(6);
  std::mt19937_64 gen(5005);
  DeterministicRng rng(5005);
  Authority auth(universe, 200, 5005);
  size_t exhaustive = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Policy p = testing::RandomPolicy(gen, universe, 5);
    const AttributeSet attrs = *testing::RandomSubset(gen, universe, p, true);
    const Index i = auth.Issue(attrs);
    const RevSecretKey key = *auth.CurrentKey(i);
    const SessionNonce r_c = Fill<kNonceSize>(rng);
    const Token k_c = Fill<kTokenSize>(rng);
    auto bundle = CcaEncrypt(auth.mpk(), p, r_c, k_c);
    if (!bundle.ok()) {
      c.Expect(false, "encrypt");
      continue;
    }
    auto token = CcaDecrypt(key, *bundle, r_c, auth.mpk());
    c.Expect(token.ok() && *token == k_c, "round trip");
    const SessionNonce wrong = Fill<kNonceSize>(rng);
    c.Expect(!CcaDecrypt(key, *bundle, wrong, auth.mpk()).ok(), "wrong r_c accepted");

    const Bytes wire = Encode(*bundle);
    if (trial == 0) {
      for (size_t pos = 0; pos < wire.size(); ++pos) {
        Bytes t = wire;
        t[pos] ^= 0x01;
        c.Expect(!Accepts(t, key, r_c, auth.mpk()),
                 "exhaustive tamper at byte " + std::to_string(pos));
      }
      exhaustive = wire.size();
    }
    Bytes t = wire;
    const size_t pos = gen() % t.size();
    t[pos] ^= static_cast<uint8_t>(1 + gen() % 255);
    c.Expect(!Accepts(t, key, r_c, auth.mpk()),
             "random tamper at byte " + std::to_string(pos));
  }
  return c.Done("100 round trips, " + std::to_string(exhaustive) +
                "-byte exhaustive tamper, 100 random tampers");
}

Outcome Ac6Transcripts() {
  Checker c;
  const auto universe = testing::Universe(5);
  std::mt19937_64 gen(6006);
  DeterministicRng rng(6006);
  Authority auth(universe, 128, 6006);
  for (int trial = 0; trial < 25; ++trial) {
    const Policy p = testing::RandomPolicy(gen, universe, 4);
    const SessionNonce r_c = Fill<kNonceSize>(rng);
    const Token k_c = Fill<kTokenSize>(rng);
    std::vector<std::pair<bool, Index>> keys;
    for (int k = 0; k < 2; ++k) {
      for (bool sat : {true, false}) {
        auto attrs = testing::RandomSubset(gen, universe, p, sat);
        if (attrs) keys.emplace_back(sat, auth.Issue(*attrs));
      }
    }
    auto trace = [&](Index i) -> std::string {
      ProverStart ps = ProverBegin("resource", r_c);
      auto v = VerifierOnRequest(ps.request, p, auth.mpk(), k_c);
      if (!v.ok()) return "verifier error";
      Bytes out = EncodeFrame(ps.request);
      auto r = ProverOnChallenge(ps.session, v->challenge, *auth.CurrentKey(i),
                                 auth.mpk());
      if (!r.ok()) return testing::Hex(out) + "/abort:" + r.error().ToString();
      const Bytes f = EncodeFrame(*r);
      out.insert(out.end(), f.begin(), f.end());
      return testing::Hex(out);
    };
    for (size_t x = 0; x < keys.size(); ++x) {
      for (size_t y = x + 1; y < keys.size(); ++y) {
        const bool same = keys[x].first == keys[y].first;
        const bool equal = trace(keys[x].second) == trace(keys[y].second);
        c.Expect(same == equal, same ? "equal-bit traces differ"
                                     : "unequal-bit traces equal");
      }
    }
  }
  return c.Done("25 triples");
}

Outcome Ac7Lsss() {
  Checker c;
  const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
  size_t policies = 0;
  testing::EnumeratePolicies(pool, 3, [&](const Policy& p) {
    ++policies;
    const AccessMatrix am = *CompilePolicy(p);
    for (uint32_t mask = 0; mask < 32; ++mask) {
      const AttributeSet s = testing::SubsetFromMask(pool, mask);
      const auto omega = SolveReconstruction(am, s);
      const bool truth = testing::Evaluate(p, s);
      c.Expect(omega.has_value() == truth, CanonicalPolicy(p));
      if (omega) {
        c.Expect(testing::CoefficientsReconstruct(am, s, *omega),
                 "bad coefficients " + CanonicalPolicy(p));
      }
    }
  });
  return c.Done(std::to_string(policies) + " policies x 32 subsets");
}

Outcome Ac8Cli(const std::string& cli) {
  char tmpl[] = "/tmp/cred-acceptance-XXXXXX";
  const fs::path dir = ::mkdtemp(tmpl);
  const testing::ProtocolScript s = testing::RunProtocolScript(cli, dir);
  fs::remove_all(dir);
  Checker c;
  for (int code : s.happy) c.Expect(code == 0, "happy path step");
  c.Expect(s.revoked == 1, "revoked exit " + std::to_string(s.revoked));
  c.Expect(s.revoked_diagnostic, "revoked diagnostic");
  c.Expect(s.replay == 1, "replay");
  c.Expect(s.file_decision == s.tcp_decision && s.tcp_exit == 0,
           "tcp '" + s.tcp_decision + "' vs file '" + s.file_decision + "'");
  std::ostringstream summary;
  summary << "happy 0, revoked " << s.revoked << ", replay " << s.replay
          << ", tcp/file " << s.tcp_decision << "/" << s.file_decision;
  Outcome o = c.Done(summary.str());
  if (!o.pass) std::cerr << s.log;
  return o;
}

// Everything printed here must be a pure function of fixed seeds.
int EmitDeterminism() {
  const auto universe = testing::Universe(6);
  DeterministicRng setup_rng(9009);
  auto base = BaseSetup(universe, setup_rng);
  Authority auth(universe, 8, 9009);
  auth.Issue({"attr0", "attr1"});
  const Policy p = *ParsePolicy("AND(attr0,OR(attr1,attr2))");
  const AccessMatrix am = *CompilePolicy(p);
  const Bytes seed = testing::ToBytes("determinism");
  SystemRng unused;  // seeded paths must not touch it
  auto b = BaseEncrypt(base->mpk, am, seed, unused);
  auto r = RevEncrypt(auth.mpk(), am, seed, unused);
  SessionNonce r_c;
  Token k_c;
  r_c.fill(0x11);
  k_c.fill(0x22);
  auto cb = CcaEncrypt(base->mpk, p, r_c, k_c);
  auto cr = CcaEncrypt(auth.mpk(), p, r_c, k_c);
  if (!b.ok() || !r.ok() || !cb.ok() || !cr.ok()) return 1;
  std::cout << testing::Hex(Encode(b->ciphertext)) << "\n"
            << testing::Hex(b->secret.Encode()) << "\n"
            << testing::Hex(Encode(r->ciphertext)) << "\n"
            << testing::Hex(r->secret.Encode()) << "\n"
            << testing::Hex(Encode(*cb)) << "\n"
            << testing::Hex(Encode(*cr)) << "\n";
  return 0;
}

std::string RunSelf(const std::string& self) {
  const std::string cmd = "'" + self + "' --emit-determinism";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  return ::pclose(pipe) == 0 ? out : std::string();
}

Outcome Ac9Determinism(const std::string& self) {
  const std::string first = RunSelf(self);
  const std::string second = RunSelf(self);
  Checker c;
  c.Expect(!first.empty(), "first run failed");
  c.Expect(first == second, "runs differ");
  const size_t lines = static_cast<size_t>(std::count(first.begin(), first.end(), '\n'));
  c.Expect(lines == 6, "expected six artifacts");
  return c.Done("2 processes, " + std::to_string(lines) + " artifacts, " +
                std::to_string(first.size()) + " hex chars");
}

}  // namespace
}  // namespace cred

int main(int argc, char** argv) {
  using namespace cred;
  if (argc > 1 && std::string(argv[1]) == "--emit-determinism") {
    return EmitDeterminism();
  }
  if (argc < 2) {
    std::cerr << "usage: acceptance <cli-binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string self = fs::canonical("/proc/self/exe").string();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"base KEM correctness", Ac1BaseKem},
      {"revocable correctness identity", Ac2Identity},
      {"forward revocation", Ac3ForwardRevocation},
      {"witness maintenance", Ac4WitnessMaintenance},
      {"CCA round trip and tamper rejection", Ac5Cca},
      {"transcript equality", Ac6Transcripts},
      {"LSSS oracle equivalence", Ac7Lsss},
      {"CLI protocol end to end", [&] { return Ac8Cli(cli); }},
      {"cross-process determinism", [&] { return Ac9Determinism(self); }},
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    std::cout << "AC" << (k + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[k].first << " (" << o.detail << ")" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
