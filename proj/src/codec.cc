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

#include "cred/codec.h"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cred/bytes.h"

namespace cred {

namespace {

// ---- primitive writers ----

void PutScalar(ByteWriter& w, const Scalar& s) { w.Field(s.Encode()); }
void PutCipher(ByteWriter& w, const CipherElement& e) { w.Field(e.Encode()); }
void PutKey(ByteWriter& w, const KeyElement& e) { w.Field(e.Encode()); }
void PutTarget(ByteWriter& w, const TargetElement& e) { w.Field(e.Encode()); }

void PutCount(ByteWriter& w, size_t n) { w.U32(static_cast<uint32_t>(n)); }

void PutStrings(ByteWriter& w, const auto& strings) {
  PutCount(w, strings.size());
  for (const auto& s : strings) w.Field(s);
}

void PutIndexSet(ByteWriter& w, const IndexSet& set) {
  PutCount(w, set.size());
  for (Index i : set) w.U32(i);
}

template <typename V, typename PutValue>
void PutMap(ByteWriter& w, const std::map<std::string, V>& m, PutValue put) {
  PutCount(w, m.size());
  for (const auto& [k, v] : m) {
    w.Field(k);
    put(w, v);
  }
}

// ---- primitive readers (sticky failure on the reader) ----

Scalar GetScalar(ByteReader& r) {
  ByteView f = r.FixedField(Scalar::kEncodedSize);
  if (!r.ok()) return {};
  auto s = Scalar::Decode(f);
  if (!s.ok()) {
    r.Fail(s.error().message);
    return {};
  }
  return *s;
}

template <typename Element>
Element GetElement(ByteReader& r) {
  ByteView f = r.FixedField(Element::kEncodedSize);
  if (!r.ok()) return {};
  auto e = Element::Decode(f);
  if (!e.ok()) {
    r.Fail(e.error().message);
    return {};
  }
  return *e;
}

// Element counts are bounded by the bytes left so a forged count cannot
// trigger a huge allocation.
size_t GetCount(ByteReader& r) {
  const uint32_t n = r.U32();
  if (r.ok() && n > r.remaining()) {
    r.Fail("count exceeds input size");
    return 0;
  }
  return n;
}

std::vector<std::string> GetStringList(ByteReader& r) {
  const size_t n = GetCount(r);
  std::vector<std::string> out;
  for (size_t i = 0; i < n && r.ok(); ++i) out.push_back(r.String());
  return out;
}

IndexSet GetIndexSet(ByteReader& r) {
  const size_t n = GetCount(r);
  IndexSet out;
  for (size_t k = 0; k < n && r.ok(); ++k) {
    const Index i = r.U32();
    if (!out.empty() && i <= *out.rbegin()) {
      r.Fail("index set not strictly increasing");
      break;
    }
    out.insert(out.end(), i);
  }
  return out;
}

template <typename V, typename GetValue>
std::map<std::string, V> GetMap(ByteReader& r, GetValue get) {
  const size_t n = GetCount(r);
  std::map<std::string, V> out;
  for (size_t i = 0; i < n && r.ok(); ++i) {
    std::string k = r.String();
    V v = get(r);
    if (!out.empty() && k <= out.rbegin()->first) {
      r.Fail("map keys not strictly increasing");
      break;
    }
    out.emplace_hint(out.end(), std::move(k), std::move(v));
  }
  return out;
}

// ---- envelope ----

Bytes Wrap(ArtifactTag tag, std::string_view suite, uint64_t epoch,
           const ByteWriter& body) {
  ByteWriter w;
  w.Raw(ByteView(reinterpret_cast<const uint8_t*>(kEnvelopeMagic.data()),
                 kEnvelopeMagic.size()));
  w.U8(static_cast<uint8_t>(tag));
  w.Field(suite);
  w.U64(epoch);
  w.Raw(body.bytes());
  return w.Take();
}

bool IsKnownTag(uint8_t t) { return t >= 1 && t <= 13; }

struct Opened {
  EnvelopeHeader header;
  ByteView body;
};

Result<Opened> Open(ByteView bytes) {
  ByteReader r(bytes);
  ByteView magic = r.Raw(kEnvelopeMagic.size());
  if (!r.ok() ||
      std::string_view(reinterpret_cast<const char*>(magic.data()),
                       magic.size()) != kEnvelopeMagic) {
    return MakeError(ErrorCode::kMalformedEnvelope, "bad magic");
  }
  const uint8_t tag = r.U8();
  if (!r.ok()) return MakeError(ErrorCode::kMalformedEnvelope, "truncated");
  if (!IsKnownTag(tag)) {
    return MakeError(ErrorCode::kUnknownTag, "tag " + std::to_string(tag));
  }
  std::string suite = r.String();
  const uint64_t epoch = r.U64();
  if (!r.ok()) return MakeError(ErrorCode::kMalformedEnvelope, r.failure());
  if (suite != kSuiteId) {
    return MakeError(ErrorCode::kSuiteMismatch, "suite '" + suite + "'");
  }
  const size_t header_size = bytes.size() - r.remaining();
  return Opened{EnvelopeHeader{static_cast<ArtifactTag>(tag), std::move(suite),
                               epoch},
                bytes.subspan(header_size)};
}

// Opens an envelope of the expected type and runs `read` over its body.
template <typename T, typename ReadBody>
Result<T> Unwrap(ByteView bytes, ArtifactTag expected, ReadBody read) {
  CRED_ASSIGN_OR_RETURN(Opened opened, Open(bytes));
  if (opened.header.tag != expected) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "expected " + std::string(ArtifactName(expected)) +
                         ", found " +
                         std::string(ArtifactName(opened.header.tag)));
  }
  ByteReader r(opened.body);
  Result<T> value = read(r, opened.header);
  if (!value.ok()) return value;
  CRED_RETURN_IF_ERROR(r.Finish());
  return value;
}

Status CheckEpoch(const EnvelopeHeader& h, uint64_t body_epoch) {
  if (h.epoch != body_epoch) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "envelope epoch disagrees with body");
  }
  return OkStatus();
}

Error BodyError(const ByteReader& r) {
  return MakeError(ErrorCode::kMalformedEnvelope, r.failure());
}

// ---- bodies ----

void PutAccessMatrix(ByteWriter& w, const AccessMatrix& am) {
  PutCount(w, am.rows.size());
  PutCount(w, am.columns);
  for (size_t k = 0; k < am.rows.size(); ++k) {
    w.Field(am.rho[k]);
    for (const Scalar& s : am.rows[k]) PutScalar(w, s);
  }
}

AccessMatrix GetAccessMatrix(ByteReader& r) {
  AccessMatrix am;
  const size_t rows = GetCount(r);
  am.columns = GetCount(r);
  for (size_t k = 0; k < rows && r.ok(); ++k) {
    am.rho.push_back(r.String());
    std::vector<Scalar> row;
    for (size_t j = 0; j < am.columns && r.ok(); ++j) row.push_back(GetScalar(r));
    am.rows.push_back(std::move(row));
  }
  if (r.ok()) {
    auto st = ValidateAccessMatrix(am);
    if (!st.ok()) r.Fail(st.error().ToString());
  }
  return am;
}

void PutCipherList(ByteWriter& w, const std::vector<CipherElement>& v) {
  PutCount(w, v.size());
  for (const auto& e : v) PutCipher(w, e);
}

std::vector<CipherElement> GetCipherList(ByteReader& r) {
  const size_t n = GetCount(r);
  std::vector<CipherElement> out;
  for (size_t i = 0; i < n && r.ok(); ++i) {
    out.push_back(GetElement<CipherElement>(r));
  }
  return out;
}

void PutBaseCiphertext(ByteWriter& w, const BaseCiphertext& ct) {
  PutCipher(w, ct.c_prime);
  PutCipherList(w, ct.c_rows);
  PutAccessMatrix(w, ct.am);
}

BaseCiphertext GetBaseCiphertext(ByteReader& r) {
  BaseCiphertext ct;
  ct.c_prime = GetElement<CipherElement>(r);
  ct.c_rows = GetCipherList(r);
  ct.am = GetAccessMatrix(r);
  if (r.ok() && ct.c_rows.size() != ct.am.rows.size()) {
    r.Fail("ciphertext row count mismatch");
  }
  return ct;
}

void PutRevCiphertext(ByteWriter& w, const RevCiphertext& ct) {
  PutCipher(w, ct.c_prime);
  PutCipherList(w, ct.c_rows);
  PutCipher(w, ct.c_dprime);
  PutAccessMatrix(w, ct.am);
  w.U64(ct.epoch);
}

RevCiphertext GetRevCiphertext(ByteReader& r) {
  RevCiphertext ct;
  ct.c_prime = GetElement<CipherElement>(r);
  ct.c_rows = GetCipherList(r);
  ct.c_dprime = GetElement<CipherElement>(r);
  ct.am = GetAccessMatrix(r);
  ct.epoch = r.U64();
  if (r.ok() && ct.c_rows.size() != ct.am.rows.size()) {
    r.Fail("ciphertext row count mismatch");
  }
  return ct;
}

void PutAccParams(ByteWriter& w, const AccParams& p) {
  w.U32(p.capacity);
  PutCount(w, p.powers.size());
  for (const auto& e : p.powers) PutKey(w, e);
}

AccParams GetAccParams(ByteReader& r) {
  AccParams p;
  p.capacity = r.U32();
  const size_t n = GetCount(r);
  if (r.ok() && (p.capacity == 0 || p.capacity > kMaxCapacity ||
                 n != 2 * static_cast<size_t>(p.capacity) - 1)) {
    r.Fail("accumulator sequence has the wrong length");
    return p;
  }
  for (size_t i = 0; i < n && r.ok(); ++i) {
    p.powers.push_back(GetElement<KeyElement>(r));
  }
  return p;
}

void PutWitness(ByteWriter& w, const Witness& wit) {
  w.U32(wit.index);
  PutKey(w, wit.value);
  w.U64(wit.epoch);
}

Witness GetWitness(ByteReader& r) {
  Witness wit;
  wit.index = r.U32();
  wit.value = GetElement<KeyElement>(r);
  wit.epoch = r.U64();
  return wit;
}

std::set<std::string> KeysOf(const auto& m) {
  std::set<std::string> out;
  for (const auto& [k, v] : m) out.insert(k);
  return out;
}

void CheckUniverse(ByteReader& r, const std::vector<std::string>& universe,
                   const std::set<std::string>& h_keys) {
  if (!r.ok()) return;
  auto st = ValidateUniverse(universe, universe.size());
  if (!st.ok()) {
    r.Fail(st.error().ToString());
    return;
  }
  if (std::set<std::string>(universe.begin(), universe.end()) != h_keys) {
    r.Fail("attribute elements do not match the universe");
  }
}

void CheckMembers(ByteReader& r, const IndexSet& members, Index capacity) {
  if (!r.ok()) return;
  for (Index i : members) {
    if (i == 0 || i > capacity) {
      r.Fail("accumulator index out of range");
      return;
    }
  }
}

}  // namespace

std::string_view ArtifactName(ArtifactTag tag) {
  switch (tag) {
    case ArtifactTag::kRevMasterPublicKey: return "master public key";
    case ArtifactTag::kRevMasterSecretKey: return "master secret key";
    case ArtifactTag::kRevSecretKey: return "secret key";
    case ArtifactTag::kWitness: return "witness";
    case ArtifactTag::kRevCiphertext: return "ciphertext";
    case ArtifactTag::kChallengeBundle: return "challenge bundle";
    case ArtifactTag::kEpochDelta: return "epoch delta";
    case ArtifactTag::kBaseMpk: return "base master public key";
    case ArtifactTag::kBaseMsk: return "base master secret key";
    case ArtifactTag::kBaseKey: return "base secret key";
    case ArtifactTag::kBaseCiphertext: return "base ciphertext";
    case ArtifactTag::kVerifierSession: return "verifier session";
    case ArtifactTag::kProverSession: return "prover session";
  }
  return "unknown artifact";
}

Result<EnvelopeHeader> PeekEnvelope(ByteView bytes) {
  CRED_ASSIGN_OR_RETURN(Opened opened, Open(bytes));
  return opened.header;
}

// ---- RevMasterPublicKey ----

Bytes Encode(const RevMasterPublicKey& v) {
  ByteWriter w;
  PutCipher(w, v.g);
  PutCipher(w, v.g_b);
  PutMap(w, v.h, PutCipher);
  PutCipher(w, v.acc);
  PutCipher(w, v.acc_a);
  PutTarget(w, v.blind);
  PutAccParams(w, v.params);
  PutIndexSet(w, v.members);
  w.U64(v.epoch);
  PutStrings(w, v.universe);
  return Wrap(ArtifactTag::kRevMasterPublicKey, v.suite, v.epoch, w);
}

template <>
Result<RevMasterPublicKey> Decode(ByteView bytes) {
  return Unwrap<RevMasterPublicKey>(
      bytes, ArtifactTag::kRevMasterPublicKey,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<RevMasterPublicKey> {
        RevMasterPublicKey v;
        v.g = GetElement<CipherElement>(r);
        v.g_b = GetElement<CipherElement>(r);
        v.h = GetMap<CipherElement>(r, GetElement<CipherElement>);
        v.acc = GetElement<CipherElement>(r);
        v.acc_a = GetElement<CipherElement>(r);
        v.blind = GetElement<TargetElement>(r);
        v.params = GetAccParams(r);
        v.members = GetIndexSet(r);
        v.epoch = r.U64();
        v.universe = GetStringList(r);
        CheckUniverse(r, v.universe, KeysOf(v.h));
        CheckMembers(r, v.members, v.params.capacity);
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.epoch));
        v.suite = h.suite;
        v.params.suite = h.suite;
        return v;
      });
}

// ---- RevMasterSecretKey ----

Bytes Encode(const RevMasterSecretKey& v) {
  ByteWriter w;
  PutScalar(w, v.alpha);
  PutScalar(w, v.a);
  PutScalar(w, v.b);
  PutScalar(w, v.gamma);
  PutMap(w, v.z, PutScalar);
  w.U32(v.next_index);
  PutIndexSet(w, v.state.members);
  PutIndexSet(w, v.state.ever_added);
  PutCipher(w, v.state.value);
  w.U64(v.state.epoch);
  return Wrap(ArtifactTag::kRevMasterSecretKey, kSuiteId, v.state.epoch, w);
}

template <>
Result<RevMasterSecretKey> Decode(ByteView bytes) {
  return Unwrap<RevMasterSecretKey>(
      bytes, ArtifactTag::kRevMasterSecretKey,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<RevMasterSecretKey> {
        RevMasterSecretKey v;
        v.alpha = GetScalar(r);
        v.a = GetScalar(r);
        v.b = GetScalar(r);
        v.gamma = GetScalar(r);
        v.z = GetMap<Scalar>(r, GetScalar);
        v.next_index = r.U32();
        v.state.members = GetIndexSet(r);
        v.state.ever_added = GetIndexSet(r);
        v.state.value = GetElement<CipherElement>(r);
        v.state.epoch = r.U64();
        if (!r.ok()) return BodyError(r);
        for (Index i : v.state.members) {
          if (v.state.ever_added.count(i) == 0 || i >= v.next_index) {
            return MakeError(ErrorCode::kMalformedEnvelope,
                             "inconsistent accumulator state");
          }
        }
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.state.epoch));
        return v;
      });
}

// ---- RevSecretKey ----

Bytes Encode(const RevSecretKey& v) {
  ByteWriter w;
  w.U32(v.index);
  PutKey(w, v.k);
  PutKey(w, v.l);
  PutMap(w, v.k_x, PutKey);
  PutWitness(w, v.witness);
  w.U64(v.epoch);
  return Wrap(ArtifactTag::kRevSecretKey, kSuiteId, v.epoch, w);
}

template <>
Result<RevSecretKey> Decode(ByteView bytes) {
  return Unwrap<RevSecretKey>(
      bytes, ArtifactTag::kRevSecretKey,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<RevSecretKey> {
        RevSecretKey v;
        v.index = r.U32();
        v.k = GetElement<KeyElement>(r);
        v.l = GetElement<KeyElement>(r);
        v.k_x = GetMap<KeyElement>(r, GetElement<KeyElement>);
        v.witness = GetWitness(r);
        v.epoch = r.U64();
        if (!r.ok()) return BodyError(r);
        if (v.witness.index != v.index || v.witness.epoch != v.epoch) {
          return MakeError(ErrorCode::kMalformedEnvelope,
                           "witness does not belong to this key");
        }
        v.attrs = KeysOf(v.k_x);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.epoch));
        return v;
      });
}

// ---- Witness ----

Bytes Encode(const Witness& v) {
  ByteWriter w;
  PutWitness(w, v);
  return Wrap(ArtifactTag::kWitness, kSuiteId, v.epoch, w);
}

template <>
Result<Witness> Decode(ByteView bytes) {
  return Unwrap<Witness>(
      bytes, ArtifactTag::kWitness,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<Witness> {
        Witness v = GetWitness(r);
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.epoch));
        return v;
      });
}

// ---- RevCiphertext ----

Bytes Encode(const RevCiphertext& v) {
  ByteWriter w;
  PutRevCiphertext(w, v);
  return Wrap(ArtifactTag::kRevCiphertext, kSuiteId, v.epoch, w);
}

template <>
Result<RevCiphertext> Decode(ByteView bytes) {
  return Unwrap<RevCiphertext>(
      bytes, ArtifactTag::kRevCiphertext,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<RevCiphertext> {
        RevCiphertext v = GetRevCiphertext(r);
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.epoch));
        return v;
      });
}

// ---- ChallengeBundle ----

Bytes Encode(const ChallengeBundle& v) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(v.mode()));
  if (const auto* base = std::get_if<BaseCiphertext>(&v.abkem)) {
    PutBaseCiphertext(w, *base);
  } else {
    PutRevCiphertext(w, std::get<RevCiphertext>(v.abkem));
  }
  w.Field(v.c);
  w.Field(v.policy);
  w.U64(v.epoch);
  return Wrap(ArtifactTag::kChallengeBundle, v.suite, v.epoch, w);
}

template <>
Result<ChallengeBundle> Decode(ByteView bytes) {
  return Unwrap<ChallengeBundle>(
      bytes, ArtifactTag::kChallengeBundle,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<ChallengeBundle> {
        ChallengeBundle v;
        const uint8_t mode = r.U8();
        if (mode == static_cast<uint8_t>(KemMode::kBase)) {
          v.abkem = GetBaseCiphertext(r);
        } else if (mode == static_cast<uint8_t>(KemMode::kRevocable)) {
          v.abkem = GetRevCiphertext(r);
        } else {
          r.Fail("unknown KEM mode");
        }
        ByteView c = r.FixedField(kPadSize);
        if (r.ok()) std::copy(c.begin(), c.end(), v.c.begin());
        v.policy = r.String();
        v.epoch = r.U64();
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.epoch));
        const auto* rev = std::get_if<RevCiphertext>(&v.abkem);
        if ((rev != nullptr && rev->epoch != v.epoch) ||
            (rev == nullptr && v.epoch != 0)) {
          return MakeError(ErrorCode::kMalformedEnvelope,
                           "bundle epoch disagrees with its ciphertext");
        }
        // The policy text must be canonical and compile to the carried matrix.
        auto policy = ParsePolicy(v.policy);
        if (!policy.ok() || CanonicalPolicy(*policy) != v.policy) {
          return MakeError(ErrorCode::kMalformedEnvelope,
                           "bundle policy is not canonical");
        }
        auto am = CompilePolicy(*policy);
        const AccessMatrix& carried =
            rev != nullptr ? rev->am : std::get<BaseCiphertext>(v.abkem).am;
        if (!am.ok() || !(*am == carried)) {
          return MakeError(ErrorCode::kMalformedEnvelope,
                           "bundle policy does not match its access matrix");
        }
        v.suite = h.suite;
        return v;
      });
}

// ---- EpochDelta ----

Bytes Encode(const EpochDelta& v) {
  ByteWriter w;
  w.U64(v.from);
  w.U64(v.to);
  PutIndexSet(w, v.added);
  PutIndexSet(w, v.removed);
  return Wrap(ArtifactTag::kEpochDelta, kSuiteId, v.to, w);
}

template <>
Result<EpochDelta> Decode(ByteView bytes) {
  return Unwrap<EpochDelta>(
      bytes, ArtifactTag::kEpochDelta,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<EpochDelta> {
        EpochDelta v;
        v.from = r.U64();
        v.to = r.U64();
        v.added = GetIndexSet(r);
        v.removed = GetIndexSet(r);
        if (!r.ok()) return BodyError(r);
        for (Index i : v.added) {
          if (v.removed.count(i) != 0) {
            return MakeError(ErrorCode::kMalformedEnvelope,
                             "index both added and removed");
          }
        }
        CRED_RETURN_IF_ERROR(CheckEpoch(h, v.to));
        return v;
      });
}

// ---- base scheme ----

Bytes Encode(const BaseMpk& v) {
  ByteWriter w;
  PutCipher(w, v.g);
  PutCipher(w, v.g_a);
  PutMap(w, v.h, PutCipher);
  PutTarget(w, v.egg_alpha);
  PutStrings(w, v.universe);
  return Wrap(ArtifactTag::kBaseMpk, v.suite, 0, w);
}

template <>
Result<BaseMpk> Decode(ByteView bytes) {
  return Unwrap<BaseMpk>(
      bytes, ArtifactTag::kBaseMpk,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<BaseMpk> {
        BaseMpk v;
        v.g = GetElement<CipherElement>(r);
        v.g_a = GetElement<CipherElement>(r);
        v.h = GetMap<CipherElement>(r, GetElement<CipherElement>);
        v.egg_alpha = GetElement<TargetElement>(r);
        v.universe = GetStringList(r);
        CheckUniverse(r, v.universe, KeysOf(v.h));
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, 0));
        v.suite = h.suite;
        return v;
      });
}

Bytes Encode(const BaseMsk& v) {
  ByteWriter w;
  PutScalar(w, v.alpha);
  PutScalar(w, v.a);
  PutMap(w, v.z, PutScalar);
  return Wrap(ArtifactTag::kBaseMsk, kSuiteId, 0, w);
}

template <>
Result<BaseMsk> Decode(ByteView bytes) {
  return Unwrap<BaseMsk>(
      bytes, ArtifactTag::kBaseMsk,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<BaseMsk> {
        BaseMsk v;
        v.alpha = GetScalar(r);
        v.a = GetScalar(r);
        v.z = GetMap<Scalar>(r, GetScalar);
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, 0));
        return v;
      });
}

Bytes Encode(const BaseKey& v) {
  ByteWriter w;
  PutKey(w, v.k);
  PutKey(w, v.l);
  PutMap(w, v.k_x, PutKey);
  return Wrap(ArtifactTag::kBaseKey, kSuiteId, 0, w);
}

template <>
Result<BaseKey> Decode(ByteView bytes) {
  return Unwrap<BaseKey>(
      bytes, ArtifactTag::kBaseKey,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<BaseKey> {
        BaseKey v;
        v.k = GetElement<KeyElement>(r);
        v.l = GetElement<KeyElement>(r);
        v.k_x = GetMap<KeyElement>(r, GetElement<KeyElement>);
        if (!r.ok()) return BodyError(r);
        v.attrs = KeysOf(v.k_x);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, 0));
        return v;
      });
}

Bytes Encode(const BaseCiphertext& v) {
  ByteWriter w;
  PutBaseCiphertext(w, v);
  return Wrap(ArtifactTag::kBaseCiphertext, kSuiteId, 0, w);
}

template <>
Result<BaseCiphertext> Decode(ByteView bytes) {
  return Unwrap<BaseCiphertext>(
      bytes, ArtifactTag::kBaseCiphertext,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<BaseCiphertext> {
        BaseCiphertext v = GetBaseCiphertext(r);
        if (!r.ok()) return BodyError(r);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, 0));
        return v;
      });
}

// ---- protocol sessions ----

Bytes Encode(const VerifierSession& v) {
  ByteWriter w;
  w.Field(v.resource_id);
  w.Field(v.policy);
  w.Field(v.k_c);
  w.U8(static_cast<uint8_t>(v.state));
  return Wrap(ArtifactTag::kVerifierSession, kSuiteId, 0, w);
}

template <>
Result<VerifierSession> Decode(ByteView bytes) {
  return Unwrap<VerifierSession>(
      bytes, ArtifactTag::kVerifierSession,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<VerifierSession> {
        VerifierSession v;
        v.resource_id = r.String();
        v.policy = r.String();
        ByteView k = r.FixedField(kTokenSize);
        if (r.ok()) std::copy(k.begin(), k.end(), v.k_c.begin());
        const uint8_t state = r.U8();
        if (r.ok() && state > static_cast<uint8_t>(VerifierState::kClosed)) {
          r.Fail("bad session state");
        }
        if (!r.ok()) return BodyError(r);
        v.state = static_cast<VerifierState>(state);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, 0));
        return v;
      });
}

Bytes Encode(const ProverSession& v) {
  ByteWriter w;
  w.Field(v.resource_id);
  w.Field(v.r_c);
  w.U8(static_cast<uint8_t>(v.state));
  return Wrap(ArtifactTag::kProverSession, kSuiteId, 0, w);
}

template <>
Result<ProverSession> Decode(ByteView bytes) {
  return Unwrap<ProverSession>(
      bytes, ArtifactTag::kProverSession,
      [](ByteReader& r, const EnvelopeHeader& h) -> Result<ProverSession> {
        ProverSession v;
        v.resource_id = r.String();
        ByteView n = r.FixedField(kNonceSize);
        if (r.ok()) std::copy(n.begin(), n.end(), v.r_c.begin());
        const uint8_t state = r.U8();
        if (r.ok() && state > static_cast<uint8_t>(ProverState::kClosed)) {
          r.Fail("bad session state");
        }
        if (!r.ok()) return BodyError(r);
        v.state = static_cast<ProverState>(state);
        CRED_RETURN_IF_ERROR(CheckEpoch(h, 0));
        return v;
      });
}

}  // namespace cred
