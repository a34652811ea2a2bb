// Copyright 2026 The spdevops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPDEVOPS_PACKET_CLASS_H_
#define SPDEVOPS_PACKET_CLASS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdevops/interval_set.h"

namespace spdevops {

enum class Proto : uint8_t { kTcp = 0, kUdp = 1 };
enum class AppClass : uint8_t { kWeb = 0, kEmail = 1, kOther = 2 };
enum class SpamFlag : uint8_t { kHam = 0, kSpam = 1 };

inline constexpr int kNumProtos = 2;
inline constexpr int kNumAppClasses = 3;
inline constexpr int kNumSpamFlags = 2;

std::string_view ProtoName(Proto p);
std::string_view AppClassName(AppClass a);
std::string_view SpamFlagName(SpamFlag s);
std::optional<Proto> ParseProto(std::string_view name);
std::optional<AppClass> ParseAppClass(std::string_view name);
std::optional<SpamFlag> ParseSpamFlag(std::string_view name);

// Header fields of the packet model. The first four are 16-bit numeric
// fields; the rest are small enumerations.
enum class Field : uint8_t {
  kSrcIp = 0,
  kDstIp,
  kSrcPort,
  kDstPort,
  kProto,
  kAppClass,
  kSpamFlag,
};
inline constexpr int kNumNumericFields = 4;
inline constexpr int kNumFields = 7;

std::string_view FieldName(Field f);

// Bitmask over Field, used to record which header fields a VNF rewrote.
using FieldMask = uint8_t;
constexpr FieldMask MaskOf(Field f) {
  return static_cast<FieldMask>(1u << static_cast<int>(f));
}

// One concrete packet header.
struct Packet {
  uint32_t src_ip = 0;
  uint32_t dst_ip = 0;
  uint32_t src_port = 0;
  uint32_t dst_port = 0;
  Proto proto = Proto::kTcp;
  AppClass app = AppClass::kOther;
  SpamFlag spam = SpamFlag::kHam;

  friend bool operator==(const Packet&, const Packet&) = default;
  friend auto operator<=>(const Packet&, const Packet&) = default;
};

std::string ToString(const Packet& p);

// A symbolic set of packets: the cartesian product of one value set per
// header field. A class with any empty field is canonicalized to the unique
// EMPTY value in which every field is empty.
class PacketClass {
 public:
  // Default-constructed classes are EMPTY.
  PacketClass() = default;

  static PacketClass Full();
  static PacketClass Empty() { return PacketClass(); }
  static PacketClass Of(const Packet& p);

  bool IsEmpty() const { return numeric_[0].empty(); }
  bool Contains(const Packet& p) const;
  bool IsSubsetOf(const PacketClass& other) const;
  uint64_t Cardinality() const;

  PacketClass Intersect(const PacketClass& other) const;
  // Returns pairwise-disjoint classes whose union is this minus `other`.
  std::vector<PacketClass> Subtract(const PacketClass& other) const;

  // Smallest packet in the class (field-wise minimum), if any.
  std::optional<Packet> AnyPacket() const;

  const IntervalSet& numeric(Field f) const;
  uint8_t proto_mask() const { return proto_; }
  uint8_t app_mask() const { return app_; }
  uint8_t spam_mask() const { return spam_; }

  // Field setters return a new canonical class; this is unchanged.
  PacketClass With(Field f, IntervalSet values) const;
  PacketClass WithProtos(uint8_t mask) const;
  PacketClass WithApps(uint8_t mask) const;
  PacketClass WithSpam(uint8_t mask) const;
  PacketClass WithProto(Proto p) const;
  PacketClass WithApp(AppClass a) const;
  PacketClass WithSpamFlag(SpamFlag s) const;

  // Copies field `f` from `other`.
  PacketClass WithFieldFrom(Field f, const PacketClass& other) const;
  // Swaps source and destination addresses and ports (reply direction).
  PacketClass Reversed() const;

  std::string ToString() const;

  friend bool operator==(const PacketClass&, const PacketClass&) = default;

 private:
  PacketClass Canonical() const;

  std::array<IntervalSet, kNumNumericFields> numeric_;
  uint8_t proto_ = 0;
  uint8_t app_ = 0;
  uint8_t spam_ = 0;
};

inline constexpr uint8_t kAllProtos = (1u << kNumProtos) - 1;
inline constexpr uint8_t kAllApps = (1u << kNumAppClasses) - 1;
inline constexpr uint8_t kAllSpam = (1u << kNumSpamFlags) - 1;

constexpr uint8_t Bit(Proto p) { return 1u << static_cast<int>(p); }
constexpr uint8_t Bit(AppClass a) { return 1u << static_cast<int>(a); }
constexpr uint8_t Bit(SpamFlag s) { return 1u << static_cast<int>(s); }

// A union of pairwise-disjoint packet classes.
class PacketSet {
 public:
  PacketSet() = default;
  explicit PacketSet(PacketClass c);

  static PacketSet Full() { return PacketSet(PacketClass::Full()); }

  bool IsEmpty() const { return classes_.empty(); }
  bool Contains(const Packet& p) const;
  uint64_t Cardinality() const;

  // Adds the part of `c` not already covered.
  void Add(const PacketClass& c);
  void AddAll(const PacketSet& s);

  PacketSet Intersect(const PacketClass& c) const;
  PacketSet Intersect(const PacketSet& s) const;
  PacketSet Subtract(const PacketClass& c) const;
  PacketSet Subtract(const PacketSet& s) const;
  bool IsSubsetOf(const PacketSet& s) const;
  bool SameAs(const PacketSet& s) const;

  std::optional<Packet> AnyPacket() const;

  const std::vector<PacketClass>& classes() const { return classes_; }

  std::string ToString() const;

 private:
  std::vector<PacketClass> classes_;
};

}  // namespace spdevops

#endif  // SPDEVOPS_PACKET_CLASS_H_
