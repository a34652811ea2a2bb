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

#include "spdevops/packet_class.h"

#include <bit>
#include <sstream>

namespace spdevops {
namespace {

constexpr std::array<std::string_view, kNumProtos> kProtoNames = {"TCP", "UDP"};
constexpr std::array<std::string_view, kNumAppClasses> kAppNames = {
    "WEB", "EMAIL", "OTHER"};
constexpr std::array<std::string_view, kNumSpamFlags> kSpamNames = {"HAM",
                                                                    "SPAM"};
constexpr std::array<std::string_view, kNumFields> kFieldNames = {
    "src_ip", "dst_ip",    "src_port", "dst_port",
    "proto",  "app_class", "spam_flag"};

template <size_t N>
int IndexOf(const std::array<std::string_view, N>& names,
            std::string_view name) {
  for (size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int LowestBit(uint8_t mask) { return std::countr_zero(mask); }

template <size_t N>
std::string MaskToString(uint8_t mask, uint8_t full,
                         const std::array<std::string_view, N>& names) {
  if (mask == full) return "*";
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < N; ++i) {
    if (mask & (1u << i)) {
      if (!first) out += ",";
      out += names[i];
      first = false;
    }
  }
  return out + "}";
}

}  // namespace

std::string_view ProtoName(Proto p) { return kProtoNames[static_cast<int>(p)]; }
std::string_view AppClassName(AppClass a) {
  return kAppNames[static_cast<int>(a)];
}
std::string_view SpamFlagName(SpamFlag s) {
  return kSpamNames[static_cast<int>(s)];
}
std::string_view FieldName(Field f) { return kFieldNames[static_cast<int>(f)]; }

std::optional<Proto> ParseProto(std::string_view name) {
  int i = IndexOf(kProtoNames, name);
  if (i < 0) return std::nullopt;
  return static_cast<Proto>(i);
}
std::optional<AppClass> ParseAppClass(std::string_view name) {
  int i = IndexOf(kAppNames, name);
  if (i < 0) return std::nullopt;
  return static_cast<AppClass>(i);
}
std::optional<SpamFlag> ParseSpamFlag(std::string_view name) {
  int i = IndexOf(kSpamNames, name);
  if (i < 0) return std::nullopt;
  return static_cast<SpamFlag>(i);
}

std::string ToString(const Packet& p) {
  std::ostringstream os;
  os << "src_ip=" << p.src_ip << " dst_ip=" << p.dst_ip
     << " src_port=" << p.src_port << " dst_port=" << p.dst_port
     << " proto=" << ProtoName(p.proto) << " app=" << AppClassName(p.app)
     << " spam=" << SpamFlagName(p.spam);
  return os.str();
}

// --- PacketClass -----------------------------------------------------------

PacketClass PacketClass::Full() {
  PacketClass c;
  for (auto& f : c.numeric_) f = IntervalSet::Full();
  c.proto_ = kAllProtos;
  c.app_ = kAllApps;
  c.spam_ = kAllSpam;
  return c;
}

PacketClass PacketClass::Of(const Packet& p) {
  PacketClass c;
  c.numeric_[0] = IntervalSet::Single(p.src_ip);
  c.numeric_[1] = IntervalSet::Single(p.dst_ip);
  c.numeric_[2] = IntervalSet::Single(p.src_port);
  c.numeric_[3] = IntervalSet::Single(p.dst_port);
  c.proto_ = Bit(p.proto);
  c.app_ = Bit(p.app);
  c.spam_ = Bit(p.spam);
  return c.Canonical();
}

PacketClass PacketClass::Canonical() const {
  bool empty = proto_ == 0 || app_ == 0 || spam_ == 0;
  for (const auto& f : numeric_) empty = empty || f.empty();
  return empty ? PacketClass() : *this;
}

bool PacketClass::Contains(const Packet& p) const {
  return !IsEmpty() && numeric_[0].Contains(p.src_ip) &&
         numeric_[1].Contains(p.dst_ip) && numeric_[2].Contains(p.src_port) &&
         numeric_[3].Contains(p.dst_port) && (proto_ & Bit(p.proto)) &&
         (app_ & Bit(p.app)) && (spam_ & Bit(p.spam));
}

bool PacketClass::IsSubsetOf(const PacketClass& other) const {
  if (IsEmpty()) return true;
  if (other.IsEmpty()) return false;
  for (int i = 0; i < kNumNumericFields; ++i) {
    if (!numeric_[i].IsSubsetOf(other.numeric_[i])) return false;
  }
  return (proto_ & ~other.proto_) == 0 && (app_ & ~other.app_) == 0 &&
         (spam_ & ~other.spam_) == 0;
}

uint64_t PacketClass::Cardinality() const {
  if (IsEmpty()) return 0;
  uint64_t n = 1;
  for (const auto& f : numeric_) n *= f.Cardinality();
  return n * std::popcount(proto_) * std::popcount(app_) * std::popcount(spam_);
}

PacketClass PacketClass::Intersect(const PacketClass& other) const {
  PacketClass c;
  for (int i = 0; i < kNumNumericFields; ++i) {
    c.numeric_[i] = numeric_[i].Intersect(other.numeric_[i]);
    if (c.numeric_[i].empty()) return PacketClass();
  }
  c.proto_ = proto_ & other.proto_;
  c.app_ = app_ & other.app_;
  c.spam_ = spam_ & other.spam_;
  return c.Canonical();
}

std::vector<PacketClass> PacketClass::Subtract(const PacketClass& other) const {
  if (IsEmpty()) return {};
  PacketClass common = Intersect(other);
  if (common.IsEmpty()) return {*this};
  // Peel off one field at a time: piece i agrees with `common` on fields
  // before i, lies outside `other` on field i, and keeps this class's values
  // on the remaining fields.
  std::vector<PacketClass> out;
  PacketClass prefix = *this;
  for (int i = 0; i < kNumNumericFields; ++i) {
    PacketClass piece = prefix;
    piece.numeric_[i] = numeric_[i].Subtract(other.numeric_[i]);
    piece = piece.Canonical();
    if (!piece.IsEmpty()) out.push_back(piece);
    prefix.numeric_[i] = common.numeric_[i];
  }
  auto peel_mask = [&](uint8_t PacketClass::* member) {
    PacketClass piece = prefix;
    piece.*member = (this->*member) & ~(other.*member);
    piece = piece.Canonical();
    if (!piece.IsEmpty()) out.push_back(piece);
    prefix.*member = common.*member;
  };
  peel_mask(&PacketClass::proto_);
  peel_mask(&PacketClass::app_);
  peel_mask(&PacketClass::spam_);
  return out;
}

std::optional<Packet> PacketClass::AnyPacket() const {
  if (IsEmpty()) return std::nullopt;
  Packet p;
  p.src_ip = *numeric_[0].Min();
  p.dst_ip = *numeric_[1].Min();
  p.src_port = *numeric_[2].Min();
  p.dst_port = *numeric_[3].Min();
  p.proto = static_cast<Proto>(LowestBit(proto_));
  p.app = static_cast<AppClass>(LowestBit(app_));
  p.spam = static_cast<SpamFlag>(LowestBit(spam_));
  return p;
}

const IntervalSet& PacketClass::numeric(Field f) const {
  return numeric_[static_cast<int>(f)];
}

PacketClass PacketClass::With(Field f, IntervalSet values) const {
  if (IsEmpty()) return *this;
  PacketClass c = *this;
  c.numeric_[static_cast<int>(f)] = std::move(values);
  return c.Canonical();
}

PacketClass PacketClass::WithProtos(uint8_t mask) const {
  if (IsEmpty()) return *this;
  PacketClass c = *this;
  c.proto_ = mask & kAllProtos;
  return c.Canonical();
}

PacketClass PacketClass::WithApps(uint8_t mask) const {
  if (IsEmpty()) return *this;
  PacketClass c = *this;
  c.app_ = mask & kAllApps;
  return c.Canonical();
}

PacketClass PacketClass::WithSpam(uint8_t mask) const {
  if (IsEmpty()) return *this;
  PacketClass c = *this;
  c.spam_ = mask & kAllSpam;
  return c.Canonical();
}

PacketClass PacketClass::WithProto(Proto p) const { return WithProtos(Bit(p)); }
PacketClass PacketClass::WithApp(AppClass a) const { return WithApps(Bit(a)); }
PacketClass PacketClass::WithSpamFlag(SpamFlag s) const {
  return WithSpam(Bit(s));
}

PacketClass PacketClass::WithFieldFrom(Field f,
                                       const PacketClass& other) const {
  switch (f) {
    case Field::kProto:
      return WithProtos(other.proto_);
    case Field::kAppClass:
      return WithApps(other.app_);
    case Field::kSpamFlag:
      return WithSpam(other.spam_);
    default:
      return With(f, other.numeric(f));
  }
}

PacketClass PacketClass::Reversed() const {
  if (IsEmpty()) return *this;
  PacketClass c = *this;
  std::swap(c.numeric_[0], c.numeric_[1]);
  std::swap(c.numeric_[2], c.numeric_[3]);
  return c;
}

std::string PacketClass::ToString() const {
  if (IsEmpty()) return "EMPTY";
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (int i = 0; i < kNumNumericFields; ++i) {
    if (numeric_[i].IsFull()) continue;
    if (!first) os << " ";
    os << FieldName(static_cast<Field>(i)) << "=" << numeric_[i].ToString();
    first = false;
  }
  auto add_mask = [&](std::string_view name, std::string text) {
    if (text == "*") return;
    if (!first) os << " ";
    os << name << "=" << text;
    first = false;
  };
  add_mask("proto", MaskToString(proto_, kAllProtos, kProtoNames));
  add_mask("app_class", MaskToString(app_, kAllApps, kAppNames));
  add_mask("spam_flag", MaskToString(spam_, kAllSpam, kSpamNames));
  if (first) os << "*";
  os << "]";
  return os.str();
}

// --- PacketSet -------------------------------------------------------------

PacketSet::PacketSet(PacketClass c) {
  if (!c.IsEmpty()) classes_.push_back(std::move(c));
}

bool PacketSet::Contains(const Packet& p) const {
  for (const auto& c : classes_) {
    if (c.Contains(p)) return true;
  }
  return false;
}

uint64_t PacketSet::Cardinality() const {
  uint64_t n = 0;
  for (const auto& c : classes_) n += c.Cardinality();
  return n;
}

void PacketSet::Add(const PacketClass& c) {
  if (c.IsEmpty()) return;
  std::vector<PacketClass> fresh = {c};
  for (const auto& existing : classes_) {
    std::vector<PacketClass> next;
    for (const auto& piece : fresh) {
      auto rest = piece.Subtract(existing);
      next.insert(next.end(), rest.begin(), rest.end());
    }
    fresh = std::move(next);
    if (fresh.empty()) return;
  }
  classes_.insert(classes_.end(), fresh.begin(), fresh.end());
}

void PacketSet::AddAll(const PacketSet& s) {
  for (const auto& c : s.classes_) Add(c);
}

PacketSet PacketSet::Intersect(const PacketClass& c) const {
  PacketSet out;
  for (const auto& mine : classes_) {
    PacketClass i = mine.Intersect(c);
    if (!i.IsEmpty()) out.classes_.push_back(std::move(i));
  }
  return out;
}

PacketSet PacketSet::Intersect(const PacketSet& s) const {
  PacketSet out;
  for (const auto& c : s.classes_) {
    PacketSet part = Intersect(c);
    out.classes_.insert(out.classes_.end(), part.classes_.begin(),
                        part.classes_.end());
  }
  return out;
}

PacketSet PacketSet::Subtract(const PacketClass& c) const {
  PacketSet out;
  for (const auto& mine : classes_) {
    auto rest = mine.Subtract(c);
    out.classes_.insert(out.classes_.end(), rest.begin(), rest.end());
  }
  return out;
}

PacketSet PacketSet::Subtract(const PacketSet& s) const {
  PacketSet out = *this;
  for (const auto& c : s.classes_) out = out.Subtract(c);
  return out;
}

bool PacketSet::IsSubsetOf(const PacketSet& s) const {
  return Subtract(s).IsEmpty();
}

bool PacketSet::SameAs(const PacketSet& s) const {
  return IsSubsetOf(s) && s.IsSubsetOf(*this);
}

std::optional<Packet> PacketSet::AnyPacket() const {
  if (classes_.empty()) return std::nullopt;
  return classes_.front().AnyPacket();
}

std::string PacketSet::ToString() const {
  if (classes_.empty()) return "EMPTY";
  std::string out;
  for (size_t i = 0; i < classes_.size(); ++i) {
    if (i) out += " | ";
    out += classes_[i].ToString();
  }
  return out;
}

}  // namespace spdevops
