// Copyright 2026 The Authors.
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

#ifndef CREDAUCT_LEDGER_HPP_
#define CREDAUCT_LEDGER_HPP_

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "credauct/common.hpp"
#include "credauct/rng.hpp"
#include "credauct/sha256.hpp"

namespace credauct {

using Pad = std::array<std::uint8_t, 32>;

// Bid amounts are bound into commitments as 8-byte big-endian fixed point
// at 1e-9 resolution; protocol values are quantized to this grid on entry.
inline std::uint64_t amount_to_nano(double amount) {
  if (!(amount >= 0.0) || !(amount < 1.8e10))
    throw InputError("amount not representable at 1e-9 resolution");
  return static_cast<std::uint64_t>(std::llround(amount * 1e9));
}

inline double nano_to_amount(std::uint64_t nano) {
  return static_cast<double>(nano) / 1e9;
}

inline double quantize_amount(double amount) {
  return nano_to_amount(amount_to_nano(amount));
}

struct Commitment {
  Digest256 digest{};
  friend bool operator==(const Commitment&, const Commitment&) = default;
};

inline Commitment commit(ElementId id, double amount, const Pad& pad) {
  std::uint8_t buf[4 + 8 + 32];
  std::uint32_t uid = static_cast<std::uint32_t>(id);
  std::uint64_t nano = amount_to_nano(amount);
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<std::uint8_t>(uid >> (8 * (3 - i)));
  for (int i = 0; i < 8; ++i)
    buf[4 + i] = static_cast<std::uint8_t>(nano >> (8 * (7 - i)));
  std::memcpy(buf + 12, pad.data(), 32);
  return Commitment{sha256(buf, sizeof buf)};
}

inline bool verify_reveal(const Commitment& c, ElementId id, double amount,
                          const Pad& pad) {
  return commit(id, amount, pad).digest == c.digest;
}

inline Pad random_pad(Rng& rng) {
  Pad p;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t w = rng.next_u64();
    for (int j = 0; j < 8; ++j)
      p[static_cast<std::size_t>(i * 8 + j)] = static_cast<std::uint8_t>(w >> (8 * j));
  }
  return p;
}

enum class EntryKind {
  Announce,
  Commit,
  Deposit,
  DeclareConstraint,
  DeclareDistributions,
  EndInit,
  Reveal,
  EndReveal,
  Burn,
  Allocate,
  Pay,
  LevelAdvance,
};

struct LedgerEntry {
  std::uint64_t seq = 0;
  EntryKind kind = EntryKind::Announce;
  ElementId who = -1;          // Commit/Deposit/Reveal/Burn/Pay
  std::uint64_t nano = 0;      // Reveal amount (fixed point)
  double amount = 0.0;         // Deposit/Burn/Pay amounts, LevelAdvance price
  Digest256 digest{};          // Commit
  Pad pad{};                   // Reveal
  Eset set = 0;                // Allocate
  int level = 0;               // LevelAdvance
  std::string text;            // DeclareConstraint/DeclareDistributions

  static LedgerEntry make(EntryKind kind, ElementId who = -1) {
    LedgerEntry e;
    e.kind = kind;
    e.who = who;
    return e;
  }
  static LedgerEntry announce() { return make(EntryKind::Announce); }
  static LedgerEntry commit_entry(ElementId id, const Commitment& c) {
    LedgerEntry e = make(EntryKind::Commit, id);
    e.digest = c.digest;
    return e;
  }
  static LedgerEntry deposit(ElementId id, double amount) {
    LedgerEntry e = make(EntryKind::Deposit, id);
    e.amount = amount;
    return e;
  }
  static LedgerEntry declare_constraint(std::string spec) {
    LedgerEntry e = make(EntryKind::DeclareConstraint);
    e.text = std::move(spec);
    return e;
  }
  static LedgerEntry declare_distributions(std::string spec) {
    LedgerEntry e = make(EntryKind::DeclareDistributions);
    e.text = std::move(spec);
    return e;
  }
  static LedgerEntry end_init() { return make(EntryKind::EndInit); }
  static LedgerEntry reveal(ElementId id, double amount, const Pad& p) {
    LedgerEntry e = make(EntryKind::Reveal, id);
    e.nano = amount_to_nano(amount);
    e.pad = p;
    return e;
  }
  static LedgerEntry end_reveal() { return make(EntryKind::EndReveal); }
  static LedgerEntry burn(ElementId id, double amount) {
    LedgerEntry e = make(EntryKind::Burn, id);
    e.amount = amount;
    return e;
  }
  static LedgerEntry allocate(Eset s) {
    LedgerEntry e = make(EntryKind::Allocate);
    e.set = s;
    return e;
  }
  static LedgerEntry pay(ElementId id, double amount) {
    LedgerEntry e = make(EntryKind::Pay, id);
    e.amount = amount;
    return e;
  }
  static LedgerEntry level_advance(int level, double price) {
    LedgerEntry e = make(EntryKind::LevelAdvance);
    e.level = level;
    e.amount = price;
    return e;
  }
};

// Append-only broadcast record with phase ordering enforced on append.
// Rejected entries are kept in a side audit log, never in the record.
class Ledger {
 public:
  // Returns the assigned seq, or nullopt when the entry is rejected.
  std::optional<std::uint64_t> append(LedgerEntry e) {
    std::string why = validate(e);
    if (!why.empty()) {
      audit_.emplace_back(std::move(e), std::move(why));
      return std::nullopt;
    }
    apply_phase(e);
    e.seq = next_seq_++;
    entries_.push_back(std::move(e));
    return entries_.back().seq;
  }

  // Append or throw; protocol code uses this since its entries are legal by
  // construction.
  std::uint64_t must_append(LedgerEntry e) {
    auto seq = append(std::move(e));
    if (!seq) throw ProtocolError("ledger rejected entry: " + audit_.back().second);
    return *seq;
  }

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  const std::vector<std::pair<LedgerEntry, std::string>>& audit_log() const {
    return audit_;
  }

  std::string dump() const {
    std::string out;
    for (const auto& e : entries_) out += serialize(e) + "\n";
    return out;
  }

  // Parses a dump without phase validation; replay re-validates separately
  // so that tampered or truncated dumps are reported, not rejected silently.
  static std::vector<LedgerEntry> parse_dump(const std::string& text);

  static std::string serialize(const LedgerEntry& e);
  static LedgerEntry deserialize(const std::string& line);

 private:
  enum class Phase { Created, Init, Revelation, Settlement };

  std::string validate(const LedgerEntry& e) const {
    switch (e.kind) {
      case EntryKind::Announce:
        return phase_ == Phase::Created ? "" : "announce after start";
      case EntryKind::Commit:
        if (phase_ != Phase::Init) return "commit outside initialization";
        for (const auto& prev : entries_) {
          if (prev.kind == EntryKind::Commit && prev.who == e.who)
            return "duplicate commitment for id";
        }
        return "";
      case EntryKind::DeclareConstraint:
      case EntryKind::DeclareDistributions:
        return phase_ == Phase::Init ? "" : "declaration outside initialization";
      case EntryKind::EndInit:
        return phase_ == Phase::Init ? "" : "end-init outside initialization";
      case EntryKind::Deposit:
        if (phase_ == Phase::Init || phase_ == Phase::Revelation) return "";
        return "deposit outside init/revelation";
      case EntryKind::Reveal: {
        if (phase_ != Phase::Revelation) return "reveal outside revelation phase";
        const LedgerEntry* c = find_commit(e.who);
        if (c == nullptr) return "reveal without commitment";
        if (!verify_reveal(Commitment{c->digest}, e.who, nano_to_amount(e.nano),
                           e.pad))
          return "reveal does not verify";
        for (const auto& prev : entries_) {
          if (prev.kind == EntryKind::Reveal && prev.who == e.who)
            return "duplicate reveal for id";
        }
        return "";
      }
      case EntryKind::LevelAdvance:
        return phase_ == Phase::Revelation ? "" : "level advance outside revelation";
      case EntryKind::EndReveal:
        return phase_ == Phase::Revelation ? "" : "end-reveal outside revelation";
      case EntryKind::Burn:
        if (phase_ == Phase::Revelation || phase_ == Phase::Settlement) return "";
        return "burn outside revelation/settlement";
      case EntryKind::Allocate:
        if (phase_ != Phase::Settlement) return "allocate before end-reveal";
        for (const auto& prev : entries_) {
          if (prev.kind == EntryKind::Allocate) return "duplicate allocation";
        }
        return "";
      case EntryKind::Pay:
        return phase_ == Phase::Settlement ? "" : "pay before end-reveal";
    }
    return "unknown entry kind";
  }

  void apply_phase(const LedgerEntry& e) {
    if (e.kind == EntryKind::Announce) phase_ = Phase::Init;
    if (e.kind == EntryKind::EndInit) phase_ = Phase::Revelation;
    if (e.kind == EntryKind::EndReveal) phase_ = Phase::Settlement;
  }

  const LedgerEntry* find_commit(ElementId id) const {
    for (const auto& e : entries_) {
      if (e.kind == EntryKind::Commit && e.who == id) return &e;
    }
    return nullptr;
  }

  Phase phase_ = Phase::Created;
  std::uint64_t next_seq_ = 0;
  std::vector<LedgerEntry> entries_;
  std::vector<std::pair<LedgerEntry, std::string>> audit_;
};

namespace detail {

inline std::string hex_encode(const std::uint8_t* p, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    out += digits[p[i] >> 4];
    out += digits[p[i] & 0xf];
  }
  return out;
}

inline void hex_decode(const std::string& s, std::uint8_t* p, std::size_t n) {
  if (s.size() != n * 2) throw InputError("bad hex field length");
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw InputError("bad hex digit");
  };
  for (std::size_t i = 0; i < n; ++i)
    p[i] = static_cast<std::uint8_t>((nib(s[2 * i]) << 4) | nib(s[2 * i + 1]));
}

// Hexfloat for bit-exact round trips of computed amounts and prices.
inline std::string double_field(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

inline double parse_double_field(const std::string& s) {
  return std::strtod(s.c_str(), nullptr);
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('|', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

inline std::string Ledger::serialize(const LedgerEntry& e) {
  using detail::double_field;
  using detail::hex_encode;
  std::string out = std::to_string(e.seq) + "|";
  switch (e.kind) {
    case EntryKind::Announce:
      return out + "announce";
    case EntryKind::Commit:
      return out + "commit|" + std::to_string(e.who) + "|" +
             hex_encode(e.digest.data(), e.digest.size());
    case EntryKind::Deposit:
      return out + "deposit|" + std::to_string(e.who) + "|" +
             double_field(e.amount);
    case EntryKind::DeclareConstraint:
      return out + "constraint|" + e.text;
    case EntryKind::DeclareDistributions:
      return out + "distributions|" + e.text;
    case EntryKind::EndInit:
      return out + "end-init";
    case EntryKind::Reveal:
      return out + "reveal|" + std::to_string(e.who) + "|" +
             std::to_string(e.nano) + "|" + hex_encode(e.pad.data(), e.pad.size());
    case EntryKind::EndReveal:
      return out + "end-reveal";
    case EntryKind::Burn:
      return out + "burn|" + std::to_string(e.who) + "|" + double_field(e.amount);
    case EntryKind::Allocate:
      return out + "allocate|" + std::to_string(e.set);
    case EntryKind::Pay:
      return out + "pay|" + std::to_string(e.who) + "|" + double_field(e.amount);
    case EntryKind::LevelAdvance:
      return out + "level|" + std::to_string(e.level) + "|" +
             double_field(e.amount);
  }
  throw InternalError("serialize: unknown kind");
}

inline LedgerEntry Ledger::deserialize(const std::string& line) {
  using detail::parse_double_field;
  auto f = detail::split_fields(line);
  if (f.size() < 2) throw InputError("ledger line too short");
  LedgerEntry e;
  e.seq = std::stoull(f[0]);
  const std::string& k = f[1];
  auto need = [&](std::size_t n) {
    if (f.size() != n) throw InputError("bad field count for " + k);
  };
  if (k == "announce") {
    need(2);
    e.kind = EntryKind::Announce;
  } else if (k == "commit") {
    need(4);
    e.kind = EntryKind::Commit;
    e.who = std::stoi(f[2]);
    detail::hex_decode(f[3], e.digest.data(), e.digest.size());
  } else if (k == "deposit") {
    need(4);
    e.kind = EntryKind::Deposit;
    e.who = std::stoi(f[2]);
    e.amount = parse_double_field(f[3]);
  } else if (k == "constraint" || k == "distributions") {
    // The spec text is the final field and may itself contain '|'.
    if (f.size() < 3) throw InputError("bad field count for " + k);
    e.kind = k == "constraint" ? EntryKind::DeclareConstraint
                               : EntryKind::DeclareDistributions;
    e.text = f[2];
    for (std::size_t i = 3; i < f.size(); ++i) e.text += "|" + f[i];
  } else if (k == "end-init") {
    need(2);
    e.kind = EntryKind::EndInit;
  } else if (k == "reveal") {
    need(5);
    e.kind = EntryKind::Reveal;
    e.who = std::stoi(f[2]);
    e.nano = std::stoull(f[3]);
    detail::hex_decode(f[4], e.pad.data(), e.pad.size());
  } else if (k == "end-reveal") {
    need(2);
    e.kind = EntryKind::EndReveal;
  } else if (k == "burn") {
    need(4);
    e.kind = EntryKind::Burn;
    e.who = std::stoi(f[2]);
    e.amount = parse_double_field(f[3]);
  } else if (k == "allocate") {
    need(3);
    e.kind = EntryKind::Allocate;
    e.set = std::stoull(f[2]);
  } else if (k == "pay") {
    need(4);
    e.kind = EntryKind::Pay;
    e.who = std::stoi(f[2]);
    e.amount = parse_double_field(f[3]);
  } else if (k == "level") {
    need(4);
    e.kind = EntryKind::LevelAdvance;
    e.level = std::stoi(f[2]);
    e.amount = parse_double_field(f[3]);
  } else {
    throw InputError("unknown ledger entry kind: " + k);
  }
  return e;
}

inline std::vector<LedgerEntry> Ledger::parse_dump(const std::string& text) {
  std::vector<LedgerEntry> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    if (pos > start) out.push_back(deserialize(text.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

}  // namespace credauct

#endif  // CREDAUCT_LEDGER_HPP_
