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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "credauct/ledger.hpp"

using namespace credauct;

namespace {

Pad pad_of(std::uint8_t fill) {
  Pad p;
  p.fill(fill);
  return p;
}

}  // namespace

TEST_CASE("sha256 FIPS 180-4 vectors") {
  auto hex = [](const Digest256& d) {
    return detail::hex_encode(d.data(), d.size());
  };
  const std::uint8_t abc[] = {'a', 'b', 'c'};
  CHECK(hex(sha256(abc, 3)) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(hex(sha256(abc, 0)) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const std::string two_blocks =
      "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq";
  CHECK(hex(sha256(reinterpret_cast<const std::uint8_t*>(two_blocks.data()),
                   two_blocks.size())) ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("commitments are deterministic and binding on every field") {
  Pad p = pad_of(0x11), q = pad_of(0x22);
  CHECK(commit(1, 2.5, p) == commit(1, 2.5, p));
  CHECK_FALSE(commit(1, 2.5, p) == commit(1, 2.5, q));
  CHECK_FALSE(commit(1, 2.5, p) == commit(2, 2.5, p));
  CHECK_FALSE(commit(1, 2.5, p) == commit(1, 2.5 + 1e-9, p));
}

TEST_CASE("verify_reveal") {
  Pad p = pad_of(0x37);
  Commitment c = commit(4, 1.25, p);
  CHECK(verify_reveal(c, 4, 1.25, p));
  CHECK_FALSE(verify_reveal(c, 4, 1.26, p));
  CHECK_FALSE(verify_reveal(c, 4, 1.25, pad_of(0x38)));
  CHECK_FALSE(verify_reveal(c, 5, 1.25, p));
}

TEST_CASE("binding probe: no collisions across random inputs") {
  Rng rng(404);
  std::set<Digest256> seen;
  for (int i = 0; i < 1000000; ++i) {
    ElementId id = static_cast<ElementId>(rng.below(64));
    double amount = quantize_amount(rng.uniform01() * 100.0);
    Pad p = random_pad(rng);
    auto [it, inserted] = seen.insert(commit(id, amount, p).digest);
    CHECK(inserted);
    if (!inserted) break;
  }
}

TEST_CASE("phase ordering") {
  Ledger l;
  Pad p = pad_of(1);
  CHECK(l.append(LedgerEntry::announce()).has_value());
  CHECK(l.append(LedgerEntry::commit_entry(0, commit(0, 2.0, p))).has_value());

  // Reveal before EndInit is rejected and lands in the audit log.
  CHECK_FALSE(l.append(LedgerEntry::reveal(0, 2.0, p)).has_value());
  CHECK(l.audit_log().size() == 1);

  // Duplicate commitment from the same id is rejected.
  CHECK_FALSE(l.append(LedgerEntry::commit_entry(0, commit(0, 3.0, p))).has_value());

  CHECK(l.append(LedgerEntry::end_init()).has_value());
  CHECK(l.append(LedgerEntry::reveal(0, 2.0, p)).has_value());

  // Allocate before EndReveal is rejected.
  CHECK_FALSE(l.append(LedgerEntry::allocate(make_set({0}))).has_value());
  CHECK(l.append(LedgerEntry::end_reveal()).has_value());
  CHECK(l.append(LedgerEntry::allocate(make_set({0}))).has_value());
  CHECK(l.append(LedgerEntry::pay(0, 1.0)).has_value());

  // Seqs are dense and increasing over accepted entries.
  for (std::size_t i = 0; i < l.entries().size(); ++i)
    CHECK(l.entries()[i].seq == i);
}

TEST_CASE("non-verifying reveal is rejected") {
  Ledger l;
  Pad p = pad_of(5);
  l.must_append(LedgerEntry::announce());
  l.must_append(LedgerEntry::commit_entry(3, commit(3, 1.5, p)));
  l.must_append(LedgerEntry::end_init());
  CHECK_FALSE(l.append(LedgerEntry::reveal(3, 1.6, p)).has_value());
  CHECK(l.append(LedgerEntry::reveal(3, 1.5, p)).has_value());
}

TEST_CASE("dump round trip is bit exact") {
  Ledger l;
  Rng rng(7);
  Pad p = random_pad(rng);
  l.must_append(LedgerEntry::announce());
  l.must_append(LedgerEntry::commit_entry(0, commit(0, 2.125, p)));
  l.must_append(LedgerEntry::deposit(0, 0.30000000000000004));
  // Declaration text may contain the field separator (partition blocks).
  l.must_append(LedgerEntry::declare_constraint("partition(0 1:1|2:1)"));
  l.must_append(LedgerEntry::declare_distributions("exp(1);exp(1);exp(1)"));
  l.must_append(LedgerEntry::end_init());
  l.must_append(LedgerEntry::level_advance(1, 0.001));
  l.must_append(LedgerEntry::reveal(0, 2.125, p));
  l.must_append(LedgerEntry::end_reveal());
  l.must_append(LedgerEntry::burn(7, 1e-9));
  l.must_append(LedgerEntry::allocate(make_set({0})));
  l.must_append(LedgerEntry::pay(0, 1.0000000001));

  std::string dump = l.dump();
  auto entries = Ledger::parse_dump(dump);
  REQUIRE(entries.size() == l.entries().size());
  std::string dump2;
  for (const auto& e : entries) dump2 += Ledger::serialize(e) + "\n";
  CHECK(dump == dump2);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& a = l.entries()[i];
    const auto& b = entries[i];
    CHECK(a.kind == b.kind);
    CHECK(a.who == b.who);
    CHECK(a.nano == b.nano);
    CHECK(a.amount == b.amount);  // bitwise via hexfloat
    CHECK(a.digest == b.digest);
    CHECK(a.pad == b.pad);
    CHECK(a.set == b.set);
    CHECK(a.level == b.level);
    CHECK(a.text == b.text);
  }
}

TEST_CASE("amount quantization bounds") {
  CHECK(amount_to_nano(2.5) == 2500000000ULL);
  CHECK(quantize_amount(2.5) == 2.5);
  CHECK_THROWS_AS((void)amount_to_nano(-0.1), InputError);
  CHECK_THROWS_AS((void)amount_to_nano(1e12), InputError);
}
