#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "memsim/bits.hpp"
#include "memsim/history_store.hpp"
#include "test_support.hpp"

using namespace memsim;

namespace {
constexpr std::uint32_t kAlphabet = 4;  // ids 0..3, blank 0
}

TEST_CASE("append then read back") {
  HistoryStore store(kAlphabet, 0);
  store.append_write(0, 1, 1);
  CHECK(store.entry_count() == 1);
  CHECK(store.read_latest(0, 1) == 1);
}

TEST_CASE("equal timestamps at one position are rejected") {
  HistoryStore store(kAlphabet, 0);
  store.append_write(0, 1, 3);
  CHECK_THROWS_AS(store.append_write(0, 2, 3), NonMonotonicTimestamp);
  CHECK_THROWS_AS(store.append_write(0, 2, 2), NonMonotonicTimestamp);
  // other positions are unconstrained
  store.append_write(1, 2, 3);
  CHECK(store.entry_count() == 2);
}

TEST_CASE("symbols outside the alphabet are rejected") {
  HistoryStore store(kAlphabet, 0);
  CHECK_THROWS_AS(store.append_write(0, kAlphabet, 1), UnknownSymbol);
  CHECK_THROWS_AS(store.append_write(0, 99, 1), UnknownSymbol);
}

TEST_CASE("read_latest resolves maximum timestamp <= time") {
  HistoryStore store(kAlphabet, 0);
  store.append_write(0, 1, 1);
  store.append_write(0, 2, 3);
  CHECK(store.read_latest(0, 0) == 0);  // before the first write: blank
  CHECK(store.read_latest(0, 1) == 1);
  CHECK(store.read_latest(0, 2) == 1);
  CHECK(store.read_latest(0, 3) == 2);
  CHECK(store.read_latest(0, 1000) == 2);
}

TEST_CASE("empty store reads blank everywhere") {
  HistoryStore store(kAlphabet, 3);
  CHECK(store.read_latest(5, 10) == 3);
  CHECK(store.read_latest(-5, 0) == 3);
}

TEST_CASE("seed_input places symbols at timestamp 0") {
  HistoryStore store(kAlphabet, 0);
  store.seed_input({1, 0, 1}, 0);  // "101" with 0 playing '0'
  CHECK(store.entry_count() == 3);
  CHECK(store.read_latest(1, 0) == 0);  // blank-valued input recorded explicitly
  CHECK(store.read_latest(0, 0) == 1);
  CHECK(store.read_latest(2, 0) == 1);
}

TEST_CASE("seeding an empty sequence leaves the store empty") {
  HistoryStore store(kAlphabet, 0);
  store.seed_input({}, 0);
  CHECK(store.entry_count() == 0);
  CHECK(store.read_latest(0, 0) == 0);
}

TEST_CASE("seed at a negative origin") {
  HistoryStore store(kAlphabet, 0);
  store.seed_input({1, 1}, -1);
  CHECK(store.read_latest(-1, 0) == 1);
  CHECK(store.read_latest(0, 0) == 1);
  CHECK(store.read_latest(1, 0) == 0);
}

TEST_CASE("seed_input requires an empty store") {
  HistoryStore store(kAlphabet, 0);
  store.append_write(7, 1, 1);
  CHECK_THROWS_AS(store.seed_input({1}, 0), StoreNotEmpty);
}

TEST_CASE("corrupted entry surfaces on read, lazily") {
  HistoryStore store(kAlphabet, 0);
  store.append_write(0, 1, 1);
  store.append_write(1, 2, 1);
  store.corrupt_entry(0);
  // the corrupted entry is only checked when a read selects it
  CHECK(store.read_latest(1, 5) == 2);
  CHECK_THROWS_AS(store.read_latest(0, 5), IntegrityViolation);
}

TEST_CASE("audit reports exactly the injected fault") {
  HistoryStore store(kAlphabet, 0);
  for (int i = 0; i < 10; ++i) store.append_write(i, 1, 1);
  store.corrupt_entry(7);
  const auto bad = store.audit();
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == 7);
}

TEST_CASE("corrupt_entry bounds") {
  HistoryStore store(kAlphabet, 0);
  CHECK_THROWS_AS(store.corrupt_entry(0), IndexOutOfRange);
}

TEST_CASE("any single-bit field mutation is detected on read") {
  for (int field = 0; field < 3; ++field) {
    for (unsigned bit : {0u, 1u, 7u, 13u, 31u}) {
      HistoryStore store(kAlphabet, 0);
      store.append_write(4, 1, 9);
      store.corrupt_entry_bit(0, field, bit);
      CHECK_THROWS_AS(store.read_latest(4, 9), IntegrityViolation);
    }
  }
}

TEST_CASE("10k random valid appends keep count and checksums") {
  std::mt19937_64 rng(42);
  HistoryStore store(kAlphabet, 0);
  std::vector<Timestamp> last(64, 0);
  for (int i = 0; i < 10'000; ++i) {
    const Position p = static_cast<Position>(rng() % 64) - 32;
    auto& at = last[static_cast<std::size_t>(p + 32)];
    at += 1 + rng() % 3;
    store.append_write(p, static_cast<SymbolId>(rng() % kAlphabet), at);
  }
  CHECK(store.entry_count() == 10'000);
  CHECK(store.audit().empty());
}

TEST_CASE("randomized equivalence with the linear-scan oracle") {
  std::mt19937_64 rng(7);
  HistoryStore store(kAlphabet, 2);
  test::NaiveHistory naive{2, {}};
  std::vector<Timestamp> last(32, 0);
  for (int i = 0; i < 1'000; ++i) {
    const Position p = static_cast<Position>(rng() % 32) - 16;
    auto& at = last[static_cast<std::size_t>(p + 16)];
    at += 1 + rng() % 4;
    const auto a = static_cast<SymbolId>(rng() % kAlphabet);
    store.append_write(p, a, at);
    naive.record(p, a, at);
  }
  for (int i = 0; i < 1'000; ++i) {
    const Position p = static_cast<Position>(rng() % 40) - 20;  // includes never-written cells
    const Timestamp t = rng() % 5'000;
    CHECK(store.read_latest(p, t) == naive.read_latest(p, t));
  }
}

TEST_CASE("reads never change the serialized store") {
  std::mt19937_64 rng(3);
  HistoryStore store(kAlphabet, 0);
  for (int i = 0; i < 100; ++i) {
    store.append_write(static_cast<Position>(i % 5), static_cast<SymbolId>(rng() % kAlphabet),
                       static_cast<Timestamp>(i + 1));
  }
  const std::string before = store.dump_to_string();
  for (int i = 0; i < 500; ++i) {
    store.read_latest(static_cast<Position>(rng() % 8), rng() % 200);
  }
  CHECK(store.dump_to_string() == before);
}

TEST_CASE("per-position timestamps are strictly increasing in insertion order") {
  std::mt19937_64 rng(11);
  HistoryStore store(kAlphabet, 0);
  std::vector<Timestamp> last(8, 0);
  for (int i = 0; i < 400; ++i) {
    const Position p = static_cast<Position>(rng() % 8);
    auto& at = last[static_cast<std::size_t>(p)];
    at += 1 + rng() % 2;
    store.append_write(p, 1, at);
  }
  std::unordered_map<Position, Timestamp> seen;
  for (std::size_t i = 0; i < store.entry_count(); ++i) {
    const HistoryEntry& e = store.entry(i);
    auto it = seen.find(e.position);
    if (it != seen.end()) CHECK(e.timestamp > it->second);
    seen[e.position] = e.timestamp;
  }
}

TEST_CASE("read cost stays within ceil(log2 k) + 1 comparisons") {
  std::mt19937_64 rng(5);
  HistoryStore store(kAlphabet, 0);
  std::vector<Timestamp> last(4, 0);
  for (int i = 0; i < 3'000; ++i) {
    const Position p = static_cast<Position>(rng() % 4);
    auto& at = last[static_cast<std::size_t>(p)];
    at += 1;
    store.append_write(p, 1, at);
  }
  for (int i = 0; i < 500; ++i) {
    const Position p = static_cast<Position>(rng() % 6);
    const std::uint64_t k = store.writes_at(p);
    const std::uint64_t before = store.comparison_count();
    store.read_latest(p, rng() % 4'000);
    const std::uint64_t cost = store.comparison_count() - before;
    CHECK(cost <= ceil_log2(k) + 1);
  }
}

TEST_CASE("dump format: tab separated with 16-digit checksum hex") {
  HistoryStore store(kAlphabet, 0);
  store.append_write(-3, 2, 17);
  const std::string dump = store.dump_to_string();
  REQUIRE(dump.ends_with('\n'));
  const std::string line = dump.substr(0, dump.size() - 1);
  const auto first = line.find('\t');
  const auto second = line.find('\t', first + 1);
  const auto third = line.find('\t', second + 1);
  REQUIRE(third != std::string::npos);
  CHECK(line.substr(0, first) == "-3");
  CHECK(line.substr(first + 1, second - first - 1) == "2");
  CHECK(line.substr(second + 1, third - second - 1) == "17");
  const std::string hex = line.substr(third + 1);
  CHECK(hex.size() == 16);
  for (char c : hex) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
}
