#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "memsim/errors.hpp"

namespace memsim {

using SymbolId = std::uint32_t;
using Position = std::int64_t;
using Timestamp = std::uint64_t;

// One recorded tape write: (position, symbol, timestamp) plus a 64-bit
// integrity code over the three fields.
struct HistoryEntry {
  Position position = 0;
  SymbolId symbol = 0;
  Timestamp timestamp = 0;
  std::uint64_t checksum = 0;

  bool checksum_ok() const;

  // Bits a compact serialization of this entry needs: 64 checksum bits +
  // ceil-log-sized symbol, timestamp and zigzagged position fields.
  std::uint64_t storable_bits(std::uint32_t symbol_bits) const;
};

// FNV-1a over the little-endian field encodings. Every round is a bijection
// of the running state, so any single-bit change to a field changes the code.
std::uint64_t entry_checksum(Position position, SymbolId symbol, Timestamp timestamp);

// Append-only, temporally ordered log of tape writes. Reads resolve a
// (position, time) query to the entry with the largest timestamp <= time,
// verifying its checksum before returning; positions never written read as
// the blank symbol. Per-position timestamp order is strict, so the
// binary-searched read costs at most ceil(log2 k) + 1 timestamp comparisons
// for k writes at that position.
//
// Appends are single-writer. Reads may run concurrently with each other but
// not with an in-flight append.
class HistoryStore {
 public:
  HistoryStore(std::uint32_t alphabet_size, SymbolId blank);

  // Single-owner log: movable (so a simulation can change threads between
  // steps) but not copyable.
  HistoryStore(HistoryStore&& other) noexcept;
  HistoryStore& operator=(HistoryStore&& other) noexcept;
  HistoryStore(const HistoryStore&) = delete;
  HistoryStore& operator=(const HistoryStore&) = delete;

  // Records a write. Timestamps at one position must be strictly increasing.
  void append_write(Position position, SymbolId symbol, Timestamp timestamp);

  // Symbol at `position` as of `time`: latest write at or before `time`,
  // blank if the position was never written by then. Checksums of the
  // selected entry and of every entry the search probed are verified.
  SymbolId read_latest(Position position, Timestamp time) const;

  // Records an input tape: symbols[i] at origin+i, all at timestamp 0.
  // Blank input symbols are recorded explicitly. Store must be empty.
  void seed_input(const std::vector<SymbolId>& symbols, Position origin);

  std::size_t entry_count() const { return entries_.size(); }
  SymbolId blank() const { return blank_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }

  // Number of writes recorded at `position` so far.
  std::size_t writes_at(Position position) const;

  const HistoryEntry& entry(std::size_t index) const;

  // Verifies every entry's checksum; returns the indices that fail.
  std::vector<std::size_t> audit() const;

  // Timestamp comparisons performed by read_latest since construction or
  // the last reset. Atomic so concurrent reads stay well-defined.
  std::uint64_t comparison_count() const { return comparisons_.load(std::memory_order_relaxed); }
  void reset_comparison_count() { comparisons_.store(0, std::memory_order_relaxed); }

  // One line per entry in insertion order:
  // position<TAB>symbol<TAB>timestamp<TAB>checksum-hex
  void dump(std::ostream& out) const;
  std::string dump_to_string() const;

  // Test-only fault injection: flips the low bit of the entry's symbol
  // without touching its checksum.
  void corrupt_entry(std::size_t index);
  // Test-only: flips one bit of the chosen field (0=position, 1=symbol,
  // 2=timestamp).
  void corrupt_entry_bit(std::size_t index, int field, unsigned bit);

 private:
  const HistoryEntry* find_latest(Position position, Timestamp time) const;

  std::uint32_t alphabet_size_;
  SymbolId blank_;
  std::vector<HistoryEntry> entries_;                                   // insertion order
  std::unordered_map<Position, std::vector<std::uint32_t>> by_position_;  // indices into entries_
  mutable std::atomic<std::uint64_t> comparisons_{0};
};

}  // namespace memsim
