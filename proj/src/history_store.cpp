#include "memsim/history_store.hpp"

#include <ostream>
#include <sstream>
#include <string>

#include "memsim/bits.hpp"

namespace memsim {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_u64(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xFFu;
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t entry_checksum(Position position, SymbolId symbol, Timestamp timestamp) {
  std::uint64_t h = kFnvOffset;
  fnv_u64(h, static_cast<std::uint64_t>(position));
  fnv_u64(h, symbol);
  fnv_u64(h, timestamp);
  return h;
}

bool HistoryEntry::checksum_ok() const {
  return entry_checksum(position, symbol, timestamp) == checksum;
}

std::uint64_t HistoryEntry::storable_bits(std::uint32_t symbol_bits) const {
  return 64 + symbol_bits + ceil_log2(timestamp + 2) + ceil_log2(zigzag(position) + 2);
}

HistoryStore::HistoryStore(std::uint32_t alphabet_size, SymbolId blank)
    : alphabet_size_(alphabet_size), blank_(blank) {
  if (blank >= alphabet_size) {
    throw UnknownSymbol("blank symbol id " + std::to_string(blank) +
                        " outside alphabet of size " + std::to_string(alphabet_size));
  }
}

HistoryStore::HistoryStore(HistoryStore&& other) noexcept
    : alphabet_size_(other.alphabet_size_),
      blank_(other.blank_),
      entries_(std::move(other.entries_)),
      by_position_(std::move(other.by_position_)),
      comparisons_(other.comparisons_.load(std::memory_order_relaxed)) {}

HistoryStore& HistoryStore::operator=(HistoryStore&& other) noexcept {
  alphabet_size_ = other.alphabet_size_;
  blank_ = other.blank_;
  entries_ = std::move(other.entries_);
  by_position_ = std::move(other.by_position_);
  comparisons_.store(other.comparisons_.load(std::memory_order_relaxed),
                     std::memory_order_relaxed);
  return *this;
}

void HistoryStore::append_write(Position position, SymbolId symbol, Timestamp timestamp) {
  if (symbol >= alphabet_size_) {
    throw UnknownSymbol("symbol id " + std::to_string(symbol) + " outside alphabet of size " +
                        std::to_string(alphabet_size_));
  }
  auto& slots = by_position_[position];
  if (!slots.empty()) {
    const Timestamp last = entries_[slots.back()].timestamp;
    if (timestamp <= last) {
      throw NonMonotonicTimestamp("write at position " + std::to_string(position) +
                                  " with timestamp " + std::to_string(timestamp) +
                                  " not after " + std::to_string(last));
    }
  }
  HistoryEntry e;
  e.position = position;
  e.symbol = symbol;
  e.timestamp = timestamp;
  e.checksum = entry_checksum(position, symbol, timestamp);
  slots.push_back(static_cast<std::uint32_t>(entries_.size()));
  entries_.push_back(e);
}

const HistoryEntry* HistoryStore::find_latest(Position position, Timestamp time) const {
  auto it = by_position_.find(position);
  if (it == by_position_.end()) return nullptr;
  const auto& slots = it->second;

  // Binary search for the last entry with timestamp <= time. One timestamp
  // comparison per halving keeps the count within ceil(log2 k) + 1. Every
  // probed entry's checksum is verified: a corrupted timestamp is a broken
  // sort key that silently steers the search, so checking only the final
  // selection would let such damage change results undetected.
  std::size_t lo = 0;
  std::size_t hi = slots.size();  // first index with timestamp > time
  std::uint64_t comparisons = 0;
  const HistoryEntry* bad = nullptr;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const HistoryEntry& probed = entries_[slots[mid]];
    if (bad == nullptr && !probed.checksum_ok()) bad = &probed;
    ++comparisons;
    if (probed.timestamp <= time) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  comparisons_.fetch_add(comparisons, std::memory_order_relaxed);
  if (bad != nullptr) {
    throw IntegrityViolation("checksum mismatch at position " + std::to_string(bad->position) +
                             " timestamp " + std::to_string(bad->timestamp));
  }
  if (lo == 0) return nullptr;
  return &entries_[slots[lo - 1]];
}

SymbolId HistoryStore::read_latest(Position position, Timestamp time) const {
  const HistoryEntry* e = find_latest(position, time);
  if (e == nullptr) return blank_;
  if (!e->checksum_ok()) {
    throw IntegrityViolation("checksum mismatch at position " + std::to_string(e->position) +
                             " timestamp " + std::to_string(e->timestamp));
  }
  return e->symbol;
}

void HistoryStore::seed_input(const std::vector<SymbolId>& symbols, Position origin) {
  if (!entries_.empty()) {
    throw StoreNotEmpty("seed_input on a store with " + std::to_string(entries_.size()) +
                        " entries");
  }
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    append_write(origin + static_cast<Position>(i), symbols[i], 0);
  }
}

std::size_t HistoryStore::writes_at(Position position) const {
  auto it = by_position_.find(position);
  return it == by_position_.end() ? 0 : it->second.size();
}

const HistoryEntry& HistoryStore::entry(std::size_t index) const {
  if (index >= entries_.size()) {
    throw IndexOutOfRange("entry index " + std::to_string(index) + " out of range " +
                          std::to_string(entries_.size()));
  }
  return entries_[index];
}

std::vector<std::size_t> HistoryStore::audit() const {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].checksum_ok()) bad.push_back(i);
  }
  return bad;
}

void HistoryStore::dump(std::ostream& out) const {
  static const char* hex = "0123456789abcdef";
  for (const HistoryEntry& e : entries_) {
    out << e.position << '\t' << e.symbol << '\t' << e.timestamp << '\t';
    for (int i = 15; i >= 0; --i) {
      out << hex[(e.checksum >> (4 * i)) & 0xF];
    }
    out << '\n';
  }
}

std::string HistoryStore::dump_to_string() const {
  std::ostringstream out;
  dump(out);
  return out.str();
}

void HistoryStore::corrupt_entry(std::size_t index) {
  if (index >= entries_.size()) {
    throw IndexOutOfRange("entry index " + std::to_string(index) + " out of range " +
                          std::to_string(entries_.size()));
  }
  entries_[index].symbol ^= 1u;
}

void HistoryStore::corrupt_entry_bit(std::size_t index, int field, unsigned bit) {
  if (index >= entries_.size()) {
    throw IndexOutOfRange("entry index " + std::to_string(index) + " out of range " +
                          std::to_string(entries_.size()));
  }
  HistoryEntry& e = entries_[index];
  switch (field) {
    case 0:
      e.position ^= (Position{1} << (bit % 64));
      break;
    case 1:
      e.symbol ^= (SymbolId{1} << (bit % 32));
      break;
    default:
      e.timestamp ^= (Timestamp{1} << (bit % 64));
      break;
  }
}

}  // namespace memsim
