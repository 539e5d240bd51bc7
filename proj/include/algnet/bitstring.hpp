#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace algnet {

// Register contents and string values. 128 bits so that 64-bit labels can be
// loaded as machine input without overflow.
using Natural = unsigned __int128;

std::string to_decimal(Natural n);
Natural parse_natural(std::string_view decimal);

// A finite binary string, stored as ASCII '0'/'1'.
class Bitstring {
public:
  Bitstring() = default;
  explicit Bitstring(std::string_view ascii);

  // Canonical length-lexicographic bijection: 0 <-> "", 1 <-> "0", 2 <-> "1",
  // 3 <-> "00", ...
  static Bitstring from_natural(Natural n);
  Natural to_natural() const;

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void pop_back() { bits_.pop_back(); }
  Bitstring& operator+=(const Bitstring& rhs) {
    bits_ += rhs.bits_;
    return *this;
  }
  friend Bitstring operator+(Bitstring lhs, const Bitstring& rhs) { return lhs += rhs; }

  Bitstring substr(std::size_t pos, std::size_t len = std::string::npos) const;
  bool is_prefix_of(const Bitstring& other) const noexcept;

  // ASCII form, "" for the empty string.
  const std::string& str() const noexcept { return bits_; }
  // Printable form, "eps" for the empty string.
  std::string display() const { return bits_.empty() ? "eps" : bits_; }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  // Length first, then lexicographic: the enumeration order.
  friend std::strong_ordering operator<=>(const Bitstring& a, const Bitstring& b) noexcept {
    if (auto c = a.bits_.size() <=> b.bits_.size(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

private:
  std::string bits_;
};

// Elias gamma code for n >= 1: floor(lg n) zeros followed by n in binary.
void append_gamma(Bitstring& out, std::uint64_t n);
Bitstring gamma(std::uint64_t n);
// Same code for naturals wider than 64 bits.
void append_gamma_wide(Bitstring& out, Natural n);

// Sequential reader over a Bitstring.
class BitReader {
public:
  explicit BitReader(const Bitstring& bits, std::size_t pos = 0) : bits_(&bits), pos_(pos) {}

  bool exhausted() const noexcept { return pos_ >= bits_->size(); }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_->size() - pos_; }

  // false when no bit is left
  bool read_bit(bool& bit) noexcept;
  // false when the code is truncated or exceeds 64 bits
  bool read_gamma(std::uint64_t& value) noexcept;
  bool read_gamma_wide(Natural& value) noexcept;

private:
  const Bitstring* bits_;
  std::size_t pos_;
};

}  // namespace algnet

template <>
struct std::hash<algnet::Bitstring> {
  std::size_t operator()(const algnet::Bitstring& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
