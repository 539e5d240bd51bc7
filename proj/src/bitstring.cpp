#include "algnet/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace algnet {

std::string to_decimal(Natural n) {
  if (n == 0) return "0";
  std::string out;
  while (n > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
    n /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Natural parse_natural(std::string_view decimal) {
  if (decimal.empty()) throw std::invalid_argument("empty natural");
  constexpr Natural kMax = ~Natural{0};
  Natural n = 0;
  for (char c : decimal) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a natural: " + std::string(decimal));
    const auto digit = static_cast<Natural>(c - '0');
    if (n > (kMax - digit) / 10) throw std::out_of_range("natural too large: " + std::string(decimal));
    n = n * 10 + digit;
  }
  return n;
}

Bitstring::Bitstring(std::string_view ascii) : bits_(ascii) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("not a bitstring: " + std::string(ascii));
  }
}

Bitstring Bitstring::from_natural(Natural n) {
  // n + 1 in binary without its leading 1. n + 1 overflows only for the
  // all-ones value, which is the 128-bit string 11...1.
  Bitstring out;
  if (n == ~Natural{0}) {
    out.bits_.assign(128, '1');
    return out;
  }
  const Natural m = n + 1;
  int top = 127;
  while (((m >> top) & 1) == 0) --top;
  out.bits_.reserve(static_cast<std::size_t>(top));
  for (int i = top - 1; i >= 0; --i) out.bits_.push_back(((m >> i) & 1) ? '1' : '0');
  return out;
}

Natural Bitstring::to_natural() const {
  if (bits_.size() > 127) {
    if (bits_.size() == 128 && std::all_of(bits_.begin(), bits_.end(), [](char c) { return c == '1'; }))
      return ~Natural{0};
    throw std::overflow_error("bitstring too long for a machine natural (" +
                              std::to_string(bits_.size()) + " bits)");
  }
  Natural m = 1;
  for (char c : bits_) m = (m << 1) | static_cast<Natural>(c == '1');
  return m - 1;
}

Bitstring Bitstring::substr(std::size_t pos, std::size_t len) const {
  Bitstring out;
  out.bits_ = bits_.substr(pos, len);
  return out;
}

bool Bitstring::is_prefix_of(const Bitstring& other) const noexcept {
  return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

void append_gamma(Bitstring& out, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("gamma code undefined for 0");
  int top = 63;
  while (((n >> top) & 1) == 0) --top;
  for (int i = 0; i < top; ++i) out.push_back(false);
  for (int i = top; i >= 0; --i) out.push_back((n >> i) & 1);
}

Bitstring gamma(std::uint64_t n) {
  Bitstring out;
  append_gamma(out, n);
  return out;
}

void append_gamma_wide(Bitstring& out, Natural n) {
  if (n == 0) throw std::invalid_argument("gamma code undefined for 0");
  int top = 127;
  while (((n >> top) & 1) == 0) --top;
  for (int i = 0; i < top; ++i) out.push_back(false);
  for (int i = top; i >= 0; --i) out.push_back((n >> i) & 1);
}

bool BitReader::read_bit(bool& bit) noexcept {
  if (pos_ >= bits_->size()) return false;
  bit = (*bits_)[pos_++];
  return true;
}

bool BitReader::read_gamma(std::uint64_t& value) noexcept {
  std::size_t p = pos_;
  int zeros = 0;
  while (p < bits_->size() && !(*bits_)[p]) {
    ++zeros;
    ++p;
  }
  if (p >= bits_->size() || zeros > 63) return false;
  if (p + static_cast<std::size_t>(zeros) >= bits_->size()) return false;
  std::uint64_t v = 0;
  for (int i = 0; i <= zeros; ++i) v = (v << 1) | static_cast<std::uint64_t>((*bits_)[p++]);
  value = v;
  pos_ = p;
  return true;
}

bool BitReader::read_gamma_wide(Natural& value) noexcept {
  std::size_t p = pos_;
  int zeros = 0;
  while (p < bits_->size() && !(*bits_)[p]) {
    ++zeros;
    ++p;
  }
  if (p >= bits_->size() || zeros > 127) return false;
  if (p + static_cast<std::size_t>(zeros) >= bits_->size()) return false;
  Natural v = 0;
  for (int i = 0; i <= zeros; ++i) v = (v << 1) | static_cast<Natural>((*bits_)[p++]);
  value = v;
  pos_ = p;
  return true;
}

}  // namespace algnet
