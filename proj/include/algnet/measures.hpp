#pragma once

// Prefix-complexity estimates over the register machine and the information
// measures built on them.
//
// a_hat enumerates programs by length and returns the first one whose oracle
// run on the given input outputs the target. That is the exact minimum over
// programs of at most budget.bits bits that halt within budget.steps steps.
// When no such program exists the estimate falls back to a compressed length.
//
// Conditioning hands the given string to the program as its input (R0), so the
// empty program copies it and c_copy = 1.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "algnet/builtins.hpp"
#include "algnet/machine.hpp"

namespace algnet::measures {

using machine::HaltLabels;
using machine::Program;

class ThresholdUnreachable : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Budgets {
  std::size_t bits = 20;
  std::uint64_t steps = 10000;

  friend auto operator<=>(const Budgets&, const Budgets&) = default;
};

enum class Method : std::uint8_t { ExactEnumeration, CompressionFallback };
std::string to_string(Method m);

struct ComplexityEstimate {
  std::size_t value = 0;  // bits
  Method method = Method::ExactEnumeration;
  std::optional<Program> witness;  // exact estimates only
  Budgets budgets;

  bool exact() const noexcept { return method == Method::ExactEnumeration; }
};

// zlib (compress2, level 9) of a varint bit count followed by the bits packed
// MSB first; 8 * compressed bytes + 8.
std::size_t compressed_bits(const Bitstring& s);

// Memoised estimator; safe to share between threads.
class Estimator {
public:
  explicit Estimator(Budgets budgets = {}) : budgets_(budgets) {}

  const Budgets& budgets() const noexcept { return budgets_; }

  ComplexityEstimate a_hat(const Bitstring& target) { return a_hat_cond(target, Bitstring{}); }
  ComplexityEstimate a_hat_cond(const Bitstring& target, const Bitstring& given);
  ComplexityEstimate a_hat_cond(const Bitstring& target, const Bitstring& given, const Budgets& budgets);

  // Cache dump in key order: target_bits,given_bits,value,method
  void write_cache_csv(std::ostream& os) const;

private:
  using Key = std::tuple<Bitstring, Bitstring, std::size_t, std::uint64_t>;
  Budgets budgets_;
  mutable std::mutex mutex_;
  std::map<Key, ComplexityEstimate> cache_;
};

// Shortest program with the target output, searching uncached.
ComplexityEstimate estimate(const Bitstring& target, const Bitstring& given, const Budgets& budgets);

// Each step adds at most one to a register, so no program run for `steps`
// steps on `given` can output a target whose natural exceeds given + steps.
bool within_reach(const Bitstring& target, const Bitstring& given, std::uint64_t steps);

// Programs of at most `bits` bits in enumeration order, shared and cached.
const std::vector<Program>& programs_up_to(std::size_t bits);

// Length of the copy program: a_hat_cond(x, x).
inline constexpr std::size_t kCopyLength = 1;
inline constexpr std::size_t kDefaultSlack = kCopyLength + 4;
// Longest program length pick_labels will enumerate when confirming a label.
inline constexpr std::size_t kMaxConfirmBits = 26;

// a_hat(networked) - a_hat(isolated)
std::int64_t eac(const Bitstring& networked_out, const Bitstring& isolated_out, Estimator& est);
// a_hat_cond(f_w, isolated) - a_hat_cond(f_w, networked)
std::int64_t local_synergy(const Bitstring& networked_out, const Bitstring& isolated_out, const Bitstring& f_w,
                           Estimator& est);

struct SynergyReport {
  std::vector<std::int64_t> per_node;
  std::int64_t sum = 0;
  double mean = 0.0;
  std::size_t slack_constant = kDefaultSlack;
  HaltLabels labels;
  Bitstring f_w;
  std::size_t fallback_estimates = 0;  // terms that used compression
};

// Node i compares networked[i] with isolated[i].
SynergyReport expected_local_synergy(const std::vector<Bitstring>& networked, const std::vector<Bitstring>& isolated,
                                     const Bitstring& f_w, Estimator& est);

struct LabelChoice {
  HaltLabels labels;
  ComplexityEstimate halts_estimate;  // a_hat_cond(h | w_min)
  ComplexityEstimate loops_estimate;  // a_hat_cond(h-bar | w_min)
  std::size_t threshold = 0;          // x + slack
  bool defaults = false;
};

// Two distinct labels with a_hat_cond(. | w_min) >= x + slack. Tries ("1", "0")
// first, then 64-bit strings from a stream seeded by (seed, x): each must pass
// the compression screen and then have no producing program shorter than
// x + slack bits, shown either by enumeration (up to kMaxConfirmBits) or by
// within_reach. Throws ThresholdUnreachable after `attempts` candidates.
LabelChoice pick_labels(std::size_t x, Estimator& est, std::uint64_t seed, const Bitstring& w_min = Bitstring("1"),
                        std::size_t slack = kDefaultSlack, std::size_t attempts = 1000);

}  // namespace algnet::measures
