#include "algnet/measures.hpp"

#include <zlib.h>

#include <algorithm>
#include <ostream>

#include "algnet/busy_beaver.hpp"
#include "algnet/rng.hpp"

namespace algnet::measures {

std::string to_string(Method m) {
  return m == Method::ExactEnumeration ? "exact-enumeration" : "compression-fallback";
}

std::size_t compressed_bits(const Bitstring& s) {
  std::vector<unsigned char> raw;
  for (std::uint64_t len = s.size();; len >>= 7) {
    const auto byte = static_cast<unsigned char>(len & 0x7f);
    if (len < 0x80) {
      raw.push_back(byte);
      break;
    }
    raw.push_back(byte | 0x80);
  }
  unsigned char acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc = static_cast<unsigned char>((acc << 1) | (s[i] ? 1 : 0));
    if (i % 8 == 7) {
      raw.push_back(acc);
      acc = 0;
    }
  }
  if (s.size() % 8) raw.push_back(static_cast<unsigned char>(acc << (8 - s.size() % 8)));

  uLongf out_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> out(out_len);
  if (compress2(out.data(), &out_len, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw std::runtime_error("zlib compress2 failed");
  return 8 * static_cast<std::size_t>(out_len) + 8;
}

const std::vector<Program>& programs_up_to(std::size_t bits) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Program>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, machine::enumerate_programs(bits)).first;
  return it->second;
}

bool within_reach(const Bitstring& target, const Bitstring& given, std::uint64_t steps) {
  return target.size() < 128 && given.size() < 128 && target.to_natural() <= given.to_natural() + steps;
}

ComplexityEstimate estimate(const Bitstring& target, const Bitstring& given, const Budgets& budgets) {
  ComplexityEstimate est;
  est.budgets = budgets;
  if (within_reach(target, given, budgets.steps)) {
    for (const auto& p : programs_up_to(budgets.bits)) {
      const auto v = machine::oracle(p, given, budgets.steps);
      if (v.halted() && v.output == target) {
        est.value = p.length();
        est.witness = p;
        return est;
      }
    }
  }
  est.method = Method::CompressionFallback;
  est.value = compressed_bits(target);
  return est;
}

ComplexityEstimate Estimator::a_hat_cond(const Bitstring& target, const Bitstring& given) {
  return a_hat_cond(target, given, budgets_);
}

ComplexityEstimate Estimator::a_hat_cond(const Bitstring& target, const Bitstring& given, const Budgets& budgets) {
  Key key{target, given, budgets.bits, budgets.steps};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto est = estimate(target, given, budgets);
  std::lock_guard lock(mutex_);
  cache_.emplace(key, est);
  return est;
}

void Estimator::write_cache_csv(std::ostream& os) const {
  std::lock_guard lock(mutex_);
  os << "target_bits,given_bits,value,method\n";
  // Key order, so the dump does not depend on which thread asked first.
  for (const auto& [key, e] : cache_) {
    os << std::get<0>(key).str() << ',' << std::get<1>(key).str() << ',' << e.value << ',' << to_string(e.method)
       << '\n';
  }
}

std::int64_t eac(const Bitstring& networked_out, const Bitstring& isolated_out, Estimator& est) {
  return static_cast<std::int64_t>(est.a_hat(networked_out).value) -
         static_cast<std::int64_t>(est.a_hat(isolated_out).value);
}

std::int64_t local_synergy(const Bitstring& networked_out, const Bitstring& isolated_out, const Bitstring& f_w,
                           Estimator& est) {
  if (networked_out == isolated_out) return 0;
  return static_cast<std::int64_t>(est.a_hat_cond(f_w, isolated_out).value) -
         static_cast<std::int64_t>(est.a_hat_cond(f_w, networked_out).value);
}

SynergyReport expected_local_synergy(const std::vector<Bitstring>& networked, const std::vector<Bitstring>& isolated,
                                     const Bitstring& f_w, Estimator& est) {
  if (networked.size() != isolated.size() || networked.empty())
    throw std::invalid_argument("synergy needs one networked and one isolated output per node");
  SynergyReport rep;
  rep.f_w = f_w;
  rep.per_node.resize(networked.size());
  const auto n = static_cast<std::int64_t>(networked.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    rep.per_node[k] = local_synergy(networked[k], isolated[k], f_w, est);
  }
  for (std::size_t k = 0; k < networked.size(); ++k) {
    rep.sum += rep.per_node[k];
    if (networked[k] != isolated[k]) {
      rep.fallback_estimates += !est.a_hat_cond(f_w, isolated[k]).exact();
      rep.fallback_estimates += !est.a_hat_cond(f_w, networked[k]).exact();
    }
  }
  rep.mean = static_cast<double>(rep.sum) / static_cast<double>(networked.size());
  return rep;
}

LabelChoice pick_labels(std::size_t x, Estimator& est, std::uint64_t seed, const Bitstring& w_min, std::size_t slack,
                        std::size_t attempts) {
  LabelChoice choice;
  choice.threshold = x + slack;
  const Budgets confirm{std::min(std::max(est.budgets().bits, choice.threshold), kMaxConfirmBits),
                        est.budgets().steps};
  auto passes = [&](const Bitstring& c, ComplexityEstimate& out) {
    out = est.a_hat_cond(c, w_min, confirm);
    if (out.value < choice.threshold) return false;
    // A fallback value only counts when the search ruled out every shorter program.
    return out.exact() || confirm.bits + 1 >= choice.threshold || !within_reach(c, w_min, confirm.steps);
  };

  const HaltLabels defaults;
  if (passes(defaults.halts, choice.halts_estimate) && passes(defaults.loops, choice.loops_estimate)) {
    choice.labels = defaults;
    choice.defaults = true;
    return choice;
  }

  auto rng = make_rng(seed, {0x6c6162656c73ULL, x});
  std::vector<std::pair<Bitstring, ComplexityEstimate>> found;
  for (std::size_t i = 0; i < attempts && found.size() < 2; ++i) {
    const std::uint64_t word = rng();
    Bitstring c;
    for (int b = 63; b >= 0; --b) c.push_back((word >> b) & 1);
    if (compressed_bits(c) < choice.threshold) continue;
    if (!found.empty() && found.front().first == c) continue;
    ComplexityEstimate e;
    if (passes(c, e)) found.emplace_back(c, e);
  }
  if (found.size() < 2)
    throw ThresholdUnreachable("no label pair with conditional complexity >= " + std::to_string(choice.threshold) +
                               " after " + std::to_string(attempts) + " candidates");
  choice.labels = {found[0].first, found[1].first};
  choice.halts_estimate = found[0].second;
  choice.loops_estimate = found[1].second;
  return choice;
}

}  // namespace algnet::measures
