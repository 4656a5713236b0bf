#include "creal/specker.hpp"

#include <algorithm>

namespace cra {

HaltingSource empty_source() {
  return HaltingSource{"empty", [](unsigned) { return std::vector<unsigned>{}; }};
}

namespace {

// Steps for the 3x+1 trajectory of v to reach 1, capped at `limit`.
unsigned collatz_steps(unsigned long long v, unsigned limit) {
  unsigned steps = 0;
  while (v != 1 && steps <= limit) {
    v = v % 2 == 0 ? v / 2 : 3 * v + 1;
    ++steps;
  }
  return steps;
}

}  // namespace

HaltingSource collatz_source() {
  return HaltingSource{"collatz", [](unsigned n) {
                         std::vector<unsigned> out;
                         for (unsigned i = 0; i <= n; ++i)
                           if (collatz_steps(i + 1ull, n) <= n) out.push_back(i);
                         return out;
                       }};
}

HaltingSource table_source(std::string name,
                           std::vector<std::pair<unsigned, unsigned>> entries) {
  return HaltingSource{std::move(name), [entries](unsigned n) {
                         std::vector<unsigned> out;
                         for (const auto& [index, stage] : entries)
                           if (stage <= n && index <= n) out.push_back(index);
                         std::sort(out.begin(), out.end());
                         out.erase(std::unique(out.begin(), out.end()), out.end());
                         return out;
                       }};
}

SpeckerStream::SpeckerStream(HaltingSource source) : source_(std::move(source)) {}

Rational SpeckerStream::term(unsigned n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto fetch = [&](unsigned m) -> const std::vector<unsigned>& {
    auto it = stage_cache_.find(m);
    if (it != stage_cache_.end()) return it->second;
    std::vector<unsigned> s = source_.stage(m);
    std::sort(s.begin(), s.end());
    for (unsigned i : s)
      if (i > m)
        throw SourceViolation(source_.name + ": stage " + std::to_string(m) +
                              " contains index " + std::to_string(i));
    return stage_cache_.emplace(m, std::move(s)).first->second;
  };
  const std::vector<unsigned>& cur = fetch(n);
  if (n > 0) {
    const std::vector<unsigned>& prev = fetch(n - 1);
    if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
      throw SourceViolation(source_.name + ": stage " + std::to_string(n) +
                            " lost an index from stage " + std::to_string(n - 1));
  }
  Rational raw(0);
  for (unsigned i : cur) raw = raw + Rational::pow2(-static_cast<long>(i) - 1);
  return (raw + Rational(1) - Rational::pow2(-static_cast<long>(n))) / Rational(2);
}

SearchOutcome<SpeckerCert> in_A(const DecompositionSets& sets, const CReal& x, Fuel fuel) {
  unsigned long spent = 0;
  for (unsigned n = 1; spent < fuel.budget; ++n) {
    ++spent;
    const Rational s_n = sets.stream->term(n);
    const Rational a = x.approx(n);
    const Rational eps = Rational::pow2(-static_cast<long>(n));
    if (a + eps < s_n) {
      return SearchOutcome<SpeckerCert>::found_at(
          SpeckerCert{n, s_n, a, s_n - a - eps}, spent);
    }
  }
  return SearchOutcome<SpeckerCert>::exhausted(spent);
}

SearchOutcome<SpeckerCert> refute_in_B(const DecompositionSets& sets, const CReal& x,
                                       Fuel fuel) {
  return in_A(sets, x, fuel);
}

SearchOutcome<SpeckerCert> closure_search(const DecompositionSets& sets,
                                          const std::vector<std::pair<Rational, unsigned>>& seq,
                                          const CReal& limit, Fuel fuel) {
  for (const auto& [point, index] : seq) {
    auto cert = in_A(sets, CReal::from_rational(point), fuel);
    if (!cert.found())
      throw PrecheckFailed("sequence point " + point.str() +
                           " has no A-certificate within the slice");
    // Claimed convergence: |point - limit| <= 2^-index. Sampled check.
    for (unsigned n : {0u, 4u, index}) {
      const Rational bound = Rational::pow2(-static_cast<long>(n)) +
                             Rational::pow2(-static_cast<long>(index));
      if (abs(point - limit.approx(n)) > bound)
        throw PrecheckFailed("sequence point " + point.str() +
                             " violates the claimed convergence to the limit");
    }
  }
  return in_A(sets, limit, fuel);
}

}  // namespace cra
