#include "creal/creal.hpp"

#include <utility>

namespace cra {

struct CReal::State {
  std::string provenance;
  std::function<Rational(unsigned)> fn;
  mutable std::mutex mu;
  mutable std::map<unsigned, Rational> memo;
};

Rational CReal::approx(unsigned n) const {
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->memo.find(n);
    if (it != state_->memo.end()) return it->second;
  }
  Rational v = state_->fn(n);
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->memo.emplace(n, std::move(v)).first->second;
}

const std::string& CReal::provenance() const { return state_->provenance; }

CReal CReal::from_fn(std::string provenance, std::function<Rational(unsigned)> fn) {
  auto s = std::make_shared<State>();
  s->provenance = std::move(provenance);
  s->fn = std::move(fn);
  return CReal(std::move(s));
}

CReal CReal::from_rational(Rational q) {
  std::string prov = "rational " + q.str();
  return from_fn(std::move(prov), [q](unsigned) { return q; });
}

namespace {

// Pulls intervals on demand, checking nesting and the width schedule.
struct NestedPuller {
  std::function<RatInterval(std::size_t)> stream;
  std::mutex mu;
  std::vector<RatInterval> cache;

  RatInterval at(std::size_t k) {
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= k) {
      std::size_t i = cache.size();
      RatInterval next = stream(i);
      if (i > 0) {
        if (!cache[i - 1].contains(next))
          throw NestingViolation("interval " + std::to_string(i) +
                                 " escapes its predecessor");
        if (next.width() * Rational::pow2(static_cast<long>(i)) > cache[0].width())
          throw NestingViolation("interval " + std::to_string(i) +
                                 " violates the width schedule");
      }
      cache.push_back(std::move(next));
    }
    return cache[k];
  }
};

}  // namespace

CReal CReal::limit_of_nested(std::function<RatInterval(std::size_t)> stream,
                             std::string provenance) {
  auto puller = std::make_shared<NestedPuller>();
  puller->stream = std::move(stream);
  return from_fn(std::move(provenance), [puller](unsigned n) {
    // Midpoint of an interval of width <= 2^(1-n) is within 2^-n of the limit.
    const Rational bound = Rational::pow2(1 - static_cast<long>(n));
    std::size_t k = 0;
    while (puller->at(k).width() > bound) ++k;
    return puller->at(k).midpoint();
  });
}

CReal operator+(const CReal& x, const CReal& y) {
  return CReal::from_fn("(" + x.provenance() + " + " + y.provenance() + ")",
                        [x, y](unsigned n) { return x.approx(n + 1) + y.approx(n + 1); });
}

CReal operator-(const CReal& x) {
  return CReal::from_fn("(- " + x.provenance() + ")",
                        [x](unsigned n) { return -x.approx(n); });
}

CReal operator-(const CReal& x, const CReal& y) { return x + (-y); }

CReal operator*(const CReal& x, const CReal& y) {
  return CReal::from_fn(
      "(" + x.provenance() + " * " + y.provenance() + ")", [x, y](unsigned n) {
        // |value| <= |approx(0)| + 1 for each operand.
        const Rational bx = abs(x.approx(0)) + Rational(1);
        const Rational by = abs(y.approx(0)) + Rational(1);
        const Rational b = max(bx, by);
        const long extra = 1 + ceil_log2(b + Rational(1));
        const unsigned m = n + static_cast<unsigned>(extra);
        return x.approx(m) * y.approx(m);
      });
}

CReal abs(const CReal& x) {
  return CReal::from_fn("|" + x.provenance() + "|",
                        [x](unsigned n) { return abs(x.approx(n)); });
}

CReal min(const CReal& x, const CReal& y) {
  return CReal::from_fn("min(" + x.provenance() + ", " + y.provenance() + ")",
                        [x, y](unsigned n) { return min(x.approx(n), y.approx(n)); });
}

CReal max(const CReal& x, const CReal& y) {
  return CReal::from_fn("max(" + x.provenance() + ", " + y.provenance() + ")",
                        [x, y](unsigned n) { return max(x.approx(n), y.approx(n)); });
}

SearchOutcome<ApartnessWitness> apart(const CReal& x, const CReal& y, Fuel fuel) {
  unsigned long spent = 0;
  for (unsigned n = 0; spent < fuel.budget; ++n) {
    ++spent;
    const Rational l = x.approx(n);
    const Rational r = y.approx(n);
    const Rational d = abs(l - r);
    const Rational threshold = Rational::pow2(1 - static_cast<long>(n));
    if (d > threshold) {
      ApartnessWitness w{n, l, r, d - threshold};
      return SearchOutcome<ApartnessWitness>::found_at(std::move(w), spent);
    }
  }
  return SearchOutcome<ApartnessWitness>::exhausted(spent);
}

Location locate(const CReal& x, const Rational& a, const Rational& b) {
  if (a >= b) throw BadStraddle("locate requires a < b");
  const Rational quarter = (b - a) / Rational(4);
  unsigned n = 0;
  while (Rational::pow2(-static_cast<long>(n)) >= quarter) ++n;
  const Rational mid = (a + b) / Rational(2);
  return x.approx(n) <= mid ? Location::BelowB : Location::AboveA;
}

std::string render(const CReal& x, unsigned digits) {
  Int scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  long n = ceil_log2(Rational(scale)) + 2;
  Rational a = x.approx(static_cast<unsigned>(n));
  return a.decimal(digits) + " \xC2\xB1" + "10^-" + std::to_string(digits);
}

}  // namespace cra
