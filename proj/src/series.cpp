#include "hgfrob/series.hpp"

#include <algorithm>

namespace hgf {

SeriesSpace::SeriesSpace(std::vector<std::string> names, std::vector<int> caps, std::vector<WeightedCap> weighted)
    : names_(std::move(names)), caps_(std::move(caps)), weighted_(std::move(weighted)) {
  if (names_.size() != caps_.size()) throw ValidationError("series space: one cap per variable required");
  for (int c : caps_) {
    if (c < 0 || c > 255) throw ValidationError("series space: caps must lie in [0, 255]");
  }
  for (const auto& w : weighted_) {
    if (w.weights.size() != names_.size()) throw ValidationError("series space: weighted cap size mismatch");
    for (int x : w.weights) {
      if (x < 0) throw ValidationError("series space: negative weight");
    }
  }
}

std::shared_ptr<const SeriesSpace> SeriesSpace::make(std::vector<std::string> names, std::vector<int> caps,
                                                     std::vector<WeightedCap> weighted) {
  return std::make_shared<const SeriesSpace>(std::move(names), std::move(caps), std::move(weighted));
}

std::shared_ptr<const SeriesSpace> SeriesSpace::total_degree(std::vector<std::string> names, int cap) {
  std::vector<int> caps(names.size(), cap);
  WeightedCap total{std::vector<int>(names.size(), 1), cap};
  return make(std::move(names), std::move(caps), {total});
}

int SeriesSpace::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError("unknown series variable '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

bool SeriesSpace::admits(const Exponents& e) const {
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] > caps_[v]) return false;
  }
  for (const auto& w : weighted_) {
    int s = 0;
    for (std::size_t v = 0; v < e.size(); ++v) s += w.weights[v] * e[v];
    if (s > w.cap) return false;
  }
  return true;
}

template <class F>
TruncatedSeries<F>::TruncatedSeries(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw ValidationError("series without a space");
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::constant(SpacePtr space, const F& c) {
  TruncatedSeries s(std::move(space));
  s.add_term(Exponents(static_cast<std::size_t>(s.space_->size()), 0), c);
  return s;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::variable(SpacePtr space, int index) {
  TruncatedSeries s(std::move(space));
  Exponents e(static_cast<std::size_t>(s.space_->size()), 0);
  e.at(static_cast<std::size_t>(index)) = 1;
  s.add_term(e, F(1));
  return s;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::monomial(SpacePtr space, const Exponents& e, const F& c) {
  TruncatedSeries s(std::move(space));
  s.add_term(e, c);
  return s;
}

template <class F>
F TruncatedSeries<F>::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? F(0) : it->second;
}

template <class F>
F TruncatedSeries<F>::constant_term() const {
  return coefficient(Exponents(static_cast<std::size_t>(space_->size()), 0));
}

template <class F>
void TruncatedSeries<F>::add_term(const Exponents& e, const F& c) {
  if (static_cast<int>(e.size()) != space_->size()) throw ValidationError("exponent length mismatch");
  if (ScalarTraits<F>::is_zero(c) || !space_->admits(e)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (ScalarTraits<F>::is_zero(it->second)) terms_.erase(it);
  }
}

template <class F>
void TruncatedSeries<F>::check_space(const TruncatedSeries& o) const {
  if (!space_ || !o.space_) throw ValidationError("series without a space");
  if (space_ != o.space_ && !(*space_ == *o.space_)) throw ValidationError("truncation-range mismatch between operands");
}

template <class F>
TruncatedSeries<F>& TruncatedSeries<F>::operator+=(const TruncatedSeries& o) {
  check_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

template <class F>
TruncatedSeries<F>& TruncatedSeries<F>::operator-=(const TruncatedSeries& o) {
  check_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

template <class F>
TruncatedSeries<F>& TruncatedSeries<F>::operator*=(const TruncatedSeries& o) {
  *this = times(o);
  return *this;
}

template <class F>
TruncatedSeries<F>& TruncatedSeries<F>::operator*=(const F& c) {
  if (ScalarTraits<F>::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::operator-() const {
  TruncatedSeries r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::times(const TruncatedSeries& o) const {
  check_space(o);
  TruncatedSeries r(space_);
  const auto& caps = space_->caps();
  const std::size_t n = caps.size();
  Exponents sum(n, 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      bool ok = true;
      for (std::size_t v = 0; v < n; ++v) {
        int s = ea[v] + eb[v];
        if (s > caps[v]) {
          ok = false;
          break;
        }
        sum[v] = static_cast<std::uint8_t>(s);
      }
      if (!ok || !space_->admits(sum)) continue;
      F prod = ca * cb;
      auto [it, inserted] = r.terms_.try_emplace(sum, prod);
      if (!inserted) it->second += prod;
    }
  }
  for (auto it = r.terms_.begin(); it != r.terms_.end();) {
    if (ScalarTraits<F>::is_zero(it->second)) {
      it = r.terms_.erase(it);
    } else {
      ++it;
    }
  }
  return r;
}

namespace {

// Sum_{n>=0} coeff(n) x^n for a series x without constant term; x is
// nilpotent under the caps so the sum is finite.
template <class F, class Coeff>
TruncatedSeries<F> nilpotent_sum(const TruncatedSeries<F>& x, Coeff&& coeff) {
  TruncatedSeries<F> result = TruncatedSeries<F>::constant(x.space(), coeff(0));
  TruncatedSeries<F> power = TruncatedSeries<F>::constant(x.space(), F(1));
  for (int n = 1;; ++n) {
    power = power * x;
    if (power.is_zero()) break;
    result += power * coeff(n);
  }
  return result;
}

}  // namespace

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::inverse() const {
  F c = constant_term();
  if (ScalarTraits<F>::is_zero(c)) throw NumericalError("series division by a non-invertible series");
  F inv_c = F(1) / c;
  TruncatedSeries x = (*this - constant(space_, c)) * inv_c;
  // 1/(c(1+x)) = (1/c) sum (-x)^n
  TruncatedSeries r = nilpotent_sum(x, [](int n) { return (n % 2 == 0) ? F(1) : F(-1); });
  return r * inv_c;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::exp() const {
  F c = constant_term();
  TruncatedSeries x = *this;
  x -= constant(space_, c);
  F fact(1);
  std::vector<F> inv_fact{F(1)};
  TruncatedSeries r = nilpotent_sum(x, [&](int n) {
    while (static_cast<int>(inv_fact.size()) <= n) {
      fact *= F(static_cast<int>(inv_fact.size()));
      inv_fact.push_back(F(1) / fact);
    }
    return inv_fact[static_cast<std::size_t>(n)];
  });
  if (!ScalarTraits<F>::is_zero(c)) r *= ScalarTraits<F>::exp(c);
  return r;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::log() const {
  F c = constant_term();
  if (ScalarTraits<F>::is_zero(c)) throw NumericalError("logarithm of a series with zero constant term");
  // Subtract c before scaling so the constant term is exactly zero.
  TruncatedSeries x = (*this - constant(space_, c)) * (F(1) / c);
  TruncatedSeries r = nilpotent_sum(x, [](int n) {
    if (n == 0) return F(0);
    F v = F(1) / F(n);
    return (n % 2 == 1) ? v : F(-v);
  });
  if (!(c == F(1))) r += constant(space_, ScalarTraits<F>::log(c));
  return r;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::pow(const Rational& p) const {
  F c = constant_term();
  if (ScalarTraits<F>::is_zero(c)) throw NumericalError("power of a series with zero constant term");
  // Subtract c before scaling so the constant term is exactly zero.
  TruncatedSeries x = (*this - constant(space_, c)) * (F(1) / c);
  // Binomial series (1+x)^p.
  std::vector<F> binom{F(1)};
  F fp = ScalarTraits<F>::from_rational(p);
  TruncatedSeries r = nilpotent_sum(x, [&](int n) {
    while (static_cast<int>(binom.size()) <= n) {
      int k = static_cast<int>(binom.size());
      binom.push_back(binom.back() * (fp - F(k - 1)) / F(k));
    }
    return binom[static_cast<std::size_t>(n)];
  });
  return r * ScalarTraits<F>::pow(c, p);
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::derivative(int var) const {
  TruncatedSeries r(space_);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e.at(v) == 0) continue;
    Exponents d = e;
    d[v] = static_cast<std::uint8_t>(d[v] - 1);
    r.add_term(d, c * F(static_cast<int>(e[v])));
  }
  return r;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::integral(int var) const {
  TruncatedSeries r(space_);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e.at(v) >= 255) continue;
    Exponents d = e;
    d[v] = static_cast<std::uint8_t>(d[v] + 1);
    r.add_term(d, c / F(static_cast<int>(d[v])));
  }
  return r;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::scale_variable(int var, const F& factor) const {
  TruncatedSeries r(space_);
  const auto v = static_cast<std::size_t>(var);
  std::vector<F> powers{F(1)};
  for (const auto& [e, c] : terms_) {
    while (powers.size() <= e.at(v)) powers.push_back(powers.back() * factor);
    r.add_term(e, c * powers[e[v]]);
  }
  return r;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::substitute(int var, const TruncatedSeries& s) const {
  check_space(s);
  const auto v = static_cast<std::size_t>(var);
  std::map<int, TruncatedSeries> by_power;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    int p = rest.at(v);
    rest[v] = 0;
    auto it = by_power.try_emplace(p, TruncatedSeries(space_)).first;
    it->second.add_term(rest, c);
  }
  TruncatedSeries result(space_);
  TruncatedSeries power = constant(space_, F(1));
  int current = 0;
  for (auto& [p, coeff] : by_power) {
    while (current < p) {
      power = power * s;
      ++current;
    }
    result += coeff * power;
  }
  return result;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::truncated(SpacePtr target) const {
  if (target->names() != space_->names()) throw ValidationError("truncation target has different variables");
  TruncatedSeries r(std::move(target));
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

template <class F>
Real TruncatedSeries<F>::max_abs() const {
  Real best = 0;
  for (const auto& [e, c] : terms_) {
    Real m = ScalarTraits<F>::magnitude(c);
    if (m > best) best = m;
  }
  return best;
}

template <class F>
TruncatedSeries<F> TruncatedSeries<F>::chopped(const Real& tol) const {
  TruncatedSeries r(space_);
  for (const auto& [e, c] : terms_) {
    if (ScalarTraits<F>::magnitude(c) > tol) r.terms_.emplace(e, c);
  }
  return r;
}

template <class F>
TruncatedSeries<F> singular_quotient(const TruncatedSeries<F>& numerator, int zvar, int wvar) {
  const SeriesSpace& sp = *numerator.space();
  const auto zi = static_cast<std::size_t>(zvar);
  const auto wi = static_cast<std::size_t>(wvar);
  int total = -1;
  for (const auto& w : sp.weighted()) {
    bool exact = true;
    for (std::size_t v = 0; v < w.weights.size(); ++v) {
      int expect = (v == zi || v == wi) ? 1 : 0;
      if (w.weights[v] != expect) exact = false;
    }
    if (exact && (total < 0 || w.cap < total)) total = w.cap;
  }
  if (total < 0) throw ValidationError("singular_quotient needs a total-degree cap on the two variables");

  // Group by the exponents of the remaining variables.
  std::map<Exponents, std::map<std::pair<int, int>, F>> groups;
  for (const auto& [e, c] : numerator.terms()) {
    Exponents rest = e;
    int a = rest[zi];
    int b = rest[wi];
    rest[zi] = 0;
    rest[wi] = 0;
    groups[rest][{a, b}] = c;
  }
  TruncatedSeries<F> q(numerator.space());
  for (const auto& [rest, c] : groups) {
    Real scale = 1;
    for (const auto& [ab, v] : c) {
      Real m = ScalarTraits<F>::magnitude(v);
      if (m > scale) scale = m;
    }
    auto get = [&](int a, int b) {
      auto it = c.find({a, b});
      return it == c.end() ? F(0) : it->second;
    };
    if (!ScalarTraits<F>::is_zero(get(0, 0))) {
      if (ScalarTraits<F>::exact || ScalarTraits<F>::magnitude(get(0, 0)) > numeric_context().tolerance * scale)
        throw NumericalError("singular_quotient: numerator does not vanish on w = -z");
    }
    std::map<std::pair<int, int>, F> qc;
    for (int n = 1; n <= total; ++n) {
      F prev(0);  // q_{n-j, j-1}
      for (int j = 0; j < n; ++j) {
        F val = get(n - j, j) - prev;
        qc[{n - 1 - j, j}] = val;
        prev = val;
      }
      F residual = get(0, n) - prev;
      bool bad = ScalarTraits<F>::exact ? !ScalarTraits<F>::is_zero(residual)
                                        : ScalarTraits<F>::magnitude(residual) > numeric_context().tolerance * scale;
      if (bad) throw NumericalError("singular_quotient: numerator does not vanish on w = -z");
    }
    for (const auto& [ab, v] : qc) {
      Exponents e = rest;
      e[zi] = static_cast<std::uint8_t>(ab.first);
      e[wi] = static_cast<std::uint8_t>(ab.second);
      q.add_term(e, v);
    }
  }
  return q;
}

template class TruncatedSeries<Rational>;
template class TruncatedSeries<Complex>;
template TruncatedSeries<Rational> singular_quotient(const TruncatedSeries<Rational>&, int, int);
template TruncatedSeries<Complex> singular_quotient(const TruncatedSeries<Complex>&, int, int);

}  // namespace hgf
