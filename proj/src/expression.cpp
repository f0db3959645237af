#include "hgfrob/expression.hpp"

#include <functional>
#include <sstream>
#include <tuple>

namespace hgf {

namespace {

using TermKey = std::tuple<std::map<std::string, int>, std::vector<Rational>, std::vector<Rational>>;

bool is_natural(const Rational& q) { return denominator(q) == 1 && q >= 0; }

std::vector<std::string> coordinate_names(int n) {
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("t" + std::to_string(a));
  return names;
}

}  // namespace

Expression Expression::constant(int variables, const Rational& c) {
  ExprTerm t{c, {}, std::vector<Rational>(static_cast<std::size_t>(variables)),
             std::vector<Rational>(static_cast<std::size_t>(variables))};
  return from_terms(variables, {t});
}

Expression Expression::variable(int variables, int index) {
  ExprTerm t{Rational(1), {}, std::vector<Rational>(static_cast<std::size_t>(variables)),
             std::vector<Rational>(static_cast<std::size_t>(variables))};
  t.mono.at(static_cast<std::size_t>(index)) = 1;
  return from_terms(variables, {t});
}

Expression Expression::parameter(int variables, const std::string& name) {
  ExprTerm t{Rational(1), {{name, 1}}, std::vector<Rational>(static_cast<std::size_t>(variables)),
             std::vector<Rational>(static_cast<std::size_t>(variables))};
  return from_terms(variables, {t});
}

Expression Expression::from_terms(int variables, std::vector<ExprTerm> terms) {
  Expression e(variables);
  for (auto& t : terms) {
    if (static_cast<int>(t.mono.size()) != variables || static_cast<int>(t.rate.size()) != variables)
      throw ValidationError("expression term has wrong dimension");
  }
  e.terms_ = std::move(terms);
  e.normalize();
  return e;
}

void Expression::normalize() {
  std::map<TermKey, Rational> acc;
  for (auto& t : terms_) {
    for (auto it = t.params.begin(); it != t.params.end();) {
      if (it->second == 0) {
        it = t.params.erase(it);
      } else {
        ++it;
      }
    }
    acc[TermKey{t.params, t.mono, t.rate}] += t.coeff;
  }
  terms_.clear();
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    terms_.push_back(ExprTerm{c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
}

bool Expression::has_parameters() const {
  for (const auto& t : terms_)
    if (!t.params.empty()) return true;
  return false;
}

void Expression::check_params() const {
  for (const auto& t : terms_) {
    if (!t.params.empty()) throw ValidationError("parameter '" + t.params.begin()->first + "' has no bound value");
  }
}

Expression& Expression::operator+=(const Expression& o) {
  if (o.n_ != n_) throw ValidationError("expression dimension mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  if (o.n_ != n_) throw ValidationError("expression dimension mismatch");
  for (auto t : o.terms_) {
    t.coeff = -t.coeff;
    terms_.push_back(std::move(t));
  }
  normalize();
  return *this;
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.n_ != b.n_) throw ValidationError("expression dimension mismatch");
  std::vector<ExprTerm> out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      ExprTerm t = x;
      t.coeff *= y.coeff;
      for (const auto& [name, p] : y.params) t.params[name] += p;
      for (std::size_t v = 0; v < t.mono.size(); ++v) {
        t.mono[v] += y.mono[v];
        t.rate[v] += y.rate[v];
      }
      out.push_back(std::move(t));
    }
  }
  return Expression::from_terms(a.n_, std::move(out));
}

Expression operator*(Expression a, const Rational& c) {
  for (auto& t : a.terms_) t.coeff *= c;
  a.normalize();
  return a;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    const auto& x = a.terms_[k];
    const auto& y = b.terms_[k];
    if (x.coeff != y.coeff || x.params != y.params || x.mono != y.mono || x.rate != y.rate) return false;
  }
  return true;
}

Expression Expression::diff(int var) const {
  const auto v = static_cast<std::size_t>(var);
  if (var < 0 || var >= n_) throw ValidationError("differentiation variable out of range");
  std::vector<ExprTerm> out;
  for (const auto& t : terms_) {
    if (t.mono[v] != 0) {
      ExprTerm d = t;
      d.coeff *= t.mono[v];
      d.mono[v] -= 1;
      out.push_back(std::move(d));
    }
    if (t.rate[v] != 0) {
      ExprTerm d = t;
      d.coeff *= t.rate[v];
      out.push_back(std::move(d));
    }
  }
  return from_terms(n_, std::move(out));
}

Expression Expression::antidiff(int var) const {
  const auto v = static_cast<std::size_t>(var);
  if (var < 0 || var >= n_) throw ValidationError("integration variable out of range");
  std::vector<ExprTerm> out;
  for (const auto& t : terms_) {
    const Rational& e = t.mono[v];
    const Rational& c = t.rate[v];
    if (c == 0) {
      if (e == -1) throw ValidationError("antiderivative leaves the expression class (1/t term)");
      ExprTerm d = t;
      d.mono[v] = e + 1;
      d.coeff /= (e + 1);
      out.push_back(std::move(d));
      continue;
    }
    if (!is_natural(e)) throw ValidationError("antiderivative leaves the expression class (power times exponential)");
    // int t^n e^{ct} = sum_j (-1)^j n!/(n-j)! t^{n-j} e^{ct} / c^{j+1}
    long n = numerator(e).convert_to<long>();
    Rational falling = 1;
    Rational cpow = c;
    for (long j = 0; j <= n; ++j) {
      ExprTerm d = t;
      d.mono[v] = Rational(n - j);
      d.coeff *= falling / cpow;
      if (j % 2 == 1) d.coeff = -d.coeff;
      out.push_back(std::move(d));
      falling *= Rational(n - j);
      cpow *= c;
    }
  }
  return from_terms(n_, std::move(out));
}

Expression Expression::bind(const std::map<std::string, Rational>& values) const {
  std::vector<ExprTerm> out;
  for (const auto& t : terms_) {
    ExprTerm d = t;
    for (auto it = d.params.begin(); it != d.params.end();) {
      auto found = values.find(it->first);
      if (found == values.end()) {
        ++it;
        continue;
      }
      d.coeff *= ScalarTraits<Rational>::pow(found->second, Rational(it->second));
      it = d.params.erase(it);
    }
    out.push_back(std::move(d));
  }
  return from_terms(n_, std::move(out));
}

Rational Expression::evaluate_exact(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != n_) throw ValidationError("point dimension does not match the expression");
  check_params();
  Rational total = 0;
  for (const auto& t : terms_) {
    Rational value = t.coeff;
    for (std::size_t v = 0; v < point.size(); ++v) {
      if (t.rate[v] != 0 && point[v] != 0) throw ValidationError("exponential term is irrational at this point");
      const Rational& e = t.mono[v];
      if (e == 0) continue;
      if (point[v] == 0) {
        if (e < 0) throw ValidationError("negative power at zero");
        value = 0;
        break;
      }
      if (denominator(e) != 1) throw ValidationError("fractional power is irrational at this point");
      value *= ScalarTraits<Rational>::pow(point[v], e);
    }
    total += value;
  }
  return total;
}

Complex Expression::evaluate(const std::vector<Complex>& point) const {
  if (static_cast<int>(point.size()) != n_) throw ValidationError("point dimension does not match the expression");
  check_params();
  Complex total;
  for (const auto& t : terms_) {
    Complex value(t.coeff);
    Complex lin;
    for (std::size_t v = 0; v < point.size(); ++v) {
      if (t.mono[v] != 0) value *= pow(point[v], t.mono[v]);
      if (t.rate[v] != 0) lin += Complex(t.rate[v]) * point[v];
    }
    if (!(lin == Complex())) value *= exp(lin);
    total += value;
  }
  return total;
}

ComplexSeries Expression::taylor(const std::vector<Complex>& point, const SpacePtr& space) const {
  if (static_cast<int>(point.size()) != n_ || space->size() != n_)
    throw ValidationError("point dimension does not match the expression");
  check_params();
  ComplexSeries total(space);
  for (const auto& t : terms_) {
    ComplexSeries prod = ComplexSeries::constant(space, Complex(t.coeff));
    Complex lin;
    for (int v = 0; v < n_; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      const int cap = space->caps()[vi];
      const Rational& e = t.mono[vi];
      const Rational& c = t.rate[vi];
      if (e == 0 && c == 0) continue;
      ComplexSeries factor(space);
      Exponents ex(static_cast<std::size_t>(n_), 0);
      if (e != 0) {
        if (is_natural(e)) {
          long n = numerator(e).convert_to<long>();
          Complex binom(1);
          for (long k = 0; k <= n && k <= cap; ++k) {
            ex[vi] = static_cast<std::uint8_t>(k);
            factor.add_term(ex, binom * pow(point[vi], Rational(n - k)));
            binom = binom * Complex(Real(n - k)) / Complex(Real(k + 1));
          }
        } else {
          if (abs(point[vi]) == 0) throw NumericalError("non-polynomial power expanded at zero");
          Complex base = pow(point[vi], e);
          Complex inv = Complex(1) / point[vi];
          Complex binom(1);
          Complex ipow(1);
          Complex fe(e);
          for (int k = 0; k <= cap; ++k) {
            ex[vi] = static_cast<std::uint8_t>(k);
            factor.add_term(ex, base * binom * ipow);
            binom = binom * (fe - Complex(Real(k))) / Complex(Real(k + 1));
            ipow *= inv;
          }
        }
      } else {
        factor = ComplexSeries::constant(space, Complex(1));
      }
      if (c != 0) {
        lin += Complex(c) * point[vi];
        ComplexSeries ef(space);
        Complex term(1);
        Complex fc(c);
        for (int k = 0; k <= cap; ++k) {
          ex[vi] = static_cast<std::uint8_t>(k);
          ef.add_term(ex, term);
          term = term * fc / Complex(Real(k + 1));
        }
        factor = factor * ef;
      }
      prod = prod * factor;
    }
    if (!(lin == Complex())) prod *= exp(lin);
    total += prod;
  }
  return total;
}

Jet evaluate_jet(const Expression& expr, const std::vector<Complex>& point, int order) {
  if (order < 0) throw ValidationError("jet order must be nonnegative");
  if (static_cast<int>(point.size()) != expr.variables())
    throw ValidationError("point dimension does not match the expression");
  auto space = SeriesSpace::total_degree(coordinate_names(expr.variables()), order);
  ComplexSeries s = expr.taylor(point, space);
  Jet jet;
  // Enumerate every multi-index so that zero derivatives are present.
  std::vector<int> m(static_cast<std::size_t>(expr.variables()), 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == expr.variables()) {
      Exponents e(m.begin(), m.end());
      Complex c = s.coefficient(e);
      Real fact = 1;
      for (int k : m)
        for (int j = 2; j <= k; ++j) fact *= j;
      jet[m] = c * Complex(fact);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      m[static_cast<std::size_t>(v)] = k;
      rec(v + 1, left - k);
    }
    m[static_cast<std::size_t>(v)] = 0;
  };
  rec(0, order);
  return jet;
}

std::string to_string(const Expression& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << to_string(t.coeff) << ')';
    for (const auto& [name, p] : t.params) os << '*' << name << (p != 1 ? "^" + std::to_string(p) : "");
    for (std::size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      os << "*t" << v;
      if (t.mono[v] != 1) os << '^' << to_string(t.mono[v]);
    }
    bool any = false;
    for (const auto& c : t.rate) any = any || c != 0;
    if (any) {
      os << "*exp(";
      bool f = true;
      for (std::size_t v = 0; v < t.rate.size(); ++v) {
        if (t.rate[v] == 0) continue;
        if (!f) os << '+';
        f = false;
        os << to_string(t.rate[v]) << "*t" << v;
      }
      os << ')';
    }
  }
  return os.str();
}

}  // namespace hgf
