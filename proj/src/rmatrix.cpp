#include "hgfrob/rmatrix.hpp"

#include <algorithm>

namespace hgf {

namespace {

using SeriesMatrix = Matrix<ComplexSeries>;

SeriesMatrix truncate(const SeriesMatrix& m, const SpacePtr& space) {
  return m.map([&](const ComplexSeries& s) { return s.truncated(space); });
}

Real relative(const Real& residual, const Real& scale) { return residual / std::max(Real(1), scale); }

Matrix<Complex> constant_terms(const SeriesMatrix& m) {
  return m.map([](const ComplexSeries& s) { return s.constant_term(); });
}

}  // namespace

RSeries compute_R(const FrobeniusModel& model, const CanonicalFrame& frame, int K, const RMatrixOptions& options) {
  const int n = frame.dimension();
  if (K < 0) throw ValidationError("R truncation must be nonnegative");
  if (frame.order < K) throw ValidationError("frame jets of order >= K are required");
  if (options.mode == RMode::conformal && !model.conformal()) throw ValidationError("conformal mode needs Euler data");

  std::vector<SpacePtr> sp;
  for (int k = 0; k <= K; ++k) sp.push_back(SeriesSpace::total_degree(displacement_names(n), K - k));

  RSeries out;
  out.K = K;
  out.mode = options.mode;
  SeriesMatrix id(n, n, ComplexSeries(sp[0]));
  for (int i = 0; i < n; ++i) id(i, i) = ComplexSeries::constant(sp[0], Complex(1));
  out.jets.push_back(id);
  out.R.push_back(identity_matrix<Complex>(n));
  if (K == 0) return out;

  // W_a = (d_a Psi) Psi^{-1} with Psi^{-1} = g^{-1} Psi^T, exact to order K - 1.
  SeriesMatrix psi = truncate(frame.psi_series, sp[0]);
  SeriesMatrix ginv = to_complex(model.metric_inverse()).map([&](const Complex& x) { return ComplexSeries::constant(sp[1], x); });
  SeriesMatrix psi_inv = ginv * truncate(psi.transpose(), sp[1]);
  std::vector<SeriesMatrix> w;
  for (int a = 0; a < n; ++a) {
    SeriesMatrix dpsi = psi.map([&](const ComplexSeries& s) { return s.derivative(a).truncated(sp[1]); });
    w.push_back(dpsi * psi_inv);
  }
  std::vector<std::vector<ComplexSeries>> du(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      du[static_cast<std::size_t>(a)].push_back(frame.du_series[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].truncated(sp[0]));

  std::vector<ComplexSeries> euler;
  if (options.mode == RMode::conformal) {
    const auto& eu = *model.euler();
    std::vector<Complex> e_at = model.euler_field(frame.point);
    for (int a = 0; a < n; ++a) {
      ComplexSeries ea = ComplexSeries::constant(sp[0], e_at[static_cast<std::size_t>(a)]);
      for (int b = 0; b < n; ++b)
        if (eu.matrix(a, b) != 0) ea += ComplexSeries::variable(sp[0], b) * Complex(eu.matrix(a, b));
      euler.push_back(ea);
    }
  }

  Real worst = 0;
  for (int k = 1; k <= K; ++k) {
    const SpacePtr& s = sp[static_cast<std::size_t>(k)];
    const SeriesMatrix& prev = out.jets.back();
    SeriesMatrix prev_s = truncate(prev, s);
    std::vector<SeriesMatrix> num;
    for (int a = 0; a < n; ++a) {
      SeriesMatrix d = prev.map([&](const ComplexSeries& x) { return x.derivative(a).truncated(s); });
      num.push_back(d + prev_s * truncate(w[static_cast<std::size_t>(a)], s));
    }
    SeriesMatrix rk(n, n, ComplexSeries(s));
    // Off-diagonal entries from [dU, R_k] = -(d + W) R_{k-1}, one direction
    // at a time; every direction must agree.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int best = -1;
        Real best_gap = 0;
        std::vector<ComplexSeries> gaps;
        for (int a = 0; a < n; ++a) {
          gaps.push_back((du[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] - du[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]).truncated(s));
          Real gap = abs(gaps.back().constant_term());
          if (gap > best_gap) {
            best_gap = gap;
            best = a;
          }
        }
        if (best < 0 || best_gap <= numeric_context().tolerance)
          throw NumericalError("degenerate frame: du^i - du^j vanishes in every direction");
        rk(i, j) = num[static_cast<std::size_t>(best)](i, j) * gaps[static_cast<std::size_t>(best)].inverse();
        for (int a = 0; a < n; ++a) {
          const ComplexSeries& target = num[static_cast<std::size_t>(a)](i, j);
          Real r = relative((rk(i, j) * gaps[static_cast<std::size_t>(a)] - target).max_abs(), target.max_abs());
          worst = std::max(worst, r);
        }
      }
    }
    // Diagonal entries.
    for (int i = 0; i < n; ++i) {
      if (options.mode == RMode::conformal) {
        ComplexSeries acc(s);
        for (int a = 0; a < n; ++a) {
          ComplexSeries inner(s);
          for (int j = 0; j < n; ++j)
            if (j != i) inner += rk(i, j) * w[static_cast<std::size_t>(a)](j, i).truncated(s);
          acc += euler[static_cast<std::size_t>(a)].truncated(s) * inner;
        }
        rk(i, i) = acc * Complex(Rational(1, k));
      } else if (k % 2 == 0) {
        ComplexSeries acc(s);
        for (int p = 1; p < k; ++p) {
          const SeriesMatrix& rp = out.jets[static_cast<std::size_t>(p)];
          const SeriesMatrix& rq = out.jets[static_cast<std::size_t>(k - p)];
          ComplexSeries dot(s);
          for (int m = 0; m < n; ++m) dot += rp(i, m).truncated(s) * rq(i, m).truncated(s);
          acc += ((k - p) % 2 == 0) ? dot : -dot;
        }
        rk(i, i) = acc * Complex(Rational(-1, 2));
      } else {
        // d (R_k)_ii = -(R_k W)_ii, integrated from zero at the point.
        SpacePtr wider = sp[static_cast<std::size_t>(k - 1)];
        std::vector<ComplexSeries> grad;
        for (int a = 0; a < n; ++a) {
          ComplexSeries g(wider);
          for (int j = 0; j < n; ++j)
            if (j != i) g -= rk(i, j).truncated(wider) * w[static_cast<std::size_t>(a)](j, i).truncated(wider);
          grad.push_back(g.truncated(s));
        }
        rk(i, i) = integrate_gradient(grad);
      }
    }
    // The next equation has zero diagonal: d(R_k)_ii + (R_k W)_ii = 0.
    if (k < K) {
      const SpacePtr& s1 = sp[static_cast<std::size_t>(k + 1)];
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
          ComplexSeries lhs = rk(i, i).derivative(a).truncated(s1);
          for (int j = 0; j < n; ++j)
            if (j != i) lhs += rk(i, j).truncated(s1) * w[static_cast<std::size_t>(a)](j, i).truncated(s1);
          worst = std::max(worst, relative(lhs.max_abs(), rk(i, i).max_abs()));
        }
    }
    out.R.push_back(constant_terms(rk));
    out.jets.push_back(std::move(rk));
  }
  out.consistency_residual = worst;
  if (options.mode == RMode::constants && !options.a.empty()) {
    RSeries twisted = twist_R(out, options.a);
    twisted.consistency_residual = worst;
    return twisted;
  }
  return out;
}

// Rows of R carry the canonical index, so the diagonal factor acts from the
// left.
RSeries twist_R(const RSeries& r, const TwistConstants& a) {
  const int n = r.R.front().rows();
  const int K = r.K;
  // E_i(z) = exp(sum_k a_k^i z^{2k-1}) truncated at K, one per index.
  auto zsp = SeriesSpace::make({"z"}, {K});
  std::vector<std::vector<Complex>> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ComplexSeries expo(zsp);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (static_cast<int>(a[k].size()) != n) throw ValidationError("twist constants need one value per canonical index");
      int deg = 2 * static_cast<int>(k) + 1;
      if (deg <= K) expo.add_term({static_cast<std::uint8_t>(deg)}, a[k][static_cast<std::size_t>(i)]);
    }
    ComplexSeries ex = expo.exp();
    for (int q = 0; q <= K; ++q) e[static_cast<std::size_t>(i)].push_back(ex.coefficient({static_cast<std::uint8_t>(q)}));
  }
  RSeries out;
  out.K = K;
  out.mode = r.mode;
  out.consistency_residual = r.consistency_residual;
  bool jets = static_cast<int>(r.jets.size()) == K + 1;
  for (int k = 0; k <= K; ++k) {
    Matrix<Complex> m(n, n, Complex());
    for (int p = 0; p <= k; ++p)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) += e[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - p)] * r.R[static_cast<std::size_t>(p)](i, j);
    out.R.push_back(m);
    if (jets) {
      const SpacePtr& s = r.jets[static_cast<std::size_t>(k)](0, 0).space();
      Matrix<ComplexSeries> mj(n, n, ComplexSeries(s));
      for (int p = 0; p <= k; ++p)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            mj(i, j) += r.jets[static_cast<std::size_t>(p)](i, j).truncated(s) * e[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - p)];
      out.jets.push_back(mj);
    }
  }
  return out;
}

Real unitarity_residual(const RSeries& r) {
  Real worst = 0;
  for (int k = 1; k <= r.K; ++k) {
    Matrix<Complex> p = r.R[static_cast<std::size_t>(k)] * r.R[0].transpose();
    for (int q = 1; q <= k; ++q) {
      Matrix<Complex> term = r.R[static_cast<std::size_t>(k - q)] * r.R[static_cast<std::size_t>(q)].transpose();
      if (q % 2 == 0) {
        p += term;
      } else {
        p -= term;
      }
    }
    worst = std::max(worst, max_abs(p));
  }
  return worst;
}

std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> b(static_cast<std::size_t>(n + 1));
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    Rational binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += binom * b[static_cast<std::size_t>(k)];
      binom = binom * Rational(m + 1 - k) / Rational(k + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / Rational(m + 1);
  }
  return b;
}

std::vector<std::vector<Rational>> bernoulli_constants(const std::vector<std::vector<Rational>>& chi, int count) {
  auto b = bernoulli_numbers(2 * count);
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(count), std::vector<Rational>(chi.size()));
  for (std::size_t i = 0; i < chi.size(); ++i) {
    for (const auto& c : chi[i])
      if (c == 0) throw ValidationError("zero character");
    for (int k = 1; k <= count; ++k) {
      Rational newton = 0;
      for (const auto& c : chi[i]) newton += ScalarTraits<Rational>::pow(Rational(1) / c, Rational(2 * k - 1));
      a[static_cast<std::size_t>(k - 1)][i] = -newton * b[static_cast<std::size_t>(2 * k)] / Rational((2 * k - 1) * 2 * k);
    }
  }
  return a;
}

Complex EdgeTailData::v(int i, int j, int k, int l) const {
  auto it = V.find({i, j, k, l});
  if (it == V.end()) throw ValidationError("edge coefficient outside the computed range");
  return it->second;
}

Complex EdgeTailData::w(int i, int j, int k, int l) const {
  return v(i, j, k, l) * sqrt_delta[static_cast<std::size_t>(i)] * sqrt_delta[static_cast<std::size_t>(j)];
}

EdgeTailData compute_V(const RSeries& r, const CanonicalFrame& frame) {
  const int n = frame.dimension();
  const int K = r.K;
  EdgeTailData d;
  d.N = n;
  d.K = K;
  d.u = frame.u;
  d.delta = frame.delta;
  d.sqrt_delta = frame.sqrt_delta;
  if (K == 0) return d;
  auto zw = SeriesSpace::total_degree({"z", "w"}, K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ComplexSeries num(zw);
      for (int a = 0; a <= K; ++a)
        for (int b = 0; a + b <= K; ++b) {
          Complex c;
          for (int s = 0; s < n; ++s) c += r.R[static_cast<std::size_t>(a)](i, s) * r.R[static_cast<std::size_t>(b)](j, s);
          num.add_term({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}, c);
        }
      if (i == j) num -= ComplexSeries::constant(zw, Complex(1));
      ComplexSeries q = singular_quotient(num, 0, 1);
      for (int k = 0; k <= K - 1; ++k)
        for (int l = 0; k + l <= K - 1; ++l) {
          Complex c = q.coefficient({static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(l)});
          d.V[{i, j, k, l}] = ((k + l) % 2 == 0) ? c : -c;
        }
    }
  }
  return d;
}

void compute_T(EdgeTailData& d, const RSeries& r) {
  const int n = d.N;
  d.T.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(r.K + 2)));
  d.t_residual = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= r.K; ++k) {
      Complex s;
      for (int j = 0; j < n; ++j) s += r.R[static_cast<std::size_t>(k)](i, j) / d.sqrt_delta[static_cast<std::size_t>(j)];
      s *= d.sqrt_delta[static_cast<std::size_t>(i)];
      if (k == 0) {
        d.t_residual = std::max(d.t_residual, abs(s - Complex(1)));
      } else {
        d.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k + 1)] = ((k + 1) % 2 == 0) ? s : -s;
      }
    }
  }
  if (d.t_residual > numeric_context().tolerance) throw NumericalError("tail extraction: T_1 residual above tolerance");
}

EdgeTailData edge_tail_data(const RSeries& r, const CanonicalFrame& frame) {
  EdgeTailData d = compute_V(r, frame);
  compute_T(d, r);
  return d;
}

}  // namespace hgf
