// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctcsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

constexpr int kMaxCtcQubits = 3;
constexpr int kMaxRegisterQubits = 12;
constexpr double kAmbiguityTol = 1e-9;
constexpr double kSAmbiguousWindow = 1e-9;

std::string fmt_err(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// Reduced matrix over the trailing (CTC) factor: out[a,a'] =
// sum_b m[(a,b),(a',b)], with full index (a,b) = a*d_b + b.
Matrix ptrace_trailing(const Matrix& m, Index d_a, Index d_b) {
  Matrix out = Matrix::Zero(d_a, d_a);
  for (Index i = 0; i < d_a; ++i)
    for (Index j = 0; j < d_a; ++j) {
      Complex sum = 0.0;
      for (Index b = 0; b < d_b; ++b) sum += m(i * d_b + b, j * d_b + b);
      out(i, j) = sum;
    }
  return out;
}

double min_eigenvalue(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Clamps eigenvalues in [-window, 0) to zero and renormalizes the trace.
DensityMatrix clamp_to_density(const Matrix& herm, double window) {
  if (!herm.allFinite())
    throw InternalError("matrix has non-finite entries");
  Matrix h = hermitize(herm);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector vals = es.eigenvalues();
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -window)
      throw InternalError("matrix is not positive semidefinite within " +
                          fmt_err(window) + ": eigenvalue " +
                          fmt_err(vals(i)));
    if (vals(i) < 0.0) vals(i) = 0.0;
  }
  const double tr = vals.sum();
  if (tr <= 0.0) throw InternalError("clamped matrix has nonpositive trace");
  Matrix out = es.eigenvectors() * (vals / tr).asDiagonal() *
               es.eigenvectors().adjoint();
  return DensityMatrix(std::move(out));
}

// Windowed Cesaro average (1/N) sum_{k in [N,2N)} L^k v0 with N doubling
// each step; it has the same limit as the running average from k = 0 but
// sheds transients geometrically. Stops when successive averages differ by
// less than `tol`, and falls back to the best window seen when rounding
// drift of the peripheral eigenvalues reverses convergence.
Vector cesaro_state(const Matrix& liouville, const Vector& v0, double tol,
                    std::int64_t max_n, bool stop_at_residual_floor,
                    bool* converged) {
  const Index d2 = liouville.rows();
  auto residual = [&](const Vector& v) {
    return (liouville * v - v).cwiseAbs().maxCoeff();
  };
  Matrix sum_op = Matrix::Identity(d2, d2);  // sum of L^k, k < N
  Matrix power = liouville;                  // L^N
  std::int64_t n = 1;
  Vector avg = power * v0;  // window [1, 2)
  Vector best = avg;
  double best_res = residual(avg);
  *converged = false;
  while (n < max_n) {
    // Eigenvalues sit on the closed unit disk only up to rounding; repeated
    // squaring amplifies 1+eps without bound, so bail out once drift shows
    // and keep the smallest-residual window seen instead.
    if (!power.allFinite() || max_abs(power) > 1e6) break;
    sum_op = sum_op + power * sum_op;
    power = power * power;
    n *= 2;
    if (!power.allFinite() || max_abs(power) > 1e6) break;
    Vector next = (power * (sum_op * v0)) / static_cast<double>(n);
    const double diff = (next - avg).cwiseAbs().maxCoeff();
    avg = std::move(next);
    const double res = residual(avg);
    if (res < best_res) {
      best_res = res;
      best = avg;
    }
    if (diff < tol) {
      *converged = true;
      return avg;
    }
    if (stop_at_residual_floor && best_res < 5e-16) break;
  }
  return best;
}

// Hermitian d x d matrices as real vectors of length d^2 (isometric for the
// Hilbert-Schmidt inner product).
RealVector realify(const Matrix& h) {
  const Index d = h.rows();
  RealVector v(d * d);
  Index k = 0;
  for (Index i = 0; i < d; ++i) v(k++) = h(i, i).real();
  const double r2 = std::sqrt(2.0);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      v(k++) = r2 * h(i, j).real();
      v(k++) = r2 * h(i, j).imag();
    }
  return v;
}

Matrix unrealify(const RealVector& v, Index d) {
  Matrix h = Matrix::Zero(d, d);
  Index k = 0;
  for (Index i = 0; i < d; ++i) h(i, i) = v(k++);
  const double r2 = std::sqrt(2.0);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const double re = v(k++) / r2;
      const double im = v(k++) / r2;
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  return h;
}

// Deterministic sign: first diagonal entry (then first off-diagonal real,
// then imaginary part) of significant magnitude is made positive.
Matrix canonical_sign(Matrix d) {
  const double tol = 1e-9;
  for (Index i = 0; i < d.rows(); ++i) {
    const double v = d(i, i).real();
    if (std::abs(v) > tol) return v < 0.0 ? Matrix(-d) : d;
  }
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = i + 1; j < d.cols(); ++j) {
      if (std::abs(d(i, j).real()) > tol)
        return d(i, j).real() < 0.0 ? Matrix(-d) : d;
      if (std::abs(d(i, j).imag()) > tol)
        return d(i, j).imag() < 0.0 ? Matrix(-d) : d;
    }
  return d;
}

Matrix explicit_point(const FixedPointSet& set, std::span<const double> x) {
  Matrix rho = set.base.matrix();
  for (size_t i = 0; i < x.size(); ++i) rho += x[i] * set.directions[i];
  return rho;
}

double entropy_of(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

DensityMatrix max_entropy_point(const FixedPointSet& set,
                                const EngineConfig& cfg) {
  const int m = set.multiplicity();
  if (m == 0) return set.base;
  const Index d = set.base.dim();

  auto rho_at = [&](const RealVector& x) {
    Matrix rho = set.base.matrix();
    for (int i = 0; i < m; ++i) rho += x(i) * set.directions[i];
    return rho;
  };
  auto feasible = [&](const Matrix& rho) {
    return min_eigenvalue(rho) >= -1e-12;
  };

  RealVector x = RealVector::Zero(m);
  double s_cur = entropy_of(rho_at(x));
  double eta = 0.25;

  for (int iter = 0; iter < 20000; ++iter) {
    // gradient of -Tr[rho ln rho] in the coefficients:
    // dS/dx_i = -Tr[D_i (ln rho + I)]
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_at(x));
    RealVector grad = RealVector::Zero(m);
    for (Index k = 0; k < d; ++k) {
      const double l = std::max(es.eigenvalues()(k), 1e-300);
      if (es.eigenvalues()(k) < 1e-15) continue;  // common-kernel direction
      const Vector v = es.eigenvectors().col(k);
      for (int i = 0; i < m; ++i)
        grad(i) -= (v.adjoint() * set.directions[i] * v)(0).real() *
                   (std::log(l) + 1.0);
    }
    if (grad.cwiseAbs().maxCoeff() < 1e-13) break;

    bool accepted = false;
    while (eta > 1e-18) {
      RealVector x_new = x + eta * grad;
      Matrix rho_new = rho_at(x_new);
      if (feasible(rho_new)) {
        const double s_new = entropy_of(rho_new);
        if (s_new > s_cur) {
          if (s_new - s_cur < 1e-12) {
            x = x_new;
            s_cur = s_new;
            accepted = false;  // converged
            break;
          }
          x = std::move(x_new);
          s_cur = s_new;
          accepted = true;
          break;
        }
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    eta = std::min(eta * 2.0, 1.0);
  }
  return clamp_to_density(rho_at(x), cfg.psd_tol);
}

}  // namespace

Superoperator::Superoperator(Index dim_b, Matrix liouville)
    : dim_b_(dim_b), liouville_(std::move(liouville)) {
  if (!liouville_.allFinite())
    throw InternalError("Liouville matrix has non-finite entries");
  if (!is_power_of_two(dim_b_))
    throw DimensionError("CTC subsystem dimension must be 2^l");
  if (liouville_.rows() != dim_b_ * dim_b_ ||
      liouville_.cols() != dim_b_ * dim_b_)
    throw DimensionError("Liouville matrix must be dim_b^2 x dim_b^2");
  const double tp = trace_preservation_defect();
  if (tp > 1e-10)
    throw InternalError("superoperator is not trace preserving: defect " +
                        fmt_err(tp));
  const double choi_min = choi_min_eigenvalue();
  if (choi_min < -1e-9)
    throw InternalError("superoperator is not completely positive: Choi "
                        "eigenvalue " +
                        fmt_err(choi_min));
}

Matrix Superoperator::apply(const Matrix& rho) const {
  if (rho.rows() != dim_b_ || rho.cols() != dim_b_)
    throw DimensionError("superoperator input dimension mismatch");
  return unvectorize(liouville_ * vectorize(rho), dim_b_);
}

Matrix Superoperator::choi() const {
  // C[(k,i),(l,j)] = L[(j,i),(l,k)] with pair index (p,q) = p*d + q; this is
  // sum_kl E_kl (x) F(E_kl).
  const Index d = dim_b_;
  Matrix c(d * d, d * d);
  for (Index k = 0; k < d; ++k)
    for (Index i = 0; i < d; ++i)
      for (Index l = 0; l < d; ++l)
        for (Index j = 0; j < d; ++j)
          c(k * d + i, l * d + j) = liouville_(j * d + i, l * d + k);
  return c;
}

double Superoperator::trace_preservation_defect() const {
  const Index d = dim_b_;
  double defect = 0.0;
  for (Index k = 0; k < d; ++k)
    for (Index l = 0; l < d; ++l) {
      Complex tr = 0.0;
      for (Index i = 0; i < d; ++i) tr += liouville_(i * d + i, l * d + k);
      tr -= (k == l) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(tr));
    }
  return defect;
}

double Superoperator::choi_min_eigenvalue() const {
  Matrix c = choi();
  if (hermiticity_defect(c) > 1e-9)
    throw InternalError("Choi matrix is not Hermitian");
  return min_eigenvalue(hermitize(c));
}

Superoperator induced_map(const Unitary& u, const DensityMatrix& rho_in,
                          const QubitRegister& reg) {
  reg.validate();
  if (reg.n_ctc < 1)
    throw DomainError("induced map requires at least one CTC qubit");
  if (reg.n_ctc > kMaxCtcQubits)
    throw DimensionError("more than " + std::to_string(kMaxCtcQubits) +
                         " CTC qubits (Liouville cap)");
  if (reg.n_total > kMaxRegisterQubits)
    throw DimensionError("register exceeds " +
                         std::to_string(kMaxRegisterQubits) + " qubits");
  if (u.dim() != reg.dim_total())
    throw DimensionError("unitary dimension does not match register");
  if (rho_in.dim() != reg.dim_cr())
    throw DimensionError("rho_in dimension does not match the "
                         "chronology-respecting subsystem");

  const Index d_a = reg.dim_cr();
  const Index d_b = reg.dim_ctc();

  // Kraus operators K_{a,i} = sqrt(p_i) (<a| (x) I) U (|v_i> (x) I) from the
  // spectral decomposition rho_in = sum_i p_i |v_i><v_i|.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_in.matrix());
  Matrix liouville = Matrix::Zero(d_b * d_b, d_b * d_b);
  for (Index i = 0; i < d_a; ++i) {
    const double p = es.eigenvalues()(i);
    if (p < 1e-14) continue;
    const Vector v = es.eigenvectors().col(i);
    // U (|v> (x) I): d x d_b slab, rows (alpha, b).
    Matrix slab = Matrix::Zero(u.dim(), d_b);
    for (Index beta = 0; beta < d_a; ++beta)
      slab += v(beta) * u.matrix().middleCols(beta * d_b, d_b);
    const double w = std::sqrt(p);
    for (Index a = 0; a < d_a; ++a) {
      const Matrix k = w * slab.middleRows(a * d_b, d_b);
      liouville += kron(k.conjugate(), k);
    }
  }
  return Superoperator(d_b, std::move(liouville));
}

FixedPointSet fixed_point_set(const Superoperator& f, const EngineConfig& cfg) {
  const Index d = f.dim_b();
  const Matrix& liou = f.liouville();

  // Base point: Cesaro average from the maximally mixed state, doubled far
  // past the policy budget so slowly mixing maps still settle.
  bool converged = false;
  Vector base_vec =
      cesaro_state(liou, vectorize(Matrix::Identity(d, d) / double(d)), 1e-15,
                   std::int64_t{1} << 62, /*stop_at_residual_floor=*/true,
                   &converged);
  DensityMatrix base = clamp_to_density(unvectorize(base_vec, d), kPsdEigTol);
  const double residual =
      max_abs((f.apply(base.matrix()) - base.matrix()).eval());
  if (!(residual <= cfg.fixed_point_tol))
    throw InternalError(
        "no density-matrix fixed point found within tolerance: residual " +
        fmt_err(residual));

  // Eigenvalue-1 eigenspace of the Liouville matrix, intersected with
  // Hermitian matrices via the (M + M^dag)/2, (M - M^dag)/2i candidates.
  Eigen::ComplexEigenSolver<Matrix> es(liou);
  std::vector<RealVector> candidates;
  for (Index j = 0; j < es.eigenvalues().size(); ++j) {
    if (std::abs(es.eigenvalues()(j) - Complex(1.0)) > cfg.fixed_point_tol)
      continue;
    const Matrix m = unvectorize(es.eigenvectors().col(j), d);
    const Matrix h1 = hermitize(m);
    const Matrix h2 = hermitize(Complex(0.0, -1.0) * m);
    candidates.push_back(realify(h1));
    candidates.push_back(realify(h2));
  }
  if (candidates.empty())
    throw InternalError("no eigenvalue-1 eigenspace found; the map cannot be "
                        "trace preserving");

  RealMatrix stack(d * d, static_cast<Index>(candidates.size()));
  for (size_t j = 0; j < candidates.size(); ++j)
    stack.col(static_cast<Index>(j)) = candidates[j];
  Eigen::JacobiSVD<RealMatrix> svd(stack, Eigen::ComputeThinU);
  const double sv_cut = 1e-8 * svd.singularValues()(0);
  Index rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > sv_cut)
    ++rank;

  // Split the Hermitian fixed space into the trace direction plus traceless
  // tangent directions.
  std::vector<Matrix> herm_basis;
  RealVector traces(rank);
  for (Index i = 0; i < rank; ++i) {
    Matrix h = unrealify(svd.matrixU().col(i), d);
    traces(i) = h.trace().real();
    herm_basis.push_back(std::move(h));
  }
  if (traces.norm() < 1e-10)
    throw InternalError("fixed Hermitian space contains no unit-trace point");

  FixedPointSet set{std::move(base), {}, {}, liou};
  if (rank > 1) {
    Eigen::HouseholderQR<RealMatrix> qr(traces);
    RealMatrix q = qr.householderQ();  // column 0 || traces
    for (Index i = 1; i < rank; ++i) {
      Matrix dir = Matrix::Zero(d, d);
      for (Index j = 0; j < rank; ++j) dir += q(j, i) * herm_basis[j];
      Eigen::SelfAdjointEigenSolver<Matrix> des(dir, Eigen::EigenvaluesOnly);
      const double spectral = des.eigenvalues().cwiseAbs().maxCoeff();
      if (spectral < 1e-12)
        throw InternalError("degenerate traceless direction");
      dir = canonical_sign(dir * (0.5 / spectral));
      const double dres = max_abs((f.apply(dir) - dir).eval());
      if (!(dres <= cfg.fixed_point_tol))
        throw InternalError("fixed direction residual " + fmt_err(dres) +
                            " exceeds tolerance");
      set.directions.push_back(std::move(dir));
    }
  }

  // Per-direction PSD interval by bisection on the smallest eigenvalue,
  // shrunk by the multiplicity so the full box stays inside the PSD cone.
  const int m = set.multiplicity();
  for (const Matrix& dir : set.directions) {
    auto edge = [&](double sign) {
      auto ok = [&](double t) {
        return min_eigenvalue(set.base.matrix() + (sign * t) * dir) >= -1e-13;
      };
      double lo = 0.0, hi = 1.0;
      while (ok(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) throw InternalError("unbounded PSD interval");
      }
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
      return lo;
    };
    const double up = edge(+1.0) / m;
    const double down = edge(-1.0) / m;
    set.box_bounds.emplace_back(-down, up);
  }
  return set;
}

std::string policy_name(SelectionPolicy policy) {
  switch (policy) {
    case SelectionPolicy::MaxEntropy:
      return "max_entropy";
    case SelectionPolicy::Cesaro:
      return "cesaro";
    case SelectionPolicy::Explicit:
      return "explicit";
  }
  return "unknown";
}

DensityMatrix select_fixed_point(const FixedPointSet& set,
                                 SelectionPolicy policy,
                                 std::span<const double> coords,
                                 const EngineConfig& cfg) {
  switch (policy) {
    case SelectionPolicy::MaxEntropy:
      return max_entropy_point(set, cfg);
    case SelectionPolicy::Cesaro: {
      if (set.multiplicity() == 0) return set.base;
      const Index d = set.base.dim();
      bool converged = false;
      Vector v = cesaro_state(
          set.liouville, vectorize(Matrix::Identity(d, d) / double(d)),
          cfg.cesaro_tol, cfg.cesaro_max_iters,
          /*stop_at_residual_floor=*/false, &converged);
      if (!converged)
        throw ConvergenceError("Cesaro average did not converge within " +
                               std::to_string(cfg.cesaro_max_iters) +
                               " iterations");
      return clamp_to_density(unvectorize(v, d), kPsdEigTol);
    }
    case SelectionPolicy::Explicit: {
      if (static_cast<int>(coords.size()) != set.multiplicity())
        throw DomainError("explicit point needs " +
                          std::to_string(set.multiplicity()) +
                          " coordinate(s), got " +
                          std::to_string(coords.size()));
      for (size_t i = 0; i < coords.size(); ++i) {
        const auto [lo, hi] = set.box_bounds[i];
        if (coords[i] < lo - kAmbiguityTol || coords[i] > hi + kAmbiguityTol)
          throw DomainError("coordinate " + std::to_string(i) +
                            " outside the PSD box [" + fmt_err(lo) + ", " +
                            fmt_err(hi) + "]");
      }
      Matrix rho = explicit_point(set, coords);
      if (min_eigenvalue(rho) < -cfg.psd_tol)
        throw DomainError("explicit point is not positive semidefinite");
      return clamp_to_density(rho, cfg.psd_tol);
    }
  }
  throw DomainError("unknown selection policy");
}

CtcResult ctc_evolve(const CtcCircuit& c, const DensityMatrix& rho_in,
                     SelectionPolicy policy, std::span<const double> coords,
                     const EngineConfig& cfg) {
  const Unitary u = circuit_unitary(c);
  const Superoperator f = induced_map(u, rho_in, c.reg);
  const FixedPointSet set = fixed_point_set(f, cfg);
  DensityMatrix rho_ctc = select_fixed_point(set, policy, coords, cfg);

  const Index d_a = c.reg.dim_cr();
  const Index d_b = c.reg.dim_ctc();
  auto output_for = [&](const Matrix& ctc_state) {
    const Matrix joint = u.matrix() *
                         kron(rho_in.matrix(), ctc_state) *
                         u.matrix().adjoint();
    return ptrace_trailing(joint, d_a, d_b);
  };

  const Matrix base_out = output_for(set.base.matrix());
  bool ambiguous = false;
  for (int i = 0; i < set.multiplicity() && !ambiguous; ++i) {
    for (double x : {set.box_bounds[i].first, set.box_bounds[i].second}) {
      const Matrix probe =
          output_for(set.base.matrix() + x * set.directions[i]);
      if (max_abs((probe - base_out).eval()) > kAmbiguityTol) {
        ambiguous = true;
        break;
      }
    }
  }

  CtcResult result{clamp_to_density(output_for(rho_ctc.matrix()), cfg.psd_tol),
                   std::move(rho_ctc), set.multiplicity(),
                   policy_name(policy), ambiguous};
  return result;
}

DensityMatrix apply_s(const DensityMatrix& rho, SBackend backend,
                      const EngineConfig& cfg) {
  if (rho.dim() != 2)
    throw DimensionError("the S map acts on a single qubit");
  const BlochVector n = density_to_bloch(rho);
  if (std::abs(n.x - 1.0) <= kSAmbiguousWindow) {
    const CtcCircuit c = example_circuit(ExampleCircuit::SGate);
    const FixedPointSet set =
        fixed_point_set(induced_map(circuit_unitary(c), rho, c.reg), cfg);
    throw AmbiguousStateError(
        set.multiplicity(),
        "S map is not defined for n_x = 1: fixed-point multiplicity " +
            std::to_string(set.multiplicity()));
  }
  if (backend == SBackend::ClosedForm)
    return bloch_to_density({0.0, 0.0, n.z * n.z});
  return ctc_evolve(example_circuit(ExampleCircuit::SGate), rho,
                    SelectionPolicy::MaxEntropy, {}, cfg)
      .rho_out;
}

TemporalOriginReport temporal_origin_check(const Unitary& u0, const Unitary& v1,
                                           const Unitary& v2,
                                           const DensityMatrix& rho_in,
                                           const QubitRegister& reg,
                                           const EngineConfig& cfg) {
  reg.validate();
  if (v1.dim() != reg.dim_ctc() || v2.dim() != reg.dim_ctc())
    throw DimensionError("V1/V2 must act on the CTC subsystem");
  if (u0.dim() != reg.dim_total())
    throw DimensionError("U0 dimension does not match register");

  const Index d_a = reg.dim_cr();
  const Index d_b = reg.dim_ctc();
  const Matrix id_a = Matrix::Identity(d_a, d_a);

  const Unitary u_first(kron(id_a, (v2.matrix() * v1.matrix()).eval()) *
                        u0.matrix());
  const Unitary u_shift(kron(id_a, v1.matrix()) * u0.matrix() *
                        kron(id_a, v2.matrix()));

  auto solve = [&](const Unitary& u) {
    const Superoperator f = induced_map(u, rho_in, reg);
    const FixedPointSet set = fixed_point_set(f, cfg);
    DensityMatrix ctc =
        select_fixed_point(set, SelectionPolicy::MaxEntropy, {}, cfg);
    const Matrix joint =
        u.matrix() * kron(rho_in.matrix(), ctc.matrix()) * u.matrix().adjoint();
    return std::make_tuple(ptrace_trailing(joint, d_a, d_b), std::move(ctc),
                           set.multiplicity());
  };

  const auto [out_first, ctc_first, mult_first] = solve(u_first);
  const auto [out_shift, ctc_shift, mult_shift] = solve(u_shift);

  TemporalOriginReport report;
  report.multiplicity_first = mult_first;
  report.multiplicity_shifted = mult_shift;
  report.unique = (mult_first == 0 && mult_shift == 0);
  report.output_deviation = max_abs((out_first - out_shift).eval());
  if (report.unique) {
    const Matrix related =
        v2.matrix().adjoint() * ctc_first.matrix() * v2.matrix();
    report.basis_relation_deviation =
        max_abs((ctc_shift.matrix() - related).eval());
  } else {
    report.basis_relation_deviation = std::numeric_limits<double>::quiet_NaN();
    report.selections_disagree = report.output_deviation > kAmbiguityTol;
  }
  return report;
}

}  // namespace ctcsim
