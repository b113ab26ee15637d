// Copyright 2026 The qec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEC_TIP_PROBE_HPP
#define QEC_TIP_PROBE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <Eigen/Cholesky>

#include "qec/cone.hpp"
#include "qec/constructions.hpp"
#include "qec/entropy.hpp"
#include "qec/lemma_lab.hpp"
#include "qec/qstate.hpp"

namespace qec {

struct ProbeConfig {
  PartyDims dims{2, 2, 2, 2};
  std::vector<double> penalty_weights{10.0, 100.0, 1e3, 1e4};
  std::size_t restarts = 20;
  std::size_t max_iterations = 200;  // pattern-search sweeps per stage
  double step_tolerance = 1e-7;
  double constraint_tolerance = 1e-6;  // on max_j I(X_c : X_j)
  std::uint64_t seed = 1;
  double initial_step = 0.05;
  std::size_t restoration_iterations = 100;
  std::size_t threads = 0;  // 0 picks hardware concurrency
  std::vector<PureState> warm_starts;  // used by the first restarts, in order

  void validate() const {
    if (penalty_weights.empty()) throw InputError("penalty_weights must be non-empty");
    for (std::size_t i = 0; i < penalty_weights.size(); ++i) {
      if (!(penalty_weights[i] > 0)) throw InputError("penalty_weights must be positive");
      if (i > 0 && !(penalty_weights[i] > penalty_weights[i - 1]))
        throw InputError("penalty_weights must be strictly increasing");
    }
    if (restarts < 1) throw InputError("restarts must be at least 1");
    if (max_iterations < 1) throw InputError("max_iterations must be at least 1");
    if (!(step_tolerance > 0)) throw InputError("step_tolerance must be positive");
    if (!(constraint_tolerance > 0)) throw InputError("constraint_tolerance must be positive");
    if (!(initial_step > 0)) throw InputError("initial_step must be positive");
    for (const auto& w : warm_starts)
      if (!(w.dims().values() == dims.values())) throw InputError("warm start dims do not match config dims");
  }
};

/// One evaluation of sum_i H(X_i) + w sum_{j != c} I(X_c : X_j)^2.
struct ObjectiveRecord {
  double value = 0.0;
  double entropy_sum = 0.0;
  double penalty = 0.0;
  double residual = 0.0;  // max_j |I(X_c : X_j)|
  double h_constrained = 0.0;
  std::vector<double> single_entropies;
  std::vector<double> mutual_information;  // indexed by party, 0 at c
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(restart) + 1));
}

// Marginals of unit vectors over fixed dims, with the index splits cached.
// Not thread-safe; use one per worker.
class MarginalEvaluator {
 public:
  explicit MarginalEvaluator(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    total_ = 1;
    for (auto d : dims_) total_ *= d;
  }

  const std::vector<std::size_t>& dims() const { return dims_; }

  CMatrix reduced(const CVector& amps, SubsystemMask keep) {
    const CMatrix psi = amplitude_matrix(amps, split(keep));
    CMatrix rho = CMatrix::Zero(psi.rows(), psi.rows());
    rho.selfadjointView<Eigen::Lower>().rankUpdate(psi);
    return rho.selfadjointView<Eigen::Lower>();
  }

  // Side of the cut on which the marginal is computed.
  SubsystemMask smaller_side(SubsystemMask mask) const {
    const SubsystemMask rest = SubsystemMask::all(dims_.size()) - mask;
    std::size_t dk = 1;
    for (std::size_t p = 0; p < dims_.size(); ++p)
      if (mask.contains(p)) dk *= dims_[p];
    return dk * dk <= total_ ? mask : rest;
  }

  double entropy(const CVector& amps, SubsystemMask mask) {
    const SubsystemMask rest = SubsystemMask::all(dims_.size()) - mask;
    if (mask.empty() || rest.empty()) return 0.0;
    return entropy_bits(hermitian_spectrum(reduced(amps, smaller_side(mask))));
  }

 private:
  const IndexSplit& split(SubsystemMask keep) {
    auto it = cache_.find(keep.bits());
    if (it == cache_.end()) it = cache_.emplace(keep.bits(), split_index(dims_, keep)).first;
    return it->second;
  }

  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
  std::unordered_map<std::uint32_t, IndexSplit> cache_;
};

inline CVector to_complex(const Eigen::VectorXd& x) {
  const Eigen::Index d = x.size() / 2;
  CVector v(d);
  for (Eigen::Index k = 0; k < d; ++k) v[k] = Complex(x[2 * k], x[2 * k + 1]);
  const double nrm = v.norm();
  if (!(nrm > 0)) throw NumericalError("search point collapsed to the zero vector");
  return v / nrm;
}

inline Eigen::VectorXd to_real(const CVector& v) {
  Eigen::VectorXd x(2 * v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    x[2 * k] = v[k].real();
    x[2 * k + 1] = v[k].imag();
  }
  return x;
}

inline ObjectiveRecord evaluate_objective(MarginalEvaluator& ev, const CVector& amps, std::size_t c, double w) {
  const auto n = ev.dims().size();
  ObjectiveRecord r;
  r.single_entropies.resize(n);
  r.mutual_information.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    r.single_entropies[i] = ev.entropy(amps, SubsystemMask::single(i));
    r.entropy_sum += r.single_entropies[i];
  }
  r.h_constrained = r.single_entropies[c];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == c) continue;
    const double hij = ev.entropy(amps, SubsystemMask::single(c) | SubsystemMask::single(j));
    const double info = r.single_entropies[c] + r.single_entropies[j] - hij;
    r.mutual_information[j] = info;
    r.penalty += info * info;
    r.residual = std::max(r.residual, std::abs(info));
  }
  r.penalty *= w;
  r.value = r.entropy_sum + r.penalty;
  return r;
}

// Real and imaginary parts of rho_cj - rho_c (x) rho_j over the lower
// triangle, for every j != c.
inline Eigen::VectorXd product_residuals(MarginalEvaluator& ev, const CVector& amps, std::size_t c) {
  const auto n = ev.dims().size();
  std::vector<double> out;
  const CMatrix rc = ev.reduced(amps, SubsystemMask::single(c));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == c) continue;
    const CMatrix rj = ev.reduced(amps, SubsystemMask::single(j));
    const CMatrix rcj = ev.reduced(amps, SubsystemMask::single(c) | SubsystemMask::single(j));
    const CMatrix diff = rcj - (c < j ? kron(rc, rj) : kron(rj, rc));
    for (Eigen::Index a = 0; a < diff.rows(); ++a)
      for (Eigen::Index b = 0; b <= a; ++b) {
        out.push_back(diff(a, b).real());
        if (b < a) out.push_back(diff(a, b).imag());
      }
  }
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

// Opportunistic compass search with step halving. Only improving moves are
// accepted, so the recorded values never increase.
struct CompassResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double step = 0.0;
  std::vector<double> sweep_values;
};

template <class F>
CompassResult compass_search(F&& f, Eigen::VectorXd x, double step, double step_tol, std::size_t max_sweeps) {
  CompassResult r;
  double fx = f(x);
  for (std::size_t sweep = 0; sweep < max_sweeps && step >= step_tol; ++sweep) {
    bool improved = false;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      for (double sign : {1.0, -1.0}) {
        const double old = x[k];
        x[k] = old + sign * step;
        const double ft = f(x);
        if (ft < fx) {
          fx = ft;
          improved = true;
          x /= x.norm();
          break;
        }
        x[k] = old;
      }
    }
    r.sweep_values.push_back(fx);
    if (!improved) step *= 0.5;
  }
  r.x = std::move(x);
  r.value = fx;
  r.step = step;
  return r;
}

}  // namespace detail

/// Objective of the constrained minimization at `psi`.
inline ObjectiveRecord objective(const PureState& psi, std::size_t constrained_party, double penalty_weight) {
  if (constrained_party >= psi.parties()) throw InputError("constrained party out of range");
  if (psi.parties() < 2) throw InputError("objective needs at least two parties");
  detail::MarginalEvaluator ev(psi.dims().values());
  return detail::evaluate_objective(ev, psi.amplitudes(), constrained_party, penalty_weight);
}

struct TracePoint {
  std::string stage;  // "penalty" or "restoration"
  double penalty_weight = 0.0;
  double objective = 0.0;  // stage objective after the sweep or step
  double residual = 0.0;
};

struct RestartRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool warm_start = false;
  bool feasible = false;
  double entropy_sum = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  double h_constrained = 0.0;
  std::vector<TracePoint> trace;
  PureState state;
};

struct ProbeResult {
  bool feasible = false;
  std::string status;  // "feasible" or "infeasible-at-tolerance"
  std::size_t constrained_party = 0;
  double h_min = 0.0;
  double best_objective = std::numeric_limits<double>::infinity();  // sum H at the best point
  double constraint_residual = std::numeric_limits<double>::infinity();
  double h_constrained = 0.0;
  double eps_total = 0.0;  // at the best state
  std::size_t best_restart = 0;
  PureState best_state;
  std::vector<RestartRecord> restarts;
};

namespace detail {

inline bool is_feasible(const ObjectiveRecord& r, double h_min, double tol) {
  return r.residual <= tol && r.h_constrained >= h_min;
}

// Levenberg-Marquardt on the product residuals, rejecting steps that leave
// the barrier region. Returns the final point.
inline Eigen::VectorXd restore_products(MarginalEvaluator& ev, Eigen::VectorXd x, std::size_t c, double h_min,
                                        double tol, std::size_t iterations, std::vector<TracePoint>& trace) {
  // A soft floor slightly above h_min keeps the iteration away from the
  // H(X_c) = 0 solutions, which otherwise attract it onto the barrier.
  const double floor = 1.05 * h_min + 1e-3;
  auto residuals = [&](const Eigen::VectorXd& y) {
    const CVector v = to_complex(y);
    Eigen::VectorXd r = product_residuals(ev, v, c);
    r.conservativeResize(r.size() + 1);
    r[r.size() - 1] = std::max(0.0, floor - ev.entropy(v, SubsystemMask::single(c)));
    return r;
  };
  auto record = [&](const Eigen::VectorXd& y) { return evaluate_objective(ev, to_complex(y), c, 0.0); };
  Eigen::VectorXd r = residuals(x);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  const double fd = 1e-7;
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto rec = record(x);
    if (rec.residual <= 0.1 * tol) break;
    Eigen::MatrixXd jac(r.size(), x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      Eigen::VectorXd y = x;
      y[k] += fd;
      jac.col(k) = (residuals(y) - r) / fd;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    bool accepted = false;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = a.ldlt().solve(-g);
      Eigen::VectorXd y = x + delta;
      y /= y.norm();
      const Eigen::VectorXd ry = residuals(y);
      const double cy = ry.squaredNorm();
      if (cy < cost && record(y).h_constrained >= h_min) {
        x = std::move(y);
        r = ry;
        cost = cy;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) break;
    const auto after = record(x);
    trace.push_back({"restoration", 0.0, cost, after.residual});
  }
  return x;
}

inline RestartRecord run_restart(const ProbeConfig& cfg, std::size_t c, double h_min, std::size_t index) {
  MarginalEvaluator ev(cfg.dims.values());
  RestartRecord rec;
  rec.index = index;
  rec.seed = restart_seed(cfg.seed, index);

  CVector start;
  if (index < cfg.warm_starts.size()) {
    start = cfg.warm_starts[index].amplitudes();
    rec.warm_start = true;
  } else {
    for (std::size_t attempt = 0; attempt < 100; ++attempt) {
      start = random_pure(cfg.dims, splitmix64(rec.seed + attempt)).amplitudes();
      if (ev.entropy(start, SubsystemMask::single(c)) >= h_min) break;
    }
  }
  Eigen::VectorXd x = to_real(start);

  std::optional<Eigen::VectorXd> best;
  double best_sum = std::numeric_limits<double>::infinity();
  auto checkpoint = [&](const Eigen::VectorXd& y) {
    const auto r = evaluate_objective(ev, to_complex(y), c, 0.0);
    if (is_feasible(r, h_min, cfg.constraint_tolerance) && r.entropy_sum < best_sum) {
      best_sum = r.entropy_sum;
      best = y;
    }
  };
  if (ev.entropy(start, SubsystemMask::single(c)) >= h_min) checkpoint(x);

  double step = cfg.initial_step;
  for (double w : cfg.penalty_weights) {
    auto f = [&](const Eigen::VectorXd& y) {
      const auto r = evaluate_objective(ev, to_complex(y), c, w);
      return r.h_constrained >= h_min ? r.value : std::numeric_limits<double>::infinity();
    };
    if (!std::isfinite(f(x))) break;  // no point inside the barrier
    auto res = compass_search(f, x, step, cfg.step_tolerance, cfg.max_iterations);
    x = res.x;
    for (double v : res.sweep_values) rec.trace.push_back({"penalty", w, v, std::numeric_limits<double>::quiet_NaN()});
    if (!rec.trace.empty()) rec.trace.back().residual = evaluate_objective(ev, to_complex(x), c, w).residual;
    checkpoint(x);
    step = std::max(cfg.initial_step * 0.25, 4.0 * res.step);
    step = std::min(step, cfg.initial_step);
  }
  if (ev.entropy(to_complex(x), SubsystemMask::single(c)) >= h_min) {
    x = restore_products(ev, x, c, h_min, cfg.constraint_tolerance, cfg.restoration_iterations, rec.trace);
    checkpoint(x);
  }

  const Eigen::VectorXd& final_x = best ? *best : x;
  const CVector amps = to_complex(final_x);
  const auto r = evaluate_objective(ev, amps, c, 0.0);
  rec.feasible = best.has_value();
  rec.entropy_sum = r.entropy_sum;
  rec.residual = r.residual;
  rec.h_constrained = r.h_constrained;
  rec.state = PureState(cfg.dims, amps);
  return rec;
}

template <class Job>
void run_parallel(std::size_t count, std::size_t threads, Job&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Graduated-penalty direct search for min sum_i H(X_i) subject to
/// I(X_c : X_j) = 0 and H(X_c) >= h_min, followed by a product-restoration
/// pass. Deterministic per cfg.seed regardless of thread count.
inline ProbeResult minimize(const ProbeConfig& cfg, std::size_t constrained_party, double h_min = 0.1) {
  cfg.validate();
  if (constrained_party >= cfg.dims.parties()) throw InputError("constrained party out of range");
  if (cfg.dims.parties() < 2) throw InputError("probe needs at least two parties");
  if (!(h_min > 0)) throw InputError("h_min must be positive");

  ProbeResult out;
  out.constrained_party = constrained_party;
  out.h_min = h_min;
  out.restarts.resize(cfg.restarts);
  detail::run_parallel(cfg.restarts, cfg.threads, [&](std::size_t i) {
    out.restarts[i] = detail::run_restart(cfg, constrained_party, h_min, i);
  });

  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < out.restarts.size(); ++i) {
    const auto& r = out.restarts[i];
    if (!r.feasible) continue;
    if (!pick || r.entropy_sum < out.restarts[*pick].entropy_sum) pick = i;
  }
  out.feasible = pick.has_value();
  out.status = out.feasible ? "feasible" : "infeasible-at-tolerance";
  if (!pick) {
    // Report the least-violating point, never labelled feasible.
    pick = 0;
    for (std::size_t i = 1; i < out.restarts.size(); ++i)
      if (out.restarts[i].residual < out.restarts[*pick].residual) pick = i;
  }
  const auto& best = out.restarts[*pick];
  out.best_restart = *pick;
  out.best_objective = best.entropy_sum;
  out.constraint_residual = best.residual;
  out.h_constrained = best.h_constrained;
  out.best_state = best.state;
  out.eps_total = epsilons(to_eigenbasis(best.state), constrained_party).eps_total;
  return out;
}

struct ScaleReport {
  EntropyVector target;
  double distance = std::numeric_limits<double>::infinity();
  EntropyVector best_vector;
  PureState best_state;  // parties A, B, C and the purifier
  std::size_t best_restart = 0;
  std::vector<double> restart_distances;
  std::vector<bool> restart_warm;
  TipReport tip;  // advisory bounds evaluated on the target
};

/// Known states in the given dims whose ABC marginal lies on the ray of the
/// line direction: Tr_D |V_4><V_4| at scale 2 for dims (4,4,4,4).
inline std::vector<PureState> line_witnesses(const PartyDims& dims) {
  std::vector<PureState> out;
  if (dims.values() == std::vector<std::size_t>{4, 4, 4, 4}) out.push_back(v_state(4).state);
  return out;
}

/// Minimizes |v(Tr_D psi) - target| over pure states on `dims` (last party
/// is the purifier; three-party dims get a purifier of their total
/// dimension). Evidence only.
inline ScaleReport scale_feasibility(const EntropyVector& target, const PartyDims& dims_in, ProbeConfig cfg) {
  if (target.parties() != 3) throw InputError("scale target must be a three-party vector");
  PartyDims dims = dims_in;
  if (dims.parties() == 3) {
    auto v = dims.values();
    v.push_back(dims.total());
    dims = PartyDims(v, std::max(dims.cap(), dims.total() * dims.total()));
  }
  if (dims.parties() != 4) throw InputError("scale probe dims must have three or four parties");
  cfg.dims = dims;
  if (cfg.warm_starts.empty()) cfg.warm_starts = line_witnesses(dims);
  cfg.validate();

  ScaleReport rep;
  rep.target = target;
  rep.tip = tip_bounds(target);
  const auto subsets = canonical_subsets(3);
  auto vector_of = [&](detail::MarginalEvaluator& ev, const CVector& amps) {
    std::vector<double> vals;
    for (auto m : subsets) vals.push_back(ev.entropy(amps, m));
    return EntropyVector(3, vals);
  };

  struct Outcome {
    double distance = std::numeric_limits<double>::infinity();
    CVector amps;
    bool warm = false;
  };
  std::vector<Outcome> outcomes(cfg.restarts);
  detail::run_parallel(cfg.restarts, cfg.threads, [&](std::size_t i) {
    detail::MarginalEvaluator ev(dims.values());
    CVector start;
    if (i < cfg.warm_starts.size()) {
      start = cfg.warm_starts[i].amplitudes();
      outcomes[i].warm = true;
    } else {
      start = random_pure(dims, detail::restart_seed(cfg.seed, i)).amplitudes();
    }
    auto f = [&](const Eigen::VectorXd& y) {
      const auto v = vector_of(ev, detail::to_complex(y));
      return v.distance(target);
    };
    auto res = detail::compass_search(f, detail::to_real(start), cfg.initial_step, cfg.step_tolerance,
                                      cfg.max_iterations * cfg.penalty_weights.size());
    outcomes[i].distance = res.value;
    outcomes[i].amps = detail::to_complex(res.x);
  });

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rep.restart_distances.push_back(outcomes[i].distance);
    rep.restart_warm.push_back(outcomes[i].warm);
    if (outcomes[i].distance < rep.distance) {
      rep.distance = outcomes[i].distance;
      rep.best_restart = i;
    }
  }
  rep.best_state = PureState(dims, outcomes[rep.best_restart].amps);
  rep.best_vector = marginal_entropy_vector(rep.best_state, SubsystemMask::of({0, 1, 2}));
  return rep;
}

struct FiniteDifferenceReport {
  std::vector<double> exact;       // analytic directional derivatives
  std::vector<double> error_h;     // |D(h) - exact|
  std::vector<double> error_h2;    // |D(h/2) - exact|
  std::vector<double> ratios;      // error_h / error_h2
  double fraction_within = 0.0;    // share of ratios in [3.5, 4.5]
  double max_deviation = 0.0;      // max error_h
  bool passed() const { return fraction_within >= 0.9; }
};

namespace detail {

// d/dt S(Tr_rest |psi + t d><psi + t d|) at t = 0 on the computed side.
inline double entropy_derivative(MarginalEvaluator& ev, const CVector& psi, const CVector& dir, SubsystemMask mask) {
  const SubsystemMask side = ev.smaller_side(mask);
  const CMatrix rho = ev.reduced(psi, side);
  const CMatrix mixed = ev.reduced(psi + dir, side) - ev.reduced(psi - dir, side);  // = 2 (|d><psi| + |psi><d|) traced
  const CMatrix drho = mixed / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  double out = 0.0;
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    const double lam = es.eigenvalues()[k];
    const double proj = (es.eigenvectors().col(k).adjoint() * drho * es.eigenvectors().col(k))(0, 0).real();
    out -= proj * (std::log2(lam) + 1.0 / std::log(2.0));
  }
  return out;
}

}  // namespace detail

/// Compares central differences of the penalized objective at steps h and
/// h/2 with the analytic directional derivative. Rejects states with a zero
/// eigenvalue in any marginal entering the objective.
inline FiniteDifferenceReport finite_difference_consistency(const PureState& psi, std::size_t constrained_party,
                                                            double h, std::size_t directions = 32,
                                                            std::uint64_t seed = 7, double weight = 10.0) {
  const auto n = psi.parties();
  if (constrained_party >= n) throw InputError("constrained party out of range");
  if (!(h > 0)) throw InputError("step must be positive");
  detail::MarginalEvaluator ev(psi.dims().values());
  const CVector& amps = psi.amplitudes();
  const std::size_t c = constrained_party;

  std::vector<SubsystemMask> masks;
  for (std::size_t i = 0; i < n; ++i) masks.push_back(SubsystemMask::single(i));
  for (std::size_t j = 0; j < n; ++j)
    if (j != c) masks.push_back(SubsystemMask::single(c) | SubsystemMask::single(j));
  for (auto m : masks) {
    const auto s = detail::hermitian_spectrum(ev.reduced(amps, ev.smaller_side(m)));
    if (s.values.back() < 1e-8)
      throw InputError("marginal " + subset_label(m) + " has a zero eigenvalue; objective is not smooth here");
  }

  auto f = [&](const CVector& v) { return detail::evaluate_objective(ev, v / v.norm(), c, weight).value; };
  const auto base = detail::evaluate_objective(ev, amps, c, weight);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  FiniteDifferenceReport rep;
  std::size_t within = 0;
  for (std::size_t k = 0; k < directions; ++k) {
    CVector d(amps.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = Complex(normal(rng), normal(rng));
    d -= amps * amps.dot(d).real();  // tangent to the unit sphere
    d /= d.norm();

    std::vector<double> dh(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dh[i] = detail::entropy_derivative(ev, amps, d, SubsystemMask::single(i));
    double exact = 0.0;
    for (double v : dh) exact += v;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == c) continue;
      const double dpair =
          detail::entropy_derivative(ev, amps, d, SubsystemMask::single(c) | SubsystemMask::single(j));
      exact += weight * 2.0 * base.mutual_information[j] * (dh[c] + dh[j] - dpair);
    }
    auto central = [&](double t) { return (f(amps + t * d) - f(amps - t * d)) / (2.0 * t); };
    const double e1 = std::abs(central(h) - exact);
    const double e2 = std::abs(central(h / 2) - exact);
    const double ratio = e2 > 0 ? e1 / e2 : std::numeric_limits<double>::infinity();
    rep.exact.push_back(exact);
    rep.error_h.push_back(e1);
    rep.error_h2.push_back(e2);
    rep.ratios.push_back(ratio);
    rep.max_deviation = std::max(rep.max_deviation, e1);
    if (ratio >= 3.5 && ratio <= 4.5) ++within;
  }
  rep.fraction_within = static_cast<double>(within) / static_cast<double>(directions);
  return rep;
}

}  // namespace qec

#endif  // QEC_TIP_PROBE_HPP
