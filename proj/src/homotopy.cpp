#include "fockcc/homotopy.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "fockcc/rng.hpp"

namespace fockcc {

namespace {

using C = std::complex<double>;
using Vec = std::vector<C>;

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (C z : v) m = std::max(m, std::abs(z));
  return m;
}

/// A square homotopy H(x, s) with H(x, 0) the target system; every family
/// used here is affine-linear in s, so dds is exact.
class HomotopyBase {
 public:
  virtual ~HomotopyBase() = default;
  virtual int dim() const = 0;
  virtual void eval(const Vec& x, double s, Vec& out, Vec* jac) const = 0;
  virtual void dds(const Vec& x, double s, Vec& out) const = 0;
};

/// (1-s) F(x) + s gamma (x_i^{d_i} - c_i).
class TotalDegreeHomotopy : public HomotopyBase {
 public:
  TotalDegreeHomotopy(const CompiledSystem& sys, Vec params, C gamma, Vec roots)
      : sys_(sys), params_(std::move(params)), gamma_(gamma),
        start_consts_(std::move(roots)) {}

  int dim() const override { return sys_.unknown_count(); }

  void eval(const Vec& x, double s, Vec& out, Vec* jac) const override {
    const int n = dim();
    Vec f, jf;
    if (jac) {
      sys_.eval_with_jacobian(x, params_, f, jf);
      jac->assign(std::size_t(n) * n, C(0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          (*jac)[std::size_t(i) * n + j] = (1.0 - s) * jf[std::size_t(i) * n + j];
      for (int i = 0; i < n; ++i) {
        int di = sys_.degrees()[i];
        (*jac)[std::size_t(i) * n + i] +=
            s * gamma_ * double(di) * ipow(x[i], di - 1);
      }
    } else {
      sys_.eval(x, params_, f);
    }
    out.resize(n);
    for (int i = 0; i < n; ++i)
      out[i] = (1.0 - s) * f[i] +
               s * gamma_ * (ipow(x[i], sys_.degrees()[i]) - start_consts_[i]);
  }

  void dds(const Vec& x, double s, Vec& out) const override {
    (void)s;
    const int n = dim();
    Vec f;
    sys_.eval(x, params_, f);
    out.resize(n);
    for (int i = 0; i < n; ++i)
      out[i] = gamma_ * (ipow(x[i], sys_.degrees()[i]) - start_consts_[i]) - f[i];
  }

 private:
  static C ipow(C b, int e) {
    C r = 1.0;
    while (e-- > 0) r *= b;
    return r;
  }
  const CompiledSystem& sys_;
  Vec params_;
  C gamma_;
  Vec start_consts_;
};

/// F(x, s p_start + (1-s) p_end): a segment through parameter space.
class ParameterHomotopy : public HomotopyBase {
 public:
  ParameterHomotopy(const CompiledSystem& sys, Vec p_start, Vec p_end)
      : sys_(sys), p_start_(std::move(p_start)), p_end_(std::move(p_end)) {}

  int dim() const override { return sys_.unknown_count(); }

  void eval(const Vec& x, double s, Vec& out, Vec* jac) const override {
    Vec p = at(s);
    if (jac)
      sys_.eval_with_jacobian(x, p, out, *jac);
    else
      sys_.eval(x, p, out);
  }

  void dds(const Vec& x, double s, Vec& out) const override {
    // The CC and slicing families are linear in their parameters, so the
    // centered difference with half-unit offset is exact.
    Vec lo, hi;
    sys_.eval(x, at(s - 0.5), lo);
    sys_.eval(x, at(s + 0.5), hi);
    out.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) out[i] = hi[i] - lo[i];
  }

 private:
  Vec at(double s) const {
    Vec p(p_start_.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = s * p_start_[i] + (1.0 - s) * p_end_[i];
    return p;
  }
  const CompiledSystem& sys_;
  Vec p_start_, p_end_;
};

enum class PathStatus { Success, Diverged, Failed };

/// Solve J delta = -f in place; returns false on a numerically singular J.
bool newton_step(const Vec& jac, const Vec& f, int n, Vec& delta) {
  Eigen::MatrixXcd J(n, n);
  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs(i) = -f[i];
    for (int j = 0; j < n; ++j) J(i, j) = jac[std::size_t(i) * n + j];
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
  Eigen::VectorXcd d = lu.solve(rhs);
  if (!d.allFinite()) return false;
  delta.resize(n);
  for (int i = 0; i < n; ++i) delta[i] = d(i);
  return true;
}

PathStatus track_path(const HomotopyBase& h, Vec& x, const TrackerConfig& cfg) {
  const int n = h.dim();
  double s = 1.0, step = cfg.initial_step;
  int successes = 0;
  Vec f, jac, delta, dds;
  while (s > 0.0) {
    double hs = std::min(step, s);
    // Euler predictor along the Davidenko equation x' = -J^{-1} dH/ds.
    h.eval(x, s, f, &jac);
    h.dds(x, s, dds);
    Vec xp = x;
    if (newton_step(jac, dds, n, delta)) {
      // delta = -J^{-1} dds = dx/ds; stepping s down by hs moves x by -hs*delta.
      for (int i = 0; i < n; ++i) xp[i] = x[i] - hs * delta[i];
    }
    double snew = s - hs;
    // Newton corrector at snew.
    bool ok = false;
    for (int it = 0; it < cfg.max_corrector_iters; ++it) {
      h.eval(xp, snew, f, &jac);
      if (!newton_step(jac, f, n, delta)) break;
      for (int i = 0; i < n; ++i) xp[i] += delta[i];
      if (inf_norm(delta) <= 1e-7 * std::max(1.0, inf_norm(xp))) {
        ok = true;
        break;
      }
    }
    if (ok && inf_norm(xp) <= cfg.divergence_cutoff) {
      x = xp;
      s = snew;
      if (++successes >= cfg.grow_after) {
        step = std::min(step * 1.5, cfg.initial_step);
        successes = 0;
      }
      if (inf_norm(x) > cfg.divergence_cutoff) return PathStatus::Diverged;
    } else {
      successes = 0;
      step *= 0.5;
      if (inf_norm(xp) > cfg.divergence_cutoff) return PathStatus::Diverged;
      if (step < cfg.min_step) return PathStatus::Failed;
    }
  }
  return PathStatus::Success;
}

bool same_point(const Vec& a, const Vec& b, double tol) {
  double scale = std::max({1.0, inf_norm(a), inf_norm(b)});
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * scale) return false;
  return true;
}

bool point_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

double condition_estimate(const CompiledSystem& sys, const Vec& params,
                          const Vec& x) {
  const int n = sys.unknown_count();
  Vec f, jac;
  sys.eval_with_jacobian(x, params, f, jac);
  Eigen::MatrixXcd J(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J(i, j) = jac[std::size_t(i) * n + j];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  double smin = svd.singularValues()(n - 1);
  double smax = svd.singularValues()(0);
  return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

/// Refine, filter by residual, deduplicate, classify and sort endpoints.
SolutionSet collect(const CompiledSystem& sys, const Vec& params,
                    std::vector<Vec> endpoints, long long diverged,
                    long long failed, const TrackerConfig& cfg) {
  SolutionSet set;
  set.diverged = diverged;
  set.failed = failed;
  std::vector<Vec> kept;
  for (Vec& x : endpoints) {
    NewtonStatus st = newton_refine(sys, params, x, cfg);
    if (st == NewtonStatus::Singular || st == NewtonStatus::NoConverge) {
      ++set.failed;
      continue;
    }
    if (inf_norm(x) > cfg.divergence_cutoff) {
      ++set.diverged;
      continue;
    }
    Vec f;
    sys.eval(x, params, f);
    if (inf_norm(f) > cfg.residual_keep) {
      ++set.failed;
      continue;
    }
    kept.push_back(std::move(x));
  }
  std::sort(kept.begin(), kept.end(), point_less);
  for (Vec& x : kept) {
    bool dup = false;
    for (const Solution& s : set.points)
      if (same_point(s.x, x, cfg.dedup_tol)) {
        dup = true;
        break;
      }
    if (dup) continue;
    Solution sol;
    Vec f;
    sys.eval(x, params, f);
    sol.residual = inf_norm(f);
    sol.condition = condition_estimate(sys, params, x);
    double im = 0.0;
    for (C z : x) im = std::max(im, std::abs(z.imag()));
    sol.is_real = im <= cfg.real_tol;
    sol.x = std::move(x);
    set.points.push_back(std::move(sol));
  }
  set.finite = (long long)set.points.size();
  for (const Solution& s : set.points) set.real_count += s.is_real;
  return set;
}

/// Track many start points in parallel with a deterministic merge.
void track_all(const HomotopyBase& h, std::vector<Vec>& starts,
               const TrackerConfig& cfg, std::vector<PathStatus>& status) {
  status.assign(starts.size(), PathStatus::Failed);
  int nthreads = cfg.threads > 0 ? cfg.threads
                                 : int(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, int(starts.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= starts.size()) return;
      status[i] = track_path(h, starts[i], cfg);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
}

}  // namespace

NewtonStatus newton_refine(const CompiledSystem& sys, const Vec& params,
                           Vec& x, const TrackerConfig& cfg, int max_iters) {
  const int n = sys.unknown_count();
  Vec f, jac, delta;
  for (int it = 0; it < max_iters; ++it) {
    sys.eval_with_jacobian(x, params, f, jac);
    if (inf_norm(f) <= cfg.newton_tol) return NewtonStatus::Converged;
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) {
      rhs(i) = -f[i];
      for (int j = 0; j < n; ++j) J(i, j) = jac[std::size_t(i) * n + j];
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
    if (lu.rank() < n) return NewtonStatus::Singular;
    Eigen::VectorXcd d = lu.solve(rhs);
    if (!d.allFinite()) return NewtonStatus::Singular;
    double step = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += d(i);
      step = std::max(step, std::abs(d(i)));
    }
    if (step <= cfg.newton_tol * std::max(1.0, inf_norm(x))) {
      sys.eval(x, params, f);
      return inf_norm(f) <= 1e-9 ? NewtonStatus::Converged
                                 : NewtonStatus::NoConverge;
    }
  }
  sys.eval(x, params, f);
  return inf_norm(f) <= cfg.newton_tol ? NewtonStatus::Converged
                                       : NewtonStatus::NoConverge;
}

SolutionSet total_degree_solve(const CompiledSystem& sys, const Vec& params,
                               const TrackerConfig& cfg, std::uint64_t seed) {
  const int n = sys.unknown_count();
  if (sys.equation_count() != n)
    throw std::invalid_argument("total_degree_solve: system not square");
  long long bezout = 1;
  for (int d : sys.degrees()) {
    if (d <= 0)
      throw std::invalid_argument("total_degree_solve: constant equation");
    bezout *= d;
    if (bezout > 1000000)
      throw std::length_error(
          "total_degree_solve: Bezout number over 10^6; use monodromy");
  }
  C gamma = std::polar(1.0, std::numbers::pi * unit_real(seed, 123));
  Vec consts(n);
  for (int i = 0; i < n; ++i) {
    consts[i] = unit_complex(seed, 3000 + i);
    if (std::abs(consts[i]) < 0.1) consts[i] += C(0.5, 0.5);
  }
  TotalDegreeHomotopy h(sys, params, gamma, consts);

  // Start points: all combinations of the d_i-th roots of c_i.
  std::vector<Vec> starts;
  starts.reserve(std::size_t(bezout));
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      int di = sys.degrees()[i];
      double arg = std::arg(consts[i]), mod = std::abs(consts[i]);
      x[i] = std::polar(std::pow(mod, 1.0 / di),
                        (arg + 2.0 * std::numbers::pi * idx[i]) / di);
    }
    starts.push_back(std::move(x));
    int k = n - 1;
    while (k >= 0 && ++idx[k] == sys.degrees()[k]) idx[k--] = 0;
    if (k < 0) break;
  }

  std::vector<PathStatus> status;
  track_all(h, starts, cfg, status);
  std::vector<Vec> endpoints;
  long long diverged = 0, failed = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (status[i] == PathStatus::Success)
      endpoints.push_back(std::move(starts[i]));
    else if (status[i] == PathStatus::Diverged)
      ++diverged;
    else
      ++failed;
  }
  return collect(sys, params, std::move(endpoints), diverged, failed, cfg);
}

SolutionSet monodromy_solve(const CompiledSystem& sys, const Vec& target_params,
                            const Vec& seed_params, const Vec& seed_point,
                            const TrackerConfig& cfg, std::uint64_t seed) {
  {
    Vec f;
    sys.eval(seed_point, seed_params, f);
    if (inf_norm(f) > 1e-8)
      throw std::invalid_argument("monodromy_solve: seed residual too large");
  }
  std::vector<Vec> sols{seed_point};
  auto known = [&](const Vec& x) {
    for (const Vec& s : sols)
      if (same_point(s, x, cfg.dedup_tol)) return true;
    return false;
  };

  int stall = 0;
  for (int loop = 0; loop < cfg.max_loops && stall < cfg.stall_limit; ++loop) {
    // A triangular loop q0 -> q1 -> q2 -> q0 with random complex corners.
    std::array<Vec, 3> corners;
    for (int c = 0; c < 2; ++c) {
      Vec q = seed_params;
      for (std::size_t j = 0; j < q.size(); ++j)
        q[j] += unit_complex(seed, std::uint64_t(loop) * 2 + c, j);
      corners[c] = std::move(q);
    }
    corners[2] = seed_params;

    std::vector<Vec> pts = sols;
    std::vector<PathStatus> status;
    Vec from = seed_params;
    for (const Vec& to : corners) {
      ParameterHomotopy h(sys, from, to);
      track_all(h, pts, cfg, status);
      std::vector<Vec> alive;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (status[i] == PathStatus::Success) alive.push_back(std::move(pts[i]));
      pts = std::move(alive);
      from = to;
    }
    bool grew = false;
    for (Vec& x : pts) {
      if (newton_refine(sys, seed_params, x, cfg) != NewtonStatus::Converged)
        continue;
      if (inf_norm(x) > cfg.divergence_cutoff) continue;
      if (!known(x)) {
        sols.push_back(std::move(x));
        grew = true;
      }
    }
    stall = grew ? 0 : stall + 1;
  }

  // Carry the populated set to the target parameters.
  ParameterHomotopy to_target(sys, seed_params, target_params);
  std::vector<Vec> pts = sols;
  std::vector<PathStatus> status;
  track_all(to_target, pts, cfg, status);
  std::vector<Vec> endpoints;
  long long diverged = 0, failed = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (status[i] == PathStatus::Success) {
      endpoints.push_back(std::move(pts[i]));
      continue;
    }
    // Retry through random complex waypoints; the direct segment can pass
    // too close to the discriminant.
    bool rescued = false;
    for (int attempt = 0; attempt < 3 && !rescued; ++attempt) {
      Vec way = seed_params;
      for (std::size_t j = 0; j < way.size(); ++j)
        way[j] += unit_complex(seed ^ 0xabcdu, std::uint64_t(attempt) + 7000, j);
      Vec x = sols[i];
      ParameterHomotopy leg1(sys, seed_params, way);
      if (track_path(leg1, x, cfg) != PathStatus::Success) continue;
      ParameterHomotopy leg2(sys, way, target_params);
      if (track_path(leg2, x, cfg) != PathStatus::Success) continue;
      endpoints.push_back(std::move(x));
      rescued = true;
    }
    if (!rescued) {
      if (status[i] == PathStatus::Diverged)
        ++diverged;
      else
        ++failed;
    }
  }
  return collect(sys, target_params, std::move(endpoints), diverged, failed,
                 cfg);
}

long long variety_degree(const LevelSet& sigma, int d, int n,
                         std::uint64_t seed, const TrackerConfig& cfg) {
  auto sys = assemble_degree_system(sigma, d, n, seed);
  auto set = total_degree_solve(sys.compiled, sys.param_values, cfg, seed ^ 1);
  return set.finite;
}

CCDegreeReport cc_degree(int d, int n, const LevelSet& sigma,
                         const TrackerConfig& cfg,
                         const std::vector<std::uint64_t>& seeds) {
  auto start = std::chrono::steady_clock::now();
  CCDegreeReport rep;
  rep.dim = dimension(sigma, d, n);
  if (is_linear(sigma, d, n)) {
    rep.method = "eigenproblem";
    for (std::uint64_t s : seeds) {
      auto h = random_hamiltonian(n, s);
      auto sub = projected_submatrix(h, sigma, d, n);
      Eigen::MatrixXd subr = sub.real();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(subr);
      if (es.info() != Eigen::Success)
        throw std::runtime_error("cc_degree: eigensolver failure");
      rep.per_seed_counts.push_back(es.eigenvalues().size());
      rep.per_seed_real.push_back(es.eigenvalues().size());
    }
  } else {
    // Probe the Bezout number of the assembled system once.
    auto probe = assemble_cc_system(random_hamiltonian(n, seeds.at(0)), d, n,
                                    sigma);
    long long bezout = 1;
    bool small = true;
    for (int deg : probe.compiled.degrees()) {
      bezout *= deg;
      if (bezout > cfg.bezout_limit) {
        small = false;
        break;
      }
    }
    rep.method = small ? "total-degree" : "monodromy";
    for (std::uint64_t s : seeds) {
      auto h = random_hamiltonian(n, s);
      auto sys = assemble_cc_system(h, d, n, sigma);
      SolutionSet set;
      if (small) {
        set = total_degree_solve(sys.compiled, sys.param_values, cfg, s);
      } else {
        auto seed_triple = monodromy_seed(d, n, sigma, s);
        auto seed_sys = assemble_cc_system(seed_triple.h, d, n, sigma);
        Vec seed_point;
        seed_point.push_back(seed_triple.lambda);
        for (C v : seed_triple.t) seed_point.push_back(v);
        set = monodromy_solve(sys.compiled, sys.param_values,
                              seed_sys.param_values, seed_point, cfg, s);
      }
      rep.per_seed_counts.push_back(set.finite);
      rep.per_seed_real.push_back(set.real_count);
    }
  }
  rep.consensus = !rep.per_seed_counts.empty();
  for (long long c : rep.per_seed_counts)
    rep.consensus = rep.consensus && c == rep.per_seed_counts.front();
  rep.ccdeg = rep.consensus ? rep.per_seed_counts.front() : -1;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  return rep;
}

nlohmann::json SolutionSet::to_json() const {
  nlohmann::json j;
  j["finite"] = finite;
  j["real"] = real_count;
  j["diverged"] = diverged;
  j["failed"] = failed;
  j["points"] = nlohmann::json::array();
  for (const Solution& s : points) {
    nlohmann::json p;
    p["residual"] = s.residual;
    p["condition"] = s.condition;
    p["real"] = s.is_real;
    p["x"] = nlohmann::json::array();
    for (C z : s.x) p["x"].push_back({{"re", z.real()}, {"im", z.imag()}});
    j["points"].push_back(std::move(p));
  }
  return j;
}

std::string SolutionSet::to_csv() const {
  std::string out = "residual,condition,real";
  if (!points.empty())
    for (std::size_t i = 0; i < points[0].x.size(); ++i)
      out += ",re" + std::to_string(i) + ",im" + std::to_string(i);
  out += "\n";
  char buf[64];
  for (const Solution& s : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.6g,%d", s.residual, s.condition,
                  int(s.is_real));
    out += buf;
    for (C z : s.x) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", z.real(), z.imag());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

nlohmann::json CCDegreeReport::to_json() const {
  nlohmann::json j;
  j["ccdeg"] = ccdeg;
  j["consensus"] = consensus;
  j["method"] = method;
  j["per_seed_counts"] = per_seed_counts;
  j["per_seed_real"] = per_seed_real;
  j["dim"] = dim;
  j["seconds"] = seconds;
  return j;
}

}  // namespace fockcc
