#pragma once

#include <cstdint>
#include <functional>

#include "prmgate/geometry/collision.hpp"
#include "prmgate/geometry/config_space.hpp"
#include "prmgate/mlp/mlp.hpp"

namespace prmgate {

// Pluggable validity predicate with call accounting. The same sampler code
// runs against the exact oracle and the learned gate.
class ValidityOracle {
 public:
  virtual ~ValidityOracle() = default;

  bool valid(const Configuration& q) {
    ++calls_;
    return check(q);
  }
  std::uint64_t calls() const { return calls_; }
  void reset_calls() { calls_ = 0; }

 protected:
  virtual bool check(const Configuration& q) = 0;

 private:
  std::uint64_t calls_ = 0;
};

class ExactOracle final : public ValidityOracle {
 public:
  ExactOracle(const RobotModel& robot, const Workspace& workspace)
      : robot_(&robot), workspace_(&workspace) {}

 protected:
  bool check(const Configuration& q) override { return !collide(*robot_, q, *workspace_); }

 private:
  const RobotModel* robot_;
  const Workspace* workspace_;
};

class MlpOracle final : public ValidityOracle {
 public:
  MlpOracle(const MlpModel& model, LatentCode z, const ConfigSpace& cspace)
      : model_(&model), z_(std::move(z)), cspace_(cspace) {}

 protected:
  bool check(const Configuration& q) override {
    return predict(*model_, z_, cspace_.normalize(q)).valid;
  }

 private:
  const MlpModel* model_;
  LatentCode z_;
  ConfigSpace cspace_;
};

enum class SamplerKind { Uniform, ObstacleBased, Gaussian, Bridge };

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::Uniform: return "BS";
    case SamplerKind::ObstacleBased: return "OB";
    case SamplerKind::Gaussian: return "G";
    case SamplerKind::Bridge: return "BT";
  }
  return "?";
}

inline SamplerKind sampler_kind_from_string(const std::string& s) {
  if (s == "BS") return SamplerKind::Uniform;
  if (s == "OB") return SamplerKind::ObstacleBased;
  if (s == "G") return SamplerKind::Gaussian;
  if (s == "BT") return SamplerKind::Bridge;
  throw std::invalid_argument("unknown sampler: " + s);
}

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Uniform;
  double sigma = 0.06;              // Gaussian scale per normalized DoF
  int max_attempts_per_sample = 50;
};

struct SampleBatch {
  std::vector<Configuration> samples;
  int attempts = 0;
  std::uint64_t oracle_calls = 0;
};

namespace detail {

// Each attempt consumes a fixed amount of randomness regardless of oracle
// answers, so exact-oracle and learned-gate runs replay the same raw draws.
inline Eigen::VectorXd random_direction(const ConfigSpace& cspace, Rng& rng) {
  Eigen::VectorXd dir(cspace.dof());
  for (int i = 0; i < dir.size(); ++i) dir[i] = normal(rng, 0.0, 1.0);
  const double n = dir.norm();
  return n > 0 ? Eigen::VectorXd(dir / n) : Eigen::VectorXd::Unit(cspace.dof(), 0);
}

inline Configuration perturb(const ConfigSpace& cspace, const Configuration& q,
                             double sigma, Rng& rng) {
  Eigen::VectorXd u = cspace.normalize(q);
  for (int i = 0; i < u.size(); ++i) u[i] += normal(rng, 0.0, sigma);
  return cspace.denormalize(u);
}

// March outward from an invalid seed along `dir` in normalized space until a
// valid configuration appears, then shrink the invalid/valid bracket.
inline std::optional<Configuration> surface_walk(const ConfigSpace& cspace,
                                                 const Eigen::VectorXd& seed_norm,
                                                 const Eigen::VectorXd& dir,
                                                 ValidityOracle& oracle) {
  constexpr double kStep = 0.05;
  constexpr int kMaxSteps = 64;
  constexpr double kBracketWidth = 1e-3;

  double lo = 0.0;  // invalid
  double hi = -1.0;
  for (int step = 1; step <= kMaxSteps; ++step) {
    const double t = step * kStep;
    if (oracle.valid(cspace.denormalize(seed_norm + t * dir))) {
      hi = t;
      lo = t - kStep;
      break;
    }
  }
  if (hi < 0) return std::nullopt;

  while (hi - lo > kBracketWidth) {
    const double mid = 0.5 * (lo + hi);
    if (oracle.valid(cspace.denormalize(seed_norm + mid * dir)))
      hi = mid;
    else
      lo = mid;
  }
  return cspace.denormalize(seed_norm + hi * dir);
}

}  // namespace detail

// Runs one of the four auxiliary samplers until `n` samples are kept or the
// attempt budget runs out. Every kept sample satisfied the oracle when drawn.
inline SampleBatch run_sampler(const SamplerSpec& spec, const ConfigSpace& cspace,
                               int n, int attempt_budget, Rng& rng,
                               ValidityOracle& oracle) {
  SampleBatch batch;
  const std::uint64_t calls_before = oracle.calls();

  for (int attempt = 0; attempt < attempt_budget &&
                        static_cast<int>(batch.samples.size()) < n;
       ++attempt) {
    ++batch.attempts;
    switch (spec.kind) {
      case SamplerKind::Uniform: {
        Configuration q = cspace.sample_uniform(rng);
        if (oracle.valid(q)) batch.samples.push_back(std::move(q));
        break;
      }
      case SamplerKind::ObstacleBased: {
        const Configuration seed = cspace.sample_uniform(rng);
        const Eigen::VectorXd dir = detail::random_direction(cspace, rng);
        if (oracle.valid(seed)) break;  // needs an invalid seed
        if (auto q = detail::surface_walk(cspace, cspace.normalize(seed), dir, oracle))
          batch.samples.push_back(std::move(*q));
        break;
      }
      case SamplerKind::Gaussian: {
        Configuration q1 = cspace.sample_uniform(rng);
        Configuration q2 = detail::perturb(cspace, q1, spec.sigma, rng);
        const bool v1 = oracle.valid(q1);
        const bool v2 = oracle.valid(q2);
        if (v1 != v2) batch.samples.push_back(v1 ? std::move(q1) : std::move(q2));
        break;
      }
      case SamplerKind::Bridge: {
        const Configuration q1 = cspace.sample_uniform(rng);
        const Configuration q2 = detail::perturb(cspace, q1, 2.0 * spec.sigma, rng);
        if (oracle.valid(q1)) break;
        if (oracle.valid(q2)) break;
        Configuration mid = cspace.interpolate(q1, q2, 0.5);
        if (oracle.valid(mid)) batch.samples.push_back(std::move(mid));
        break;
      }
    }
  }
  batch.oracle_calls = oracle.calls() - calls_before;
  return batch;
}

inline SampleBatch sample_n(const SamplerSpec& spec, const ConfigSpace& cspace, int n,
                            Rng& rng, ValidityOracle& oracle) {
  return run_sampler(spec, cspace, n, n * spec.max_attempts_per_sample, rng, oracle);
}

}  // namespace prmgate
