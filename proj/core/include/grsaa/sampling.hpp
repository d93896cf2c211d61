#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace grsaa {

/// Random stream identifiers. Every consumer of randomness seeds its own
/// std::mt19937_64 from (seed, stream) so that changing one consumer never
/// shifts the draws of another.
enum class Stream : std::uint32_t {
  samples = 0,
  schedule = 1,
  starts = 2,
};

/// std::mt19937_64 seeded through std::seed_seq{seed_lo, seed_hi, stream}.
/// Both engine and seed_seq are fully specified by the standard, so the
/// sequence is identical on every conforming platform.
std::mt19937_64 make_engine(std::uint64_t seed, Stream stream);

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution, whose algorithm is
/// implementation-defined.
double unit_uniform(std::mt19937_64& engine);

/// Uniform distribution over the box [lo, hi] (componentwise). The sample
/// dimension m is lo.size().
struct BoxUniform {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static BoxUniform symmetric(double half_width, int dim = 1);

  int dim() const { return static_cast<int>(lo.size()); }
  void validate() const;
  bool operator==(const BoxUniform& other) const;
};

/// N i.i.d. draws of the stochastic parameter, stored column-wise (m x N).
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(BoxUniform distribution, std::uint64_t seed, Eigen::MatrixXd points);

  /// Draws N points. Sample i consumes m consecutive engine outputs, component
  /// order 0..m-1, samples in index order.
  static SampleSet draw(const BoxUniform& distribution, std::size_t n_samples, std::uint64_t seed);

  std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  int dim() const { return static_cast<int>(points_.rows()); }
  std::uint64_t seed() const { return seed_; }
  const BoxUniform& distribution() const { return distribution_; }

  Eigen::Ref<const Eigen::VectorXd> sample(std::size_t i) const { return points_.col(static_cast<Eigen::Index>(i)); }
  const Eigen::MatrixXd& points() const { return points_; }

  /// One row per sample, components comma separated, 17 significant digits.
  void write_csv(std::ostream& out) const;
  static SampleSet read_csv(std::istream& in, const BoxUniform& distribution, std::uint64_t seed);

  bool operator==(const SampleSet& other) const;

 private:
  BoxUniform distribution_;
  std::uint64_t seed_ = 0;
  Eigen::MatrixXd points_;
};

/// Cumulative group sizes 0 < q_1 < ... < q_L = N.
class Partition {
 public:
  Partition() = default;
  /// Validates strict increase and positivity.
  explicit Partition(std::vector<std::size_t> counts);

  /// q_l = round(l * N / L) (round half up). Strictly increasing whenever L <= N.
  static Partition uniform(std::size_t n_samples, std::size_t groups);
  /// q_l = tau1 * l, so N = tau1 * L.
  static Partition linear(std::size_t tau1, std::size_t groups);

  std::size_t groups() const { return q_.size(); }
  std::size_t total() const { return q_.empty() ? 0 : q_.back(); }
  /// q_l for l in 0..L, with q_0 = 0.
  std::size_t count(std::size_t l) const { return l == 0 ? 0 : q_.at(l - 1); }
  const std::vector<std::size_t>& counts() const { return q_; }

 private:
  std::vector<std::size_t> q_;
};

}  // namespace grsaa
