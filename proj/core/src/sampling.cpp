#include "grsaa/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "grsaa/errors.hpp"

namespace grsaa {

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

BoxUniform BoxUniform::symmetric(double half_width, int dim) {
  return BoxUniform{Eigen::VectorXd::Constant(dim, -half_width), Eigen::VectorXd::Constant(dim, half_width)};
}

void BoxUniform::validate() const {
  if (lo.size() == 0 || lo.size() != hi.size()) {
    throw ConfigError("invalid box: bounds must be non-empty and of equal dimension");
  }
  for (Eigen::Index k = 0; k < lo.size(); ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]) || !(lo[k] < hi[k])) {
      throw ConfigError("invalid box: require lo < hi in every component");
    }
  }
}

bool BoxUniform::operator==(const BoxUniform& other) const {
  return lo.size() == other.lo.size() && hi.size() == other.hi.size() && lo == other.lo && hi == other.hi;
}

SampleSet::SampleSet(BoxUniform distribution, std::uint64_t seed, Eigen::MatrixXd points)
    : distribution_(std::move(distribution)), seed_(seed), points_(std::move(points)) {
  if (points_.cols() == 0) {
    throw ConfigError("sample set must contain at least one sample");
  }
  if (points_.rows() != distribution_.dim()) {
    throw ConfigError("sample dimension does not match the distribution");
  }
}

SampleSet SampleSet::draw(const BoxUniform& distribution, std::size_t n_samples, std::uint64_t seed) {
  distribution.validate();
  if (n_samples == 0) {
    throw ConfigError("sample size N must be at least 1");
  }
  const int m = distribution.dim();
  Eigen::MatrixXd points(m, static_cast<Eigen::Index>(n_samples));
  auto engine = make_engine(seed, Stream::samples);
  const Eigen::VectorXd width = distribution.hi - distribution.lo;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    for (int k = 0; k < m; ++k) {
      points(k, i) = distribution.lo[k] + width[k] * unit_uniform(engine);
    }
  }
  return SampleSet(distribution, seed, std::move(points));
}

void SampleSet::write_csv(std::ostream& out) const {
  char buf[32];
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    for (Eigen::Index k = 0; k < points_.rows(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", points_(k, i));
      if (k > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

SampleSet SampleSet::read_csv(std::istream& in, const BoxUniform& distribution, std::uint64_t seed) {
  distribution.validate();
  const int m = distribution.dim();
  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ConfigError("sample csv: unparsable value on row " + std::to_string(row));
      }
      values.push_back(v);
      ++k;
    }
    if (k != m) {
      throw ConfigError("sample csv: row " + std::to_string(row) + " has " + std::to_string(k) +
                        " columns, expected " + std::to_string(m));
    }
    ++row;
  }
  Eigen::MatrixXd points =
      Eigen::Map<Eigen::MatrixXd>(values.data(), m, static_cast<Eigen::Index>(row));
  return SampleSet(distribution, seed, std::move(points));
}

bool SampleSet::operator==(const SampleSet& other) const {
  return seed_ == other.seed_ && distribution_ == other.distribution_ && points_.rows() == other.points_.rows() &&
         points_.cols() == other.points_.cols() && points_ == other.points_;
}

Partition::Partition(std::vector<std::size_t> counts) : q_(std::move(counts)) {
  if (q_.empty()) {
    throw ConfigError("partition needs at least one group");
  }
  if (q_.front() == 0) {
    throw ConfigError("partition group sizes must be positive");
  }
  for (std::size_t l = 1; l < q_.size(); ++l) {
    if (q_[l] <= q_[l - 1]) {
      throw ConfigError("partition counts must be strictly increasing");
    }
  }
}

Partition Partition::uniform(std::size_t n_samples, std::size_t groups) {
  if (groups == 0 || groups > n_samples) {
    throw ConfigError("partition_uniform requires 1 <= L <= N (L=" + std::to_string(groups) +
                      ", N=" + std::to_string(n_samples) + ")");
  }
  std::vector<std::size_t> q(groups);
  for (std::size_t l = 1; l <= groups; ++l) {
    q[l - 1] = (2 * l * n_samples + groups) / (2 * groups);
  }
  return Partition(std::move(q));
}

Partition Partition::linear(std::size_t tau1, std::size_t groups) {
  if (tau1 == 0 || groups == 0) {
    throw ConfigError("partition_linear requires tau1 >= 1 and L >= 1");
  }
  std::vector<std::size_t> q(groups);
  for (std::size_t l = 1; l <= groups; ++l) q[l - 1] = tau1 * l;
  return Partition(std::move(q));
}

}  // namespace grsaa
