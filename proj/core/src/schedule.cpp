#include "grsaa/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

#include "grsaa/errors.hpp"
#include "grsaa/sampling.hpp"

namespace grsaa {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::uniform: return "uniform";
    case ScheduleKind::random_descending: return "random";
    case ScheduleKind::harmonic: return "harmonic";
    case ScheduleKind::custom: return "custom";
  }
  return "unknown";
}

ScheduleKind parse_schedule_kind(const std::string& text) {
  if (text == "uniform") return ScheduleKind::uniform;
  if (text == "random" || text == "random-descending") return ScheduleKind::random_descending;
  if (text == "harmonic") return ScheduleKind::harmonic;
  throw ConfigError("unknown schedule kind '" + text + "' (expected uniform|random|harmonic)");
}

NodeSchedule::NodeSchedule(ScheduleKind kind, std::vector<double> nodes) : kind_(kind), nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw ConfigError("schedule needs at least one segment");
  }
  if (nodes_.front() != 1.0 || nodes_.back() != 0.0) {
    throw ConfigError("schedule must start at t=1 and end at t=0");
  }
  for (std::size_t l = 1; l < nodes_.size(); ++l) {
    if (!(nodes_[l] < nodes_[l - 1])) {
      throw ConfigError("schedule nodes must be strictly decreasing");
    }
  }
}

NodeSchedule NodeSchedule::uniform(std::size_t segments) {
  if (segments == 0) throw ConfigError("schedule needs L >= 1");
  std::vector<double> nodes(segments + 1);
  const auto L = static_cast<double>(segments);
  for (std::size_t l = 0; l <= segments; ++l) {
    nodes[l] = static_cast<double>(segments - l) / L;
  }
  return NodeSchedule(ScheduleKind::uniform, std::move(nodes));
}

NodeSchedule NodeSchedule::harmonic(std::size_t segments, double tau0) {
  if (segments == 0) throw ConfigError("schedule needs L >= 1");
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw ConfigError("harmonic schedule needs tau0 > 0");
  std::vector<double> nodes(segments + 1);
  nodes[0] = 1.0;
  for (std::size_t l = 1; l < segments; ++l) {
    nodes[l] = 1.0 / (1.0 + tau0 * static_cast<double>(l));
  }
  nodes[segments] = 0.0;
  return NodeSchedule(ScheduleKind::harmonic, std::move(nodes));
}

NodeSchedule NodeSchedule::random_descending(std::size_t segments, std::uint64_t seed) {
  if (segments == 0) throw ConfigError("schedule needs L >= 1");
  auto engine = make_engine(seed, Stream::schedule);
  std::vector<double> interior;
  interior.reserve(segments - 1);
  while (interior.size() + 1 < segments) {
    const double u = unit_uniform(engine);
    bool ok = u >= kMinRandomGap && u <= 1.0 - kMinRandomGap;
    for (double v : interior) {
      if (!ok) break;
      ok = std::abs(u - v) >= kMinRandomGap;
    }
    if (ok) interior.push_back(u);
  }
  std::sort(interior.begin(), interior.end(), std::greater<>());
  std::vector<double> nodes;
  nodes.reserve(segments + 1);
  nodes.push_back(1.0);
  nodes.insert(nodes.end(), interior.begin(), interior.end());
  nodes.push_back(0.0);
  return NodeSchedule(ScheduleKind::random_descending, std::move(nodes));
}

NodeSchedule NodeSchedule::from_nodes(std::vector<double> nodes) {
  return NodeSchedule(ScheduleKind::custom, std::move(nodes));
}

NodeSchedule NodeSchedule::make(ScheduleKind kind, std::size_t segments, std::optional<std::uint64_t> seed,
                                std::optional<double> tau0) {
  switch (kind) {
    case ScheduleKind::uniform: return uniform(segments);
    case ScheduleKind::harmonic:
      if (!tau0) throw ConfigError("harmonic schedule requires tau0");
      return harmonic(segments, *tau0);
    case ScheduleKind::random_descending:
      if (!seed) throw ConfigError("random schedule requires a seed");
      return random_descending(segments, *seed);
    case ScheduleKind::custom: break;
  }
  throw ConfigError("custom schedules are built with from_nodes");
}

std::size_t NodeSchedule::segment_of(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ConfigError("homotopy parameter t=" + std::to_string(t) + " outside [0,1]");
  }
  // first l >= 1 with t_l <= t
  auto it = std::lower_bound(nodes_.begin() + 1, nodes_.end(), t, std::greater<>());
  return static_cast<std::size_t>(it - nodes_.begin());
}

void NodeSchedule::check_segment(std::size_t l, double t) const {
  if (l == 0 || l > segments()) {
    throw ConfigError("segment index " + std::to_string(l) + " outside 1.." + std::to_string(segments()));
  }
  if (!(t >= nodes_[l] && t <= nodes_[l - 1])) {
    throw ConfigError("t=" + std::to_string(t) + " outside segment " + std::to_string(l));
  }
}

double NodeSchedule::theta(std::size_t l, double t) const {
  check_segment(l, t);
  const double upper = nodes_[l - 1];
  const double lower = nodes_[l];
  if (t == upper) return 0.0;
  if (t == lower) return 1.0;
  const double s = std::sin((t - upper) / (lower - upper) * (std::numbers::pi / 2.0));
  return s * s;
}

double NodeSchedule::theta_prime(std::size_t l, double t) const {
  check_segment(l, t);
  const double upper = nodes_[l - 1];
  const double lower = nodes_[l];
  if (t == upper || t == lower) return 0.0;
  const double width = lower - upper;
  return std::numbers::pi / (2.0 * width) * std::sin((t - upper) / width * std::numbers::pi);
}

void NodeSchedule::write_csv(std::ostream& out) const {
  out << "index,node\n";
  char buf[32];
  for (std::size_t l = 0; l < nodes_.size(); ++l) {
    std::snprintf(buf, sizeof buf, "%.17g", nodes_[l]);
    out << l << ',' << buf << '\n';
  }
}

}  // namespace grsaa
