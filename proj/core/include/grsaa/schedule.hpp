#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace grsaa {

enum class ScheduleKind { uniform, random_descending, harmonic, custom };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(const std::string& text);

/// Homotopy nodes 1 = t_0 > t_1 > ... > t_L = 0 together with the sin^2
/// blending ramp over each segment [t_l, t_{l-1}].
///
/// Segment l (1-based) carries the map from the (l-1)-group average at
/// t_{l-1} to the l-group average at t_l. theta_l rises from 0 to 1 as t
/// descends across the segment and its derivative vanishes at both ends, so
/// the blended map is C^1 across nodes.
class NodeSchedule {
 public:
  /// Minimum gap between random nodes, and between a random node and {0, 1}.
  static constexpr double kMinRandomGap = 1e-9;

  NodeSchedule() = default;

  static NodeSchedule uniform(std::size_t segments);
  /// Interior nodes t_l = 1 / (1 + tau0 * l), l = 1..L-1, then t_L = 0.
  static NodeSchedule harmonic(std::size_t segments, double tau0);
  /// L-1 uniform draws from (0, 1) sorted into strict descent. A draw closer
  /// than kMinRandomGap to 0, 1 or an earlier node is discarded and redrawn.
  static NodeSchedule random_descending(std::size_t segments, std::uint64_t seed);
  /// Explicit nodes; validated.
  static NodeSchedule from_nodes(std::vector<double> nodes);

  static NodeSchedule make(ScheduleKind kind, std::size_t segments, std::optional<std::uint64_t> seed = std::nullopt,
                           std::optional<double> tau0 = std::nullopt);

  ScheduleKind kind() const { return kind_; }
  std::size_t segments() const { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  double node(std::size_t l) const { return nodes_.at(l); }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Segment l in 1..L with t_l <= t <= t_{l-1}. At an interior node t = t_l
  /// the segment l (the one ending at t_l) is returned.
  std::size_t segment_of(double t) const;

  /// theta_l(t) = sin^2( (t - t_{l-1}) / (t_l - t_{l-1}) * pi/2 ).
  /// Exactly 0 at t_{l-1} and exactly 1 at t_l.
  double theta(std::size_t l, double t) const;
  /// d theta_l / dt = pi / (2 (t_l - t_{l-1})) * sin( (t - t_{l-1}) / (t_l - t_{l-1}) * pi ).
  /// Exactly 0 at both segment endpoints.
  double theta_prime(std::size_t l, double t) const;

  /// Rows "index,node" with 17 significant digits, header included.
  void write_csv(std::ostream& out) const;

 private:
  NodeSchedule(ScheduleKind kind, std::vector<double> nodes);
  void check_segment(std::size_t l, double t) const;

  ScheduleKind kind_ = ScheduleKind::uniform;
  std::vector<double> nodes_;
};

}  // namespace grsaa
