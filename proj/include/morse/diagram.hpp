#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "morse/surface.hpp"

namespace morse {

/// Right is the positive boundary orientation (increasing x in a planar diagram).
enum class Direction { Left, Right };

constexpr Direction inverse(Direction d) {
  return d == Direction::Left ? Direction::Right : Direction::Left;
}
const char* to_string(Direction d);

/// An arc slide: `mover` travels in `direction`, collides with `entry` and
/// re-emerges on the far side of entry's partner.
struct Slide {
  EndpointLabel mover;
  Direction direction = Direction::Left;
  EndpointLabel entry;
  bool operator==(const Slide&) const = default;
};

/// Isotopy of an endpoint across its component's basepoint.
struct Cross {
  EndpointLabel mover;
  Direction direction = Direction::Left;
  bool operator==(const Cross&) const = default;
};

using DiagramEvent = std::variant<Slide, Cross>;

const EndpointLabel& mover_of(const DiagramEvent& e);
Direction direction_of(const DiagramEvent& e);
std::string to_string(const DiagramEvent& e);

/// The event undoing `e`: same mover, opposite direction, and for a slide the
/// entry is the partner of the original entry.
DiagramEvent inverse(const DiagramEvent& e);

struct MorseDiagram {
  std::vector<HandleId> handles;   // declaration order
  BoundaryConfiguration initial;
  std::vector<DiagramEvent> events;  // bottom of the diagram first

  bool operator==(const MorseDiagram&) const = default;
};

BoundaryConfiguration apply_event(const BoundaryConfiguration& cfg, const DiagramEvent& e);

struct RunResult {
  std::vector<BoundaryConfiguration> configurations;  // initial, then one per event
  bool closed = false;
};

/// Validates the initial configuration (including realizability) and replays
/// every event. Event errors are rethrown with the event index prefixed.
RunResult run_diagram(const MorseDiagram& d);

/// Throws NonClosedInput unless the diagram runs and returns to its start.
void require_closed(const MorseDiagram& d);

/// Every event applicable to `cfg`: all adjacent slides (both directions) and
/// the two basepoint crossings of each nonempty component.
std::vector<DiagramEvent> applicable_events(const BoundaryConfiguration& cfg);

struct EndpointMoves {
  std::vector<Direction> plus_moves;
  std::vector<Direction> minus_moves;
  bool operator==(const EndpointMoves&) const = default;
};

using MovingProfile = std::map<HandleId, EndpointMoves>;

MovingProfile moving_profile(const MorseDiagram& d);

MorseDiagram parse_diagram(const std::string& text);
std::string serialize_diagram(const MorseDiagram& d);

MorseDiagram load_diagram(const std::string& path);
void save_diagram(const MorseDiagram& d, const std::string& path);

}  // namespace morse
