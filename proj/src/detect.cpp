#include "morse/detect.hpp"

#include <deque>
#include <unordered_set>

namespace morse {

std::optional<LeftVeeringWitness> find_left_veering(const MorseDiagram& d) {
  require_closed(d);
  for (const auto& h : d.handles) {
    std::vector<std::size_t> plus, minus;
    bool plus_right = false, minus_right = false;
    for (std::size_t i = 0; i < d.events.size(); ++i) {
      const auto& m = mover_of(d.events[i]);
      if (m.handle != h) continue;
      const bool right = direction_of(d.events[i]) == Direction::Right;
      if (m.sign == Sign::Plus) {
        plus.push_back(i);
        plus_right = plus_right || right;
      } else {
        minus.push_back(i);
        minus_right = minus_right || right;
      }
    }
    if (plus.empty() && !minus.empty() && !minus_right)
      return LeftVeeringWitness{h, Sign::Plus, Sign::Minus, minus};
    if (minus.empty() && !plus.empty() && !plus_right)
      return LeftVeeringWitness{h, Sign::Minus, Sign::Plus, plus};
  }
  return std::nullopt;
}

std::optional<Certificate> certificate_search(const MorseDiagram& d, std::size_t max_depth,
                                              std::size_t node_limit) {
  torus_roles(d);
  require_closed(d);
  struct Node {
    MorseDiagram diagram;
    std::vector<MorseMove> path;
  };
  std::deque<Node> queue;
  std::unordered_set<std::string> seen;
  queue.push_back({d, {}});
  seen.insert(serialize_diagram(d));
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (auto w = find_left_veering(node.diagram)) return Certificate{node.path, node.diagram, *w};
    if (node.path.size() >= max_depth) continue;
    for (const auto& move : applicable_moves(node.diagram)) {
      MorseDiagram next = apply_morse_move(node.diagram, move);
      if (!seen.insert(serialize_diagram(next)).second) continue;
      if (seen.size() > node_limit) return std::nullopt;
      auto path = node.path;
      path.push_back(move);
      queue.push_back({std::move(next), std::move(path)});
    }
  }
  return std::nullopt;
}

OtVerdict ot_verdict(const MorseDiagram& d, std::size_t search_depth) {
  if (auto w = find_left_veering(d))
    return {Verdict::OvertwistedCertified, Certificate{{}, d, *w}};
  try {
    torus_roles(d);
  } catch (const MorseError& e) {
    if (e.code() == ErrorCode::NotTorusPage) return {};
    throw;
  }
  if (auto cert = certificate_search(d, search_depth)) return {Verdict::OvertwistedCertified, std::move(cert)};
  return {};
}

}  // namespace morse
