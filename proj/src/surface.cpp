#include "morse/surface.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace morse {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::MissingPartner: return "MissingPartner";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::SelfSlide: return "SelfSlide";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotStarlike: return "NotStarlike";
    case ErrorCode::MismatchedN: return "MismatchedN";
    case ErrorCode::NonClosedInput: return "NonClosedInput";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::NotTorusPage: return "NotTorusPage";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::NonRunnable: return "NonRunnable";
  }
  return "Unknown";
}

std::string EndpointLabel::str() const {
  return handle + (sign == Sign::Plus ? "+" : "-");
}

bool is_valid_handle_id(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.';
  });
}

std::optional<EndpointLabel> parse_label(const std::string& token) {
  if (token.size() < 2) return std::nullopt;
  const char last = token.back();
  if (last != '+' && last != '-') return std::nullopt;
  std::string name = token.substr(0, token.size() - 1);
  if (!is_valid_handle_id(name)) return std::nullopt;
  return EndpointLabel{std::move(name), last == '+' ? Sign::Plus : Sign::Minus};
}

std::size_t BoundaryConfiguration::label_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.labels.size();
  return n;
}

std::string BoundaryConfiguration::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t k = 0; k < components[i].labels.size(); ++k) {
      if (k) os << ", ";
      os << components[i].labels[k].str();
    }
    os << ']';
  }
  return os.str();
}

void validate_configuration(const BoundaryConfiguration& cfg) {
  std::set<int> ids;
  for (const auto& c : cfg.components) {
    if (c.id <= 0 || !ids.insert(c.id).second)
      throw MorseError(ErrorCode::DuplicateComponent, "component " + std::to_string(c.id));
  }
  std::set<EndpointLabel> seen;
  for (const auto& c : cfg.components) {
    for (const auto& l : c.labels) {
      if (!seen.insert(l).second) throw MorseError(ErrorCode::DuplicateLabel, l.str());
    }
  }
  for (const auto& l : seen) {
    if (!seen.count(l.partner())) throw MorseError(ErrorCode::MissingPartner, l.handle);
  }
}

std::vector<HandleId> handles_of(const BoundaryConfiguration& cfg) {
  std::vector<HandleId> out;
  std::set<HandleId> seen;
  for (const auto& c : cfg.components)
    for (const auto& l : c.labels)
      if (seen.insert(l.handle).second) out.push_back(l.handle);
  return out;
}

CutTrace cut_to_disc(const BoundaryConfiguration& cfg) {
  validate_configuration(cfg);
  CutTrace trace;
  for (const auto& c : cfg.components) trace.initial.push_back(c.labels);
  std::vector<Circle> circles = trace.initial;
  auto label_of = [](const EndpointLabel& l) { return std::optional<EndpointLabel>(l); };
  for (const auto& h : handles_of(cfg)) {
    detail::cut_handle(circles, h, label_of);
    trace.steps.push_back({h, circles});
  }
  trace.realizable = circles.size() == 1 && circles.front().empty();
  return trace;
}

SurfaceType surface_type(const BoundaryConfiguration& cfg) {
  const CutTrace trace = cut_to_disc(cfg);
  if (!trace.realizable)
    throw MorseError(ErrorCode::NotRealizable,
                     "cutting " + cfg.str() + " does not leave a single disc");
  const int n = static_cast<int>(handles_of(cfg).size());
  const int b = static_cast<int>(cfg.components.size());
  const int twice_genus = 1 + n - b;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw MorseError(ErrorCode::NotRealizable, "non-integral genus for " + cfg.str());
  return {twice_genus / 2, b, n};
}

}  // namespace morse
