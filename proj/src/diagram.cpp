#include "morse/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace morse {

const char* to_string(Direction d) { return d == Direction::Left ? "left" : "right"; }

const EndpointLabel& mover_of(const DiagramEvent& e) {
  return std::visit([](const auto& ev) -> const EndpointLabel& { return ev.mover; }, e);
}

Direction direction_of(const DiagramEvent& e) {
  return std::visit([](const auto& ev) { return ev.direction; }, e);
}

std::string to_string(const DiagramEvent& e) {
  if (const auto* s = std::get_if<Slide>(&e))
    return "slide " + s->mover.str() + " " + to_string(s->direction) + " over " + s->entry.str();
  const auto& c = std::get<Cross>(e);
  return "cross " + c.mover.str() + " " + to_string(c.direction);
}

DiagramEvent inverse(const DiagramEvent& e) {
  if (const auto* s = std::get_if<Slide>(&e))
    return Slide{s->mover, inverse(s->direction), s->entry.partner()};
  const auto& c = std::get<Cross>(e);
  return Cross{c.mover, inverse(c.direction)};
}

namespace {

struct Position {
  std::size_t component;
  std::size_t index;
};

std::optional<Position> find_label(const BoundaryConfiguration& cfg, const EndpointLabel& l) {
  for (std::size_t c = 0; c < cfg.components.size(); ++c) {
    const auto& ls = cfg.components[c].labels;
    auto it = std::find(ls.begin(), ls.end(), l);
    if (it != ls.end()) return Position{c, static_cast<std::size_t>(it - ls.begin())};
  }
  return std::nullopt;
}

Position require_label(const BoundaryConfiguration& cfg, const EndpointLabel& l) {
  auto p = find_label(cfg, l);
  if (!p) throw MorseError(ErrorCode::UnknownLabel, l.str());
  return *p;
}

}  // namespace

BoundaryConfiguration apply_event(const BoundaryConfiguration& cfg, const DiagramEvent& e) {
  BoundaryConfiguration out = cfg;
  const Position at = require_label(cfg, mover_of(e));
  auto& labels = out.components[at.component].labels;

  if (const auto* s = std::get_if<Slide>(&e)) {
    if (s->entry.handle == s->mover.handle)
      throw MorseError(ErrorCode::SelfSlide, to_string(e));
    require_label(cfg, s->entry);
    const bool left = s->direction == Direction::Left;
    const bool blocked = left ? at.index == 0 : at.index + 1 == labels.size();
    const std::size_t neighbour = left ? at.index - 1 : at.index + 1;
    if (blocked || labels[neighbour] != s->entry)
      throw MorseError(ErrorCode::NotAdjacent, to_string(e));
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(at.index));
    const Position target = require_label(out, s->entry.partner());
    auto& dest = out.components[target.component].labels;
    const std::size_t insert_at = left ? target.index : target.index + 1;
    dest.insert(dest.begin() + static_cast<std::ptrdiff_t>(insert_at), s->mover);
    return out;
  }

  const auto& c = std::get<Cross>(e);
  if (c.direction == Direction::Left) {
    if (at.index != 0) throw MorseError(ErrorCode::NotAdjacent, to_string(e));
    std::rotate(labels.begin(), labels.begin() + 1, labels.end());
  } else {
    if (at.index + 1 != labels.size()) throw MorseError(ErrorCode::NotAdjacent, to_string(e));
    std::rotate(labels.rbegin(), labels.rbegin() + 1, labels.rend());
  }
  return out;
}

RunResult run_diagram(const MorseDiagram& d) {
  surface_type(d.initial);
  RunResult result;
  result.configurations.reserve(d.events.size() + 1);
  result.configurations.push_back(d.initial);
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    try {
      result.configurations.push_back(apply_event(result.configurations.back(), d.events[i]));
    } catch (const MorseError& err) {
      throw MorseError(err.code(), "event " + std::to_string(i) + " (" +
                                       to_string(d.events[i]) + "): " + err.what());
    }
  }
  result.closed = result.configurations.back() == d.initial;
  return result;
}

void require_closed(const MorseDiagram& d) {
  if (!run_diagram(d).closed)
    throw MorseError(ErrorCode::NonClosedInput, "diagram does not return to its initial configuration");
}

std::vector<DiagramEvent> applicable_events(const BoundaryConfiguration& cfg) {
  std::vector<DiagramEvent> out;
  for (const auto& comp : cfg.components) {
    const auto& ls = comp.labels;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i > 0 && ls[i - 1].handle != ls[i].handle)
        out.push_back(Slide{ls[i], Direction::Left, ls[i - 1]});
      if (i + 1 < ls.size() && ls[i + 1].handle != ls[i].handle)
        out.push_back(Slide{ls[i], Direction::Right, ls[i + 1]});
    }
    if (!ls.empty()) {
      out.push_back(Cross{ls.front(), Direction::Left});
      out.push_back(Cross{ls.back(), Direction::Right});
    }
  }
  return out;
}

MovingProfile moving_profile(const MorseDiagram& d) {
  MovingProfile profile;
  for (const auto& h : d.handles) profile[h];
  for (const auto& e : d.events) {
    const auto& m = mover_of(e);
    auto& moves = profile[m.handle];
    (m.sign == Sign::Plus ? moves.plus_moves : moves.minus_moves).push_back(direction_of(e));
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::optional<Direction> parse_direction(const std::string& s) {
  if (s == "left") return Direction::Left;
  if (s == "right") return Direction::Right;
  return std::nullopt;
}

}  // namespace

MorseDiagram parse_diagram(const std::string& text) {
  MorseDiagram d;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  std::set<HandleId> declared;
  std::vector<int> event_lines;

  auto label_at = [&](const std::string& tok) {
    auto l = parse_label(tok);
    if (!l) throw ParseError(lineno, "malformed label '" + tok + "'");
    return *l;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "morse" || tok[1] != "v1")
        throw ParseError(lineno, "expected header 'morse v1'");
      header = true;
      continue;
    }
    if (tok[0] == "handle") {
      if (tok.size() != 2 || !is_valid_handle_id(tok[1]))
        throw ParseError(lineno, "expected 'handle <id>'");
      if (!declared.insert(tok[1]).second)
        throw ParseError(lineno, "handle '" + tok[1] + "' declared twice");
      d.handles.push_back(tok[1]);
    } else if (tok[0] == "component") {
      if (tok.size() < 3 || tok[2] != ":") throw ParseError(lineno, "expected 'component <int> : <label>*'");
      Component c;
      try {
        std::size_t used = 0;
        c.id = std::stoi(tok[1], &used);
        if (used != tok[1].size() || c.id <= 0) throw std::invalid_argument("id");
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad component id '" + tok[1] + "'");
      }
      for (std::size_t i = 3; i < tok.size(); ++i) c.labels.push_back(label_at(tok[i]));
      d.initial.components.push_back(std::move(c));
    } else if (tok[0] == "event") {
      if (tok.size() >= 2 && tok[1] == "slide") {
        if (tok.size() != 6 || tok[4] != "over")
          throw ParseError(lineno, "expected 'event slide <label> <left|right> over <label>'");
        auto dir = parse_direction(tok[3]);
        if (!dir) throw ParseError(lineno, "bad direction '" + tok[3] + "'");
        d.events.push_back(Slide{label_at(tok[2]), *dir, label_at(tok[5])});
      } else if (tok.size() >= 2 && tok[1] == "cross") {
        if (tok.size() != 4) throw ParseError(lineno, "expected 'event cross <label> <left|right>'");
        auto dir = parse_direction(tok[3]);
        if (!dir) throw ParseError(lineno, "bad direction '" + tok[3] + "'");
        d.events.push_back(Cross{label_at(tok[2]), *dir});
      } else {
        throw ParseError(lineno, "unknown event kind");
      }
      event_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!header) throw ParseError(lineno + 1, "missing header 'morse v1'");

  validate_configuration(d.initial);
  for (const auto& h : handles_of(d.initial))
    if (!declared.count(h)) throw MorseError(ErrorCode::UnknownLabel, "undeclared handle " + h);
  for (const auto& h : d.handles) {
    bool used = false;
    for (const auto& c : d.initial.components)
      for (const auto& l : c.labels) used = used || l.handle == h;
    if (!used) throw MorseError(ErrorCode::MissingPartner, h);
  }
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    const auto& e = d.events[i];
    const std::string where = "line " + std::to_string(event_lines[i]) + ": ";
    if (!declared.count(mover_of(e).handle))
      throw MorseError(ErrorCode::UnknownLabel, where + mover_of(e).str());
    if (const auto* s = std::get_if<Slide>(&e)) {
      if (!declared.count(s->entry.handle))
        throw MorseError(ErrorCode::UnknownLabel, where + s->entry.str());
      if (s->entry.handle == s->mover.handle) throw MorseError(ErrorCode::SelfSlide, where + to_string(e));
    }
  }
  return d;
}

std::string serialize_diagram(const MorseDiagram& d) {
  std::ostringstream os;
  os << "morse v1\n";
  for (const auto& h : d.handles) os << "handle " << h << '\n';
  for (const auto& c : d.initial.components) {
    os << "component " << c.id << " :";
    for (const auto& l : c.labels) os << ' ' << l.str();
    os << '\n';
  }
  for (const auto& e : d.events) os << "event " << to_string(e) << '\n';
  return os.str();
}

MorseDiagram load_diagram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MorseError(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

void save_diagram(const MorseDiagram& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MorseError(ErrorCode::ParseError, "cannot write " + path);
  out << serialize_diagram(d);
}

}  // namespace morse
