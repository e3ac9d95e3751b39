#include "morse/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace morse {

namespace {

constexpr int kBand = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

struct Spacing {
  int slot;
  int gap;
  int margin;
};

constexpr Spacing kSvgSpacing{40, 20, 30};

struct Layout {
  Spacing sp;
  std::vector<BoundaryConfiguration> rows;
  std::vector<int> left;   // x of each component's left basepoint line
  std::vector<int> right;  // x of its right basepoint line
  int width = 0;
  int height = 0;
  std::size_t bands = 1;

  int x_of(std::size_t row, const EndpointLabel& l) const {
    const auto& cfg = rows[row];
    for (std::size_t c = 0; c < cfg.components.size(); ++c) {
      const auto& ls = cfg.components[c].labels;
      if (auto it = std::find(ls.begin(), ls.end(), l); it != ls.end())
        return left[c] + sp.slot * static_cast<int>(it - ls.begin() + 1);
    }
    return 0;
  }
  std::size_t component_of(std::size_t row, const EndpointLabel& l) const {
    const auto& cfg = rows[row];
    for (std::size_t c = 0; c < cfg.components.size(); ++c)
      for (const auto& x : cfg.components[c].labels)
        if (x == l) return c;
    return 0;
  }
  int y_of(std::size_t row) const { return sp.margin + 20 + kBand * static_cast<int>(row); }
};

Layout make_layout(const MorseDiagram& d, Spacing sp) {
  Layout lay;
  lay.sp = sp;
  try {
    lay.rows = run_diagram(d).configurations;
  } catch (const MorseError& e) {
    throw MorseError(ErrorCode::NonRunnable, e.what());
  }
  lay.bands = std::max<std::size_t>(1, d.events.size());
  if (d.events.empty()) lay.rows.push_back(lay.rows.front());
  int x = sp.margin;
  for (std::size_t c = 0; c < d.initial.components.size(); ++c) {
    std::size_t slots = 1;
    for (const auto& row : lay.rows) slots = std::max(slots, row.components[c].labels.size());
    lay.left.push_back(x);
    x += sp.slot * static_cast<int>(slots + 1);
    lay.right.push_back(x);
    x += sp.gap;
  }
  lay.width = x - sp.gap + sp.margin;
  lay.height = lay.y_of(lay.bands) + sp.margin;
  return lay;
}

std::string point(int x, int y) { return std::to_string(x) + " " + std::to_string(y); }

std::string render_svg(const MorseDiagram& d) {
  const Layout lay = make_layout(d, kSvgSpacing);
  std::map<HandleId, const char*> colour;
  for (std::size_t i = 0; i < d.handles.size(); ++i) colour[d.handles[i]] = kPalette[i % std::size(kPalette)];

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << lay.width << "\" height=\"" << lay.height
     << "\" viewBox=\"0 0 " << lay.width << ' ' << lay.height << "\">\n";
  const int top = lay.y_of(0);
  const int bottom = lay.y_of(lay.bands);
  for (std::size_t c = 0; c < lay.left.size(); ++c)
    for (int x : {lay.left[c], lay.right[c]})
      os << "  <path d=\"M " << point(x, top) << " L " << point(x, bottom)
         << "\" stroke=\"#000000\" stroke-dasharray=\"4 4\" fill=\"none\"/>\n";
  for (const auto& comp : d.initial.components)
    for (const auto& l : comp.labels)
      os << "  <text x=\"" << lay.x_of(0, l) << "\" y=\"" << top - 8 << "\" text-anchor=\"middle\" font-size=\"12\">"
         << l.str() << "</text>\n";

  auto segment = [&](const EndpointLabel& l, int x0, int y0, int x1, int y1) {
    os << "  <path d=\"M " << point(x0, y0) << " L " << point(x1, y1) << "\" stroke=\"" << colour[l.handle]
       << "\" stroke-width=\"2\" fill=\"none\"/>\n";
  };
  for (std::size_t i = 0; i < lay.bands; ++i) {
    const int y0 = lay.y_of(i), y1 = lay.y_of(i + 1), mid = (y0 + y1) / 2;
    const DiagramEvent* e = i < d.events.size() ? &d.events[i] : nullptr;
    for (const auto& comp : lay.rows[i].components) {
      for (const auto& l : comp.labels) {
        const int x0 = lay.x_of(i, l), x1 = lay.x_of(i + 1, l);
        if (!e || mover_of(*e) != l) {
          segment(l, x0, y0, x1, y1);
        } else if (const auto* s = std::get_if<Slide>(e)) {
          segment(l, x0, y0, lay.x_of(i, s->entry), mid);
          segment(l, lay.x_of(i + 1, s->entry.partner()), mid, x1, y1);
        } else {
          const std::size_t c = lay.component_of(i, l);
          const bool left = direction_of(*e) == Direction::Left;
          segment(l, x0, y0, left ? lay.left[c] : lay.right[c], mid);
          segment(l, left ? lay.right[c] : lay.left[c], mid, x1, y1);
        }
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_ascii(const MorseDiagram& d) {
  std::size_t longest = 2;
  for (const auto& comp : d.initial.components)
    for (const auto& l : comp.labels) longest = std::max(longest, l.str().size());
  const Layout lay = make_layout(d, Spacing{static_cast<int>(longest) + 2, 2, 0});
  const int columns = lay.width + 1;
  auto col = [](int x) { return static_cast<std::size_t>(x); };
  auto blank = [&] {
    std::string s(static_cast<std::size_t>(columns), ' ');
    for (std::size_t c = 0; c < lay.left.size(); ++c) s[col(lay.left[c])] = s[col(lay.right[c])] = ':';
    return s;
  };
  auto config_row = [&](std::size_t row) {
    std::string s = blank();
    for (const auto& comp : lay.rows[row].components)
      for (const auto& l : comp.labels) {
        const std::string text = l.str();
        const std::size_t at = col(lay.x_of(row, l)) - text.size() / 2;
        s.replace(at, std::min(text.size(), s.size() - at), text.substr(0, s.size() - at));
      }
    return s;
  };
  auto trim = [](std::string s) {
    s.erase(s.find_last_not_of(' ') + 1);
    return s;
  };

  std::ostringstream os;
  os << "t=0   " << trim(config_row(0)) << '\n';
  for (std::size_t i = 0; i < lay.bands; ++i) {
    std::string strokes = blank();
    const DiagramEvent* e = i < d.events.size() ? &d.events[i] : nullptr;
    for (const auto& comp : lay.rows[i].components)
      for (const auto& l : comp.labels) {
        char mark = '|';
        if (e && mover_of(*e) == l) mark = direction_of(*e) == Direction::Left ? '<' : '>';
        strokes[col(lay.x_of(i, l))] = mark;
      }
    os << "      " << trim(strokes);
    if (e) os << "    " << to_string(*e);
    os << '\n';
    if (e) {
      std::string tag = "t=" + std::to_string(i + 1);
      tag.resize(6, ' ');
      os << tag << trim(config_row(i + 1)) << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string render(const MorseDiagram& d, RenderFormat format) {
  return format == RenderFormat::Svg ? render_svg(d) : render_ascii(d);
}

}  // namespace morse
