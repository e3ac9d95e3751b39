#pragma once

#include <string>

#include "morse/diagram.hpp"

namespace morse {

enum class RenderFormat { Ascii, Svg };

/// Deterministic picture of a diagram. Time runs downward, one band per
/// event; components sit side by side between dashed basepoint lines.
/// Throws NonRunnable when an event does not apply.
std::string render(const MorseDiagram& d, RenderFormat format);

}  // namespace morse
