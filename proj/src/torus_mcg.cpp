#include "morse/torus_mcg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace morse {

// ---------------------------------------------------------------------------
// Matrices and classes

Mat2 Mat2::pow(long long k) const {
  Mat2 base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Mat2 out;
  while (e) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
  return os.str();
}

std::string Vec2::str() const {
  std::ostringstream os;
  auto term = [&](const BigInt& k, char name, bool first) {
    if (k == 0) return;
    if (k < 0) os << '-';
    else if (!first) os << '+';
    BigInt mag = k < 0 ? BigInt(-k) : k;
    if (mag != 1) os << mag;
    os << name;
  };
  if (x == 0 && y == 0) return "0";
  term(x, 'A', true);
  term(y, 'B', x == 0);
  return os.str();
}

BigInt intersection(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

Mat2 twist_matrix(const Vec2& c, long long power) {
  const BigInt p = power;
  return {1 - p * c.y * c.x, p * c.x * c.x, -p * c.y * c.y, 1 + p * c.x * c.y};
}

namespace {
Vec2 apply(const Mat2& m, const Vec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
}  // namespace

// ---------------------------------------------------------------------------
// Twist words

TwistWord TwistWord::inverse() const {
  TwistWord out;
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) out.gens.push_back({it->curve, -it->power});
  return out;
}

TwistWord TwistWord::operator*(const TwistWord& o) const {
  TwistWord out = *this;
  out.gens.insert(out.gens.end(), o.gens.begin(), o.gens.end());
  return out;
}

std::string TwistWord::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ' ';
    os << "ABC"[static_cast<int>(gens[i].curve)];
    if (gens[i].power != 1) os << '^' << gens[i].power;
  }
  return os.str();
}

TwistWord parse_twist_word(const std::string& text) {
  TwistWord w;
  std::istringstream is(text);
  for (std::string tok; is >> tok;) {
    TwistGen g;
    switch (tok[0]) {
      case 'A': g.curve = Curve::A; break;
      case 'B': g.curve = Curve::B; break;
      case 'C': g.curve = Curve::C; break;
      default: throw ParseError(1, "bad twist token '" + tok + "'");
    }
    if (tok.size() > 1) {
      if (tok[1] != '^' || tok.size() == 2) throw ParseError(1, "bad twist token '" + tok + "'");
      const std::string exp = tok.substr(2);
      if (exp == "-") {
        g.power = -1;
      } else {
        try {
          std::size_t used = 0;
          g.power = std::stoll(exp, &used);
          if (used != exp.size()) throw std::invalid_argument(exp);
        } catch (const std::logic_error&) {
          throw ParseError(1, "bad exponent in '" + tok + "'");
        }
      }
    }
    if (g.power != 0) w.gens.push_back(g);
  }
  return w;
}

Mat2 generator_matrix(const TwistGen& g) {
  switch (g.curve) {
    case Curve::A: return twist_matrix({1, 0}, g.power);
    case Curve::B: return twist_matrix({0, 1}, g.power);
    case Curve::C: return Mat2::identity();
  }
  return Mat2::identity();
}

MappingClassInvariant word_invariant(const TwistWord& w) {
  MappingClassInvariant inv;
  for (const auto& g : w.gens) {
    inv.matrix = inv.matrix * generator_matrix(g);
    inv.exponent_sum += BigInt(g.power) * (g.curve == Curve::C ? 12 : 1);
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Torus pages

BoundaryConfiguration reference_configuration(const HandleId& a, const HandleId& b) {
  return {{{1, {{b, Sign::Plus}, {a, Sign::Plus}, {b, Sign::Minus}, {a, Sign::Minus}}}}};
}

namespace {

bool is_rotation_of(const std::vector<EndpointLabel>& xs, const std::vector<EndpointLabel>& ys) {
  if (xs.size() != ys.size()) return false;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < xs.size() && ok; ++i) ok = xs[(i + r) % xs.size()] == ys[i];
    if (ok) return true;
  }
  return false;
}

void require_torus_page(const BoundaryConfiguration& cfg) {
  SurfaceType st;
  try {
    st = surface_type(cfg);
  } catch (const MorseError& e) {
    throw MorseError(ErrorCode::NotTorusPage, e.what());
  }
  if (st != SurfaceType{1, 1, 2})
    throw MorseError(ErrorCode::NotTorusPage, "page is not a one-holed torus: " + cfg.str());
}

std::vector<EndpointLabel> rotated(std::vector<EndpointLabel> xs, int shift) {
  if (xs.empty()) return xs;
  const int n = static_cast<int>(xs.size());
  const int k = ((shift % n) + n) % n;
  std::rotate(xs.rbegin(), xs.rbegin() + k, xs.rend());
  return xs;
}

}  // namespace

TorusRoles torus_roles(const MorseDiagram& d) {
  require_torus_page(d.initial);
  if (d.handles.size() != 2) throw MorseError(ErrorCode::NotTorusPage, "expected two handles");
  const auto& ls = d.initial.components.front().labels;
  const HandleId& first = d.handles[0];
  const HandleId& second = d.handles[1];
  if (is_rotation_of(reference_configuration(first, second).components[0].labels, ls))
    return {first, second};
  return {second, first};
}

int frame_shift(const BoundaryConfiguration& before, const BoundaryConfiguration& after) {
  if (before.components.size() != 1 || after.components.size() != 1)
    throw MorseError(ErrorCode::NotTorusPage, "frame shift needs a single boundary component");
  const auto& x = before.components[0].labels;
  const auto& y = after.components[0].labels;
  if (x == y) return 0;
  if (rotated(x, 1) == y) return 1;
  if (rotated(x, -1) == y) return -1;
  throw MorseError(ErrorCode::NotTorusPage, "configuration shifted by more than one step");
}

DiagramMonodromy diagram_monodromy(const MorseDiagram& d) {
  const TorusRoles roles = torus_roles(d);
  const RunResult run = run_diagram(d);
  if (!run.closed) throw MorseError(ErrorCode::NonClosedInput, "monodromy needs a closed diagram");
  long long frame = 0;
  std::vector<TwistGen> slides;
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    frame += frame_shift(run.configurations[i], run.configurations[i + 1]);
    if (const auto* s = std::get_if<Slide>(&d.events[i]))
      slides.push_back({roles.curve_of(s->mover.handle), s->direction == Direction::Right ? 1 : -1});
  }
  // Closure forces the net rotation to be a whole number of turns.
  DiagramMonodromy out;
  out.boundary_twists = frame / 4;
  out.factorization.gens.assign(slides.rbegin(), slides.rend());
  if (out.boundary_twists != 0) out.factorization.gens.push_back({Curve::C, out.boundary_twists});
  out.invariant = word_invariant(out.factorization);
  return out;
}

std::vector<CoreState> trace_cores(const MorseDiagram& d) {
  const TorusRoles roles = torus_roles(d);
  const RunResult run = run_diagram(d);
  if (!run.closed) throw MorseError(ErrorCode::NonClosedInput, "core trace needs a closed diagram");
  std::vector<CoreState> states{CoreState{}};
  for (const auto& e : d.events) {
    const auto* s = std::get_if<Slide>(&e);
    if (!s) continue;
    CoreState next = states.back();
    const Vec2 core = roles.curve_of(s->mover.handle) == Curve::A ? next.a : next.b;
    const Mat2 t = twist_matrix(core, s->direction == Direction::Left ? 1 : -1);
    next.a = apply(t, next.a);
    next.b = apply(t, next.b);
    states.push_back(next);
  }
  return states;
}

namespace {

/// Appends `steps` basepoint crossings (positive = rightward) to `out`,
/// updating `cfg`.
void emit_rotation(BoundaryConfiguration& cfg, int steps, std::vector<DiagramEvent>& out) {
  for (int i = 0; i < std::abs(steps); ++i) {
    const auto& ls = cfg.components[0].labels;
    DiagramEvent e = steps > 0 ? DiagramEvent(Cross{ls.back(), Direction::Right})
                               : DiagramEvent(Cross{ls.front(), Direction::Left});
    cfg = apply_event(cfg, e);
    out.push_back(e);
  }
}

std::optional<DiagramEvent> slide_for(const BoundaryConfiguration& cfg, const EndpointLabel& mover,
                                      Direction dir) {
  const auto& ls = cfg.components[0].labels;
  auto it = std::find(ls.begin(), ls.end(), mover);
  if (it == ls.end()) return std::nullopt;
  const auto i = static_cast<std::size_t>(it - ls.begin());
  if (dir == Direction::Left && i > 0 && ls[i - 1].handle != mover.handle)
    return Slide{mover, dir, ls[i - 1]};
  if (dir == Direction::Right && i + 1 < ls.size() && ls[i + 1].handle != mover.handle)
    return Slide{mover, dir, ls[i + 1]};
  return std::nullopt;
}

/// Shortest event block starting at `cfg` that slides an endpoint of `handle`
/// (restricted to `only` when given) in direction `dir` exactly once and has
/// net frame `frame`.
std::optional<std::vector<DiagramEvent>> realize_slide(const BoundaryConfiguration& cfg,
                                                       const HandleId& handle, Direction dir,
                                                       int frame,
                                                       std::optional<Sign> only = std::nullopt) {
  std::optional<std::vector<DiagramEvent>> best;
  for (int k : {0, 1, -1, 2, -2}) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      if (only && *only != sign) continue;
      std::vector<DiagramEvent> block;
      BoundaryConfiguration cur = cfg;
      emit_rotation(cur, k, block);
      auto slide = slide_for(cur, {handle, sign}, dir);
      if (!slide) continue;
      BoundaryConfiguration next = apply_event(cur, *slide);
      const int f = frame_shift(cur, next);
      block.push_back(*slide);
      emit_rotation(next, frame - (k + f), block);
      if (!best || block.size() < best->size()) best = std::move(block);
    }
  }
  return best;
}

std::vector<DiagramEvent> twist_block(const BoundaryConfiguration& cfg, const HandleId& handle,
                                      Direction dir) {
  auto block = realize_slide(cfg, handle, dir, 0);
  if (!block) throw MorseError(ErrorCode::PatternMismatch, "no slide of " + handle + " available");
  return *block;
}

}  // namespace

MorseDiagram synthesize(const TwistWord& w, const HandleId& a, const HandleId& b) {
  MorseDiagram d;
  d.handles = {a, b};
  d.initial = reference_configuration(a, b);
  BoundaryConfiguration cfg = d.initial;
  // The first event realises the inverse of the last generator.
  for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
    const auto count = std::abs(it->power);
    if (it->curve == Curve::C) {
      emit_rotation(cfg, static_cast<int>(4 * count) * (it->power > 0 ? 1 : -1), d.events);
      continue;
    }
    const HandleId& h = it->curve == Curve::A ? a : b;
    const Direction dir = it->power > 0 ? Direction::Right : Direction::Left;
    for (long long i = 0; i < count; ++i) {
      auto block = twist_block(cfg, h, dir);
      d.events.insert(d.events.end(), block.begin(), block.end());
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Conjugacy in SL(2, Z)

namespace {

BigInt floor_div(const BigInt& x, const BigInt& y) {
  BigInt q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

// Letters of PSL(2, Z) = <s> * <u>, s of order 2, u of order 3.
enum Letter : int { S = 0, U1 = 1, U2 = 2 };

void push_reduced(std::vector<int>& w, int letter) {
  if (!w.empty()) {
    if (letter == S && w.back() == S) {
      w.pop_back();
      return;
    }
    if (letter != S && w.back() != S) {
      const int e = (w.back() + letter) % 3;
      w.pop_back();
      if (e != 0) w.push_back(e);
      return;
    }
  }
  w.push_back(letter);
}

/// Freely reduced word in s, u for the image of `m` in PSL(2, Z), using
/// S = [[0,-1],[1,0]], u = ST with T = [[1,1],[0,1]], so T = s u.
std::vector<int> psl_word(Mat2 m) {
  std::vector<int> w;
  auto push_t_power = [&](const BigInt& q) {
    if (q > 0)
      for (BigInt i = 0; i < q; ++i) {
        push_reduced(w, S);
        push_reduced(w, U1);
      }
    else
      for (BigInt i = 0; i < -q; ++i) {
        push_reduced(w, U2);
        push_reduced(w, S);
      }
  };
  while (m.c != 0) {
    const BigInt q = floor_div(m.a, m.c);
    push_t_power(q);
    m = Mat2{0, 1, -1, 0} * (Mat2{1, -q, 0, 1} * m);  // S^-1 T^-q m
    push_reduced(w, S);
  }
  // m = +-[[1, b], [0, 1]] up to sign
  push_t_power(m.a > 0 ? m.b : BigInt(-m.b));
  return w;
}

std::vector<int> cyclically_reduce(std::vector<int> w) {
  while (w.size() >= 2) {
    const int first = w.front(), last = w.back();
    if (first == S && last == S) {
      w.erase(w.begin());
      w.pop_back();
    } else if (first != S && last != S) {
      const int e = (first + last) % 3;
      w.erase(w.begin());
      w.pop_back();
      if (e != 0) w.push_back(e);
    } else {
      break;
    }
  }
  return w;
}

}  // namespace

std::string conjugacy_class_key(const Mat2& m) {
  std::ostringstream key;
  key << "tr=" << m.trace() << ';';
  if (m.trace() == 0) {
    // Order-4 elements: S and -S are told apart by the rotation sense.
    key << "rot=" << (m.c > 0 ? '+' : '-');
    return key.str();
  }
  std::vector<int> w = cyclically_reduce(psl_word(m));
  if (w.size() <= 1) {
    key << "elliptic=" << (w.empty() ? -1 : w.front());
    return key.str();
  }
  if (w.front() != S) std::rotate(w.begin(), w.begin() + 1, w.end());
  std::vector<int> exps;
  for (std::size_t i = 1; i < w.size(); i += 2) exps.push_back(w[i]);
  std::vector<int> best = exps;
  for (std::size_t r = 1; r < exps.size(); ++r) {
    std::vector<int> cand(exps.begin() + static_cast<std::ptrdiff_t>(r), exps.end());
    cand.insert(cand.end(), exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(r));
    best = std::min(best, cand);
  }
  key << "cyc=";
  for (int e : best) key << e;
  return key.str();
}

bool conjugate_in_sl2z(const Mat2& m, const Mat2& n) {
  return conjugacy_class_key(m) == conjugacy_class_key(n);
}

bool same_open_book(const MorseDiagram& d1, const MorseDiagram& d2, EquivalenceMode mode) {
  const auto m1 = diagram_monodromy(d1).invariant;
  const auto m2 = diagram_monodromy(d2).invariant;
  if (mode == EquivalenceMode::Strict) return m1 == m2;
  return m1.exponent_sum == m2.exponent_sum && conjugate_in_sl2z(m1.matrix, m2.matrix);
}

// ---------------------------------------------------------------------------
// Morse moves

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::M1Insert: return "M1+";
    case MoveKind::M1Delete: return "M1-";
    case MoveKind::M2: return "M2";
    case MoveKind::M3: return "M3";
    case MoveKind::M4: return "M4";
  }
  return "?";
}

std::string MorseMove::str() const {
  std::string s = std::string(to_string(kind)) + "@" + std::to_string(site);
  if (inserted) s += "[" + to_string(*inserted) + "]";
  return s;
}

namespace {

struct MoveContext {
  const MorseDiagram& d;
  RunResult run;
  std::optional<TorusRoles> roles;

  explicit MoveContext(const MorseDiagram& diagram) : d(diagram), run(run_diagram(diagram)) {
    try {
      roles = torus_roles(diagram);
    } catch (const MorseError&) {
    }
  }

  const BoundaryConfiguration& before(std::size_t i) const { return run.configurations[i]; }

  int frame_of(std::size_t from, std::size_t count) const {
    int f = 0;
    for (std::size_t i = from; i < from + count; ++i)
      f += frame_shift(run.configurations[i], run.configurations[i + 1]);
    return f;
  }

  const Slide* slide_at(std::size_t i) const {
    return i < d.events.size() ? std::get_if<Slide>(&d.events[i]) : nullptr;
  }
};

using Block = std::vector<DiagramEvent>;

std::optional<Block> m2_block(const MoveContext& ctx, std::size_t site) {
  const Slide* s = ctx.slide_at(site);
  if (!s || !ctx.roles) return std::nullopt;
  return realize_slide(ctx.before(site), s->mover.handle, s->direction, ctx.frame_of(site, 1),
                       opposite(s->mover.sign));
}

std::optional<Block> m3_block(const MoveContext& ctx, std::size_t site) {
  if (!ctx.roles) return std::nullopt;
  const Slide* x1 = ctx.slide_at(site);
  const Slide* y = ctx.slide_at(site + 1);
  const Slide* x2 = ctx.slide_at(site + 2);
  if (!x1 || !y || !x2) return std::nullopt;
  if (x1->direction != y->direction || y->direction != x2->direction) return std::nullopt;
  if (x1->mover.handle != x2->mover.handle || x1->mover.handle == y->mover.handle) return std::nullopt;
  BoundaryConfiguration cfg = ctx.before(site);
  Block out;
  for (const HandleId* h : {&y->mover.handle, &x1->mover.handle, &y->mover.handle}) {
    auto block = twist_block(cfg, *h, y->direction);
    out.insert(out.end(), block.begin(), block.end());
  }
  emit_rotation(cfg, ctx.frame_of(site, 3), out);
  return out;
}

/// Forward: four same-direction crossings -> twelve slides. Backward: twelve
/// alternating same-direction slides -> four crossings.
std::optional<std::pair<std::size_t, Block>> m4_block(const MoveContext& ctx, std::size_t site) {
  if (!ctx.roles) return std::nullopt;
  const auto& ev = ctx.d.events;
  if (site + 4 <= ev.size() && std::holds_alternative<Cross>(ev[site])) {
    const Direction dir = direction_of(ev[site]);
    for (std::size_t i = site; i < site + 4; ++i)
      if (!std::holds_alternative<Cross>(ev[i]) || direction_of(ev[i]) != dir) return std::nullopt;
    BoundaryConfiguration cfg = ctx.before(site);
    Block out;
    // tau_C^-1 = (B^-1 A^-1)^6 and tau_C = (A B)^6; events list the word reversed.
    const Curve first = dir == Direction::Left ? Curve::A : Curve::B;
    const Curve second = first == Curve::A ? Curve::B : Curve::A;
    for (int rep = 0; rep < 6; ++rep) {
      for (Curve c : {first, second}) {
        auto block = twist_block(cfg, ctx.roles->handle_of(c), dir);
        out.insert(out.end(), block.begin(), block.end());
      }
    }
    emit_rotation(cfg, ctx.frame_of(site, 4) - (dir == Direction::Left ? -4 : 4), out);
    return std::pair{std::size_t{4}, out};
  }
  if (site + 12 <= ev.size()) {
    const Slide* s0 = ctx.slide_at(site);
    if (!s0) return std::nullopt;
    for (std::size_t i = 0; i < 12; ++i) {
      const Slide* s = ctx.slide_at(site + i);
      if (!s || s->direction != s0->direction) return std::nullopt;
      const bool same = s->mover.handle == s0->mover.handle;
      if (same != (i % 2 == 0)) return std::nullopt;
    }
    BoundaryConfiguration cfg = ctx.before(site);
    Block out;
    const int turn = s0->direction == Direction::Left ? -4 : 4;
    emit_rotation(cfg, turn, out);
    emit_rotation(cfg, ctx.frame_of(site, 12), out);
    return std::pair{std::size_t{12}, out};
  }
  return std::nullopt;
}

MorseDiagram splice_events(const MorseDiagram& d, std::size_t site, std::size_t erase, const Block& block) {
  MorseDiagram out = d;
  auto first = out.events.begin() + static_cast<std::ptrdiff_t>(site);
  out.events.erase(first, first + static_cast<std::ptrdiff_t>(erase));
  out.events.insert(out.events.begin() + static_cast<std::ptrdiff_t>(site), block.begin(), block.end());
  return out;
}

[[noreturn]] void mismatch(const MorseMove& m) {
  throw MorseError(ErrorCode::PatternMismatch, m.str());
}

}  // namespace

MorseDiagram apply_morse_move(const MorseDiagram& d, const MorseMove& move) {
  const MoveContext ctx(d);
  const auto& ev = d.events;
  switch (move.kind) {
    case MoveKind::M1Insert: {
      if (!move.inserted || move.site > ev.size()) mismatch(move);
      try {
        apply_event(ctx.before(move.site), *move.inserted);
      } catch (const MorseError&) {
        mismatch(move);
      }
      return splice_events(d, move.site, 0, {*move.inserted, inverse(*move.inserted)});
    }
    case MoveKind::M1Delete:
      if (move.site + 1 >= ev.size() || ev[move.site + 1] != inverse(ev[move.site])) mismatch(move);
      return splice_events(d, move.site, 2, {});
    case MoveKind::M2: {
      auto block = m2_block(ctx, move.site);
      if (!block) mismatch(move);
      return splice_events(d, move.site, 1, *block);
    }
    case MoveKind::M3: {
      auto block = m3_block(ctx, move.site);
      if (!block) mismatch(move);
      return splice_events(d, move.site, 3, *block);
    }
    case MoveKind::M4: {
      auto block = m4_block(ctx, move.site);
      if (!block) mismatch(move);
      return splice_events(d, move.site, block->first, block->second);
    }
  }
  mismatch(move);
}

std::vector<MorseMove> applicable_moves(const MorseDiagram& d) {
  const MoveContext ctx(d);
  const auto& ev = d.events;
  std::vector<MorseMove> out;
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    if (ev[i + 1] == inverse(ev[i])) out.push_back({MoveKind::M1Delete, i, std::nullopt});
  if (ctx.roles) {
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (m4_block(ctx, i)) out.push_back({MoveKind::M4, i, std::nullopt});
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (m2_block(ctx, i)) out.push_back({MoveKind::M2, i, std::nullopt});
    for (std::size_t i = 0; i + 2 < ev.size(); ++i)
      if (m3_block(ctx, i)) out.push_back({MoveKind::M3, i, std::nullopt});
  }
  for (std::size_t i = 0; i <= ev.size(); ++i)
    for (const auto& e : applicable_events(ctx.before(i))) out.push_back({MoveKind::M1Insert, i, e});
  return out;
}

}  // namespace morse
